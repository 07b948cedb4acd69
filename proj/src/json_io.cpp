#include "linepin/json_io.hpp"

#include <cmath>
#include <fstream>

#include "linepin/tolerances.hpp"

namespace linepin::io {

namespace {

double number_from(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) { // rational entry "p/q"
        const std::string s = j.get<std::string>();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return std::stod(s);
            double p = std::stod(s.substr(0, slash));
            double q = std::stod(s.substr(slash + 1));
            if (q == 0.0) throw SchemaError(std::string(what) + ": zero denominator");
            return p / q;
        } catch (const std::invalid_argument&) {
            throw SchemaError(std::string(what) + ": unparsable number '" + s + "'");
        }
    }
    throw SchemaError(std::string(what) + ": expected a number");
}

VectorXd vector_from(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw SchemaError(std::string(what) + ": expected an array");
    VectorXd v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = number_from(j[i], what);
    return v;
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
}

} // namespace

json to_json(const Vector2d& v) { return json::array({v.x(), v.y()}); }

json to_json(const VectorXd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json to_json(const LineChart& g) {
    return {{"u0", to_json(g.u0)}, {"u1", to_json(g.u1)}};
}

json to_json(const OpenArc& a) {
    return {{"start", to_json(a.start)},
            {"end", to_json(a.end)},
            {"start_deg", a.start_deg()},
            {"end_deg", a.end_deg()}};
}

json to_json(const HalfplanePattern& P) {
    json normals = json::array();
    for (const auto& n : P.normals) normals.push_back(to_json(n));
    return {{"normals", normals}};
}

json to_json(const PatternVerdict& v) {
    json cover = json::array();
    for (const auto& [t, arc] : v.cover) {
        // 1-based indices in serialized form
        cover.push_back({{"triple", {t[0] + 1, t[1] + 1, t[2] + 1}}, {"arc", to_json(arc)}});
    }
    json j = {{"is_pinning", v.is_pinning}, {"cover", cover}};
    if (v.witness) j["witness"] = to_json(*v.witness);
    return j;
}

json to_json(const Screen& s) {
    return {{"lambda", s.lambda}, {"n", to_json(s.n)}};
}

json to_json(const ScreenFamily& F) {
    json screens = json::array();
    for (const auto& s : F.screens) screens.push_back(to_json(s));
    return {{"d", F.d}, {"screens", screens}};
}

json to_json(const FeasibilityVerdict& v) {
    if (v.strict())
        return {{"status", "STRICT_TRANSVERSAL"},
                {"witness", to_json(v.witness)},
                {"witness_slack", v.witness_slack}};
    return {{"status", "NO_STRICT_TRANSVERSAL"},
            {"certificate", to_json(v.certificate)},
            {"certificate_residual", v.certificate_residual}};
}

json to_json(const Ball& b) {
    return {{"center", to_json(b.center)}, {"radius", b.radius}};
}

json to_json(const BallConfig& C) {
    json balls = json::array();
    for (const auto& b : C.balls) balls.push_back(to_json(b));
    return {{"d", C.d}, {"balls", balls}};
}

json to_json(const ValidationReport& r) {
    return {{"ok", r.ok()},
            {"tangency_ok", r.tangency_ok},
            {"ordering_ok", r.ordering_ok},
            {"disjoint_ok", r.disjoint_ok},
            {"tangency_error", r.tangency_error},
            {"disjoint_margin", r.disjoint_margin}};
}

namespace {

const char* level_name(PinCertificate::Level level) {
    switch (level) {
        case PinCertificate::Level::PATTERN: return "PATTERN";
        case PinCertificate::Level::FIRST_ORDER: return "FIRST_ORDER";
        case PinCertificate::Level::EMPIRICAL: return "EMPIRICAL";
        case PinCertificate::Level::NOT_PINNED: return "NOT_PINNED";
    }
    return "?";
}

} // namespace

json to_json(const PinCertificate& c) {
    json j = {{"level", level_name(c.level)},
              {"pinned", c.pinned()},
              {"conclusive", c.conclusive()}};
    if (c.pattern) j["pattern_verdict"] = to_json(*c.pattern);
    if (c.first_order) j["first_order"] = to_json(*c.first_order);
    if (c.empirical) {
        j["empirical"] = {{"rho_schedule", c.empirical->rho_schedule},
                          {"samples_per_sphere", c.empirical->samples_per_sphere},
                          {"min_deficit", c.empirical->min_deficit},
                          {"argmin", to_json(c.empirical->argmin)},
                          {"seed", c.empirical->seed}};
    }
    if (c.witness) j["witness"] = to_json(*c.witness);
    return j;
}

json to_json(const DemoReport& r) {
    json subsets = json::array();
    for (const auto& s : r.subset_witnesses)
        subsets.push_back({{"indices", s.indices},
                           {"transversal", to_json(s.transversal)},
                           {"deficit", s.deficit}});
    return {{"d", r.d},
            {"delta", r.delta},
            {"resolution", r.resolution},
            {"family", to_json(r.family)},
            {"pin_certificate", to_json(r.pin_certificate)},
            {"subset_witnesses", subsets},
            {"all_subsets_witnessed", r.all_subsets_witnessed},
            {"global_search",
             {{"starts", r.global_starts},
              {"found", r.global_transversal_found},
              {"witness", r.global_witness ? to_json(*r.global_witness) : json(nullptr)}}},
            {"passed", r.passed()}};
}

HalfplanePattern pattern_from_json(const json& j) {
    const json& arr = field(j, "normals");
    if (!arr.is_array()) throw SchemaError("'normals' must be an array");
    std::vector<Vector2d> ns;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2) throw SchemaError("each normal must be [x, y]");
        ns.emplace_back(number_from(e[0], "normal"), number_from(e[1], "normal"));
    }
    return HalfplanePattern::from_normals(std::move(ns));
}

ScreenFamily screens_from_json(const json& j) {
    int d = field(j, "d").get<int>();
    std::vector<Screen> screens;
    for (const auto& e : field(j, "screens")) {
        double lambda = number_from(field(e, "lambda"), "lambda");
        VectorXd n = vector_from(field(e, "n"), "screen normal");
        if (n.size() != d - 1) throw SchemaError("screen normal must lie in R^{d-1}");
        screens.emplace_back(lambda, std::move(n));
    }
    return ScreenFamily(std::move(screens), d);
}

BallConfig balls_from_json(const json& j) {
    int d = field(j, "d").get<int>();
    std::vector<Ball> balls;
    for (const auto& e : field(j, "balls")) {
        VectorXd c = vector_from(field(e, "center"), "center");
        if (c.size() != d) throw SchemaError("ball center must lie in R^d");
        balls.emplace_back(std::move(c), number_from(field(e, "radius"), "radius"));
    }
    return BallConfig(std::move(balls), d);
}

LineChart chart_from_json(const json& j) {
    return LineChart(vector_from(field(j, "u0"), "u0"), vector_from(field(j, "u1"), "u1"));
}

PatternVerdict pattern_verdict_from_json(const json& j) {
    PatternVerdict v;
    v.is_pinning = field(j, "is_pinning").get<bool>();
    for (const auto& e : field(j, "cover")) {
        const json& t = field(e, "triple");
        IndexTriple triple = {t[0].get<int>() - 1, t[1].get<int>() - 1, t[2].get<int>() - 1};
        const json& a = field(e, "arc");
        Vector2d s(number_from(field(a, "start")[0], "arc"), number_from(field(a, "start")[1], "arc"));
        Vector2d eend(number_from(field(a, "end")[0], "arc"), number_from(field(a, "end")[1], "arc"));
        v.cover.emplace_back(triple, OpenArc(s, eend));
    }
    if (j.contains("witness"))
        v.witness = Vector2d(number_from(j["witness"][0], "witness"),
                             number_from(j["witness"][1], "witness"));
    return v;
}

FeasibilityVerdict feasibility_from_json(const json& j) {
    FeasibilityVerdict v;
    std::string status = field(j, "status").get<std::string>();
    if (status == "STRICT_TRANSVERSAL") {
        v.status = FeasibilityVerdict::Status::STRICT_TRANSVERSAL;
        v.witness = vector_from(field(j, "witness"), "witness");
        v.witness_slack = number_from(field(j, "witness_slack"), "witness_slack");
    } else if (status == "NO_STRICT_TRANSVERSAL") {
        v.status = FeasibilityVerdict::Status::NO_STRICT_TRANSVERSAL;
        v.certificate = vector_from(field(j, "certificate"), "certificate");
        v.certificate_residual = number_from(field(j, "certificate_residual"), "residual");
    } else {
        throw SchemaError("unknown feasibility status '" + status + "'");
    }
    return v;
}

PinCertificate certificate_from_json(const json& j) {
    PinCertificate c;
    std::string level = field(j, "level").get<std::string>();
    if (level == "PATTERN") c.level = PinCertificate::Level::PATTERN;
    else if (level == "FIRST_ORDER") c.level = PinCertificate::Level::FIRST_ORDER;
    else if (level == "EMPIRICAL") c.level = PinCertificate::Level::EMPIRICAL;
    else if (level == "NOT_PINNED") c.level = PinCertificate::Level::NOT_PINNED;
    else throw SchemaError("unknown certificate level '" + level + "'");
    if (j.contains("pattern_verdict")) c.pattern = pattern_verdict_from_json(j["pattern_verdict"]);
    if (j.contains("first_order")) c.first_order = feasibility_from_json(j["first_order"]);
    if (j.contains("empirical")) {
        const json& e = j["empirical"];
        EmpiricalStats st;
        st.rho_schedule = e["rho_schedule"].get<std::vector<double>>();
        st.samples_per_sphere = e["samples_per_sphere"].get<int>();
        st.min_deficit = number_from(e["min_deficit"], "min_deficit");
        st.argmin = chart_from_json(e["argmin"]);
        st.seed = e["seed"].get<std::uint64_t>();
        c.empirical = std::move(st);
    }
    if (j.contains("witness")) c.witness = chart_from_json(j["witness"]);
    return c;
}

Scene scene_from_json(const json& j) {
    Scene s;
    const json* root = &j;
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tol")) s.tol = number_from(j["tol"], "tol");
    if (j.contains("pattern")) s.pattern = pattern_from_json(j["pattern"]);
    if (j.contains("screens") && j["screens"].is_object())
        s.screens = screens_from_json(j["screens"]);
    if (j.contains("balls") && j["balls"].is_object()) s.balls = balls_from_json(j["balls"]);
    // bare payload documents
    if (root->contains("normals")) s.pattern = pattern_from_json(*root);
    if (root->contains("screens") && (*root)["screens"].is_array())
        s.screens = screens_from_json(*root);
    if (root->contains("balls") && (*root)["balls"].is_array()) s.balls = balls_from_json(*root);

    // dimension consistency across sections
    std::vector<int> dims;
    if (s.screens) dims.push_back(s.screens->d);
    if (s.balls) dims.push_back(s.balls->d);
    if (s.pattern) dims.push_back(3);
    for (size_t i = 1; i < dims.size(); ++i)
        if (dims[i] != dims[0]) throw SchemaError("scene sections disagree on the dimension");
    return s;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("parse error in '" + path + "': " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

Recheck recheck_pattern_verdict(const HalfplanePattern& P, const PatternVerdict& v) {
    if (!v.is_pinning) {
        if (!v.witness) return {false, "negative verdict without a witness direction"};
        for (const auto& t : spanning_triples(P))
            if (triple_arc(P, t).contains(*v.witness))
                return {false, "witness direction is covered by a spanning-triple arc"};
        return {true, "witness direction lies in no arc"};
    }
    if (v.cover.empty()) return {false, "positive verdict with an empty cover"};
    for (const auto& [t, arc] : v.cover) {
        OpenArc expect = triple_arc(P, t); // throws NotSpanningTriple if bogus
        if (!exact::same_direction(arc.start, expect.start) ||
            !exact::same_direction(arc.end, expect.end))
            return {false, "stored arc does not match its triple"};
    }
    for (const auto& [t, arc] : v.cover) {
        for (const Vector2d& e : {arc.start, arc.end}) {
            bool inside = false;
            for (const auto& [t2, arc2] : v.cover)
                if (arc2.contains(e)) { inside = true; break; }
            if (!inside) return {false, "an arc endpoint is uncovered: the arcs do not cover S^1"};
        }
    }
    return {true, "arcs verified against their triples and cover S^1"};
}

Recheck recheck_feasibility(const ScreenFamily& F, const FeasibilityVerdict& v) {
    Eigen::MatrixXd A = phi_matrix(F);
    double scale = 0.0;
    for (int i = 0; i < A.cols(); ++i) scale = std::max(scale, A.col(i).norm());
    if (v.strict()) {
        if (v.witness.size() != A.rows()) return {false, "witness has the wrong dimension"};
        for (int i = 0; i < A.cols(); ++i)
            if (!(A.col(i).dot(v.witness) < 0.0))
                return {false, "witness does not strictly enter screen " + std::to_string(i + 1)};
        return {true, "witness strictly enters every screen"};
    }
    if (v.certificate.size() != A.cols()) return {false, "certificate has the wrong length"};
    double sum = 0.0;
    for (int i = 0; i < v.certificate.size(); ++i) {
        if (v.certificate(i) < -g_tol) return {false, "negative convex coefficient"};
        sum += v.certificate(i);
    }
    if (std::abs(sum - 1.0) > 1e-6) return {false, "coefficients do not sum to 1"};
    double residual = (A * v.certificate).norm();
    if (residual > g_tol * std::max(scale, 1.0))
        return {false, "combination does not vanish at the tolerance"};
    return {true, "nonnegative vanishing combination verified"};
}

Recheck recheck_pin_certificate(const BallConfig& C, const PinCertificate& c) {
    switch (c.level) {
        case PinCertificate::Level::NOT_PINNED: {
            if (!c.witness) return {false, "NOT_PINNED without a witness line"};
            for (const auto& b : C.balls)
                if (line_point_distance(*c.witness, b.center) > b.radius)
                    return {false, "witness line misses a ball"};
            if (chart_distance(*c.witness, LineChart::axis(C.d)) <= g_tol)
                return {false, "witness line coincides with the axis"};
            return {true, "witness transversal distinct from the axis verified"};
        }
        case PinCertificate::Level::PATTERN: {
            if (C.d != 3) return {false, "PATTERN certificates exist only in d=3"};
            if (!c.pattern) return {false, "PATTERN without a stored verdict"};
            Recheck r = recheck_pattern_verdict(project_to_pattern(C), *c.pattern);
            if (!r.ok) return r;
            if (!c.pattern->is_pinning) return {false, "stored verdict is negative"};
            return {true, "projection pattern verdict verified: " + r.detail};
        }
        case PinCertificate::Level::FIRST_ORDER: {
            if (!c.first_order) return {false, "FIRST_ORDER without a feasibility verdict"};
            if (c.first_order->strict()) return {false, "FIRST_ORDER with a strict transversal"};
            return recheck_feasibility(screens_of(C), *c.first_order);
        }
        case PinCertificate::Level::EMPIRICAL: {
            if (!c.empirical) return {false, "EMPIRICAL without stats"};
            if (!(c.empirical->min_deficit > 0.0))
                return {false, "recorded minimum deficit is not positive"};
            double f = clearance_deficit(C, c.empirical->argmin);
            if (std::abs(f - c.empirical->min_deficit) >
                1e-9 * std::max(1.0, std::abs(f)))
                return {false, "recorded argmin does not reproduce the recorded deficit"};
            return {true, "recorded argmin reproduced; note: sampling evidence, not a proof"};
        }
    }
    return {false, "unknown certificate level"};
}

} // namespace linepin::io
