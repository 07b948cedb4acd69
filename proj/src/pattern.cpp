#include "linepin/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "linepin/sampling.hpp"

namespace linepin {

using namespace exact;

HalfplanePattern HalfplanePattern::from_normals(std::vector<Vector2d> normals) {
    if (normals.empty()) throw InvalidPattern("pattern needs at least one halfplane");
    for (const auto& n : normals)
        if (n.x() == 0.0 && n.y() == 0.0) throw InvalidPattern("zero normal");
    for (size_t i = 0; i < normals.size(); ++i)
        for (size_t j = i + 1; j < normals.size(); ++j)
            if (parallel(normals[i], normals[j]))
                throw InvalidPattern("halfplanes " + std::to_string(i + 1) + " and " +
                                     std::to_string(j + 1) + " share a bounding line");
    HalfplanePattern P;
    P.normals = std::move(normals);
    return P;
}

HalfplanePattern HalfplanePattern::from_angles_deg(const std::vector<double>& degrees) {
    std::vector<Vector2d> ns;
    ns.reserve(degrees.size());
    for (double a : degrees) {
        double rad = a * std::numbers::pi / 180.0;
        ns.emplace_back(std::cos(rad), std::sin(rad));
    }
    return from_normals(std::move(ns));
}

OpenArc::OpenArc(Vector2d s, Vector2d e) : start(std::move(s)), end(std::move(e)) {
    if ((start.x() == 0.0 && start.y() == 0.0) || (end.x() == 0.0 && end.y() == 0.0))
        throw Error("OpenArc: zero endpoint");
    if (same_direction(start, end))
        throw Error("OpenArc: endpoints coincide (empty or full circle)");
}

bool OpenArc::contains(const Vector2d& u) const {
    int c = sign_cross(start, end);
    if (c > 0) // shorter than a half circle
        return sign_cross(start, u) > 0 && sign_cross(u, end) > 0;
    if (c == 0) // antipodal endpoints: exactly a half circle
        return sign_cross(start, u) > 0;
    // longer than a half circle: outside the closed complementary arc [end, start]
    return !(sign_cross(end, u) >= 0 && sign_cross(u, start) >= 0);
}

static double direction_deg(const Vector2d& v) {
    double a = std::atan2(v.y(), v.x()) * 180.0 / std::numbers::pi;
    return a < 0 ? a + 360.0 : a;
}

double OpenArc::start_deg() const { return direction_deg(start); }
double OpenArc::end_deg() const { return direction_deg(end); }

HalfplanePattern sigma5(const std::optional<std::array<double, 5>>& angles_deg) {
    static const std::array<double, 5> kDefault = {0.0, 108.0, 216.0, 324.0, 72.0};
    const auto& angles = angles_deg ? *angles_deg : kDefault;
    HalfplanePattern P;
    try {
        P = HalfplanePattern::from_angles_deg({angles.begin(), angles.end()});
    } catch (const InvalidPattern& e) {
        throw ProvidedAnglesNotSigma5(std::string("invalid pattern: ") + e.what());
    }

    // cyclic order of the ten signed normals, per the sigma_5 definition
    struct Signed {
        Vector2d v;
        int index; // 0-based
        int sign;
    };
    std::vector<Signed> seq;
    for (int i = 0; i < 5; ++i) {
        seq.push_back({P.normals[i], i, +1});
        seq.push_back({-P.normals[i], i, -1});
    }
    const Vector2d anchor = P.normals[0];
    std::sort(seq.begin(), seq.end(), [&](const Signed& a, const Signed& b) {
        return cyclic_less(anchor, a.v, b.v);
    });
    static const std::array<std::pair<int, int>, 10> kTarget = {{
        {0, +1}, {2, -1}, {4, +1}, {1, +1}, {3, -1},
        {0, -1}, {2, +1}, {4, -1}, {1, -1}, {3, +1},
    }};
    for (int t = 0; t < 10; ++t)
        if (seq[t].index != kTarget[t].first || seq[t].sign != kTarget[t].second)
            throw ProvidedAnglesNotSigma5("signed normals do not realize the sigma_5 cyclic order");
    return P;
}

bool positively_spans(const Vector2d& a, const Vector2d& b, const Vector2d& c) {
    const std::array<const Vector2d*, 3> v = {&a, &b, &c};
    for (const auto* p : v)
        if (p->x() == 0.0 && p->y() == 0.0) throw DegenerateInput("zero vector");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (opposite_direction(*v[i], *v[j]) && parallel(*v[i], *v[3 - i - j]))
                throw DegenerateInput("antipodal pair with the third vector on their line");
    // fails to span iff some closed halfplane contains all three; if one
    // exists, one bounded by the line of a, b or c does
    for (const auto* p : v) {
        for (int s : {+1, -1}) {
            Vector2d u = double(s) * rot90(*p);
            if (sign_dot(u, a) >= 0 && sign_dot(u, b) >= 0 && sign_dot(u, c) >= 0) return false;
        }
    }
    return true;
}

std::vector<IndexTriple> spanning_triples(const HalfplanePattern& P) {
    std::vector<IndexTriple> out;
    const int k = P.size();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int l = j + 1; l < k; ++l)
                if (positively_spans(P.normals[i], P.normals[j], P.normals[l]))
                    out.push_back({i, j, l});
    return out;
}

OpenArc triple_arc(const HalfplanePattern& P, const IndexTriple& t) {
    const int k = P.size();
    if (!(0 <= t[0] && t[0] < t[1] && t[1] < t[2] && t[2] < k))
        throw NotSpanningTriple("indices out of range or not increasing");
    const Vector2d& ni = P.normals[t[0]];
    const Vector2d& nj = P.normals[t[1]];
    const Vector2d& nk = P.normals[t[2]];
    if (!positively_spans(ni, nj, nk)) throw NotSpanningTriple("normals do not positively span");

    // {<u,n_i> < 0} is the open half circle (rot90(n_i), -rot90(n_i));
    // {<u,n_k> > 0} is (-rot90(n_k), rot90(n_k)).
    OpenArc A(rot90(ni), -rot90(ni));
    if (opposite_direction(ni, nk)) return A; // the two half circles coincide
    OpenArc B(-rot90(nk), rot90(nk));
    Vector2d s = A.contains(B.start) ? B.start : A.start;
    Vector2d e = B.contains(A.end) ? A.end : B.end;
    return OpenArc(s, e);
}

// Bisector of the CCW gap from p to q, as a float direction; containment
// checks on it stay exact. Returns nullopt for coincident directions.
static std::optional<Vector2d> ccw_gap_midpoint(const Vector2d& p, const Vector2d& q) {
    int c = sign_cross(p, q);
    Vector2d ph = p.normalized(), qh = q.normalized();
    if (c > 0) return Vector2d(ph + qh);
    if (c < 0) return Vector2d(-(ph + qh));
    if (sign_dot(p, q) < 0) return rot90(p); // gap of exactly 180 degrees
    return std::nullopt;
}

PatternVerdict is_pinning_pattern(const HalfplanePattern& P) {
    PatternVerdict verdict;
    for (const auto& t : spanning_triples(P))
        verdict.cover.emplace_back(t, triple_arc(P, t));

    if (verdict.cover.empty()) {
        verdict.is_pinning = false;
        verdict.witness = Vector2d(1.0, 0.0);
        return verdict;
    }

    auto covered = [&](const Vector2d& u) {
        for (const auto& [t, arc] : verdict.cover)
            if (arc.contains(u)) return true;
        return false;
    };

    // distinct endpoint directions, swept in cyclic order
    std::vector<Vector2d> endpoints;
    for (const auto& [t, arc] : verdict.cover) {
        for (const Vector2d& e : {arc.start, arc.end}) {
            bool dup = false;
            for (const auto& f : endpoints)
                if (same_direction(e, f)) { dup = true; break; }
            if (!dup) endpoints.push_back(e);
        }
    }
    const Vector2d anchor = endpoints.front();
    std::sort(endpoints.begin(), endpoints.end(), [&](const Vector2d& a, const Vector2d& b) {
        return cyclic_less(anchor, a, b);
    });

    // A union of open arcs covers S^1 iff every arc endpoint is interior to
    // some arc: any boundary point of the union is an endpoint.
    std::vector<int> uncovered;
    for (int i = 0; i < static_cast<int>(endpoints.size()); ++i)
        if (!covered(endpoints[i])) uncovered.push_back(i);

    if (uncovered.empty()) {
        verdict.is_pinning = true;
        return verdict;
    }

    verdict.is_pinning = false;
    // prefer a witness interior to an uncovered gap over an isolated endpoint
    const int m = static_cast<int>(endpoints.size());
    for (int i : uncovered) {
        const Vector2d& p = endpoints[i];
        const Vector2d& q = endpoints[(i + 1) % m];
        if (auto mid = ccw_gap_midpoint(p, q); mid && !covered(*mid)) {
            verdict.witness = *mid;
            return verdict;
        }
    }
    verdict.witness = endpoints[uncovered.front()];
    return verdict;
}

Crossing crossing_time(const Vector2d& n, const PlanarLine& g) {
    double du = g.u.dot(n);
    if (du == 0.0) return {Crossing::NEVER, 0.0};
    double t = -n.dot(g.p0) / du;
    return {du < 0 ? Crossing::ENTER : Crossing::EXIT, t};
}

bool order_respecting(const HalfplanePattern& P, const PlanarLine& g) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double max_enter_before = -inf;
    for (const auto& n : P.normals) {
        double du = g.u.dot(n);
        double dp = n.dot(g.p0);
        double enter, exit;
        if (du == 0.0) {
            if (dp > 0.0) return false; // parallel and outside: line misses H_i
            enter = -inf;
            exit = inf;
        } else {
            double t = -dp / du;
            if (du > 0.0) { enter = -inf; exit = t; }
            else          { enter = t;    exit = inf; }
        }
        if (exit < max_enter_before) return false; // exits H_j before entering some H_i, i<j
        max_enter_before = std::max(max_enter_before, enter);
    }
    return true;
}

std::optional<PlanarLine> sample_counterexample(const HalfplanePattern& P, int trials,
                                                std::uint64_t seed,
                                                const std::optional<Vector2d>& direction) {
    if (trials < 1) throw Error("sample_counterexample: trials must be >= 1");
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        PlanarLine g;
        if (direction) {
            g.u = *direction;
            double c = rng.uniform(0.1, 10.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
            g.p0 = c * rot90(*direction);
        } else {
            double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
            g.u = Vector2d(std::cos(phi), std::sin(phi));
            double psi = rng.uniform(0.0, 2.0 * std::numbers::pi);
            double r = rng.uniform(0.1, 10.0);
            g.p0 = r * Vector2d(std::cos(psi), std::sin(psi));
        }
        if (g.p0.x() * g.u.y() - g.p0.y() * g.u.x() == 0.0) continue; // through the origin
        if (order_respecting(P, g)) return g;
    }
    return std::nullopt;
}

} // namespace linepin
