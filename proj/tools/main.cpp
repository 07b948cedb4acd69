// Command-line front end: pattern decisions, screen feasibility, pinning
// certificates and the lower-bound demo, with JSON output and SVG figures.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linepin/balls.hpp"
#include "linepin/engine.hpp"
#include "linepin/errors.hpp"
#include "linepin/json_io.hpp"
#include "linepin/pattern.hpp"
#include "linepin/sampling.hpp"
#include "linepin/screens.hpp"
#include "linepin/svg.hpp"
#include "linepin/tolerances.hpp"

namespace {

using linepin::io::json;

// exit codes: 0 proved / verdict certified, 10 positive but empirical,
// 20 refuted / negative verdict, 1 usage, 2 input, 3 tolerance-ambiguous
constexpr int kExitProved = 0;
constexpr int kExitEvidence = 10;
constexpr int kExitRefuted = 20;
constexpr int kExitInput = 2;
constexpr int kExitAmbiguous = 3;

struct Options {
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::string in_path;
    std::string out_path;
    std::string svg_path;
    std::string recheck_path;
    std::vector<double> angles;
    std::vector<double> rho_schedule = {1e-3, 1e-4, 1e-5};
    int samples = 4096;
    int trials = 10000;
    int halfplanes = 5;
    int count = 1;
    bool minimal_filter = false;
    bool bad_set = false;
    int dim = 3;
    int resolution = 0;
    double radius = 1.0;
    double gap = 3.0;
    double delta = 1e-4;
    double eps = 1e-6;
    int starts = 10000;
    int subset_starts = 400;
};

void emit(const Options& opt, const json& j) {
    std::cout << j.dump(2) << "\n";
    if (!opt.out_path.empty()) linepin::io::write_file(opt.out_path, j);
}

json params_json(const Options& opt) {
    return {{"seed", opt.seed}, {"tol", opt.tolerance}};
}

linepin::io::Scene load_scene(const Options& opt) {
    if (opt.in_path.empty()) throw linepin::SchemaError("--in is required");
    return linepin::io::scene_from_json(linepin::io::load_file(opt.in_path));
}

const linepin::HalfplanePattern& need_pattern(const linepin::io::Scene& s) {
    if (!s.pattern) throw linepin::SchemaError("scene has no pattern section");
    return *s.pattern;
}

const linepin::ScreenFamily& need_screens(const linepin::io::Scene& s) {
    if (!s.screens) throw linepin::SchemaError("scene has no screens section");
    return *s.screens;
}

const linepin::BallConfig& need_balls(const linepin::io::Scene& s) {
    if (!s.balls) throw linepin::SchemaError("scene has no balls section");
    return *s.balls;
}

int run_pattern_check(const Options& opt, const linepin::HalfplanePattern& P,
                      const std::string& command) {
    if (!opt.recheck_path.empty()) {
        auto stored =
            linepin::io::pattern_verdict_from_json(linepin::io::load_file(opt.recheck_path));
        auto rc = linepin::io::recheck_pattern_verdict(P, stored);
        emit(opt, {{"command", command + " --recheck"},
                   {"params", params_json(opt)},
                   {"recheck", {{"ok", rc.ok}, {"detail", rc.detail}}}});
        return rc.ok ? kExitProved : kExitRefuted;
    }
    linepin::PatternVerdict v = linepin::is_pinning_pattern(P);
    if (!opt.svg_path.empty()) linepin::svg::write_pattern_figure(opt.svg_path, P, v);
    emit(opt, {{"command", command},
               {"params", params_json(opt)},
               {"pattern", linepin::io::to_json(P)},
               {"verdict", linepin::io::to_json(v)}});
    return v.is_pinning ? kExitProved : kExitRefuted;
}

int cmd_pattern_check(const Options& opt) {
    return run_pattern_check(opt, need_pattern(load_scene(opt)), "pattern check");
}

int cmd_pattern_sigma5(const Options& opt) {
    std::optional<std::array<double, 5>> angles;
    if (!opt.angles.empty()) {
        if (opt.angles.size() != 5)
            throw linepin::SchemaError("--angles requires exactly five values (degrees)");
        std::array<double, 5> a;
        std::copy(opt.angles.begin(), opt.angles.end(), a.begin());
        angles = a;
    }
    return run_pattern_check(opt, linepin::sigma5(angles), "pattern sigma5");
}

int cmd_pattern_search(const Options& opt) {
    linepin::Rng rng(opt.seed);
    json found = json::array();
    int tried = 0, hits = 0;
    for (int t = 0; t < opt.trials && hits < opt.count; ++t) {
        ++tried;
        std::vector<double> degs(opt.halfplanes);
        for (auto& a : degs) a = rng.uniform(0.0, 360.0);
        linepin::HalfplanePattern P;
        try {
            P = linepin::HalfplanePattern::from_angles_deg(degs);
        } catch (const linepin::InvalidPattern&) {
            continue;
        }
        linepin::PatternVerdict v = linepin::is_pinning_pattern(P);
        if (!v.is_pinning) continue;
        if (opt.minimal_filter) {
            // reject when some proper sub-pattern already pins
            bool proper_pin = false;
            const int k = P.size();
            for (unsigned mask = 1; mask + 1 < (1u << k) && !proper_pin; ++mask) {
                if (__builtin_popcount(mask) < 3) continue;
                std::vector<linepin::Vector2d> sub;
                for (int i = 0; i < k; ++i)
                    if (mask & (1u << i)) sub.push_back(P.normals[i]);
                if (static_cast<int>(sub.size()) == k) continue;
                auto subP = linepin::HalfplanePattern::from_normals(std::move(sub));
                if (linepin::is_pinning_pattern(subP).is_pinning) proper_pin = true;
            }
            if (proper_pin) continue;
        }
        ++hits;
        found.push_back({{"pattern", linepin::io::to_json(P)},
                         {"verdict", linepin::io::to_json(v)},
                         {"angles_deg", degs}});
    }
    emit(opt, {{"command", "pattern search"},
               {"params",
                {{"seed", opt.seed},
                 {"tol", opt.tolerance},
                 {"halfplanes", opt.halfplanes},
                 {"trials", opt.trials},
                 {"minimal", opt.minimal_filter}}},
               {"tried", tried},
               {"found", found}});
    return hits > 0 ? kExitProved : kExitRefuted;
}

int cmd_balls_lift(const Options& opt) {
    auto scene = load_scene(opt);
    const auto& P = need_pattern(scene);
    auto C = linepin::lift_pattern(P, opt.radius, opt.gap);
    emit(opt, {{"command", "balls lift"},
               {"params",
                {{"seed", opt.seed},
                 {"tol", opt.tolerance},
                 {"radius", opt.radius},
                 {"gap", opt.gap}}},
               {"balls", linepin::io::to_json(C)},
               {"validation", linepin::io::to_json(linepin::validate(C))}});
    return kExitProved;
}

int cmd_balls_project(const Options& opt) {
    auto C = need_balls(load_scene(opt));
    auto P = linepin::project_to_pattern(C);
    emit(opt, {{"command", "balls project"},
               {"params", params_json(opt)},
               {"pattern", linepin::io::to_json(P)}});
    return kExitProved;
}

int cmd_screens_test(const Options& opt) {
    auto F = need_screens(load_scene(opt));
    if (!opt.recheck_path.empty()) {
        auto stored =
            linepin::io::feasibility_from_json(linepin::io::load_file(opt.recheck_path));
        auto rc = linepin::io::recheck_feasibility(F, stored);
        emit(opt, {{"command", "screens test --recheck"},
                   {"params", params_json(opt)},
                   {"recheck", {{"ok", rc.ok}, {"detail", rc.detail}}}});
        return rc.ok ? kExitProved : kExitRefuted;
    }
    auto v = linepin::strict_transversal(F);
    json j = {{"command", "screens test"},
              {"params", params_json(opt)},
              {"screens", linepin::io::to_json(F)},
              {"feasibility", linepin::io::to_json(v)}};
    if (F.size() <= 2 * (F.d - 1)) {
        auto r = linepin::dependent_normals(F);
        j["dependent_normals"] = {{"dependent", r.dependent}, {"rank", r.rank}};
    }
    if (opt.bad_set) j["in_bad_set"] = linepin::in_bad_set(F);
    emit(opt, j);
    return kExitProved;
}

linepin::VerifyOptions verify_options(const Options& opt) {
    linepin::VerifyOptions v;
    v.rho_schedule = opt.rho_schedule;
    v.samples_per_sphere = opt.samples;
    v.seed = opt.seed;
    return v;
}

json verify_params(const Options& opt) {
    return {{"seed", opt.seed},
            {"tol", opt.tolerance},
            {"rho_schedule", opt.rho_schedule},
            {"samples", opt.samples}};
}

int certificate_exit(const linepin::PinCertificate& cert) {
    if (!cert.pinned()) return kExitRefuted;
    return cert.conclusive() ? kExitProved : kExitEvidence;
}

int cmd_pin_verify(const Options& opt) {
    auto C = need_balls(load_scene(opt));
    if (!opt.recheck_path.empty()) {
        auto stored =
            linepin::io::certificate_from_json(linepin::io::load_file(opt.recheck_path));
        auto rc = linepin::io::recheck_pin_certificate(C, stored);
        emit(opt, {{"command", "pin verify --recheck"},
                   {"params", params_json(opt)},
                   {"recheck", {{"ok", rc.ok}, {"detail", rc.detail}}}});
        return rc.ok ? kExitProved : kExitRefuted;
    }
    auto cert = linepin::verify_pin(C, verify_options(opt));
    emit(opt, {{"command", "pin verify"},
               {"params", verify_params(opt)},
               {"certificate", linepin::io::to_json(cert)}});
    return certificate_exit(cert);
}

int cmd_pin_minimal(const Options& opt) {
    auto C = need_balls(load_scene(opt));
    auto res = linepin::extract_minimal(C, opt.eps, verify_options(opt));
    // minimality audit: every maximal proper subfamily must fail to pin
    json audit = json::array();
    bool minimal = true;
    for (int drop = 0; drop < res.family.size(); ++drop) {
        std::vector<linepin::Ball> rest;
        for (int i = 0; i < res.family.size(); ++i)
            if (i != drop) rest.push_back(res.family.balls[i]);
        auto sub = linepin::verify_pin(linepin::BallConfig(std::move(rest), res.family.d),
                                       verify_options(opt));
        if (sub.pinned()) minimal = false;
        audit.push_back({{"removed", drop}, {"pinned", sub.pinned()}});
    }
    json p = verify_params(opt);
    p["eps"] = opt.eps;
    emit(opt, {{"command", "pin minimal"},
               {"params", p},
               {"family", linepin::io::to_json(res.family)},
               {"certificate", linepin::io::to_json(res.certificate)},
               {"minimality_audit", audit},
               {"minimal", minimal}});
    if (!minimal) return kExitRefuted;
    return certificate_exit(res.certificate);
}

int cmd_construct_stable(const Options& opt) {
    int resolution = opt.resolution > 0 ? opt.resolution : (opt.dim == 3 ? 1 : 32);
    auto C = linepin::construct_stable(opt.dim, resolution, opt.radius, opt.gap, opt.seed);
    auto cert = linepin::verify_pin(C, verify_options(opt));
    json p = verify_params(opt);
    p["dim"] = opt.dim;
    p["resolution"] = resolution;
    p["radius"] = opt.radius;
    p["gap"] = opt.gap;
    emit(opt, {{"command", "construct stable"},
               {"params", p},
               {"balls", linepin::io::to_json(C)},
               {"certificate", linepin::io::to_json(cert)}});
    return certificate_exit(cert);
}

int cmd_demo(const Options& opt) {
    linepin::DemoOptions d;
    d.resolution = opt.resolution;
    d.subset_starts = opt.subset_starts;
    d.global_starts = opt.starts;
    d.seed = opt.seed;
    d.verify = verify_options(opt);
    d.eps_perturb = opt.eps;
    auto rep = linepin::demo_main_theorem(opt.dim, opt.delta, d);
    json p = verify_params(opt);
    p["dim"] = opt.dim;
    p["delta"] = opt.delta;
    p["starts"] = opt.starts;
    p["subset_starts"] = opt.subset_starts;
    emit(opt, {{"command", "demo main-theorem"},
               {"params", p},
               {"report", linepin::io::to_json(rep)},
               {"verdict", rep.passed() ? "EVIDENCE" : "REFUTED"}});
    return rep.passed() ? kExitEvidence : kExitRefuted;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"line pinning by balls: patterns, screens, certificates"};
    app.require_subcommand(1);
    Options opt;

    app.add_option("--seed", opt.seed, "RNG seed recorded in all outputs");
    app.add_option("--tol", opt.tolerance, "floating tolerance (default 1e-9)");

    auto add_io = [&](CLI::App* c, bool needs_in) {
        if (needs_in) c->add_option("--in", opt.in_path, "input scene JSON")->required();
        c->add_option("--out", opt.out_path, "also write the JSON output to this file");
    };

    auto* pattern = app.add_subcommand("pattern", "halfplane pattern operations");
    pattern->require_subcommand(1);
    auto* pat_check = pattern->add_subcommand("check", "decide the pinning-pattern property");
    add_io(pat_check, true);
    pat_check->add_option("--svg", opt.svg_path, "write a figure of the pattern and arc cover");
    pat_check->add_option("--recheck", opt.recheck_path, "re-validate a stored verdict instead");
    auto* pat_sigma = pattern->add_subcommand("sigma5", "build and certify a sigma_5 pattern");
    add_io(pat_sigma, false);
    pat_sigma->add_option("--angles", opt.angles, "five outward normal angles in degrees");
    pat_sigma->add_option("--svg", opt.svg_path, "write a figure of the pattern and arc cover");
    auto* pat_search = pattern->add_subcommand("search", "randomized search for pinning patterns");
    add_io(pat_search, false);
    pat_search->add_option("--halfplanes", opt.halfplanes, "pattern size (default 5)");
    pat_search->add_option("--trials", opt.trials, "random patterns to try");
    pat_search->add_option("--count", opt.count, "stop after this many finds");
    pat_search->add_flag("--minimal", opt.minimal_filter, "require no proper sub-pattern to pin");

    auto* balls = app.add_subcommand("balls", "ball configuration operations");
    balls->require_subcommand(1);
    auto* b_lift = balls->add_subcommand("lift", "lift a pattern to tangent balls");
    add_io(b_lift, true);
    b_lift->add_option("--radius", opt.radius, "common ball radius (default 1)");
    b_lift->add_option("--gap", opt.gap, "height spacing, must exceed 2r (default 3)");
    auto* b_project = balls->add_subcommand("project", "project a d=3 config to its pattern");
    add_io(b_project, true);

    auto* screens = app.add_subcommand("screens", "screen family operations");
    screens->require_subcommand(1);
    auto* s_test = screens->add_subcommand("test", "strict-transversal feasibility");
    add_io(s_test, true);
    s_test->add_flag("--bad-set", opt.bad_set, "also test membership in the bad set");
    s_test->add_option("--recheck", opt.recheck_path, "re-validate a stored verdict instead");

    auto* pin = app.add_subcommand("pin", "pinning certificates");
    pin->require_subcommand(1);
    auto* p_verify = pin->add_subcommand("verify", "run the verification cascade");
    add_io(p_verify, true);
    p_verify->add_option("--rho-schedule", opt.rho_schedule, "chart sphere radii");
    p_verify->add_option("--samples", opt.samples, "directions per sphere");
    p_verify->add_option("--recheck", opt.recheck_path, "re-validate a stored certificate instead");
    auto* p_minimal = pin->add_subcommand("minimal", "extract a minimal pinning subfamily");
    add_io(p_minimal, true);
    p_minimal->add_option("--eps", opt.eps, "genericizing perturbation magnitude");
    p_minimal->add_option("--rho-schedule", opt.rho_schedule, "chart sphere radii");
    p_minimal->add_option("--samples", opt.samples, "directions per sphere");

    auto* construct = app.add_subcommand("construct", "constructions");
    construct->require_subcommand(1);
    auto* c_stable = construct->add_subcommand("stable", "net of sigma_5 quintuples");
    add_io(c_stable, false);
    c_stable->add_option("--dim", opt.dim, "ambient dimension (>= 3)")->required();
    c_stable->add_option("--resolution", opt.resolution, "flats in the net (default 1 / 32)");
    c_stable->add_option("--radius", opt.radius, "ball radius");
    c_stable->add_option("--gap", opt.gap, "height spacing");
    c_stable->add_option("--samples", opt.samples, "directions per sphere for verification");

    auto* demo = app.add_subcommand("demo", "end-to-end demonstrations");
    demo->require_subcommand(1);
    auto* d_main = demo->add_subcommand("main-theorem", "lower-bound family and its certificates");
    add_io(d_main, false);
    d_main->add_option("--dim", opt.dim, "ambient dimension (>= 3)")->required();
    d_main->add_option("--delta", opt.delta, "radius shrink (> 0)")->required();
    d_main->add_option("--resolution", opt.resolution, "net resolution");
    d_main->add_option("--starts", opt.starts, "global multistart budget");
    d_main->add_option("--subset-starts", opt.subset_starts, "per-subset multistart budget");
    d_main->add_option("--samples", opt.samples, "directions per sphere for verification");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    linepin::set_tol(opt.tolerance);
    try {
        if (pat_check->parsed()) return cmd_pattern_check(opt);
        if (pat_sigma->parsed()) return cmd_pattern_sigma5(opt);
        if (pat_search->parsed()) return cmd_pattern_search(opt);
        if (b_lift->parsed()) return cmd_balls_lift(opt);
        if (b_project->parsed()) return cmd_balls_project(opt);
        if (s_test->parsed()) return cmd_screens_test(opt);
        if (p_verify->parsed()) return cmd_pin_verify(opt);
        if (p_minimal->parsed()) return cmd_pin_minimal(opt);
        if (c_stable->parsed()) return cmd_construct_stable(opt);
        if (d_main->parsed()) return cmd_demo(opt);
    } catch (const linepin::ToleranceAmbiguous& e) {
        std::cout << json{{"error", {{"type", "ToleranceAmbiguous"}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        return kExitAmbiguous;
    } catch (const linepin::Error& e) {
        std::string type = "Error";
        if (dynamic_cast<const linepin::SchemaError*>(&e)) type = "SchemaError";
        else if (dynamic_cast<const linepin::InvalidConfig*>(&e)) type = "InvalidConfig";
        else if (dynamic_cast<const linepin::InvalidPattern*>(&e)) type = "InvalidPattern";
        else if (dynamic_cast<const linepin::ProvidedAnglesNotSigma5*>(&e)) type = "ProvidedAnglesNotSigma5";
        else if (dynamic_cast<const linepin::GapTooSmall*>(&e)) type = "GapTooSmall";
        else if (dynamic_cast<const linepin::DeltaTooLarge*>(&e)) type = "DeltaTooLarge";
        else if (dynamic_cast<const linepin::NotTangent*>(&e)) type = "NotTangent";
        else if (dynamic_cast<const linepin::NotSpanningTriple*>(&e)) type = "NotSpanningTriple";
        else if (dynamic_cast<const linepin::DegenerateInput*>(&e)) type = "DegenerateInput";
        else if (dynamic_cast<const linepin::ExtractionFailed*>(&e)) type = "ExtractionFailed";
        else if (dynamic_cast<const linepin::DisjointnessFailure*>(&e)) type = "DisjointnessFailure";
        else if (dynamic_cast<const linepin::GivesUp*>(&e)) type = "GivesUp";
        std::cout << json{{"error", {{"type", type}, {"message", e.what()}}}}.dump(2) << "\n";
        return kExitInput;
    }
    return 1;
}
