#include "linepin/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "linepin/sampling.hpp"
#include "linepin/tolerances.hpp"

namespace linepin {

double clearance_deficit(const BallConfig& C, const LineChart& g) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& b : C.balls)
        worst = std::max(worst, line_point_distance(g, b.center) - b.radius);
    return worst;
}

namespace {

// Compass search: greedy coordinate moves with a halving step. f is a max
// of smooth terms, so a gradient contract is not assumed.
struct DescentResult {
    VectorXd x;
    double value = 0.0;
};

template <typename F>
DescentResult compass_minimize(F&& f, VectorXd x0, double step, double min_step, int max_evals,
                               double stop_below) {
    DescentResult r{std::move(x0), 0.0};
    r.value = f(r.x);
    int evals = 1;
    const int n = static_cast<int>(r.x.size());
    while (step > min_step && evals < max_evals && r.value > stop_below) {
        bool improved = false;
        for (int j = 0; j < n && r.value > stop_below; ++j) {
            for (double s : {+1.0, -1.0}) {
                VectorXd y = r.x;
                y(j) += s * step;
                double fy = f(y);
                ++evals;
                if (fy < r.value) {
                    r.x = std::move(y);
                    r.value = fy;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return r;
}

// Walks from the axis along a strict-transversal witness direction in the
// chart, halving the step until the line lies strictly inside every ball.
std::optional<LineChart> walk_witness_segment(const BallConfig& C, const VectorXd& direction) {
    double t = 1.0;
    for (int it = 0; it < 200; ++it) {
        LineChart g = LineChart::from_coords(t * direction);
        if (clearance_deficit(C, g) < 0.0 &&
            chart_distance(g, LineChart::axis(C.d)) > g_tol)
            return g;
        t *= 0.5;
    }
    return std::nullopt;
}

} // namespace

PinCertificate verify_pin(const BallConfig& C, const VerifyOptions& opt) {
    require_valid(C);
    PinCertificate cert;

    bool first_order_ambiguous = false;
    try {
        cert.first_order = strict_transversal(screens_of(C));
    } catch (const ToleranceAmbiguous&) {
        first_order_ambiguous = true;
    }

    if (cert.first_order && cert.first_order->strict()) {
        if (auto g = walk_witness_segment(C, cert.first_order->witness)) {
            cert.level = PinCertificate::Level::NOT_PINNED;
            cert.witness = *g;
            return cert;
        }
        // the walk is guaranteed for exact strictness; fall through honestly
    }

    if (C.d == 3) {
        PatternVerdict pv = is_pinning_pattern(project_to_pattern(C));
        if (pv.is_pinning) {
            cert.level = PinCertificate::Level::PATTERN;
            cert.pattern = std::move(pv);
            return cert;
        }
    }

    if (opt.rho_schedule.empty() || opt.samples_per_sphere <= 0) {
        if (cert.first_order && !cert.first_order->strict()) {
            cert.level = PinCertificate::Level::FIRST_ORDER;
            return cert;
        }
        if (first_order_ambiguous)
            throw ToleranceAmbiguous("verify_pin: first-order test ambiguous and sampling disabled");
        throw Error("verify_pin: no evidence path available");
    }

    const int n = 2 * (C.d - 1);
    const LineChart axis = LineChart::axis(C.d);
    EmpiricalStats stats;
    stats.rho_schedule = opt.rho_schedule;
    stats.samples_per_sphere = opt.samples_per_sphere;
    stats.seed = opt.seed;
    stats.min_deficit = std::numeric_limits<double>::infinity();
    stats.argmin = axis;

    for (double rho : opt.rho_schedule) {
        SphereSequence seq(n, opt.seed);
        for (int i = 0; i < opt.samples_per_sphere; ++i) {
            LineChart g = LineChart::from_coords(rho * seq.next());
            double f = clearance_deficit(C, g);
            if (f < stats.min_deficit) {
                stats.min_deficit = f;
                stats.argmin = g;
            }
            if (f <= 0.0) {
                // refine: descend while staying a transversal, then report
                auto fn = [&](const VectorXd& x) {
                    return clearance_deficit(C, LineChart::from_coords(x));
                };
                DescentResult r =
                    compass_minimize(fn, g.coords(), rho, 1e-15, 2000, -g_tol);
                LineChart w = LineChart::from_coords(r.x);
                cert.level = PinCertificate::Level::NOT_PINNED;
                cert.witness = (r.value <= 0.0 && chart_distance(w, axis) > g_tol) ? w : g;
                cert.empirical = std::move(stats);
                return cert;
            }
        }
    }

    cert.level = PinCertificate::Level::EMPIRICAL;
    cert.empirical = std::move(stats);
    return cert;
}

std::optional<LineChart> find_transversal(const BallConfig& C, int starts, std::uint64_t seed,
                                          const std::optional<LineChart>& near) {
    if (starts < 1) throw Error("find_transversal: starts must be >= 1");
    const int k = C.size();
    const int n = 2 * (C.d - 1);
    if (k == 0) return LineChart::axis(C.d);

    auto fn = [&](const VectorXd& x) { return clearance_deficit(C, LineChart::from_coords(x)); };
    static const double kNearRadii[] = {1e-3, 1e-2, 1e-1, 0.5};

    Rng rng(seed);
    double extent = 1.0;
    for (const auto& b : C.balls) extent = std::max(extent, b.inplane().norm() + b.radius);

    for (int s = 0; s < starts; ++s) {
        VectorXd x0(n);
        if (near) {
            double rho = kNearRadii[s % 4] * std::max(1.0, near->coords().norm());
            x0 = near->coords() + rho * rng.unit_vector(n);
        } else {
            // a line through the interiors of two random balls
            int i = rng.uniform_int(k);
            int j = k == 1 ? i : rng.uniform_int(k);
            VectorXd a = C.balls[i].center + 0.9 * C.balls[i].radius * rng.unit_vector(C.d);
            VectorXd b = C.balls[j].center + 0.9 * C.balls[j].radius * rng.unit_vector(C.d);
            double dz = b(C.d - 1) - a(C.d - 1);
            if (std::abs(dz) < 1e-9) continue; // nearly orthogonal to the axis: outside the chart
            VectorXd din = (b - a).head(n / 2);
            VectorXd ain = a.head(n / 2);
            double za = a(C.d - 1);
            x0.head(n / 2) = ain + (0.0 - za) / dz * din;
            x0.tail(n / 2) = ain + (1.0 - za) / dz * din;
        }
        double step = near ? std::max(1e-4, kNearRadii[s % 4]) : 0.25 * extent;
        DescentResult r = compass_minimize(fn, std::move(x0), step, 1e-14, 6000, -g_tol / 2.0);
        if (r.value <= 0.0) return LineChart::from_coords(r.x);
    }
    return std::nullopt;
}

ExtractionResult extract_minimal(const BallConfig& C, double eps_perturb,
                                 const VerifyOptions& opt) {
    PinCertificate base = verify_pin(C, opt);
    if (base.level != PinCertificate::Level::PATTERN &&
        base.level != PinCertificate::Level::EMPIRICAL)
        throw Error("extract_minimal: configuration must verify as PATTERN or EMPIRICAL");

    // perturb screens into general position and re-realize the balls,
    // keeping each radius and touching height
    ScreenFamily F = genericize(screens_of(C), eps_perturb, opt.seed);
    std::vector<Ball> balls;
    balls.reserve(C.size());
    for (int i = 0; i < C.size(); ++i) {
        const Screen& s = F.screens[i];
        double r = C.balls[i].radius;
        VectorXd center(C.d);
        center.head(C.d - 1) = -r * s.n;
        center(C.d - 1) = s.lambda;
        balls.emplace_back(std::move(center), r);
    }
    BallConfig current(std::move(balls), C.d);
    if (!validate(current).ok())
        throw ExtractionFailed("perturbed realization is no longer a valid configuration");

    const int target = 2 * C.d - 1;
    VerifyOptions scan = opt;
    scan.samples_per_sphere = std::max(256, opt.samples_per_sphere / 8);

    auto without = [](const BallConfig& cfg, int drop) {
        std::vector<Ball> rest;
        rest.reserve(cfg.size() - 1);
        for (int i = 0; i < cfg.size(); ++i)
            if (i != drop) rest.push_back(cfg.balls[i]);
        return BallConfig(std::move(rest), cfg.d);
    };

    while (current.size() > target) {
        bool removed = false;
        for (int i = 0; i < current.size(); ++i) {
            BallConfig cand = without(current, i);
            if (!verify_pin(cand, scan).pinned()) continue;
            if (!verify_pin(cand, opt).pinned()) continue; // confirm at full strength
            current = std::move(cand);
            removed = true;
            break;
        }
        if (!removed) break;
    }

    if (current.size() != target) {
        std::string what = "extract_minimal: greedy deletion stalled at " +
                           std::to_string(current.size()) + " balls (target " +
                           std::to_string(target) + ")";
        throw ExtractionFailed(what);
    }
    PinCertificate cert = verify_pin(current, opt);
    if (!cert.pinned())
        throw ExtractionFailed("extract_minimal: final family fails full-strength verification");
    return {std::move(current), std::move(cert)};
}

GrassmannNet grassmann_net(int d, int resolution, std::uint64_t seed) {
    if (d < 3) throw Error("grassmann_net: d must be >= 3");
    if (resolution < 1) throw Error("grassmann_net: resolution must yield at least one flat");
    GrassmannNet net;
    net.resolution = resolution;
    if (d == 3) {
        net.flats.push_back(Flat3::canonical(3));
        return net;
    }
    if (d == 4) {
        // flat normals on the projective hemisphere, Fibonacci lattice
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < resolution; ++i) {
            double z = (i + 0.5) / resolution;
            double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phiang = golden * i;
            Eigen::Vector3d nu(rho * std::cos(phiang), rho * std::sin(phiang), z);
            int least = 0;
            for (int c = 1; c < 3; ++c)
                if (std::abs(nu(c)) < std::abs(nu(least))) least = c;
            Eigen::Vector3d axis = Eigen::Vector3d::Zero();
            axis(least) = 1.0;
            Eigen::Vector3d w1 = nu.cross(axis).normalized();
            Eigen::Vector3d w2 = nu.cross(w1).normalized();
            net.flats.emplace_back(VectorXd(w1), VectorXd(w2));
        }
        return net;
    }
    Rng rng(seed ^ 0x51e9a3c6b1ULL);
    for (int i = 0; i < resolution; ++i) {
        VectorXd v1 = rng.unit_vector(d - 1);
        VectorXd v2;
        do {
            VectorXd v = rng.unit_vector(d - 1);
            v2 = v - v.dot(v1) * v1;
        } while (v2.squaredNorm() < 1e-12);
        v2 /= v2.norm();
        net.flats.emplace_back(std::move(v1), std::move(v2));
    }
    return net;
}

BallConfig construct_stable(int d, int resolution, double r, double gap, std::uint64_t seed) {
    if (d < 3) throw Error("construct_stable: d must be >= 3");
    GrassmannNet net = grassmann_net(d, resolution, seed);
    HalfplanePattern P = sigma5();
    std::vector<Ball> balls;
    balls.reserve(5 * net.flats.size());
    for (size_t j = 0; j < net.flats.size(); ++j) {
        BallConfig q = lift_pattern(P, r, gap, net.flats[j]);
        double offset = static_cast<double>(j) * (5.0 * gap + gap);
        for (auto& b : q.balls) {
            b.center(d - 1) += offset;
            balls.push_back(std::move(b));
        }
    }
    BallConfig C(std::move(balls), d);
    if (!validate(C).ok())
        throw DisjointnessFailure("construct_stable: height packing failed to separate quintuples");
    return C;
}

DemoReport demo_main_theorem(int d, double delta, const DemoOptions& opt) {
    if (d < 3) throw Error("demo_main_theorem: d must be >= 3");
    if (!(delta > 0.0)) throw DeltaTooLarge("demo_main_theorem: delta must be positive");

    DemoReport rep;
    rep.d = d;
    rep.delta = delta;
    rep.resolution = opt.resolution > 0 ? opt.resolution : (d == 3 ? 1 : 32);

    BallConfig stable = construct_stable(d, rep.resolution, 1.0, 3.0, opt.seed);
    ExtractionResult minimal = extract_minimal(stable, opt.eps_perturb, opt.verify);
    rep.pin_certificate = std::move(minimal.certificate);
    rep.family = shrink_radii(minimal.family, delta);

    const int m = rep.family.size(); // == 2d-1
    rep.all_subsets_witnessed = true;
    for (int drop = 0; drop < m; ++drop) {
        std::vector<Ball> tangent_rest, shrunk_rest;
        std::vector<int> indices;
        for (int i = 0; i < m; ++i) {
            if (i == drop) continue;
            tangent_rest.push_back(minimal.family.balls[i]);
            shrunk_rest.push_back(rep.family.balls[i]);
            indices.push_back(i);
        }
        BallConfig tangent_sub(std::move(tangent_rest), d);
        BallConfig shrunk_sub(std::move(shrunk_rest), d);

        // the tangent subfamily's refutation witness seeds the search
        std::optional<LineChart> near;
        PinCertificate sub = verify_pin(tangent_sub, opt.verify);
        if (!sub.pinned() && sub.witness) near = sub.witness;

        std::optional<LineChart> g;
        if (near && clearance_deficit(shrunk_sub, *near) <= 0.0) g = near;
        if (!g) g = find_transversal(shrunk_sub, opt.subset_starts, opt.seed + 101 + drop, near);
        if (!g) g = find_transversal(shrunk_sub, opt.subset_starts, opt.seed + 201 + drop,
                                     LineChart::axis(d));
        if (g) {
            rep.subset_witnesses.push_back({indices, *g, clearance_deficit(shrunk_sub, *g)});
        } else {
            rep.all_subsets_witnessed = false;
        }
    }

    rep.global_starts = opt.global_starts;
    auto global = find_transversal(rep.family, opt.global_starts, opt.seed + 7777);
    rep.global_transversal_found = global.has_value();
    rep.global_witness = global;
    return rep;
}

} // namespace linepin
