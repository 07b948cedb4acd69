#include "linepin/balls.hpp"

#include <cmath>

#include "linepin/tolerances.hpp"

namespace linepin {

Ball::Ball(VectorXd c, double r) : center(std::move(c)), radius(r) {
    if (center.size() < 2) throw InvalidConfig("Ball: center must lie in R^d, d >= 2");
    if (!(radius > 0.0)) throw InvalidConfig("Ball: radius must be positive");
}

BallConfig::BallConfig(std::vector<Ball> b, int dim) : balls(std::move(b)), d(dim) {
    if (d < 2) throw InvalidConfig("BallConfig: d must be >= 2");
    for (const auto& ball : balls)
        if (ball.dim() != d) throw InvalidConfig("BallConfig: ball dimension mismatch");
}

ValidationReport validate(const BallConfig& C) {
    ValidationReport rep;
    const int k = C.size();
    rep.tangency_error.reserve(k);
    for (const auto& b : C.balls) {
        double err = std::abs(b.inplane().norm() - b.radius) / b.radius;
        rep.tangency_error.push_back(err);
        if (err > g_tol) rep.tangency_ok = false;
    }
    for (int i = 0; i + 1 < k; ++i)
        if (!(C.balls[i].height() < C.balls[i + 1].height())) rep.ordering_ok = false;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            double m = (C.balls[i].center - C.balls[j].center).norm() -
                       (C.balls[i].radius + C.balls[j].radius);
            rep.disjoint_margin.push_back(m);
            if (!(m > 0.0)) rep.disjoint_ok = false;
        }
    return rep;
}

void require_valid(const BallConfig& C) {
    ValidationReport rep = validate(C);
    if (!rep.ok()) {
        std::string what = "invalid ball configuration:";
        if (!rep.tangency_ok) what += " tangency";
        if (!rep.ordering_ok) what += " ordering";
        if (!rep.disjoint_ok) what += " disjointness";
        throw InvalidConfig(what);
    }
}

HalfplanePattern project_to_pattern(const BallConfig& C) {
    if (C.d != 3) throw InvalidConfig("project_to_pattern: requires d = 3");
    require_valid(C);
    std::vector<Vector2d> normals;
    normals.reserve(C.size());
    for (const auto& b : C.balls) normals.emplace_back(-b.center(0), -b.center(1));
    return HalfplanePattern::from_normals(std::move(normals));
}

ScreenFamily screens_of(const BallConfig& C) {
    require_valid(C);
    std::vector<Screen> screens;
    screens.reserve(C.size());
    for (const auto& b : C.balls) screens.emplace_back(b.height(), VectorXd(-b.inplane()));
    return ScreenFamily(std::move(screens), C.d);
}

BallConfig lift_pattern(const HalfplanePattern& P, double r, double gap,
                        const std::optional<Flat3>& T) {
    if (!(r > 0.0)) throw InvalidConfig("lift_pattern: radius must be positive");
    if (!(gap > 2.0 * r)) throw GapTooSmall("lift_pattern: gap must exceed 2r");
    const Flat3 flat = T ? *T : Flat3::canonical(3);
    std::vector<Ball> balls;
    balls.reserve(P.normals.size());
    for (int i = 0; i < P.size(); ++i) {
        Vector2d dir = unit2(P.normals[i]);
        double lambda = static_cast<double>(i + 1) * gap;
        balls.emplace_back(embed_in_flat(flat, {-r * dir.x(), -r * dir.y(), lambda}), r);
    }
    return BallConfig(std::move(balls), flat.dim());
}

Ball shrink_toward_touchpoint(const Ball& B, double s) {
    if (!(s > 0.0 && s < 1.0)) throw Error("shrink_toward_touchpoint: s must be in (0,1)");
    double err = std::abs(B.inplane().norm() - B.radius) / B.radius;
    if (err > g_tol) throw NotTangent("shrink_toward_touchpoint: ball is not tangent to the axis");
    VectorXd touch = VectorXd::Zero(B.dim());
    touch(B.dim() - 1) = B.height();
    return Ball(B.center + s * (touch - B.center), (1.0 - s) * B.radius);
}

BallConfig shrink_radii(const BallConfig& C, double delta) {
    double rmin = std::numeric_limits<double>::infinity();
    for (const auto& b : C.balls) rmin = std::min(rmin, b.radius);
    if (!(delta > 0.0)) throw DeltaTooLarge("shrink_radii: delta must be positive");
    if (!(delta < rmin)) throw DeltaTooLarge("shrink_radii: delta must stay below the smallest radius");
    BallConfig out = C;
    for (auto& b : out.balls) b.radius -= delta;
    return out;
}

} // namespace linepin
