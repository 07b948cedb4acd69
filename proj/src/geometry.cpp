#include "linepin/geometry.hpp"

#include <cmath>

namespace linepin {

VectorXd unit(const VectorXd& v) {
    double s2 = v.squaredNorm();
    if (s2 <= 0.0) throw Error("unit: zero vector");
    if (std::abs(s2 - 1.0) <= kUnitSlack) return v;
    return v / std::sqrt(s2);
}

Eigen::Vector2d unit2(const Eigen::Vector2d& v) {
    double s2 = v.squaredNorm();
    if (s2 <= 0.0) throw Error("unit2: zero vector");
    if (std::abs(s2 - 1.0) <= kUnitSlack) return v;
    return v / std::sqrt(s2);
}

LineChart::LineChart(VectorXd a, VectorXd b) : u0(std::move(a)), u1(std::move(b)) {
    if (u0.size() != u1.size() || u0.size() < 1)
        throw Error("LineChart: anchor points must both lie in R^{d-1}, d >= 2");
}

LineChart LineChart::axis(int d) {
    return LineChart(VectorXd::Zero(d - 1), VectorXd::Zero(d - 1));
}

VectorXd LineChart::coords() const {
    VectorXd x(u0.size() * 2);
    x << u0, u1;
    return x;
}

LineChart LineChart::from_coords(const VectorXd& x) {
    if (x.size() % 2 != 0 || x.size() < 2) throw Error("LineChart: odd chart vector");
    auto h = x.size() / 2;
    return LineChart(x.head(h), x.tail(h));
}

VectorXd LineChart::point_at(double z) const {
    VectorXd p(u0.size() + 1);
    p.head(u0.size()) = (1.0 - z) * u0 + z * u1;
    p(u0.size()) = z;
    return p;
}

double line_point_distance(const LineChart& g, const VectorXd& p) {
    const auto k = g.u0.size();
    if (p.size() != k + 1) throw Error("line_point_distance: dimension mismatch");
    VectorXd a(k + 1), dvec(k + 1);
    a.head(k) = g.u0;
    a(k) = 0.0;
    dvec.head(k) = g.u1 - g.u0;
    dvec(k) = 1.0; // never degenerate: charts exclude lines orthogonal to the axis
    VectorXd w = p - a;
    double t = w.dot(dvec) / dvec.squaredNorm();
    double d2 = (w - t * dvec).squaredNorm();
    return std::sqrt(std::max(0.0, d2));
}

Flat3::Flat3(VectorXd a, VectorXd b) : w1(std::move(a)), w2(std::move(b)) {
    if (w1.size() != w2.size() || w1.size() < 2)
        throw Error("Flat3: basis vectors must lie in R^{d-1}, d >= 3");
    if (std::abs(w1.squaredNorm() - 1.0) > 1e-7 || std::abs(w2.squaredNorm() - 1.0) > 1e-7 ||
        std::abs(w1.dot(w2)) > 1e-7)
        throw Error("Flat3: basis must be orthonormal");
}

Flat3 Flat3::canonical(int d) {
    VectorXd a = VectorXd::Zero(d - 1), b = VectorXd::Zero(d - 1);
    a(0) = 1.0;
    b(1) = 1.0;
    return Flat3(std::move(a), std::move(b));
}

VectorXd embed_in_flat(const Flat3& T, const Eigen::Vector3d& q) {
    const auto k = T.w1.size();
    VectorXd p(k + 1);
    p.head(k) = q.x() * T.w1 + q.y() * T.w2;
    p(k) = q.z();
    return p;
}

double chart_distance(const LineChart& a, const LineChart& b) {
    return std::sqrt((a.u0 - b.u0).squaredNorm() + (a.u1 - b.u1).squaredNorm());
}

} // namespace linepin
