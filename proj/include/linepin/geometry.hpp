#pragma once

// Shared floating-point primitives: the line chart for lines not orthogonal
// to the x_d-axis, distances, and 3-flat embeddings.

#include <Eigen/Dense>

#include "linepin/errors.hpp"
#include "linepin/tolerances.hpp"

namespace linepin {

using Eigen::VectorXd;

// Returns v/|v|, but keeps the input bits when |v|^2 is already 1 within
// kUnitSlack. The shortcut makes dyadic rescalings direction-exact.
VectorXd unit(const VectorXd& v);
Eigen::Vector2d unit2(const Eigen::Vector2d& v);

// A line through (u0, 0) and (u1, 1); u0, u1 in R^{d-1}. Charts cover
// exactly the lines not orthogonal to the x_d-axis. The axis itself is
// LineChart::axis(d).
struct LineChart {
    VectorXd u0;
    VectorXd u1;

    LineChart() = default;
    LineChart(VectorXd a, VectorXd b);

    int dim() const { return static_cast<int>(u0.size()) + 1; }
    static LineChart axis(int d);

    // chart coordinates as one vector in R^{2d-2}
    VectorXd coords() const;
    static LineChart from_coords(const VectorXd& x);

    // point on the line at height z
    VectorXd point_at(double z) const;

    bool operator==(const LineChart& o) const { return u0 == o.u0 && u1 == o.u1; }
};

double line_point_distance(const LineChart& g, const VectorXd& p);

// A 3-flat span(w1,w2) + x_d-axis in R^d, given by an orthonormal pair
// w1, w2 in R^{d-1}. Requires d >= 3.
struct Flat3 {
    VectorXd w1;
    VectorXd w2;

    Flat3(VectorXd a, VectorXd b);
    int dim() const { return static_cast<int>(w1.size()) + 1; }

    static Flat3 canonical(int d);
};

// (x, y, z) -> x*w1 + y*w2 embedded in the first d-1 coordinates, height z.
VectorXd embed_in_flat(const Flat3& T, const Eigen::Vector3d& q);

// Chart-space Euclidean distance between two lines.
double chart_distance(const LineChart& a, const LineChart& b);

} // namespace linepin
