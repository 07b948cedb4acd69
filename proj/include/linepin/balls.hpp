#pragma once

// Ball configurations tangent to the x_d-axis: validation, projection to
// halfplane patterns and screens, lifting patterns into flats, and the
// tangency-preserving / tangency-breaking shrink operations.

#include <optional>
#include <vector>

#include "linepin/geometry.hpp"
#include "linepin/pattern.hpp"
#include "linepin/screens.hpp"

namespace linepin {

struct Ball {
    VectorXd center;
    double radius = 0.0;

    Ball() = default;
    Ball(VectorXd c, double r);

    int dim() const { return static_cast<int>(center.size()); }
    double height() const { return center(center.size() - 1); }
    // in-plane part of the center (first d-1 coordinates)
    VectorXd inplane() const { return center.head(center.size() - 1); }
};

struct BallConfig {
    std::vector<Ball> balls;
    int d = 0;

    BallConfig() = default;
    BallConfig(std::vector<Ball> b, int dim);

    int size() const { return static_cast<int>(balls.size()); }
};

struct ValidationReport {
    bool tangency_ok = true;
    bool ordering_ok = true;
    bool disjoint_ok = true;
    // |dist(center_i, axis) - r_i| / r_i per ball
    std::vector<double> tangency_error;
    // |c_i - c_j| - (r_i + r_j) per pair i<j, flattened
    std::vector<double> disjoint_margin;

    bool ok() const { return tangency_ok && ordering_ok && disjoint_ok; }
};

// Itemized tangency / ordering / disjointness check with margins.
ValidationReport validate(const BallConfig& C);

// Throwing variant used by operations with a validity precondition.
void require_valid(const BallConfig& C);

// d=3 only: the halfplane pattern of the projection along the axis. The
// outward normal of H_i is the direction -p_i for center (p_i, lambda_i);
// direction vectors are deliberately left unnormalized so that the
// pattern is an exact function of the stored coordinates.
HalfplanePattern project_to_pattern(const BallConfig& C);

// One screen (lambda_i, -p_i/|p_i|) per ball, in configuration order.
ScreenFamily screens_of(const BallConfig& C);

// Places ball i at embed_in_flat(T, (-r*n_i, i*gap)) with radius r. The
// pattern's normals are used as directions (unit inputs keep their bits).
// Requires gap > 2r; the default flat is the canonical one in d=3.
BallConfig lift_pattern(const HalfplanePattern& P, double r, double gap,
                        const std::optional<Flat3>& T = std::nullopt);

// Moves the center toward the touching point by fraction s in (0,1) and
// scales the radius by (1-s); the screen is unchanged.
Ball shrink_toward_touchpoint(const Ball& B, double s);

// Reduces every radius by delta with centers fixed; breaks tangency so the
// axis is no longer a transversal. Requires 0 < delta < min radius.
BallConfig shrink_radii(const BallConfig& C, double delta);

} // namespace linepin
