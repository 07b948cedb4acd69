#pragma once

// Screens (half-hyperplanes orthogonal to the x_d-axis), the Phi-map into
// line space, strict-transversal feasibility with Gordan certificates,
// rank tests, and generic perturbation.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "linepin/errors.hpp"
#include "linepin/geometry.hpp"

namespace linepin {

// S(lambda, n) = {(x, lambda) : <n, x> <= 0}, tangent to the axis at
// (0, lambda). Normals are stored unit, but every predicate downstream is
// scale-invariant in n.
struct Screen {
    double lambda = 0.0;
    VectorXd n;

    Screen() = default;
    Screen(double height, VectorXd normal);

    int dim() const { return static_cast<int>(n.size()) + 1; }
};

struct ScreenFamily {
    std::vector<Screen> screens;
    int d = 0;

    ScreenFamily() = default;
    ScreenFamily(std::vector<Screen> s, int dim);

    int size() const { return static_cast<int>(screens.size()); }
};

// Outer normal of the halfspace of chart lines meeting the screen:
// Phi(lambda, n) = ((1-lambda) n, lambda n) in R^{2d-2}.
VectorXd phi(const Screen& s);

// All Phi vectors as columns of a (2d-2) x k matrix.
Eigen::MatrixXd phi_matrix(const ScreenFamily& F);

enum class ScreenHit { MISS, BOUNDARY, INTERIOR };

// Sign of <Phi(s), (u0,u1)>: positive MISS, zero BOUNDARY, negative
// INTERIOR. The zero band is the tolerance scaled by the operand magnitudes.
ScreenHit line_meets_screen(const LineChart& g, const Screen& s);

struct FeasibilityVerdict {
    enum class Status { STRICT_TRANSVERSAL, NO_STRICT_TRANSVERSAL };
    Status status = Status::STRICT_TRANSVERSAL;

    // STRICT_TRANSVERSAL: x with <Phi_i, x> < 0 for all i, |x|_inf = 1
    VectorXd witness;
    double witness_slack = 0.0; // min_i -<Phi_i, x>

    // NO_STRICT_TRANSVERSAL: lambda >= 0, sum lambda = 1, sum lambda_i Phi_i ~ 0
    VectorXd certificate;
    double certificate_residual = 0.0; // |sum lambda_i Phi_i|

    bool strict() const { return status == Status::STRICT_TRANSVERSAL; }
};

// Decides whether some x satisfies <Phi_i, x> < 0 for every screen
// (equivalently, the family has a strict transversal). Exactly one Gordan
// alternative is returned, certificate-checked; ToleranceAmbiguous when
// neither side validates at the tolerance.
FeasibilityVerdict strict_transversal(const ScreenFamily& F);

struct RankReport {
    bool dependent = false;
    int rank = 0;
};

// Linear dependence of the Phi vectors; singular values below the tolerance times
// the largest are treated as zero.
RankReport dependent_normals(const ScreenFamily& F);

// Membership in the bad set: some subfamily of at most 2d-2 screens has no
// strict transversal.
bool in_bad_set(const ScreenFamily& F);

// Element-by-element perturbation within eps (heights by at most eps,
// normals by angle at most eps) after which every subset of at most 2d-2
// Phi vectors has full rank. Deterministic given seed; GivesUp after a
// bounded number of resamples.
ScreenFamily genericize(const ScreenFamily& F, double eps, std::uint64_t seed = 0);

// Minimum-norm point of conv{columns of A}; returns the point and the
// convex coefficients. Wolfe's algorithm, used as the feasibility kernel.
struct MinNormResult {
    VectorXd point;
    VectorXd coefficients;
};
MinNormResult min_norm_point(const Eigen::MatrixXd& A);

} // namespace linepin
