#pragma once

// Halfplane patterns through the origin in R^2 and the exact decision
// procedure for the pinning-pattern property. All verdicts are decided by
// rational sign predicates on the stored coordinates; angles appear only
// in I/O.

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "linepin/errors.hpp"
#include "linepin/exact.hpp"

namespace linepin {

using Eigen::Vector2d;

// Ordered outward normals; H_i = {x : <n_i, x> <= 0}. No two normals may be
// parallel (equal or antipodal): no two halfplanes share a bounding line.
struct HalfplanePattern {
    std::vector<Vector2d> normals;

    static HalfplanePattern from_normals(std::vector<Vector2d> normals);
    static HalfplanePattern from_angles_deg(const std::vector<double>& degrees);

    int size() const { return static_cast<int>(normals.size()); }
};

// Open CCW arc on S^1 from `start` to `end` (as directions; magnitudes are
// irrelevant). Nonempty and shorter than the full circle; may wrap.
struct OpenArc {
    Vector2d start;
    Vector2d end;

    OpenArc(Vector2d s, Vector2d e);

    // strict containment, decided exactly
    bool contains(const Vector2d& u) const;

    double start_deg() const;
    double end_deg() const;
};

using IndexTriple = std::array<int, 3>; // 0-based, strictly increasing

struct PatternVerdict {
    bool is_pinning = false;
    // when pinning: the covering family of direction arcs, one per spanning triple
    std::vector<std::pair<IndexTriple, OpenArc>> cover;
    // when not pinning: a direction contained in no arc
    std::optional<Vector2d> witness;
};

// The five-halfplane pattern whose ten signed normals appear in the cyclic
// order n1,-n3,n5,n2,-n4,-n1,n3,-n5,-n2,n4. Default realization places the
// outward normals at 0, 108, 216, 324, 72 degrees. Given angles must
// realize the same cyclic order, else ProvidedAnglesNotSigma5.
HalfplanePattern sigma5(const std::optional<std::array<double, 5>>& angles_deg = std::nullopt);

// True iff nonnegative combinations of {a,b,c} fill the plane, i.e. the
// origin is interior to their positive hull. DegenerateInput on the exact
// boundary case of an antipodal pair with the third vector on their line.
bool positively_spans(const Vector2d& a, const Vector2d& b, const Vector2d& c);

// All i<j<k whose normals positively span the plane.
std::vector<IndexTriple> spanning_triples(const HalfplanePattern& P);

// Directions u with <u,n_i> < 0 and <u,n_k> > 0, for a spanning triple.
OpenArc triple_arc(const HalfplanePattern& P, const IndexTriple& t);

// Exact decision: pinning iff the arcs of all spanning triples cover S^1.
PatternVerdict is_pinning_pattern(const HalfplanePattern& P);

// A directed planar line p0 + t*u.
struct PlanarLine {
    Vector2d p0;
    Vector2d u;
};

struct Crossing {
    enum Kind { ENTER, EXIT, NEVER } kind = NEVER;
    double t = 0.0;
};

// Time at which the directed line crosses the boundary of {<n,x> <= 0}:
// EXIT when <u,n> > 0, ENTER when <u,n> < 0, NEVER when parallel.
Crossing crossing_time(const Vector2d& n, const PlanarLine& g);

// True iff g meets every halfplane of P and no pair i<j has exit(H_j)
// strictly before enter(H_i). Such a line witnesses that P is not a
// pinning pattern (it must also avoid the origin; callers sample such).
bool order_respecting(const HalfplanePattern& P, const PlanarLine& g);

// Randomized search for an order-respecting line meeting every halfplane.
// Lines are drawn with p0 uniform in the annulus 0.1 <= |p0| <= 10 and u
// uniform on S^1; when `direction` is given, u is fixed to it and p0 sweeps
// both sides of the origin along its normal. Deterministic given seed.
std::optional<PlanarLine> sample_counterexample(const HalfplanePattern& P, int trials,
                                                std::uint64_t seed,
                                                const std::optional<Vector2d>& direction = std::nullopt);

} // namespace linepin
