#pragma once

// Pinning verification (certificate hierarchy), transversal search,
// minimal-pinning extraction, the net-based stable construction, and the
// lower-bound demonstration pipeline.

#include <cstdint>
#include <optional>
#include <vector>

#include "linepin/balls.hpp"
#include "linepin/geometry.hpp"
#include "linepin/pattern.hpp"
#include "linepin/screens.hpp"

namespace linepin {

// max over balls of (distance from the line to the center minus radius);
// <= 0 exactly on transversals, 0 at the axis for tangent configurations.
double clearance_deficit(const BallConfig& C, const LineChart& g);

struct EmpiricalStats {
    std::vector<double> rho_schedule;
    int samples_per_sphere = 0;
    double min_deficit = 0.0;
    LineChart argmin;
    std::uint64_t seed = 0;
};

// Evidence hierarchy for "C pins the axis". PATTERN is a proof (d=3),
// FIRST_ORDER records only the necessary screen condition, EMPIRICAL is
// sampling evidence and never conclusive, NOT_PINNED carries an explicit
// witness transversal distinct from the axis.
struct PinCertificate {
    enum class Level { PATTERN, FIRST_ORDER, EMPIRICAL, NOT_PINNED };
    Level level = Level::NOT_PINNED;

    std::optional<PatternVerdict> pattern;
    std::optional<FeasibilityVerdict> first_order;
    std::optional<EmpiricalStats> empirical;
    std::optional<LineChart> witness;

    bool pinned() const { return level != Level::NOT_PINNED; }
    bool conclusive() const { return level == Level::PATTERN || level == Level::NOT_PINNED; }
};

struct VerifyOptions {
    std::vector<double> rho_schedule = {1e-3, 1e-4, 1e-5};
    int samples_per_sphere = 4096;
    std::uint64_t seed = 0;
};

// Evaluation cascade: first-order screen feasibility (strict transversal
// yields NOT_PINNED via the witness-segment walk), then the exact planar
// pattern test when d=3, then quasi-random sampling on chart spheres of
// each radius in the schedule.
PinCertificate verify_pin(const BallConfig& C, const VerifyOptions& opt = {});

// Multistart derivative-free minimization of the clearance deficit.
// Returns the first chart point found with deficit <= 0; absence of a find
// is not a proof. Starts cluster around `near` when given, otherwise lines
// through random pairs of ball interiors. Deterministic given seed.
std::optional<LineChart> find_transversal(const BallConfig& C, int starts, std::uint64_t seed,
                                          const std::optional<LineChart>& near = std::nullopt);

struct ExtractionResult {
    BallConfig family;          // exactly 2d-1 balls
    PinCertificate certificate; // full-strength verdict for the family
};

// Genericizes the screens (perturbation magnitude eps), re-realizes the
// balls, then greedily deletes balls while the pin verdict stays positive.
// Requires verify_pin(C) to be PATTERN or EMPIRICAL.
ExtractionResult extract_minimal(const BallConfig& C, double eps_perturb,
                                 const VerifyOptions& opt = {});

// Finite stand-in for the space of 3-flats through the axis. d=3 has the
// single canonical flat; d=4 samples flat normals over the projective
// sphere (Fibonacci lattice, `resolution` points); d>=5 uses seeded random
// orthonormal 2-frames.
struct GrassmannNet {
    std::vector<Flat3> flats;
    int resolution = 0;
};
GrassmannNet grassmann_net(int d, int resolution, std::uint64_t seed = 0);

// Lifts one congruent sigma_5 quintuple into every flat of the net, with
// quintuple j occupying heights offset by j*(5*gap + gap) so any two balls
// are separated by a hyperplane orthogonal to the axis.
BallConfig construct_stable(int d, int resolution, double r = 1.0, double gap = 3.0,
                            std::uint64_t seed = 0);

struct SubsetWitness {
    std::vector<int> indices; // balls retained (0-based within the demo family)
    LineChart transversal;
    double deficit = 0.0; // clearance deficit at the witness, <= 0
};

struct DemoReport {
    int d = 0;
    double delta = 0.0;
    int resolution = 0;
    BallConfig family;              // the shrunk 2d-1 balls
    PinCertificate pin_certificate; // for the tangent minimal family
    std::vector<SubsetWitness> subset_witnesses;
    bool all_subsets_witnessed = false;
    int global_starts = 0;
    bool global_transversal_found = false;
    std::optional<LineChart> global_witness;

    bool passed() const { return all_subsets_witnessed && !global_transversal_found; }
};

struct DemoOptions {
    int resolution = 0; // 0: pick a default for the dimension
    int subset_starts = 400;
    int global_starts = 10000;
    std::uint64_t seed = 0;
    VerifyOptions verify;
    double eps_perturb = 1e-6;
};

// Builds construct_stable -> extract_minimal -> shrink_radii(delta), then
// witnesses a transversal for every subfamily of size 2d-2 and runs the
// global multistart search on the full family.
DemoReport demo_main_theorem(int d, double delta, const DemoOptions& opt = {});

} // namespace linepin
