#pragma once

// Deterministic randomness helpers. Rng wraps a seeded mt19937_64 with
// hand-rolled uniform mapping so streams are reproducible independent of
// library distribution internals. SphereSequence yields low-discrepancy
// directions on S^{k-1} via a Kronecker sequence pushed through the
// inverse normal CDF.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace linepin {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int n) { // in [0, n)
        return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
    }

    std::uint64_t raw() { return gen_(); }

    // standard normal via Box-Muller
    double normal();

    Eigen::VectorXd unit_vector(int k);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Acklam's rational approximation of the standard normal quantile,
// accurate to ~1e-9 relative error.
double inverse_normal_cdf(double p);

class SphereSequence {
public:
    SphereSequence(int k, std::uint64_t seed);

    Eigen::VectorXd next();

private:
    int k_;
    Eigen::VectorXd alpha_; // Kronecker increments from the plastic constant
    Eigen::VectorXd state_;
};

} // namespace linepin
