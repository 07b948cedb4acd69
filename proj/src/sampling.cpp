#include "linepin/sampling.hpp"

#include <cmath>
#include <numbers>

namespace linepin {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double a, b;
    do {
        a = uniform();
    } while (a <= 0.0);
    b = uniform();
    double r = std::sqrt(-2.0 * std::log(a));
    double t = 2.0 * std::numbers::pi * b;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

Eigen::VectorXd Rng::unit_vector(int k) {
    Eigen::VectorXd v(k);
    do {
        for (int i = 0; i < k; ++i) v(i) = normal();
    } while (v.squaredNorm() < 1e-12);
    return v / v.norm();
}

double inverse_normal_cdf(double p) {
    // Acklam 2003
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

SphereSequence::SphereSequence(int k, std::uint64_t seed) : k_(k), alpha_(k), state_(k) {
    // generalized golden ratio: unique real root > 1 of x^{k+1} = x + 1
    double phi = 1.5;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (k + 1));
    double a = 1.0;
    for (int i = 0; i < k; ++i) {
        a /= phi;
        alpha_(i) = a;
    }
    // seed determines the sequence offset
    std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int i = 0; i < k; ++i) state_(i) = (gen() >> 11) * 0x1.0p-53;
}

Eigen::VectorXd SphereSequence::next() {
    Eigen::VectorXd v(k_);
    for (;;) {
        for (int i = 0; i < k_; ++i) {
            state_(i) += alpha_(i);
            state_(i) -= std::floor(state_(i));
            double p = std::min(std::max(state_(i), 1e-12), 1.0 - 1e-12);
            v(i) = inverse_normal_cdf(p);
        }
        double n2 = v.squaredNorm();
        if (n2 > 1e-12) return v / std::sqrt(n2);
    }
}

} // namespace linepin
