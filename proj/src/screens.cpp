#include "linepin/screens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linepin/sampling.hpp"
#include "linepin/tolerances.hpp"

namespace linepin {

Screen::Screen(double height, VectorXd normal) : lambda(height) {
    if (normal.size() < 1 || normal.squaredNorm() == 0.0)
        throw Error("Screen: normal must be a nonzero vector in R^{d-1}");
    n = unit(normal);
}

ScreenFamily::ScreenFamily(std::vector<Screen> s, int dim) : screens(std::move(s)), d(dim) {
    if (d < 2) throw Error("ScreenFamily: d must be >= 2");
    for (const auto& sc : screens)
        if (sc.dim() != d) throw Error("ScreenFamily: screen dimension mismatch");
}

VectorXd phi(const Screen& s) {
    const auto k = s.n.size();
    VectorXd v(2 * k);
    v.head(k) = (1.0 - s.lambda) * s.n;
    v.tail(k) = s.lambda * s.n;
    return v;
}

Eigen::MatrixXd phi_matrix(const ScreenFamily& F) {
    const int n = 2 * (F.d - 1);
    Eigen::MatrixXd A(n, F.size());
    for (int i = 0; i < F.size(); ++i) A.col(i) = phi(F.screens[i]);
    return A;
}

ScreenHit line_meets_screen(const LineChart& g, const Screen& s) {
    if (g.dim() != s.dim()) throw Error("line_meets_screen: dimension mismatch");
    VectorXd p = phi(s);
    VectorXd x = g.coords();
    double v = p.dot(x);
    double band = g_tol * p.norm() * std::max(1.0, x.norm());
    if (v > band) return ScreenHit::MISS;
    if (v < -band) return ScreenHit::INTERIOR;
    return ScreenHit::BOUNDARY;
}

// ---------------------------------------------------------------------------
// Wolfe's minimum-norm-point algorithm over conv{columns of A}.

namespace {

// min-norm point of the affine hull of the chosen columns:
// solve [0 1^T; 1 G] [mu; a] = [1; 0] with G the Gram matrix.
Eigen::VectorXd affine_coefficients(const Eigen::MatrixXd& A, const std::vector<int>& S) {
    const int m = static_cast<int>(S.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    rhs(0) = 1.0;
    for (int i = 0; i < m; ++i) {
        M(0, i + 1) = 1.0;
        M(i + 1, 0) = 1.0;
        for (int j = 0; j < m; ++j) M(i + 1, j + 1) = A.col(S[i]).dot(A.col(S[j]));
    }
    Eigen::VectorXd sol = M.fullPivLu().solve(rhs);
    return sol.tail(m);
}

} // namespace

MinNormResult min_norm_point(const Eigen::MatrixXd& A) {
    const int k = static_cast<int>(A.cols());
    if (k < 1) throw Error("min_norm_point: empty point set");
    double scale2 = 0.0;
    for (int i = 0; i < k; ++i) scale2 = std::max(scale2, A.col(i).squaredNorm());
    if (scale2 == 0.0) { // all points at the origin
        MinNormResult r;
        r.point = VectorXd::Zero(A.rows());
        r.coefficients = VectorXd::Zero(k);
        r.coefficients(0) = 1.0;
        return r;
    }
    const double opt_tol = 1e-12 * scale2;
    const double zero_tol = 1e-13;

    int first = 0;
    for (int i = 1; i < k; ++i)
        if (A.col(i).squaredNorm() < A.col(first).squaredNorm()) first = i;

    std::vector<int> S = {first};
    Eigen::VectorXd lam = Eigen::VectorXd::Ones(1);
    VectorXd x = A.col(first);

    const int max_major = 16 * k + 256;
    for (int major = 0; major < max_major; ++major) {
        int best = 0;
        double bestdot = x.dot(A.col(0));
        for (int i = 1; i < k; ++i) {
            double d = x.dot(A.col(i));
            if (d < bestdot) { bestdot = d; best = i; }
        }
        if (bestdot >= x.squaredNorm() - opt_tol) break; // optimal
        if (std::find(S.begin(), S.end(), best) != S.end()) break; // stall
        S.push_back(best);
        lam.conservativeResize(S.size());
        lam(S.size() - 1) = 0.0;

        for (int minor = 0; minor < 2 * k + 64; ++minor) {
            Eigen::VectorXd a = affine_coefficients(A, S);
            if (!a.allFinite()) { // degenerate corral: back out the last point
                S.pop_back();
                lam.conservativeResize(S.size());
                break;
            }
            if ((a.array() > zero_tol).all()) {
                lam = a;
                break;
            }
            double theta = 1.0;
            for (int i = 0; i < static_cast<int>(S.size()); ++i)
                if (a(i) <= zero_tol && lam(i) - a(i) > 0)
                    theta = std::min(theta, lam(i) / (lam(i) - a(i)));
            lam = (1.0 - theta) * lam + theta * a;
            // drop points whose weight vanished
            std::vector<int> keepS;
            std::vector<double> keepL;
            for (int i = 0; i < static_cast<int>(S.size()); ++i)
                if (lam(i) > zero_tol) { keepS.push_back(S[i]); keepL.push_back(lam(i)); }
            if (keepS.empty()) { keepS.push_back(S[0]); keepL.push_back(1.0); }
            S = keepS;
            lam = Eigen::Map<Eigen::VectorXd>(keepL.data(), keepL.size());
        }
        x = VectorXd::Zero(A.rows());
        for (int i = 0; i < static_cast<int>(S.size()); ++i) x += lam(i) * A.col(S[i]);
    }

    MinNormResult r;
    r.coefficients = VectorXd::Zero(k);
    double total = 0.0;
    for (int i = 0; i < static_cast<int>(S.size()); ++i) {
        double w = std::max(0.0, lam(i));
        r.coefficients(S[i]) += w;
        total += w;
    }
    if (total > 0.0) r.coefficients /= total;
    r.point = A * r.coefficients;
    return r;
}

FeasibilityVerdict strict_transversal(const ScreenFamily& F) {
    if (F.size() < 1) throw Error("strict_transversal: empty family");
    Eigen::MatrixXd A = phi_matrix(F);
    double scale = 0.0;
    for (int i = 0; i < A.cols(); ++i) scale = std::max(scale, A.col(i).norm());

    MinNormResult mn = min_norm_point(A);
    double nu = mn.point.norm();

    FeasibilityVerdict v;
    if (nu <= g_tol * scale) {
        v.status = FeasibilityVerdict::Status::NO_STRICT_TRANSVERSAL;
        v.certificate = mn.coefficients;
        v.certificate_residual = (A * v.certificate).norm();
        if (v.certificate_residual > g_tol * scale)
            throw ToleranceAmbiguous("vanishing combination does not validate at the tolerance");
        return v;
    }
    VectorXd w = -mn.point / mn.point.lpNorm<Eigen::Infinity>();
    double slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < A.cols(); ++i) slack = std::min(slack, -A.col(i).dot(w));
    if (slack > g_tol * scale) {
        v.status = FeasibilityVerdict::Status::STRICT_TRANSVERSAL;
        v.witness = w;
        v.witness_slack = slack;
        return v;
    }
    throw ToleranceAmbiguous("optimal slack within the tolerance band; perturb or tighten");
}

RankReport dependent_normals(const ScreenFamily& F) {
    Eigen::MatrixXd A = phi_matrix(F);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    RankReport r;
    if (sv.size() == 0 || sv(0) == 0.0) {
        r.rank = 0;
    } else {
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > g_tol * sv(0)) ++r.rank;
    }
    r.dependent = r.rank < F.size();
    return r;
}

bool in_bad_set(const ScreenFamily& F) {
    const int m = F.size();
    const int cap = 2 * (F.d - 1);
    if (m < 1) return false;
    // a strict transversal of the full family serves every subfamily
    if (m <= 64) {
        try {
            if (strict_transversal(F).strict()) return false;
        } catch (const ToleranceAmbiguous&) {
            // fall through to subset enumeration
        }
        if (m <= cap) return true; // the family itself is a bad subfamily
    }
    const int take = std::min(m, cap);
    std::vector<int> idx;
    // enumerate subsets of size 1..take
    for (int size = 1; size <= take; ++size) {
        idx.assign(size, 0);
        for (int i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            std::vector<Screen> sub;
            sub.reserve(size);
            for (int i : idx) sub.push_back(F.screens[i]);
            if (!strict_transversal(ScreenFamily(std::move(sub), F.d)).strict()) return true;
            int p = size - 1;
            while (p >= 0 && idx[p] == m - size + p) --p;
            if (p < 0) break;
            ++idx[p];
            for (int q = p + 1; q < size; ++q) idx[q] = idx[q - 1] + 1;
        }
    }
    return false;
}

namespace {

bool subset_full_rank(const Eigen::MatrixXd& A, const std::vector<int>& cols) {
    Eigen::MatrixXd B(A.rows(), cols.size());
    for (size_t i = 0; i < cols.size(); ++i) B.col(i) = A.col(cols[i]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return false;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= g_tol * sv(0)) return false;
    return true;
}

// every subset of size `take` among columns 0..i containing column i must
// have full rank; smaller subsets inherit independence
bool rank_conditions_hold(const Eigen::MatrixXd& A, int i, int take) {
    std::vector<int> pick(take - 1);
    std::vector<int> cols(take);
    if (take == 1) {
        return A.col(i).norm() > 0.0;
    }
    for (int t = 0; t < take - 1; ++t) pick[t] = t;
    for (;;) {
        for (int t = 0; t < take - 1; ++t) cols[t] = pick[t];
        cols[take - 1] = i;
        if (!subset_full_rank(A, cols)) return false;
        int p = take - 2;
        while (p >= 0 && pick[p] == i - (take - 1) + p) --p;
        if (p < 0) break;
        ++pick[p];
        for (int q = p + 1; q < take - 1; ++q) pick[q] = pick[q - 1] + 1;
    }
    return true;
}

Screen perturb_screen(const Screen& s, double eps, Rng& rng) {
    double lambda = s.lambda + rng.uniform(-eps, eps);
    if (s.n.size() == 1) return Screen(lambda, s.n); // S^0: nothing to rotate
    VectorXd t;
    do {
        VectorXd v = rng.unit_vector(static_cast<int>(s.n.size()));
        t = v - v.dot(s.n) * s.n;
    } while (t.squaredNorm() < 1e-12);
    t /= t.norm();
    double theta = rng.uniform(0.0, eps);
    return Screen(lambda, std::cos(theta) * s.n + std::sin(theta) * t);
}

} // namespace

ScreenFamily genericize(const ScreenFamily& F, double eps, std::uint64_t seed) {
    if (eps <= 0.0) throw Error("genericize: eps must be positive");
    const int m = F.size();
    const int cap = 2 * (F.d - 1);
    ScreenFamily out = F;
    Rng rng(seed ^ 0xa02bdbf7bb3c0a7ULL);
    if (m > 16) {
        // the subset audit is combinatorial in m; above desk scale perturb
        // every element once and let callers audit the subsets they need
        for (int i = 1; i < m; ++i) out.screens[i] = perturb_screen(F.screens[i], eps, rng);
        return out;
    }
    for (int i = 1; i < m; ++i) {
        const int take = std::min(i + 1, cap);
        bool ok = false;
        for (int attempt = 0; attempt < 300; ++attempt) {
            // keep the original element when it already satisfies the ranks
            out.screens[i] = (attempt == 0) ? F.screens[i] : perturb_screen(F.screens[i], eps, rng);
            Eigen::MatrixXd A(2 * (F.d - 1), i + 1);
            for (int cidx = 0; cidx <= i; ++cidx) A.col(cidx) = phi(out.screens[cidx]);
            if (rank_conditions_hold(A, i, take)) { ok = true; break; }
        }
        if (!ok) throw GivesUp("genericize: could not escape rank degeneracy at screen " +
                               std::to_string(i + 1));
    }
    return out;
}

} // namespace linepin
