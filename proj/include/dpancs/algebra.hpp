#ifndef DPANCS_ALGEBRA_HPP
#define DPANCS_ALGEBRA_HPP

// Deformed ladder-operator algebra on the truncated Fock space:
// A = a f(n_hat), Adag = f(n_hat) a_dag, the commutation identity
// [A, Adag^m] = g(n_hat, m) Adag^(m-1), and the deformed nonlinearity
// f_d that turns a DPANCS into an eigenvector of f_d(n_hat) a.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>

#include "nonlinearity.hpp"
#include "states.hpp"

namespace dpancs {

struct LadderMatrices {
    Eigen::MatrixXd a, adag, A, Adag, n;
};

// Dense (N+1)x(N+1) matrices; conventions a|n> = sqrt(n)|n-1>,
// A|n> = f(n) sqrt(n)|n-1>, Adag|n> = f(n+1) sqrt(n+1)|n+1>.
inline LadderMatrices ladder_matrices(const NonlinearityFn& f, int N) {
    if (N < 1) throw std::invalid_argument("ladder_matrices: N must be >= 1");
    const int S = N + 1;
    LadderMatrices L;
    L.a = Eigen::MatrixXd::Zero(S, S);
    L.A = Eigen::MatrixXd::Zero(S, S);
    L.n = Eigen::MatrixXd::Zero(S, S);
    for (int k = 1; k <= N; ++k) {
        const double r = std::sqrt(static_cast<double>(k));
        L.a(k - 1, k) = r;
        L.A(k - 1, k) = r * f.f(k);
    }
    for (int k = 0; k <= N; ++k) L.n(k, k) = k;
    L.adag = L.a.transpose();
    L.Adag = L.A.transpose();
    return L;
}

// Deformed nonlinearity f_d(n, f, m) = (n-m+1) f^2(n-m+1) / ((n+1) f(n+1)).
// Negative m selects the photon-subtracted family's relation (m -> -|m|).
// For 0 <= n < m the state has no support; the value is defined as 0 and
// flagged via in_support = false. n = m-1 is the hard boundary zero.
struct FdValue {
    double value;
    bool in_support;
};

inline FdValue f_d(int n, const NonlinearityFn& f, int m) {
    if (n < 0) throw std::domain_error("f_d: n must be >= 0");
    if (m > 0 && n < m) {
        return {0.0, false};
    }
    const int k = n - m + 1; // >= 1 here
    return {k * f.f_sq(k) / ((n + 1.0) * f.f(n + 1)), true};
}

// g(n, m) = (n+1) f^2(n+1) - (n-m+1) f^2(n-m+1); the k f^2(k) factor is 0 at
// k = 0 (ladder chain annihilates the vacuum before f is ever applied).
inline double g_commutator(int n, const NonlinearityFn& f, int m) {
    auto wf = [&f](int k) {
        if (k < 0) throw std::domain_error("g_commutator: argument below f's domain");
        return k == 0 ? 0.0 : k * f.f_sq(k);
    };
    return wf(n + 1) - wf(n - m + 1);
}

struct AlgebraResiduals {
    double expansion;  // Adag^m vs ([f(n)]!/[f(n-m)]!) adag^m
    double reordering; // adag^m f(n) vs f(n-m) adag^m
    double commutator; // [A, Adag^m] vs g(n, m) Adag^(m-1)
};

// Max-abs entry residuals of the three identities over the interior block
// (top m+1 rows and columns excluded; truncation breaks the ladder there).
// Products are evaluated in extended precision so the reported numbers
// measure the identities, not double-rounding of ~N^m sized entries.
inline AlgebraResiduals verify_algebra(const NonlinearityFn& f, int m, int N) {
    if (m < 1) throw std::invalid_argument("verify_algebra: m must be >= 1");
    if (N < m + 2) throw std::invalid_argument("verify_algebra: need N >= m + 2");
    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const int S = N + 1;

    Mat a = Mat::Zero(S, S), A = Mat::Zero(S, S);
    for (int k = 1; k <= N; ++k) {
        const long double r = std::sqrt(static_cast<long double>(k));
        const long double fk = std::sqrt(static_cast<long double>(f.f_sq(k)));
        a(k - 1, k) = r;
        A(k - 1, k) = r * fk;
    }
    const Mat adag = a.transpose();
    const Mat Adag = A.transpose();

    Mat adag_m = Mat::Identity(S, S), Adag_m = Mat::Identity(S, S), Adag_m1 = Mat::Identity(S, S);
    for (int j = 0; j < m; ++j) {
        adag_m = adag * adag_m;
        Adag_m = Adag * Adag_m;
        if (j < m - 1) Adag_m1 = Adag * Adag_m1;
    }

    // diag of [f(n)]!/[f(n-m)]! = f(n-m+1)...f(n); rows below m are zero rows
    // of adag^m, so their factor is irrelevant and set to 0.
    Mat ratio = Mat::Zero(S, S);
    for (int n = m; n <= N; ++n) {
        long double r = 1.0L;
        for (int j = n - m + 1; j <= n; ++j) r *= std::sqrt(static_cast<long double>(f.f_sq(j)));
        ratio(n, n) = r;
    }

    Mat F = Mat::Zero(S, S), Fshift = Mat::Zero(S, S), G = Mat::Zero(S, S);
    for (int n = 0; n <= N; ++n) {
        F(n, n) = std::sqrt(static_cast<long double>(f.f_sq(n)));
        if (n >= m) Fshift(n, n) = F(n - m, n - m);
        const long double up = (n + 1.0L) * static_cast<long double>(f.f_sq(n + 1));
        const int k = n - m + 1;
        const long double dn = k <= 0 ? 0.0L : k * static_cast<long double>(f.f_sq(k));
        G(n, n) = up - dn;
    }

    const Mat r1 = Adag_m - ratio * adag_m;
    const Mat r2 = adag_m * F - Fshift * adag_m;
    const Mat r3 = A * Adag_m - Adag_m * A - G * Adag_m1;

    const int keep = S - (m + 1); // interior block size
    auto interior_max = [keep](const Mat& r) {
        long double mx = 0.0L;
        for (int i = 0; i < keep; ++i)
            for (int j = 0; j < keep; ++j) mx = std::max(mx, std::fabs(static_cast<long double>(r(i, j))));
        return static_cast<double>(mx);
    };
    return {interior_max(r1), interior_max(r2), interior_max(r3)};
}

// l2 norm of f_d(n_hat, f, m) a |psi> - alpha |psi> over components 0..N-1
// (the top component needs the dropped coefficient c_{N+1} and is excluded).
inline double verify_eigenrelation(const FockVector& state, const StateSpec& spec) {
    const int N = state.truncation();
    const int m_eff = spec.family == StateFamily::NegativeM ? -std::abs(spec.m) : spec.m;
    double res_sq = 0.0;
    for (int k = 0; k < N; ++k) {
        const std::complex<double> lowered =
            f_d(k, spec.f, m_eff).value * std::sqrt(k + 1.0) * state.c[static_cast<size_t>(k) + 1];
        res_sq += std::norm(lowered - spec.alpha * state.c[static_cast<size_t>(k)]);
    }
    return std::sqrt(res_sq);
}

} // namespace dpancs

#endif
