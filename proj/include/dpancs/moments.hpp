#ifndef DPANCS_MOMENTS_HPP
#define DPANCS_MOMENTS_HPP

// Field-operator expectation values in a DPANCS, by two independent routes:
// direct log-space series (moments_series) and dense-matrix quadratic forms
// against an explicitly built state (moments_oracle). Tests hold the two
// routes against each other; production code uses the series.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonlinearity.hpp"
#include "special.hpp"
#include "states.hpp"

namespace dpancs {

struct MomentSet {
    std::complex<double> exp_a;  // <a>
    std::complex<double> exp_a2; // <a^2>
    std::complex<double> exp_a4; // <a^4>
    double exp_n;                // <adag a>
    double exp_ad2a2;            // <adag^2 a^2>
    double exp_nsq;              // <(adag a)^2>
};

namespace detail {

// Shared series core T_n = x^n (n+m)! [f^2(n+m)]! / ((n!)^2 [f^4(n)]!),
// the summand of the inverse squared normalization.
inline double log_core(double lx, int n, int m, const NonlinearityFn& f) {
    const double nlx = n == 0 ? 0.0 : n * lx; // 0 * -inf at x = 0
    return nlx + std::lgamma(n + m + 1.0) + f.log_fact_fsq(n + m) - 2.0 * std::lgamma(n + 1.0) -
           2.0 * f.log_fact_fsq(n);
}

} // namespace detail

// Six expectation values by their normal-ordered series. Every series is
// T_n times a positive factor, so each sums in log space with the phase of
// alpha applied outside. Requires family DPANCS (or NLCS, the m = 0 case).
inline MomentSet moments_series(const StateSpec& spec, double rel_tol = 1e-14) {
    if (spec.family != StateFamily::DPANCS && spec.family != StateFamily::NLCS)
        throw std::invalid_argument("moments_series: series cover the m >= 0 families only");
    if (spec.m < 0) throw std::invalid_argument("moments_series: m must be >= 0");
    const int m = spec.m;
    const NonlinearityFn& f = spec.f;
    const double x = std::norm(spec.alpha);
    const double lx = std::log(x);

    auto core = [&](int n) { return detail::log_core(lx, n, m, f); };
    const double log_s2 = log_sum_series(core, rel_tol);

    auto lowered_factor = [&](int n, int j) {
        // log of (n+m+j) f(n+m+j) / ((n+j) f^2(n+j)), one ladder step of a
        return std::log(n + m + j) + 0.5 * std::log(f.f_sq(n + m + j)) - std::log(n + j) -
               std::log(f.f_sq(n + j));
    };
    const double log_a1 =
        log_sum_series([&](int n) { return core(n) + lowered_factor(n, 1); }, rel_tol);
    const double log_a2 = log_sum_series(
        [&](int n) { return core(n) + lowered_factor(n, 1) + lowered_factor(n, 2); }, rel_tol);
    const double log_a4 = log_sum_series(
        [&](int n) {
            const double nlx = n == 0 ? 0.0 : n * lx;
            return nlx + std::lgamma(n + m + 5.0) + f.log_fact_f(n + m + 4) + f.log_fact_f(n + m) -
                   std::lgamma(n + 1.0) - std::lgamma(n + 5.0) - f.log_fact_fsq(n) -
                   f.log_fact_fsq(n + 4);
        },
        rel_tol);
    const double log_n1 = log_sum_series(
        [&](int n) { return n + m == 0 ? -std::numeric_limits<double>::infinity()
                                       : core(n) + std::log(n + m + 0.0); },
        rel_tol);
    const double log_nsq = log_sum_series(
        [&](int n) { return n + m == 0 ? -std::numeric_limits<double>::infinity()
                                       : core(n) + 2.0 * std::log(n + m + 0.0); },
        rel_tol);
    const double log_ad2a2 = log_sum_series(
        [&](int n) {
            if (n + m < 2) return -std::numeric_limits<double>::infinity();
            return core(n) + std::log(n + m + 0.0) + std::log(n + m - 1.0);
        },
        rel_tol);

    const std::complex<double> a = spec.alpha;
    MomentSet ms;
    ms.exp_a = a * std::exp(log_a1 - log_s2);
    ms.exp_a2 = a * a * std::exp(log_a2 - log_s2);
    ms.exp_a4 = a * a * a * a * std::exp(log_a4 - log_s2);
    ms.exp_n = std::exp(log_n1 - log_s2);
    ms.exp_nsq = std::exp(log_nsq - log_s2);
    ms.exp_ad2a2 = std::exp(log_ad2a2 - log_s2);
    return ms;
}

// Independent route: quadratic forms <psi|M|psi> with dense truncated
// matrices built from the annihilation operator. The state should carry a
// tail bound well below the agreement tolerance being tested.
inline MomentSet moments_oracle(const FockVector& state) {
    const int N = state.truncation();
    const int S = N + 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(S, S);
    for (int k = 1; k <= N; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Eigen::MatrixXd a2 = a * a;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd nhat = a.transpose() * a;
    const Eigen::MatrixXd ad2a2 = a2.transpose() * a2;
    const Eigen::MatrixXd nsq = nhat * nhat;

    Eigen::VectorXcd psi(S);
    for (int k = 0; k <= N; ++k) psi(k) = state.c[static_cast<size_t>(k)];

    auto form = [&psi](const Eigen::MatrixXd& M) -> std::complex<double> {
        return psi.adjoint() * (M * psi);
    };
    auto real_form = [&](const Eigen::MatrixXd& M, const char* what) {
        const std::complex<double> v = form(M);
        if (std::fabs(v.imag()) > 1e-10 * std::max(1.0, std::fabs(v.real())))
            throw std::runtime_error(std::string("moments_oracle: nonreal ") + what);
        return v.real();
    };

    MomentSet ms;
    ms.exp_a = form(a);
    ms.exp_a2 = form(a2);
    ms.exp_a4 = form(a4);
    ms.exp_n = real_form(nhat, "<adag a>");
    ms.exp_ad2a2 = real_form(ad2a2, "<adag^2 a^2>");
    ms.exp_nsq = real_form(nsq, "<(adag a)^2>");
    return ms;
}

} // namespace dpancs

#endif
