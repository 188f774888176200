#ifndef DPANCS_CRITERIA_HPP
#define DPANCS_CRITERIA_HPP

// Nonclassicality indicators built from a MomentSet: Mandel Q, second-order
// correlation g2, quadrature squeezing s_x / s_p, and amplitude-squared
// squeezing S_X / S_P. Negative Q, g2 < 1, or a negative squeezing entry
// each witness a nonclassical field.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "moments.hpp"
#include "states.hpp"

namespace dpancs {

struct CriteriaReport {
    double Q = 0.0;   // (<n^2> - <n>^2)/<n> - 1
    double g2 = 0.0;  // <adag^2 a^2>/<adag a>^2
    double s_x = 0.0; // in-phase quadrature; negative = squeezed
    double s_p = 0.0; // out-of-phase quadrature
    double S_X = 0.0; // amplitude-squared, in phase
    double S_P = 0.0; // amplitude-squared, out of phase
    bool q_defined = true;  // false at the vacuum (<n> = 0)
    bool g2_defined = true; // idem
    // sweep point that produced this row, filled by sweep()
    std::complex<double> alpha{0.0, 0.0};
    int m = 0;
    std::string f_label;
    int N_used = 0;
    std::string status = "ok";
};

namespace detail {

inline double real_checked(std::complex<double> z, const char* what) {
    if (std::fabs(z.imag()) > 1e-8 * std::max(1.0, std::fabs(z.real())))
        throw std::runtime_error(std::string("criteria: nonreal ") + what);
    return z.real();
}

} // namespace detail

// All combinations are evaluated in complex arithmetic and checked real at
// the end; nothing here assumes alpha is real.
inline CriteriaReport criteria(const MomentSet& ms) {
    using C = std::complex<double>;
    const C a1 = ms.exp_a, a2 = ms.exp_a2, a4 = ms.exp_a4;
    const C ad1 = std::conj(a1), ad2 = std::conj(a2), ad4 = std::conj(a4);
    const double n = ms.exp_n;

    CriteriaReport r;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (n > 0.0) {
        r.Q = (ms.exp_nsq - n * n) / n - 1.0;
        r.g2 = ms.exp_ad2a2 / (n * n);
    } else {
        r.Q = nan;
        r.g2 = nan;
        r.q_defined = false;
        r.g2_defined = false;
    }
    r.s_x = detail::real_checked(2.0 * n + a2 + ad2 - a1 * a1 - ad1 * ad1 - 2.0 * a1 * ad1, "s_x");
    r.s_p = detail::real_checked(2.0 * n - a2 - ad2 + a1 * a1 + ad1 * ad1 - 2.0 * a1 * ad1, "s_p");
    const C num_X = 0.25 * (ad4 + a4 + 2.0 * ms.exp_ad2a2) - 0.25 * (ad2 + a2) * (ad2 + a2);
    const C num_P = 0.25 * (2.0 * ms.exp_ad2a2 - ad4 - a4) + 0.25 * (ad2 - a2) * (ad2 - a2);
    r.S_X = detail::real_checked(num_X, "S_X") / (n + 0.5);
    r.S_P = detail::real_checked(num_P, "S_P") / (n + 0.5);
    return r;
}

// Criteria over a grid of real alpha for each m, rows ordered by (m, alpha).
// A point that fails to converge is reported in-row via status; the sweep
// itself keeps going.
inline std::vector<CriteriaReport> sweep(const std::vector<double>& alpha_grid,
                                         const std::vector<int>& m_list, const NonlinearityFn& f,
                                         double rel_tol = 1e-12) {
    std::vector<CriteriaReport> out;
    out.reserve(alpha_grid.size() * m_list.size());
    for (int m : m_list) {
        for (double alpha : alpha_grid) {
            StateSpec spec;
            spec.alpha = alpha;
            spec.m = m;
            spec.f = f;
            spec.family = m == 0 ? StateFamily::NLCS : StateFamily::DPANCS;
            CriteriaReport r;
            try {
                r = criteria(moments_series(spec, rel_tol));
                r.N_used = choose_truncation(spec, rel_tol);
            } catch (const std::exception& e) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                r.Q = r.g2 = r.s_x = r.s_p = r.S_X = r.S_P = nan;
                r.q_defined = r.g2_defined = false;
                r.status = e.what();
            }
            r.alpha = alpha;
            r.m = m;
            r.f_label = f.label();
            out.push_back(r);
        }
    }
    return out;
}

} // namespace dpancs

#endif
