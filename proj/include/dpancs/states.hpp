#ifndef DPANCS_STATES_HPP
#define DPANCS_STATES_HPP

// Normalized truncated Fock expansions of the four state families:
// nonlinear coherent states (NLCS), photon-added coherent states (PACS),
// deformed photon-added nonlinear coherent states (DPANCS) and the
// photon-subtracted-style negative-m family.

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nonlinearity.hpp"
#include "special.hpp"

namespace dpancs {

enum class StateFamily { NLCS, PACS, DPANCS, NegativeM };

struct StateSpec {
    std::complex<double> alpha;
    int m = 0; // photon-addition order; NegativeM reads |m| as the subtraction order
    NonlinearityFn f = NonlinearityFn::unity();
    StateFamily family = StateFamily::DPANCS;
};

struct FockVector {
    std::vector<std::complex<double>> c; // photon indices 0..N
    double tail_bound = 0.0;             // relative bound on dropped squared weight

    int truncation() const { return static_cast<int>(c.size()) - 1; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& z : c) s += std::norm(z);
        return s;
    }
};

namespace detail {

inline void validate_spec(const StateSpec& spec) {
    if (spec.m < 0 && spec.family != StateFamily::NegativeM)
        throw std::invalid_argument("negative m requires the NegativeM family");
    if (spec.family == StateFamily::PACS && spec.f.kind() != NonlinearityKind::Unity)
        throw std::invalid_argument("PACS family requires f = Unity");
    if (spec.family == StateFamily::NLCS && spec.m != 0)
        throw std::invalid_argument("NLCS family requires m = 0");
}

// Photon-index offset of series term n: DPANCS/PACS occupy |n+m>, the others |n>.
inline int photon_offset(const StateSpec& spec) {
    if (spec.family == StateFamily::DPANCS || spec.family == StateFamily::PACS)
        return spec.m;
    return 0;
}

// log |unnormalized amplitude| of series term n (the photon index is
// n + photon_offset). The alpha^n phase is attached separately.
inline double log_amp(const StateSpec& spec, int n) {
    const double la = std::abs(spec.alpha) == 0.0
                          ? -std::numeric_limits<double>::infinity()
                          : std::log(std::abs(spec.alpha));
    const double nla = n == 0 ? 0.0 : n * la;
    const NonlinearityFn& f = spec.f;
    switch (spec.family) {
        case StateFamily::NLCS:
            return nla - 0.5 * log_factorial(n) - f.log_fact_f(n);
        case StateFamily::PACS: {
            const int m = spec.m;
            return nla + 0.5 * log_factorial(n + m) - log_factorial(n);
        }
        case StateFamily::DPANCS: {
            const int m = spec.m;
            return nla + f.log_fact_f(n + m) + 0.5 * log_factorial(n + m) -
                   log_factorial(n) - f.log_fact_fsq(n);
        }
        case StateFamily::NegativeM: {
            const int mu = std::abs(spec.m);
            return nla + log_factorial(mu) + 0.5 * log_factorial(n) + f.log_fact_f(n) +
                   f.log_fact_fsq(mu) - log_factorial(n + mu) - f.log_fact_fsq(n + mu);
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace detail

// Smallest truncation N (photon index) whose estimated relative squared-weight
// tail is below tol, bounded below by m + 10. Divergent (alpha, f) pairs are
// reported instead of looping: the harmonious-type kinds only converge inside
// the unit disk.
inline int choose_truncation(const StateSpec& spec, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("choose_truncation: tol must be positive");
    if (!std::isfinite(std::abs(spec.alpha)))
        throw std::invalid_argument("choose_truncation: alpha must be finite");
    detail::validate_spec(spec);

    const int m_abs = std::abs(spec.m);
    const int floor_N = m_abs + 10;
    const int offset = detail::photon_offset(spec);
    if (std::abs(spec.alpha) == 0.0) return floor_N;

    const double log_tol = std::log(tol);
    double mx = -std::numeric_limits<double>::infinity();
    double scaled_sum = 0.0; // sum of exp(u_i - mx)
    double u = 2.0 * detail::log_amp(spec, 0);
    constexpr int cap = 400000;
    for (int n = 0; n < cap; ++n) {
        if (u > mx) {
            scaled_sum = scaled_sum * std::exp(mx - u) + 1.0;
            mx = u;
        } else {
            scaled_sum += std::exp(u - mx);
        }
        const double u_next = 2.0 * detail::log_amp(spec, n + 1);
        const double r = std::exp(u_next - u);
        if (n > 10000 && r >= 1.0)
            throw convergence_error("choose_truncation: series diverges for this (alpha, f)");
        if (r < 0.999) {
            // geometric tail bound: u_{n+1} / (1 - r) relative to the sum so far
            const double log_tail = u_next - std::log1p(-r);
            const double log_sum = mx + std::log(scaled_sum);
            if (log_tail - log_sum < log_tol) return std::max(n + offset, floor_N);
        }
        u = u_next;
    }
    throw convergence_error("choose_truncation: tolerance unreachable within term cap");
}

// Normalized state on photon indices 0..N; the normalization is recomputed
// from the truncated coefficients, so the result has unit norm by construction.
inline FockVector build_state(const StateSpec& spec, int N) {
    detail::validate_spec(spec);
    const int offset = detail::photon_offset(spec);
    if (N < offset + 1) throw std::invalid_argument("build_state: N below state support");

    const int n_terms = N - offset + 1; // series indices 0..n_terms-1
    std::vector<double> la(static_cast<size_t>(n_terms));
    for (int n = 0; n < n_terms; ++n) la[static_cast<size_t>(n)] = detail::log_amp(spec, n);

    std::vector<double> l2(la.size());
    for (size_t i = 0; i < la.size(); ++i) l2[i] = 2.0 * la[i];
    const double log_norm_sq = log_sum_exp(l2);
    if (!std::isfinite(log_norm_sq)) throw convergence_error("build_state: empty series");

    const double theta = std::arg(spec.alpha);
    FockVector v;
    v.c.assign(static_cast<size_t>(N) + 1, {0.0, 0.0});
    for (int n = 0; n < n_terms; ++n) {
        const double mag = std::exp(la[static_cast<size_t>(n)] - 0.5 * log_norm_sq);
        if (mag == 0.0) continue;
        v.c[static_cast<size_t>(n + offset)] = std::polar(mag, n * theta);
    }

    // tail estimate from the first dropped term's geometric bound
    const double u_next = 2.0 * detail::log_amp(spec, n_terms);
    if (std::isfinite(u_next)) {
        const double r = std::exp(u_next - l2.back());
        v.tail_bound = r < 1.0 ? std::exp(u_next - log_norm_sq) / (1.0 - r)
                               : std::numeric_limits<double>::infinity();
    }
    return v;
}

inline FockVector make_state(const StateSpec& spec, double tol = 1e-14) {
    return build_state(spec, choose_truncation(spec, tol));
}

// Closed-form normalization factor N^{m,f}_alpha (the Eq.-(5)-style ratio of
// the two series), available for f = sqrt(n) (Bessel I_0 and 2F3) and the
// Poschl-Teller f = sqrt(n + nu) (Bessel I_nu and 2F3). Others: no closed form.
inline std::optional<double> normalization_closed_form(const StateSpec& spec) {
    if (spec.m < 0 || spec.family == StateFamily::NegativeM || spec.family == StateFamily::PACS)
        return std::nullopt;
    const int m = spec.family == StateFamily::NLCS ? 0 : spec.m;
    const double x = std::norm(spec.alpha);
    const double md = m;

    switch (spec.f.kind()) {
        case NonlinearityKind::Sqrt: {
            // Sigma1 = I_0(2 sqrt x); Sigma2 = (m!)^2 2F3(1+m,1+m; 1,1,1; x)
            const double log_s1 = std::log(bessel_i(0.0, 2.0 * std::sqrt(x)));
            const double log_s2 =
                2.0 * std::lgamma(md + 1.0) +
                std::log(hyper_pfq({md + 1.0, md + 1.0}, {1.0, 1.0, 1.0}, x));
            return std::exp(0.5 * (log_s1 - log_s2));
        }
        case NonlinearityKind::SqrtShift: {
            const double nu = spec.f.nu();
            // Sigma1 = nu! x^(-nu/2) I_nu(2 sqrt x), with limit 1 at x = 0
            double log_s1 = 0.0;
            if (x > 0.0)
                log_s1 = std::lgamma(nu + 1.0) - 0.5 * nu * std::log(x) +
                         std::log(bessel_i(nu, 2.0 * std::sqrt(x)));
            // Sigma2 = m! (m+nu)!/nu! * 2F3(1+m, 1+m+nu; 1, 1+nu, 1+nu; x)
            const double log_s2 =
                std::lgamma(md + 1.0) + std::lgamma(md + nu + 1.0) - std::lgamma(nu + 1.0) +
                std::log(hyper_pfq({md + 1.0, md + nu + 1.0}, {1.0, nu + 1.0, nu + 1.0}, x));
            return std::exp(0.5 * (log_s1 - log_s2));
        }
        default:
            return std::nullopt;
    }
}

} // namespace dpancs

#endif
