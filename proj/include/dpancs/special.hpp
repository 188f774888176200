#ifndef DPANCS_SPECIAL_HPP
#define DPANCS_SPECIAL_HPP

// Scalar special functions shared by the state builders and the
// Mellin-Barnes weight evaluation: log-gamma (real signed and complex),
// log-sum-exp accumulation, modified Bessel I_nu and pFq by direct series.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpancs {

inline constexpr double pi = 3.14159265358979323846;

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

// log(sum_i exp(l_i)); entries may be -inf (empty terms).
inline double log_sum_exp(const std::vector<double>& logs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double l : logs) mx = std::max(mx, l);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double l : logs) s += std::exp(l - mx);
    return mx + std::log(s);
}

// Gamma(x) = sign * exp(log_abs) for real x away from the poles.
struct SignedLog {
    double log_abs;
    int sign;
};

inline SignedLog signed_log_gamma(double x) {
    if (x > 0.0) return {std::lgamma(x), 1};
    if (x == std::floor(x)) throw std::domain_error("signed_log_gamma: pole at nonpositive integer");
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x), with 1-x > 1 here.
    double s = std::sin(pi * x);
    double log_abs = std::log(pi) - std::log(std::fabs(s)) - std::lgamma(1.0 - x);
    return {log_abs, s > 0.0 ? 1 : -1};
}

namespace detail {

// log sin(pi z), stable for large |Im z|; branch offsets of 2*pi*i are
// irrelevant to callers that only exponentiate differences.
inline std::complex<double> log_sin_pi(std::complex<double> z) {
    const std::complex<double> th = pi * z;
    const double y = th.imag();
    if (y >= 1.0) {
        // sin th = -exp(-i th) (1 - exp(2 i th)) / (2 i),  |exp(2 i th)| <= e^-2
        const std::complex<double> i(0.0, 1.0);
        return -i * th + i * (pi / 2.0) - std::log(2.0) + std::log(1.0 - std::exp(2.0 * i * th));
    }
    if (y <= -1.0) return std::conj(log_sin_pi(std::conj(z)));
    return std::log(std::sin(th));
}

} // namespace detail

// Complex log-gamma: Lanczos (g = 7) for Re z >= 0.5, reflection otherwise.
// The result may differ from the principal branch by multiples of 2*pi*i;
// all users exponentiate sums/differences, where such offsets cancel.
inline std::complex<double> log_gamma(std::complex<double> z) {
    static const double lanczos[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (z.real() < 0.5) {
        return std::log(pi) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    }
    const std::complex<double> zm = z - 1.0;
    std::complex<double> x = lanczos[0];
    for (int i = 1; i < 9; ++i) x += lanczos[i] / (zm + static_cast<double>(i));
    const std::complex<double> t = zm + 7.5;
    return 0.5 * std::log(2.0 * pi) + (zm + 0.5) * std::log(t) - t + std::log(x);
}

// Modified Bessel I_nu(x) for x >= 0, nu > -1, by the ascending series.
inline double bessel_i(double nu, double x) {
    if (x < 0.0 || nu <= -1.0) throw std::domain_error("bessel_i: argument out of range");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double q = 0.25 * x * x;
    double term = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
    double sum = term;
    for (int k = 0; k < 10000; ++k) {
        term *= q / ((k + 1.0) * (k + nu + 1.0));
        sum += term;
        if (term < sum * 1e-17) return sum;
    }
    throw convergence_error("bessel_i: series did not converge");
}

// Sum of exp(log_term(n)) over n >= 0 in log space, truncated when the
// geometric tail bound drops below rel_tol of the running sum. Terms of
// -inf (vanishing factors such as leading zeros of a lowered series) are
// skipped; a -inf term after finite ones ends the series (only happens
// when the expansion variable is 0). Returns log of the sum.
template <typename LogTerm>
inline double log_sum_series(LogTerm&& log_term, double rel_tol, int cap = 400000) {
    const double inf = std::numeric_limits<double>::infinity();
    double mx = -inf, acc = 0.0;
    double u = log_term(0);
    for (int n = 0; n < cap; ++n) {
        if (std::isfinite(u)) {
            if (u > mx) {
                acc = acc * std::exp(mx - u) + 1.0;
                mx = u;
            } else {
                acc += std::exp(u - mx);
            }
        }
        const double un = log_term(n + 1);
        if (std::isfinite(u) && std::isfinite(un)) {
            const double r = std::exp(un - u);
            if (r < 0.999) {
                const double log_tail = un - std::log1p(-r);
                if (log_tail < mx + std::log(acc) + std::log(rel_tol)) return mx + std::log(acc);
            } else if (n > 10000 && r >= 1.0) {
                throw convergence_error("log_sum_series: terms stopped decreasing");
            }
        } else if (!std::isfinite(un) && std::isfinite(mx) && n > 0) {
            return mx + std::log(acc);
        } else if (n > 1000 && !std::isfinite(mx)) {
            return -inf; // identically zero series
        }
        u = un;
    }
    throw convergence_error("log_sum_series: term cap reached");
}

// pFq(a; b; x) by direct series; used only for entire cases (p <= q).
inline double hyper_pfq(const std::vector<double>& a, const std::vector<double>& b, double x) {
    if (a.size() > b.size() && x != 0.0)
        throw std::domain_error("hyper_pfq: p > q series diverges");
    for (double bj : b)
        if (bj <= 0.0 && bj == std::floor(bj))
            throw std::domain_error("hyper_pfq: lower parameter at nonpositive integer");
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 100000; ++n) {
        double r = x / (n + 1.0);
        for (double ai : a) r *= ai + n;
        for (double bj : b) r /= bj + n;
        term *= r;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-17) return sum;
    }
    throw convergence_error("hyper_pfq: series did not converge");
}

} // namespace dpancs

#endif
