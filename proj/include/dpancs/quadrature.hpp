#ifndef DPANCS_QUADRATURE_HPP
#define DPANCS_QUADRATURE_HPP

// Integration utilities for weight-function work: adaptive Gauss-Legendre
// on finite intervals, semi-infinite moment integrals via the substitution
// x = exp(u) (which makes the integrand smooth and exponentially small at
// both ends), and a sign scan over a fixed grid.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "special.hpp"

namespace dpancs {

namespace detail {

struct GLRule {
    std::array<double, 12> x{}, w{};
};

// 12-point Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration from
// the Chebyshev initial guess.
inline const GLRule& gl12() {
    static const GLRule rule = [] {
        GLRule r;
        const int n = 12;
        for (int i = 0; i < n / 2; ++i) {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / pp;
                z -= dz;
                if (std::fabs(dz) < 1e-15) break;
            }
            r.x[static_cast<size_t>(i)] = -z;
            r.x[static_cast<size_t>(n - 1 - i)] = z;
            r.w[static_cast<size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
            r.w[static_cast<size_t>(n - 1 - i)] = r.w[static_cast<size_t>(i)];
        }
        return r;
    }();
    return rule;
}

template <typename F>
inline double gl_panel(F& f, double a, double b) {
    const GLRule& r = gl12();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 12; ++i)
        s += r.w[static_cast<size_t>(i)] * f(mid + half * r.x[static_cast<size_t>(i)]);
    return s * half;
}

template <typename F>
inline double adapt(F& f, double a, double b, double whole, double tol_abs, int depth) {
    if (depth <= 0) throw convergence_error("integrate: refinement depth exhausted");
    const double mid = 0.5 * (a + b);
    const double left = gl_panel(f, a, mid);
    const double right = gl_panel(f, mid, b);
    if (std::fabs(left + right - whole) <= tol_abs) return left + right;
    return adapt(f, a, mid, left, 0.5 * tol_abs, depth - 1) +
           adapt(f, mid, b, right, 0.5 * tol_abs, depth - 1);
}

} // namespace detail

// Adaptive bisection to a relative tolerance set against a coarse first
// pass over eight panels.
template <typename F>
inline double integrate(F&& f, double a, double b, double rel_tol = 1e-9, int max_depth = 32) {
    if (!(b > a)) throw std::invalid_argument("integrate: need b > a");
    double coarse = 0.0;
    std::array<double, 8> whole{};
    for (int i = 0; i < 8; ++i) {
        const double lo = a + (b - a) * i / 8.0;
        const double hi = a + (b - a) * (i + 1) / 8.0;
        whole[static_cast<size_t>(i)] = detail::gl_panel(f, lo, hi);
        coarse += std::fabs(whole[static_cast<size_t>(i)]);
    }
    const double tol_abs = rel_tol * std::max(coarse, 1e-300);
    double total = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double lo = a + (b - a) * i / 8.0;
        const double hi = a + (b - a) * (i + 1) / 8.0;
        total += detail::adapt(f, lo, hi, whole[static_cast<size_t>(i)], tol_abs / 8.0, max_depth);
    }
    return total;
}

struct MomentIntegral {
    double value;
    double x_max;         // abscissa where the integrand dropped below 1e-16 of peak
    double tail_estimate; // fitted exponential bound on both discarded tails
};

// integral_0^inf x^(k-1) W(x) dx with W evaluated at x = exp(u). The window
// ends where the transformed integrand falls below 1e-16 of its peak, or, for
// kernels evaluated by contour quadrature, where it bottoms out on the
// cancellation-noise floor (which grows like x^(k - sigma) and would
// otherwise defeat the cut). Discarded tails are bounded by an exponential
// fitted just inside each endpoint and must stay inside the budget.
template <typename Kernel>
inline MomentIntegral integrate_moment(Kernel&& kernel, int k, double rel_tol = 1e-9) {
    if (k < 1) throw std::invalid_argument("integrate_moment: k must be >= 1");
    auto v = [&](double u) { return std::exp(k * u) * kernel(std::exp(u)); };

    double peak = 0.0, peak_u = 0.0;
    for (double u = -45.0; u <= 12.0; u += 0.5) {
        const double mag = std::fabs(v(u));
        if (mag > peak) {
            peak = mag;
            peak_u = u;
        }
    }
    if (!(peak > 0.0)) throw convergence_error("integrate_moment: integrand vanished everywhere");

    const double cut = 1e-16 * peak;
    double u_hi = peak_u;
    double run_min = std::numeric_limits<double>::infinity(), run_min_u = peak_u;
    for (;;) {
        const double mag = std::fabs(v(u_hi));
        if (u_hi >= peak_u + 2.0) {
            // two consecutive sub-cut samples, so an isolated zero of the
            // integrand cannot end the window early
            if (mag <= cut && std::fabs(v(u_hi + 0.5)) <= cut) break;
            if (mag < run_min) {
                run_min = mag;
                run_min_u = u_hi;
            }
            // sustained rise far below the peak: noise floor reached, truncate
            // at the observed minimum (the budget check below still applies)
            if (run_min < 1e-6 * peak && mag > 100.0 * run_min) {
                u_hi = run_min_u;
                break;
            }
        }
        u_hi += 0.5;
        if (u_hi > 60.0) throw convergence_error("integrate_moment: right tail does not decay");
    }
    double u_lo = peak_u;
    while (u_lo > peak_u - 2.0 || std::fabs(v(u_lo)) > cut ||
           std::fabs(v(u_lo - 0.5)) > cut) {
        u_lo -= 0.5;
        if (u_lo < -220.0) throw convergence_error("integrate_moment: left tail does not decay");
    }

    MomentIntegral r{};
    r.value = integrate(v, u_lo, u_hi, rel_tol);
    r.x_max = std::exp(u_hi);

    // decay rate per unit u between two samples, the first taken closer to
    // the peak; measured one step inside the window so endpoint noise cannot
    // flatten the fit
    auto decay_rate = [&](double u_near, double u_far) {
        const double f0 = std::fabs(v(u_near)), f1 = std::fabs(v(u_far));
        if (!(f0 > 0.0)) return std::numeric_limits<double>::infinity();
        if (!(f1 < f0)) return 0.0;
        return std::log(f0 / f1) / std::fabs(u_far - u_near);
    };
    const double lam_r = decay_rate(u_hi - 1.0, u_hi - 0.5);
    const double lam_l = decay_rate(u_lo + 1.0, u_lo + 0.5);
    double tail = 0.0;
    tail += lam_r > 0.0 ? std::fabs(v(u_hi)) / lam_r : std::numeric_limits<double>::infinity();
    tail += lam_l > 0.0 ? 2.0 * std::fabs(v(u_lo)) / lam_l : std::numeric_limits<double>::infinity();
    r.tail_estimate = tail;
    if (!(tail <= 1e-8 * std::fabs(r.value) + 1e-290))
        throw convergence_error("integrate_moment: tail estimate exceeds tolerance budget");
    return r;
}

struct SignReport {
    std::vector<double> change_locations; // geometric midpoints of flip brackets
    double min_value = 0.0;
    double min_x = 0.0;
    double noise_floor = 0.0; // |W| below this is treated as zero
};

// Sign structure of W over the given grid. Values within noise of zero
// (1e-14 of the largest magnitude seen) do not count toward sign changes,
// so far-tail roundoff cannot fake a flip.
template <typename Kernel>
inline SignReport positivity_scan(Kernel&& kernel, const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("positivity_scan: need at least two points");
    std::vector<double> w(grid.size());
    double peak = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        w[i] = kernel(grid[i]);
        peak = std::max(peak, std::fabs(w[i]));
    }
    SignReport rep;
    rep.noise_floor = 1e-14 * peak;
    rep.min_value = std::numeric_limits<double>::infinity();
    int prev_sign = 0;
    double prev_x = grid[0];
    for (size_t i = 0; i < grid.size(); ++i) {
        if (w[i] < rep.min_value) {
            rep.min_value = w[i];
            rep.min_x = grid[i];
        }
        int s = 0;
        if (std::fabs(w[i]) > rep.noise_floor) s = w[i] > 0.0 ? 1 : -1;
        if (s != 0) {
            if (prev_sign != 0 && s != prev_sign)
                rep.change_locations.push_back(std::sqrt(prev_x * grid[i]));
            prev_sign = s;
            prev_x = grid[i];
        }
    }
    return rep;
}

// Log-spaced scan grid, endpoints included.
inline std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) throw std::invalid_argument("log_grid: bad range");
    std::vector<double> g(static_cast<size_t>(points));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        g[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / (points - 1.0));
    return g;
}

} // namespace dpancs

#endif
