#ifndef DPANCS_WEIGHTS_HPP
#define DPANCS_WEIGHTS_HPP

// Weight functions for the photon-added (m > 0) and photon-subtracted
// (negative m) families, their Stieltjes moment targets, and diagnostics.
//
// A nonlinearity whose f^2 is a ratio of shifted linear factors
//   f^2(n) = c * prod_i (n + p_i) / prod_j (n + q_j)
// turns the moment targets into pure gamma ratios, which is exactly a
// Meijer G Mellin pair. assemble_* builds that kernel mechanically, so one
// code path covers every built-in f with such a representation.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "meijer.hpp"
#include "moments.hpp"
#include "nonlinearity.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace dpancs {

struct MomentTarget {
    int k = 0;              // moment order: integral of x^(k-1) times the kernel
    double log_target = 0.0;
    std::string formula;    // which target family produced it
};

// Moment indices k = 1.. pair with the x^m-inclusive kernel x^m W~, so that
// the k-th integral equals the analytic target of order k + m; bare-kernel
// orders at or below m would diverge.

// Targets for the generic-scale photon-added kernel:
//   t(k) = ((k-1)!)^2 [f^4(k-1)]! / ((k+m-1)! [f^2(k+m-1)]!).
inline std::vector<MomentTarget> moment_targets_generic(const NonlinearityFn& f, int m,
                                                        int count) {
    if (m < 0 || count < 1) throw std::invalid_argument("moment_targets_generic: bad arguments");
    std::vector<MomentTarget> out;
    for (int k = 1; k <= count; ++k) {
        const double lt = 2.0 * std::lgamma(k + 0.0) + 2.0 * f.log_fact_fsq(k - 1) -
                          std::lgamma(k + m + 0.0) - f.log_fact_fsq(k + m - 1);
        out.push_back({k, lt, "generic"});
    }
    return out;
}

// Targets in the literal shifted-oscillator normalization, which carries an
// extra (m+nu)!/nu! against the generic scale:
//   t(k) = (m+nu)! Gamma(k)^2 Gamma(k+nu)^2 / ((nu!)^2 Gamma(k+m+nu) Gamma(k+m)).
inline std::vector<MomentTarget> moment_targets_pt_literal(double nu, int m, int count) {
    if (m < 0 || count < 1) throw std::invalid_argument("moment_targets_pt_literal: bad arguments");
    std::vector<MomentTarget> out;
    for (int k = 1; k <= count; ++k) {
        const double lt = std::lgamma(m + nu + 1.0) - 2.0 * std::lgamma(nu + 1.0) +
                          2.0 * std::lgamma(k + 0.0) + 2.0 * std::lgamma(k + nu) -
                          std::lgamma(k + m + nu) - std::lgamma(k + m + 0.0);
        out.push_back({k, lt, "pt-literal"});
    }
    return out;
}

// Photon-subtracted targets against x^mu times that family's bare kernel:
//   t(k) = ((k+mu-1)!)^2 [f^4(k+mu-1)]! / ((k-1)! [f^2(k-1)]!).
inline std::vector<MomentTarget> moment_targets_negative(const NonlinearityFn& f, int mu,
                                                         int count) {
    if (mu < 0 || count < 1) throw std::invalid_argument("moment_targets_negative: bad arguments");
    std::vector<MomentTarget> out;
    for (int k = 1; k <= count; ++k) {
        const double lt = 2.0 * std::lgamma(k + mu + 0.0) + 2.0 * f.log_fact_fsq(k + mu - 1) -
                          std::lgamma(k + 0.0) - f.log_fact_fsq(k - 1);
        out.push_back({k, lt, "negative-m"});
    }
    return out;
}

// Targets of x exp(-x) (x-1): the k-th is k! * k.
inline std::vector<MomentTarget> moment_targets_klauder(int count) {
    if (count < 1) throw std::invalid_argument("moment_targets_klauder: bad count");
    std::vector<MomentTarget> out;
    for (int k = 1; k <= count; ++k)
        out.push_back({k, std::lgamma(k + 1.0) + std::log(k + 0.0), "klauder"});
    return out;
}

struct AssembledKernel {
    MeijerGSpec g;
    double beta = 1.0;       // kernel is exp(log_const) * G(beta * x)
    double log_const = 0.0;
};

namespace detail {

struct RatioForm {
    double c = 1.0;
    std::vector<double> p, q; // f^2(n) = c prod (n+p_i) / prod (n+q_j)
};

inline RatioForm ratio_form(const NonlinearityFn& f) {
    switch (f.kind()) {
        case NonlinearityKind::Unity: return {1.0, {}, {}};
        case NonlinearityKind::SqrtShift: return {1.0, {f.nu()}, {}};
        case NonlinearityKind::Sqrt: return {1.0, {0.0}, {}};
        case NonlinearityKind::InvSqrt: return {1.0, {}, {0.0}};
        case NonlinearityKind::InvSqrtShift: return {1.0, {}, {2.0 * f.kappa() - 1.0}};
        case NonlinearityKind::GammaRatio: {
            const GammaRatioDesc& d = f.desc();
            return {d.scale, d.num_shifts, d.den_shifts};
        }
    }
    throw std::logic_error("ratio_form: unhandled kind");
}

} // namespace detail

// Kernel whose Mellin transform matches moment_targets_generic.
inline AssembledKernel assemble_tilde_positive(const NonlinearityFn& f, int m) {
    if (m < 0) throw std::invalid_argument("assemble_tilde_positive: m must be >= 0");
    const detail::RatioForm rf = detail::ratio_form(f);
    AssembledKernel k;
    k.g.b.assign({-static_cast<double>(m), -static_cast<double>(m)});
    k.g.a.assign({0.0});
    for (double p : rf.p) {
        k.g.b.push_back(p - m);
        k.g.b.push_back(p - m);
        k.g.a.push_back(p);
        k.log_const -= std::lgamma(1.0 + p);
    }
    for (double q : rf.q) {
        k.g.b.push_back(q);
        k.g.a.push_back(q - m);
        k.g.a.push_back(q - m);
        k.log_const += std::lgamma(1.0 + q);
    }
    k.g.q = static_cast<int>(k.g.b.size());
    k.g.p = static_cast<int>(k.g.a.size());
    k.g.m = k.g.q;
    k.g.n = 0;
    k.beta = 1.0 / rf.c;
    k.log_const += (-2.0 * m - 1.0) * std::log(rf.c);
    return k;
}

// Kernel whose Mellin transform matches moment_targets_negative.
inline AssembledKernel assemble_tilde_negative(const NonlinearityFn& f, int mu) {
    if (mu < 0) throw std::invalid_argument("assemble_tilde_negative: mu must be >= 0");
    const detail::RatioForm rf = detail::ratio_form(f);
    AssembledKernel k;
    k.g.b.assign({0.0, 0.0});
    k.g.a.assign({-static_cast<double>(mu)});
    for (double p : rf.p) {
        k.g.b.push_back(p);
        k.g.b.push_back(p);
        k.g.a.push_back(p - mu);
        k.log_const -= std::lgamma(1.0 + p);
    }
    for (double q : rf.q) {
        k.g.b.push_back(q - mu);
        k.g.a.push_back(q);
        k.g.a.push_back(q);
        k.log_const += std::lgamma(1.0 + q);
    }
    k.g.q = static_cast<int>(k.g.b.size());
    k.g.p = static_cast<int>(k.g.a.size());
    k.g.m = k.g.q;
    k.g.n = 0;
    k.beta = 1.0 / rf.c;
    k.log_const += (mu - 1.0) * std::log(rf.c);
    return k;
}

inline double eval_kernel(const AssembledKernel& k, double x, const ContourConfig& cfg = {}) {
    return std::exp(k.log_const) * meijer_g(k.g, k.beta * x, cfg);
}

// Multiply a kernel by x^s via the parameter-shift property
// x^s G(x | a; b) = G(x | a+s; b+s).
inline AssembledKernel shifted(AssembledKernel k, int s) {
    for (double& a : k.g.a) a += s;
    for (double& b : k.g.b) b += s;
    k.log_const -= s * std::log(k.beta);
    return k;
}

// x^m W~ in generic scale: the object whose k-th Stieltjes moment is
// moment_targets_generic(f, m, count)[k-1].
inline AssembledKernel assemble_moment_kernel_positive(const NonlinearityFn& f, int m) {
    return shifted(assemble_tilde_positive(f, m), m);
}

// Same in the literal shifted-oscillator scale, pairing with
// moment_targets_pt_literal.
inline AssembledKernel assemble_moment_kernel_pt_literal(const NonlinearityFn& f, int m) {
    if (f.kind() != NonlinearityKind::SqrtShift)
        throw std::invalid_argument("assemble_moment_kernel_pt_literal: needs the shifted-oscillator f");
    AssembledKernel k = assemble_moment_kernel_positive(f, m);
    k.log_const += std::lgamma(m + f.nu() + 1.0) - std::lgamma(f.nu() + 1.0);
    return k;
}

// x^mu times the photon-subtracted bare kernel, pairing with
// moment_targets_negative.
inline AssembledKernel assemble_moment_kernel_negative(const NonlinearityFn& f, int mu) {
    return shifted(assemble_tilde_negative(f, mu), mu);
}

// Generic-scale bare kernel W~ for the photon-added family.
inline double weight_tilde_generic(const NonlinearityFn& f, int m, double x,
                                   const ContourConfig& cfg = {}) {
    return eval_kernel(assemble_tilde_positive(f, m), x, cfg);
}

// Literal closed-form kernel: identical to the generic one except for the
// shifted-oscillator family, which is conventionally quoted with an extra
// (m+nu)!/nu!.
inline double weight_tilde(const NonlinearityFn& f, int m, double x,
                           const ContourConfig& cfg = {}) {
    double scale = 1.0;
    if (f.kind() == NonlinearityKind::SqrtShift)
        scale = std::exp(std::lgamma(m + f.nu() + 1.0) - std::lgamma(f.nu() + 1.0));
    return scale * weight_tilde_generic(f, m, x, cfg);
}

// Full weight for the photon-added family: the inverse squared direct
// normalization (a function of x here, not of |alpha|^2) times x^m W~.
inline double weight_full(const NonlinearityFn& f, int m, double x, const ContourConfig& cfg = {}) {
    if (!(x > 0.0)) throw std::domain_error("weight_full: x must be > 0");
    const double lx = std::log(x);
    const double log_s2 =
        log_sum_series([&](int n) { return detail::log_core(lx, n, m, f); }, 1e-14);
    return std::exp(log_s2 + m * lx) * weight_tilde_generic(f, m, x, cfg);
}

// Full weight for the photon-subtracted family. S_neg is the inverse squared
// normalization of that family; the constant divisor is (mu!)^2 [f^4(mu)]!.
inline double weight_negative_m(const NonlinearityFn& f, int mu, double x,
                                const ContourConfig& cfg = {}) {
    if (mu < 0) throw std::invalid_argument("weight_negative_m: mu must be >= 0");
    if (!(x > 0.0)) throw std::domain_error("weight_negative_m: x must be > 0");
    const double lx = std::log(x);
    auto neg_core = [&](int n) {
        const double nlx = n == 0 ? 0.0 : n * lx;
        return nlx + std::lgamma(n + 1.0) + 2.0 * std::lgamma(mu + 1.0) + f.log_fact_fsq(n) +
               2.0 * f.log_fact_fsq(mu) - 2.0 * std::lgamma(n + mu + 1.0) -
               2.0 * f.log_fact_fsq(n + mu);
    };
    const double log_sneg = log_sum_series(neg_core, 1e-14);
    const double log_div = 2.0 * std::lgamma(mu + 1.0) + 2.0 * f.log_fact_fsq(mu);
    return std::exp(log_sneg + mu * lx - log_div) *
           eval_kernel(assemble_tilde_negative(f, mu), x, cfg);
}

// Closed-form comparison case: the weight of the quantized-amplitude state
// with moments k! * k, negative on (0, 1).
inline double weight_klauder(double x) {
    if (x < 0.0) throw std::domain_error("weight_klauder: x must be >= 0");
    return x * std::exp(-x) * (x - 1.0);
}

struct MomentCheckRow {
    int k = 0;
    double target = 0.0;
    double computed = 0.0;
    double rel_error = 0.0;
    double x_max = 0.0;
};

// Quadrature verification that a kernel reproduces its Stieltjes targets.
template <typename Kernel>
inline std::vector<MomentCheckRow> moment_check(Kernel&& kernel,
                                                const std::vector<MomentTarget>& targets,
                                                double quad_rel_tol = 1e-9) {
    std::vector<MomentCheckRow> rows;
    rows.reserve(targets.size());
    for (const MomentTarget& t : targets) {
        const MomentIntegral mi = integrate_moment(kernel, t.k, quad_rel_tol);
        MomentCheckRow r;
        r.k = t.k;
        r.target = std::exp(t.log_target);
        r.computed = mi.value;
        r.rel_error = std::fabs(mi.value - r.target) / std::fabs(r.target);
        r.x_max = mi.x_max;
        rows.push_back(r);
    }
    return rows;
}

struct CarlemanReport {
    std::vector<double> partial_sums; // S_j = sum_{k<=j} mu_k^(-1/(2k))
    double slope = 0.0;               // growth of S against log k over the top half
    bool divergent_trend = false;     // slope >= 2: partial sums still climbing
};

// Heuristic moment-problem indicator: the Carleman sum diverging is
// sufficient for determinacy, but any finite prefix only shows a trend.
// The slope threshold separates factorial-type growth (sum ~ sqrt(k),
// diverging) from (2k)!-type growth (sum converging) with a wide margin;
// it is a calibrated heuristic, not a proof either way.
inline CarlemanReport carleman_diagnostic(const std::vector<MomentTarget>& targets) {
    if (targets.size() < 10)
        throw std::invalid_argument("carleman_diagnostic: need at least 10 targets");
    CarlemanReport rep;
    double s = 0.0;
    for (const MomentTarget& t : targets) {
        s += std::exp(-t.log_target / (2.0 * t.k));
        rep.partial_sums.push_back(s);
    }
    const size_t hi = rep.partial_sums.size() - 1;
    const size_t lo = hi / 2;
    const double dk = std::log(targets[hi].k + 0.0) - std::log(targets[lo].k + 0.0);
    rep.slope = (rep.partial_sums[hi] - rep.partial_sums[lo]) / dk;
    rep.divergent_trend = rep.slope >= 2.0;
    return rep;
}

} // namespace dpancs

#endif
