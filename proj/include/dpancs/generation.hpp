#ifndef DPANCS_GENERATION_HPP
#define DPANCS_GENERATION_HPP

// Conditional generation of the photon-added state from a nonlinear
// coherent field: an excited atom couples |e,n> to |g,n+m> with strength
// mu_n = prod_{j=1..m} f(n+j) sqrt(n+j); detecting the atom in the ground
// state leaves the field with m extra deformed quanta. The evolution is
// exact per two-level manifold, no perturbative step is taken.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nonlinearity.hpp"
#include "states.hpp"

namespace dpancs {

struct no_click_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AtomFieldState {
    std::vector<std::complex<double>> excited; // field amplitude with atom in |e>
    std::vector<std::complex<double>> ground;  // field amplitude with atom in |g>
    double top_leak = 0.0; // excited weight left uncoupled by the truncation

    int truncation() const { return static_cast<int>(excited.size()) - 1; }
    double norm_sq() const {
        double s = 0.0;
        for (const auto& c : excited) s += std::norm(c);
        for (const auto& c : ground) s += std::norm(c);
        return s;
    }
};

struct InteractionSpec {
    int m = 1;                          // quanta added per emission
    NonlinearityFn f = NonlinearityFn::unity();
    double eta = 0.0;                   // coupling x interaction time
};

// Field in |field>, atom excited.
inline AtomFieldState initial_state(const FockVector& field) {
    AtomFieldState s;
    s.excited = field.c;
    s.ground.assign(field.c.size(), {0.0, 0.0});
    return s;
}

inline double manifold_coupling(const NonlinearityFn& f, int m, int n) {
    double mu = 1.0;
    for (int j = 1; j <= m; ++j) mu *= f.f(n + j) * std::sqrt(n + j + 0.0);
    return mu;
}

// Exact rotation in each closed manifold {|e,n>, |g,n+m>}. Levels with
// n + m beyond the truncation cannot rotate anywhere; their excited weight
// is reported as top_leak and should be negligible by construction.
inline AtomFieldState evolve(const AtomFieldState& in, const InteractionSpec& spec) {
    if (spec.m < 1) throw std::invalid_argument("evolve: m must be >= 1");
    if (in.excited.size() != in.ground.size())
        throw std::invalid_argument("evolve: branch length mismatch");
    const int N = in.truncation();
    AtomFieldState out = in;
    out.top_leak = 0.0;
    const std::complex<double> mi{0.0, -1.0};
    for (int n = 0; n + spec.m <= N; ++n) {
        const double mu = manifold_coupling(spec.f, spec.m, n);
        const double c = std::cos(spec.eta * mu), s = std::sin(spec.eta * mu);
        const std::complex<double> e0 = in.excited[static_cast<size_t>(n)];
        const std::complex<double> g0 = in.ground[static_cast<size_t>(n + spec.m)];
        out.excited[static_cast<size_t>(n)] = c * e0 + mi * s * g0;
        out.ground[static_cast<size_t>(n + spec.m)] = c * g0 + mi * s * e0;
    }
    for (int n = N - spec.m + 1; n <= N; ++n)
        out.top_leak += std::norm(in.excited[static_cast<size_t>(n)]);
    return out;
}

// Project onto the atomic ground state; returns the normalized field and
// the success probability. A probability below 1e-30 is treated as no
// detector click at all.
inline std::pair<FockVector, double> postselect_ground(const AtomFieldState& s) {
    double p = 0.0;
    for (const auto& c : s.ground) p += std::norm(c);
    if (p < 1e-30) throw no_click_error("postselect_ground: ground amplitude negligible");
    FockVector out;
    out.c.resize(s.ground.size());
    const double r = 1.0 / std::sqrt(p);
    for (size_t i = 0; i < s.ground.size(); ++i) out.c[i] = r * s.ground[i];
    out.tail_bound = 0.0;
    return {out, p};
}

inline double fidelity(const FockVector& a, const FockVector& b) {
    const size_t n = std::min(a.c.size(), b.c.size());
    std::complex<double> ov{0.0, 0.0};
    for (size_t i = 0; i < n; ++i) ov += std::conj(a.c[i]) * b.c[i];
    return std::norm(ov);
}

struct GenerationRow {
    double eta = 0.0;
    double fidelity = 0.0;
    double success_prob = 0.0;
};

struct GenerationReport {
    std::vector<GenerationRow> rows;
    double order_success = 0.0;    // log-log slope of p against eta
    double order_infidelity = 0.0; // log-log slope of 1 - F against eta
    double max_top_leak = 0.0;
};

namespace detail {

// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

// Run the conditional scheme for each eta (positive, strictly descending),
// comparing the postselected field against the directly built target state.
inline GenerationReport generation_experiment(std::complex<double> alpha, const NonlinearityFn& f,
                                              int m, const std::vector<double>& etas,
                                              double trunc_tol = 1e-16) {
    if (m < 1) throw std::invalid_argument("generation_experiment: m must be >= 1");
    if (etas.empty()) throw std::invalid_argument("generation_experiment: empty eta list");
    for (size_t i = 0; i < etas.size(); ++i) {
        if (etas[i] < 0.0 || (i > 0 && etas[i] >= etas[i - 1]))
            throw std::invalid_argument("generation_experiment: etas must be descending and >= 0");
    }

    StateSpec seed;
    seed.alpha = alpha;
    seed.m = 0;
    seed.f = f;
    seed.family = StateFamily::NLCS;
    StateSpec target_spec;
    target_spec.alpha = alpha;
    target_spec.m = m;
    target_spec.f = f;
    target_spec.family = StateFamily::DPANCS;

    // Common truncation with headroom so the added quanta stay well inside.
    const int N = std::max(choose_truncation(seed, trunc_tol), choose_truncation(target_spec, trunc_tol)) +
                  m + 4;
    const FockVector field = build_state(seed, N);
    const FockVector target = build_state(target_spec, N);

    GenerationReport rep;
    std::vector<double> log_eta, log_p, log_infid;
    for (double eta : etas) {
        InteractionSpec is;
        is.m = m;
        is.f = f;
        is.eta = eta;
        const AtomFieldState after = evolve(initial_state(field), is);
        rep.max_top_leak = std::max(rep.max_top_leak, after.top_leak);
        auto [out, p] = postselect_ground(after);
        GenerationRow row;
        row.eta = eta;
        row.success_prob = p;
        row.fidelity = fidelity(target, out);
        rep.rows.push_back(row);
        log_eta.push_back(std::log(eta));
        log_p.push_back(std::log(p));
        const double infid = 1.0 - row.fidelity;
        log_infid.push_back(std::log(std::max(infid, 1e-300)));
    }
    if (etas.size() >= 2) {
        rep.order_success = detail::ls_slope(log_eta, log_p);
        rep.order_infidelity = detail::ls_slope(log_eta, log_infid);
    }
    return rep;
}

} // namespace dpancs

#endif
