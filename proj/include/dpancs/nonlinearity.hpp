#ifndef DPANCS_NONLINEARITY_HPP
#define DPANCS_NONLINEARITY_HPP

// Deformation functions f(n) and their deformed factorials
// [f(n)]! = f(n) f(n-1) ... f(1), with [f(0)]! = 1 by convention.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "special.hpp"

namespace dpancs {

enum class NonlinearityKind { Unity, SqrtShift, Sqrt, InvSqrt, InvSqrtShift, GammaRatio };

// Custom nonlinearity in gamma-ratio form:
//   f^2(n) = scale * prod_i (n + num_shifts[i]) / prod_j (n + den_shifts[j]),
// so that [f^2(n)]! is an exact ratio of gamma functions. All shifts > -1.
struct GammaRatioDesc {
    double scale = 1.0;
    std::vector<double> num_shifts;
    std::vector<double> den_shifts;
};

class NonlinearityFn {
  public:
    static NonlinearityFn unity() { return NonlinearityFn(NonlinearityKind::Unity); }

    // f(n) = sqrt(n + nu), the Poschl-Teller ladder. Requires nu > 2; the
    // square-well edge nu = 2 is admitted only behind the explicit flag.
    static NonlinearityFn poschl_teller(double nu, bool allow_square_well = false) {
        if (!(nu > 2.0) && !(allow_square_well && nu == 2.0))
            throw std::invalid_argument("poschl_teller: requires nu > 2 (nu = 2 only with square-well flag)");
        NonlinearityFn f(NonlinearityKind::SqrtShift);
        f.nu_ = nu;
        return f;
    }

    static NonlinearityFn sqrt_n() { return NonlinearityFn(NonlinearityKind::Sqrt); }

    static NonlinearityFn inv_sqrt_n() { return NonlinearityFn(NonlinearityKind::InvSqrt); }

    // f(n) = 1/sqrt(n + 2 kappa - 1), the Barut-Girardello ladder.
    static NonlinearityFn barut_girardello(double kappa) {
        if (!(kappa > 0.0)) throw std::invalid_argument("barut_girardello: requires kappa > 0");
        NonlinearityFn f(NonlinearityKind::InvSqrtShift);
        f.kappa_ = kappa;
        return f;
    }

    static NonlinearityFn gamma_ratio(GammaRatioDesc d) {
        if (!(d.scale > 0.0)) throw std::invalid_argument("gamma_ratio: scale must be positive");
        for (double s : d.num_shifts)
            if (!(s > -1.0)) throw std::invalid_argument("gamma_ratio: shifts must exceed -1");
        for (double s : d.den_shifts)
            if (!(s > -1.0)) throw std::invalid_argument("gamma_ratio: shifts must exceed -1");
        NonlinearityFn f(NonlinearityKind::GammaRatio);
        f.desc_ = std::move(d);
        return f;
    }

    NonlinearityKind kind() const { return kind_; }
    double nu() const { return nu_; }
    double kappa() const { return kappa_; }
    const GammaRatioDesc& desc() const { return desc_; }

    // f(n)^2 without a sqrt round-trip; exact for the integer-valued kinds.
    double f_sq(int n) const {
        switch (kind_) {
            case NonlinearityKind::Unity: return 1.0;
            case NonlinearityKind::SqrtShift: return n + nu_;
            case NonlinearityKind::Sqrt: return static_cast<double>(n);
            case NonlinearityKind::InvSqrt:
                if (n == 0) throw std::domain_error("f undefined at n = 0");
                return 1.0 / n;
            case NonlinearityKind::InvSqrtShift: return 1.0 / (n + 2.0 * kappa_ - 1.0);
            case NonlinearityKind::GammaRatio: {
                double v = desc_.scale;
                for (double s : desc_.num_shifts) v *= n + s;
                for (double s : desc_.den_shifts) v /= n + s;
                if (!(v > 0.0)) throw std::domain_error("gamma_ratio: f^2(n) not positive");
                return v;
            }
        }
        throw std::logic_error("unreachable");
    }

    double f(int n) const { return std::sqrt(f_sq(n)); }

    // log [f^2(n)]! as exact gamma ratios (equals 2 log [f(n)]!).
    double log_fact_fsq(int n) const {
        if (n < 0) throw std::domain_error("log_fact_fsq: negative argument");
        if (n == 0) return 0.0;
        const double nd = n;
        switch (kind_) {
            case NonlinearityKind::Unity: return 0.0;
            case NonlinearityKind::SqrtShift:
                return std::lgamma(nd + 1.0 + nu_) - std::lgamma(1.0 + nu_);
            case NonlinearityKind::Sqrt: return std::lgamma(nd + 1.0);
            case NonlinearityKind::InvSqrt: return -std::lgamma(nd + 1.0);
            case NonlinearityKind::InvSqrtShift:
                return -(std::lgamma(nd + 2.0 * kappa_) - std::lgamma(2.0 * kappa_));
            case NonlinearityKind::GammaRatio: {
                double v = nd * std::log(desc_.scale);
                for (double s : desc_.num_shifts) v += std::lgamma(nd + 1.0 + s) - std::lgamma(1.0 + s);
                for (double s : desc_.den_shifts) v -= std::lgamma(nd + 1.0 + s) - std::lgamma(1.0 + s);
                return v;
            }
        }
        throw std::logic_error("unreachable");
    }

    double log_fact_f(int n) const { return 0.5 * log_fact_fsq(n); }

    std::string label() const {
        switch (kind_) {
            case NonlinearityKind::Unity: return "unity";
            case NonlinearityKind::SqrtShift: return "pt(nu=" + std::to_string(nu_) + ")";
            case NonlinearityKind::Sqrt: return "sqrtn";
            case NonlinearityKind::InvSqrt: return "invsqrtn";
            case NonlinearityKind::InvSqrtShift: return "bg(kappa=" + std::to_string(kappa_) + ")";
            case NonlinearityKind::GammaRatio: return "gamma-ratio";
        }
        return "?";
    }

  private:
    explicit NonlinearityFn(NonlinearityKind k) : kind_(k) {}

    NonlinearityKind kind_;
    double nu_ = 0.0;
    double kappa_ = 0.0;
    GammaRatioDesc desc_;
};

// Cumulative table of log [f(n)]!, built by the defining recurrence.
struct DeformedFactorial {
    std::vector<double> log_f_fact; // index n = 0..N
    double operator()(int n) const { return log_f_fact.at(static_cast<size_t>(n)); }
};

inline DeformedFactorial deformed_factorial(const NonlinearityFn& f, int N) {
    if (N < 0) throw std::invalid_argument("deformed_factorial: N must be >= 0");
    DeformedFactorial t;
    t.log_f_fact.resize(static_cast<size_t>(N) + 1);
    t.log_f_fact[0] = 0.0; // [f(0)]! = 1
    for (int n = 1; n <= N; ++n)
        t.log_f_fact[static_cast<size_t>(n)] =
            t.log_f_fact[static_cast<size_t>(n) - 1] + 0.5 * std::log(f.f_sq(n));
    return t;
}

} // namespace dpancs

#endif
