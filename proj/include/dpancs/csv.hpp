#ifndef DPANCS_CSV_HPP
#define DPANCS_CSV_HPP

// Deterministic CSV emission: every floating-point field is printed with 17
// significant digits via snprintf under the "C" numeric conventions, so a
// given run is byte-identical across invocations. Comment lines start
// with '#'.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "generation.hpp"
#include "states.hpp"
#include "weights.hpp"

namespace dpancs {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt(int v) { return std::to_string(v); }

inline void write_state_csv(std::ostream& os, const FockVector& state) {
    os << "n,re,im\n";
    for (size_t n = 0; n < state.c.size(); ++n)
        os << n << ',' << fmt(state.c[n].real()) << ',' << fmt(state.c[n].imag()) << '\n';
    os << "# tail_bound=" << fmt(state.tail_bound) << '\n';
}

inline void write_sweep_csv(std::ostream& os, const std::vector<CriteriaReport>& rows) {
    os << "alpha,m,Q,g2,sx,sp,SX,SP,N_used,status\n";
    for (const CriteriaReport& r : rows) {
        os << fmt(r.alpha.real()) << ',' << r.m << ',' << fmt(r.Q) << ',' << fmt(r.g2) << ','
           << fmt(r.s_x) << ',' << fmt(r.s_p) << ',' << fmt(r.S_X) << ',' << fmt(r.S_P) << ','
           << r.N_used << ',' << r.status << '\n';
    }
}

inline void write_weight_csv(std::ostream& os, const std::vector<double>& xs,
                             const std::vector<double>& ws, const SignReport& rep) {
    os << "x,W\n";
    for (size_t i = 0; i < xs.size(); ++i) os << fmt(xs[i]) << ',' << fmt(ws[i]) << '\n';
    os << "# sign_changes=" << rep.change_locations.size() << '\n';
    for (double loc : rep.change_locations) os << "# sign_change_near=" << fmt(loc) << '\n';
    os << "# min_value=" << fmt(rep.min_value) << " at_x=" << fmt(rep.min_x) << '\n';
}

inline void write_moment_csv(std::ostream& os, const std::vector<MomentCheckRow>& rows) {
    os << "k,target,computed,rel_error\n";
    for (const MomentCheckRow& r : rows)
        os << r.k << ',' << fmt(r.target) << ',' << fmt(r.computed) << ',' << fmt(r.rel_error)
           << '\n';
}

inline void write_generation_csv(std::ostream& os, const GenerationReport& rep) {
    os << "eta,fidelity,success_prob\n";
    for (const GenerationRow& r : rep.rows)
        os << fmt(r.eta) << ',' << fmt(r.fidelity) << ',' << fmt(r.success_prob) << '\n';
    os << "# order_success=" << fmt(rep.order_success) << '\n';
    os << "# order_infidelity=" << fmt(rep.order_infidelity) << '\n';
}

} // namespace dpancs

#endif
