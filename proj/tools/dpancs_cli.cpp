// dpancs: deformed photon-added nonlinear coherent states toolkit.
//
// Subcommands emit CSV (17 significant digits, '#' comment footers) either
// to stdout or to --output; relative output paths are resolved against
// $DPANCS_OUTPUT_DIR when that is set. Exit codes: 0 success, 2 invalid
// configuration, 3 convergence failure, 4 no detector click.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "dpancs/algebra.hpp"
#include "dpancs/criteria.hpp"
#include "dpancs/csv.hpp"
#include "dpancs/generation.hpp"
#include "dpancs/moments.hpp"
#include "dpancs/states.hpp"
#include "dpancs/weights.hpp"

namespace {

using namespace dpancs;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitNoClick = 4;

NonlinearityFn make_f(const std::string& name, double nu, double kappa) {
    if (name == "unity") return NonlinearityFn::unity();
    if (name == "pt") return NonlinearityFn::poschl_teller(nu);
    if (name == "sqrtn") return NonlinearityFn::sqrt_n();
    if (name == "invsqrtn") return NonlinearityFn::inv_sqrt_n();
    if (name == "bg") return NonlinearityFn::barut_girardello(kappa);
    throw std::invalid_argument("unknown nonlinearity: " + name);
}

StateFamily pick_family(const std::string& family, int m) {
    if (family == "nlcs") return StateFamily::NLCS;
    if (family == "pacs") return StateFamily::PACS;
    if (family == "dpancs") return StateFamily::DPANCS;
    if (family == "negm") return StateFamily::NegativeM;
    // auto: the sign of m decides
    if (m < 0) return StateFamily::NegativeM;
    return m == 0 ? StateFamily::NLCS : StateFamily::DPANCS;
}

// Stream to --output (resolved against $DPANCS_OUTPUT_DIR when relative),
// or stdout when no path was given.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (path.empty()) return;
        std::filesystem::path p{path};
        if (p.is_relative()) {
            if (const char* dir = std::getenv("DPANCS_OUTPUT_DIR")) p = std::filesystem::path{dir} / p;
        }
        file_ = std::make_unique<std::ofstream>(p, std::ios::binary);
        if (!*file_) throw std::invalid_argument("cannot open output file: " + p.string());
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

struct CommonOpts {
    std::string f_name = "unity";
    double nu = 3.0;
    double kappa = 1.0;
    std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--f", o.f_name, "nonlinearity kind")
        ->check(CLI::IsMember({"unity", "pt", "sqrtn", "invsqrtn", "bg"}))
        ->capture_default_str();
    cmd->add_option("--nu", o.nu, "shift of the pt ladder f(n) = sqrt(n + nu)")
        ->capture_default_str();
    cmd->add_option("--kappa", o.kappa, "Bargmann index of the bg ladder")->capture_default_str();
    cmd->add_option("-o,--output", o.output, "output file (default: stdout)")
        ->capture_default_str();
    cmd->add_flag("--dump-config", "print the effective config and exit")->configurable(false);
    // config files are read by the root app, so the subcommand must be
    // reachable from a [section] and parent options from the command line
    cmd->configurable();
    cmd->fallthrough();
}

// When --dump-config is given, print a config file reproducing this
// invocation and report that no computation should run.
bool maybe_dump_config(CLI::App* cmd) {
    if (cmd->count("--dump-config") == 0) return false;
    CLI::App* root = cmd;
    while (root->get_parent() != nullptr) root = root->get_parent();
    std::cout << root->config_to_str(false, false);
    return true;
}

int run_state(CLI::App* cmd, const CommonOpts& o, double alpha, int m, const std::string& family,
              double tol) {
    if (maybe_dump_config(cmd)) return kExitOk;
    StateSpec spec;
    spec.alpha = alpha;
    spec.m = m;
    spec.f = make_f(o.f_name, o.nu, o.kappa);
    spec.family = pick_family(family, m);
    const FockVector state = make_state(spec, tol);
    OutputTarget out(o.output);
    write_state_csv(out.stream(), state);
    return kExitOk;
}

int run_criteria(CLI::App* cmd, const CommonOpts& o, double alpha_min, double alpha_max,
                 int alpha_points, const std::vector<int>& m_list, double tol) {
    if (maybe_dump_config(cmd)) return kExitOk;
    if (!(alpha_max >= alpha_min) || alpha_points < 1)
        throw std::invalid_argument("criteria: need alpha-max >= alpha-min and alpha-points >= 1");
    std::vector<double> grid;
    for (int i = 0; i < alpha_points; ++i) {
        grid.push_back(alpha_points == 1 ? alpha_min
                                         : alpha_min + (alpha_max - alpha_min) * i /
                                               (alpha_points - 1.0));
    }
    const auto rows = sweep(grid, m_list, make_f(o.f_name, o.nu, o.kappa), tol);
    OutputTarget out(o.output);
    write_sweep_csv(out.stream(), rows);
    return kExitOk;
}

int run_weight(CLI::App* cmd, const CommonOpts& o, const std::string& wcase, int m, double x_min,
               double x_max, int points) {
    if (maybe_dump_config(cmd)) return kExitOk;
    auto kernel = [&](double x) -> double {
        if (wcase == "klauder") return weight_klauder(x);
        if (wcase == "unity") return weight_full(NonlinearityFn::unity(), m, x);
        if (wcase == "pt") return weight_full(NonlinearityFn::poschl_teller(o.nu), m, x);
        if (wcase == "sqrtn") return weight_full(NonlinearityFn::sqrt_n(), m, x);
        if (wcase == "unity-neg") return weight_negative_m(NonlinearityFn::unity(), m, x);
        if (wcase == "pt-neg") return weight_negative_m(NonlinearityFn::poschl_teller(o.nu), m, x);
        if (wcase == "sqrtn-neg") return weight_negative_m(NonlinearityFn::sqrt_n(), m, x);
        throw std::invalid_argument("unknown weight case: " + wcase);
    };
    const std::vector<double> grid = log_grid(x_min, x_max, points);

    std::vector<double> xs_ok, ws_ok;
    std::vector<std::string> row_errors;
    OutputTarget out(o.output);
    std::ostream& os = out.stream();
    os << "x,W\n";
    for (double x : grid) {
        try {
            const double w = kernel(x);
            os << fmt(x) << ',' << fmt(w) << '\n';
            xs_ok.push_back(x);
            ws_ok.push_back(w);
        } catch (const std::invalid_argument&) {
            throw; // a bad case name is a config error, not a row failure
        } catch (const std::exception& e) {
            os << "# error at x=" << fmt(x) << ": " << e.what() << '\n';
            row_errors.push_back(e.what());
        }
    }
    if (xs_ok.size() >= 2) {
        // replay the computed values through the scanner (it visits the grid
        // once, in order)
        size_t idx = 0;
        const SignReport rep = positivity_scan([&](double) { return ws_ok[idx++]; }, xs_ok);
        os << "# sign_changes=" << rep.change_locations.size() << '\n';
        for (double loc : rep.change_locations) os << "# sign_change_near=" << fmt(loc) << '\n';
        os << "# min_value=" << fmt(rep.min_value) << " at_x=" << fmt(rep.min_x) << '\n';
    }
    if (!row_errors.empty()) {
        os << "# failed_rows=" << row_errors.size() << '\n';
        return kExitNoConvergence;
    }
    return kExitOk;
}

int run_moments(CLI::App* cmd, const CommonOpts& o, const std::string& mcase, int m, int k_max,
                double quad_tol) {
    if (maybe_dump_config(cmd)) return kExitOk;
    if (k_max < 1) throw std::invalid_argument("moments: k-max must be >= 1");

    std::vector<MomentTarget> targets, carleman_targets;
    std::vector<MomentCheckRow> rows;
    if (mcase == "klauder") {
        targets = moment_targets_klauder(k_max);
        carleman_targets = moment_targets_klauder(40);
        rows = moment_check([](double x) { return weight_klauder(x); }, targets, quad_tol);
    } else if (mcase == "pt") {
        const NonlinearityFn f = NonlinearityFn::poschl_teller(o.nu);
        targets = moment_targets_pt_literal(o.nu, m, k_max);
        carleman_targets = moment_targets_pt_literal(o.nu, m, 40);
        const AssembledKernel k = assemble_moment_kernel_pt_literal(f, m);
        rows = moment_check([&](double x) { return eval_kernel(k, x); }, targets, quad_tol);
    } else if (mcase == "sqrtn" || mcase == "unity") {
        const NonlinearityFn f =
            mcase == "sqrtn" ? NonlinearityFn::sqrt_n() : NonlinearityFn::unity();
        targets = moment_targets_generic(f, m, k_max);
        carleman_targets = moment_targets_generic(f, m, 40);
        const AssembledKernel k = assemble_moment_kernel_positive(f, m);
        rows = moment_check([&](double x) { return eval_kernel(k, x); }, targets, quad_tol);
    } else if (mcase == "pt-neg" || mcase == "unity-neg" || mcase == "sqrtn-neg") {
        NonlinearityFn f = NonlinearityFn::unity();
        if (mcase == "pt-neg") f = NonlinearityFn::poschl_teller(o.nu);
        if (mcase == "sqrtn-neg") f = NonlinearityFn::sqrt_n();
        targets = moment_targets_negative(f, m, k_max);
        carleman_targets = moment_targets_negative(f, m, 40);
        const AssembledKernel k = assemble_moment_kernel_negative(f, m);
        rows = moment_check([&](double x) { return eval_kernel(k, x); }, targets, quad_tol);
    } else {
        throw std::invalid_argument("unknown moments case: " + mcase);
    }

    OutputTarget out(o.output);
    std::ostream& os = out.stream();
    write_moment_csv(os, rows);
    const CarlemanReport cr = carleman_diagnostic(carleman_targets);
    os << "# carleman_slope=" << fmt(cr.slope) << '\n';
    os << "# carleman_divergent=" << (cr.divergent_trend ? "true" : "false") << '\n';
    return kExitOk;
}

int run_generate(CLI::App* cmd, const CommonOpts& o, double alpha, int m,
                 const std::vector<double>& etas) {
    if (maybe_dump_config(cmd)) return kExitOk;
    const GenerationReport rep =
        generation_experiment({alpha, 0.0}, make_f(o.f_name, o.nu, o.kappa), m, etas);
    OutputTarget out(o.output);
    write_generation_csv(out.stream(), rep);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deformed photon-added nonlinear coherent state toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value options file, one [section] per subcommand");

    CommonOpts so;
    double s_alpha = 1.0, s_tol = 1e-12;
    int s_m = 0;
    std::string s_family = "auto";
    CLI::App* st = app.add_subcommand("state", "truncated Fock coefficients of one state");
    st->add_option("--alpha", s_alpha, "coherent amplitude (real)")->capture_default_str();
    st->add_option("--m", s_m, "photon addition order (negative: subtraction)")
        ->capture_default_str();
    st->add_option("--family", s_family, "state family")
        ->check(CLI::IsMember({"auto", "nlcs", "pacs", "dpancs", "negm"}))
        ->capture_default_str();
    st->add_option("--tol", s_tol, "relative truncation tolerance")->capture_default_str();
    add_common(st, so);

    CommonOpts co;
    double c_amin = 0.1, c_amax = 5.0, c_tol = 1e-12;
    int c_points = 50;
    std::vector<int> c_m{1};
    CLI::App* cr = app.add_subcommand("criteria", "nonclassicality indicators over an alpha sweep");
    cr->add_option("--alpha-min", c_amin)->capture_default_str();
    cr->add_option("--alpha-max", c_amax)->capture_default_str();
    cr->add_option("--alpha-points", c_points)->capture_default_str();
    cr->add_option("--m", c_m, "photon addition orders (repeatable)")->capture_default_str();
    cr->add_option("--tol", c_tol, "series tolerance")->capture_default_str();
    add_common(cr, co);

    CommonOpts wo;
    std::string w_case = "pt";
    int w_m = 1, w_points = 200;
    double w_xmin = 0.01, w_xmax = 40.0;
    CLI::App* wt = app.add_subcommand("weight", "weight function W(x) on a log grid");
    wt->add_option("--case", w_case, "which weight")
        ->check(CLI::IsMember(
            {"unity", "pt", "sqrtn", "unity-neg", "pt-neg", "sqrtn-neg", "klauder"}))
        ->capture_default_str();
    wt->add_option("--m", w_m, "addition (or subtraction) order")->capture_default_str();
    wt->add_option("--x-min", w_xmin)->capture_default_str();
    wt->add_option("--x-max", w_xmax)->capture_default_str();
    wt->add_option("--points", w_points)->capture_default_str();
    add_common(wt, wo);

    CommonOpts mo;
    std::string m_case = "pt";
    int m_m = 1, m_kmax = 12;
    double m_quad = 1e-9;
    CLI::App* mm = app.add_subcommand("moments", "Stieltjes moment verification of a weight kernel");
    mm->add_option("--case", m_case, "which kernel")
        ->check(CLI::IsMember(
            {"unity", "pt", "sqrtn", "unity-neg", "pt-neg", "sqrtn-neg", "klauder"}))
        ->capture_default_str();
    mm->add_option("--m", m_m, "addition (or subtraction) order")->capture_default_str();
    mm->add_option("--k-max", m_kmax, "verify moments k = 1..k-max")->capture_default_str();
    mm->add_option("--quad-tol", m_quad, "quadrature tolerance")->capture_default_str();
    add_common(mm, mo);

    CommonOpts go;
    double g_alpha = 1.0;
    int g_m = 1;
    std::vector<double> g_etas{0.04, 0.02, 0.01};
    CLI::App* gn = app.add_subcommand("generate", "conditional generation fidelity experiment");
    gn->add_option("--alpha", g_alpha, "seed coherent amplitude")->capture_default_str();
    gn->add_option("--m", g_m, "photons to add")->capture_default_str();
    gn->add_option("--eta", g_etas, "interaction strengths, strictly descending")
        ->capture_default_str();
    add_common(gn, go);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidConfig;
    }

    try {
        if (st->parsed()) return run_state(st, so, s_alpha, s_m, s_family, s_tol);
        if (cr->parsed()) return run_criteria(cr, co, c_amin, c_amax, c_points, c_m, c_tol);
        if (wt->parsed()) return run_weight(wt, wo, w_case, w_m, w_xmin, w_xmax, w_points);
        if (mm->parsed()) return run_moments(mm, mo, m_case, m_m, m_kmax, m_quad);
        if (gn->parsed()) return run_generate(gn, go, g_alpha, g_m, g_etas);
    } catch (const no_click_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoClick;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal; // no subcommand matched; require_subcommand should prevent this
}
