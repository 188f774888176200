#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dpancs/weights.hpp"

using namespace dpancs;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("assembled undeformed kernels reduce to elementary functions") {
    auto u = NonlinearityFn::unity();
    SECTION("m = 0 bare kernel is exp(-x)") {
        for (double x : {0.3, 1.0, 5.0})
            REQUIRE_THAT(weight_tilde_generic(u, 0, x), WithinRel(std::exp(-x), 1e-10));
    }
    SECTION("photon-subtracted mu = 1 bare kernel is exp(-x)(x-1)") {
        const AssembledKernel k = assemble_tilde_negative(u, 1);
        for (double x : {0.4, 2.0, 6.0})
            REQUIRE_THAT(eval_kernel(k, x), WithinRel(std::exp(-x) * (x - 1.0), 1e-10));
    }
}

TEST_CASE("bare kernel frozen values and the literal scale") {
    // the assembled constant for this ladder is 1/Gamma(1 + nu) = 1/6, so the
    // weight is the raw contour value scaled down by 6
    auto pt = NonlinearityFn::poschl_teller(3.0);
    REQUIRE_THAT(weight_tilde_generic(pt, 1, 1.0), WithinRel(0.38435040534547941 / 6.0, 1e-10));
    REQUIRE_THAT(weight_tilde_generic(pt, 1, 5.0), WithinRel(0.0074620637354365387 / 6.0, 1e-10));
    // the literal convention carries (m + nu)!/nu! = 4
    REQUIRE_THAT(weight_tilde(pt, 1, 1.0), WithinRel(4.0 * 0.38435040534547941 / 6.0, 1e-10));
    auto sq = NonlinearityFn::sqrt_n();
    REQUIRE_THAT(weight_tilde_generic(sq, 1, 1.0), WithinRel(0.076864671465227151, 1e-10));
    REQUIRE_THAT(weight_tilde(sq, 1, 1.0), WithinRel(0.076864671465227151, 1e-10));
}

TEST_CASE("moment kernel is x^m times the bare kernel") {
    auto sq = NonlinearityFn::sqrt_n();
    const AssembledKernel mk = assemble_moment_kernel_positive(sq, 1);
    for (double x : {0.5, 3.0})
        REQUIRE_THAT(eval_kernel(mk, x), WithinRel(x * weight_tilde_generic(sq, 1, x), 1e-8));

    auto pt = NonlinearityFn::poschl_teller(3.0);
    const AssembledKernel nk = assemble_moment_kernel_negative(pt, 1);
    const AssembledKernel bare = assemble_tilde_negative(pt, 1);
    for (double x : {0.5, 3.0})
        REQUIRE_THAT(eval_kernel(nk, x), WithinRel(x * eval_kernel(bare, x), 1e-8));
}

TEST_CASE("quantized-amplitude comparison weight") {
    REQUIRE_THAT(weight_klauder(0.5), WithinAbs(-0.151632665, 1e-9));
    REQUIRE(weight_klauder(0.0) == 0.0);
    REQUIRE_THROWS_AS(weight_klauder(-0.1), std::domain_error);

    SECTION("moments k! k for k = 1..9") {
        const auto rows = moment_check([](double x) { return weight_klauder(x); },
                                       moment_targets_klauder(9));
        REQUIRE(rows.size() == 9);
        for (const auto& r : rows) {
            CAPTURE(r.k);
            REQUIRE(r.rel_error < 1e-8);
            REQUIRE(r.x_max > 0.0);
        }
    }
    SECTION("sign change at x = 1") {
        const SignReport rep =
            positivity_scan([](double x) { return weight_klauder(x); }, log_grid(0.01, 40.0, 300));
        REQUIRE(rep.change_locations.size() == 1);
        REQUIRE_THAT(rep.change_locations[0], WithinRel(1.0, 0.02));
        REQUIRE(rep.min_value < 0.0);
    }
}

TEST_CASE("Stieltjes moments of the assembled kernels") {
    SECTION("shifted-oscillator literal, m = 1, nu = 3") {
        auto pt = NonlinearityFn::poschl_teller(3.0);
        const AssembledKernel k = assemble_moment_kernel_pt_literal(pt, 1);
        const auto rows = moment_check([&](double x) { return eval_kernel(k, x); },
                                       moment_targets_pt_literal(3.0, 1, 12), 1e-7);
        for (const auto& r : rows) {
            CAPTURE(r.k, r.target, r.computed);
            REQUIRE(r.rel_error < 1e-6);
        }
    }
    SECTION("square-root ladder, generic scale, m = 1") {
        auto sq = NonlinearityFn::sqrt_n();
        const AssembledKernel k = assemble_moment_kernel_positive(sq, 1);
        const auto rows = moment_check([&](double x) { return eval_kernel(k, x); },
                                       moment_targets_generic(sq, 1, 12), 1e-7);
        for (const auto& r : rows) {
            CAPTURE(r.k, r.target, r.computed);
            REQUIRE(r.rel_error < 1e-6);
        }
    }
    SECTION("photon-subtracted shifted oscillator, mu = 1") {
        auto pt = NonlinearityFn::poschl_teller(3.0);
        const AssembledKernel k = assemble_moment_kernel_negative(pt, 1);
        const auto rows = moment_check([&](double x) { return eval_kernel(k, x); },
                                       moment_targets_negative(pt, 1, 6), 1e-7);
        for (const auto& r : rows) {
            CAPTURE(r.k, r.target, r.computed);
            REQUIRE(r.rel_error < 1e-6);
        }
    }
    SECTION("photon-subtracted unity targets coincide with the comparison weight's") {
        const auto neg = moment_targets_negative(NonlinearityFn::unity(), 1, 9);
        const auto kl = moment_targets_klauder(9);
        for (size_t i = 0; i < neg.size(); ++i)
            REQUIRE_THAT(neg[i].log_target, WithinAbs(kl[i].log_target, 1e-12));
    }
}

TEST_CASE("full photon-subtracted weight against a series oracle") {
    // mu = 1, f = 1: S_neg = 2F2(1,1;2,2;x), bare kernel exp(-x)(x-1), so
    // W = 2F2(1,1;2,2;x) x exp(-x) (x-1) exactly.
    auto u = NonlinearityFn::unity();
    for (double x : {0.3, 1.5, 7.0}) {
        const double oracle = hyper_pfq({1.0, 1.0}, {2.0, 2.0}, x) * x * std::exp(-x) * (x - 1.0);
        REQUIRE_THAT(weight_negative_m(u, 1, x), WithinRel(oracle, 1e-8));
    }
    REQUIRE(weight_negative_m(u, 1, 0.5) < 0.0);

    SECTION("at least one sign change, located at x = 1 for f = 1") {
        const SignReport rep = positivity_scan([&](double x) { return weight_negative_m(u, 1, x); },
                                               log_grid(0.01, 40.0, 200));
        REQUIRE(rep.change_locations.size() >= 1);
        REQUIRE_THAT(rep.change_locations[0], WithinRel(1.0, 0.05));
    }
}

TEST_CASE("full photon-added weight") {
    auto pt = NonlinearityFn::poschl_teller(3.0);
    SECTION("series normalization factor vs its hypergeometric closed form") {
        // m = 1, nu = 3: S_2 = 1! (1+3)!/3! 2F3(2, 5; 1, 4, 4; x)
        for (double x : {0.1, 1.0, 5.0, 20.0}) {
            const double s2 = 4.0 * hyper_pfq({2.0, 5.0}, {1.0, 4.0, 4.0}, x);
            const double product = s2 * x * weight_tilde_generic(pt, 1, x);
            REQUIRE_THAT(weight_full(pt, 1, x), WithinRel(product, 1e-6));
        }
    }
    SECTION("undeformed m = 0 weight is flat") {
        auto u = NonlinearityFn::unity();
        for (double x : {0.5, 2.0, 10.0})
            REQUIRE_THAT(weight_full(u, 0, x), WithinRel(1.0, 1e-9));
    }
    SECTION("m = 0: added and subtracted families share one weight") {
        for (const auto& f : {NonlinearityFn::unity(), NonlinearityFn::poschl_teller(3.0)}) {
            for (double x : {0.4, 3.0, 15.0})
                REQUIRE_THAT(weight_negative_m(f, 0, x), WithinRel(weight_full(f, 0, x), 1e-10));
        }
    }
}

TEST_CASE("sign structure of the full weights") {
    auto pt = NonlinearityFn::poschl_teller(3.0);
    auto sq = NonlinearityFn::sqrt_n();
    const auto grid = log_grid(0.01, 40.0, 200);

    SECTION("photon-added weights stay positive") {
        for (int m : {1}) {
            const SignReport rep =
                positivity_scan([&](double x) { return weight_full(pt, m, x); }, grid);
            CAPTURE(m);
            REQUIRE(rep.change_locations.empty());
            REQUIRE(rep.min_value > 0.0);
        }
        for (int m : {1, 5}) {
            const SignReport rep =
                positivity_scan([&](double x) { return weight_full(sq, m, x); }, grid);
            CAPTURE(m);
            REQUIRE(rep.change_locations.empty());
            REQUIRE(rep.min_value > 0.0);
        }
    }
    SECTION("photon-subtracted weights change sign") {
        const SignReport rep =
            positivity_scan([&](double x) { return weight_negative_m(pt, 1, x); }, grid);
        REQUIRE(rep.change_locations.size() >= 1);
        REQUIRE(rep.min_value < 0.0);
    }
}

TEST_CASE("moment-growth diagnostic") {
    SECTION("factorial growth: divergent trend") {
        std::vector<MomentTarget> t;
        for (int k = 1; k <= 40; ++k) t.push_back({k, std::lgamma(k + 0.0), "poisson"});
        const CarlemanReport rep = carleman_diagnostic(t);
        REQUIRE(rep.divergent_trend);
        REQUIRE(rep.slope > 6.0);
        REQUIRE(rep.slope < 12.0);
        REQUIRE(rep.partial_sums.size() == 40);
        for (size_t i = 1; i < rep.partial_sums.size(); ++i)
            REQUIRE(rep.partial_sums[i] > rep.partial_sums[i - 1]);
    }
    SECTION("(2k)! growth: convergent trend") {
        std::vector<MomentTarget> t;
        for (int k = 1; k <= 40; ++k) t.push_back({k, std::lgamma(2.0 * k + 1.0), "fast"});
        const CarlemanReport rep = carleman_diagnostic(t);
        REQUIRE_FALSE(rep.divergent_trend);
        REQUIRE(rep.slope > 1.0);
        REQUIRE(rep.slope < 1.8);
    }
    SECTION("shifted-oscillator targets: divergent trend") {
        const CarlemanReport rep = carleman_diagnostic(moment_targets_pt_literal(3.0, 1, 40));
        REQUIRE(rep.divergent_trend);
        REQUIRE(rep.slope > 2.2);
        REQUIRE(rep.slope < 4.5);
    }
    REQUIRE_THROWS_AS(carleman_diagnostic(moment_targets_klauder(9)), std::invalid_argument);
}

TEST_CASE("kernels that only exist on the unit disk are rejected") {
    auto is = NonlinearityFn::inv_sqrt_n();
    const AssembledKernel k = assemble_tilde_positive(is, 1);
    REQUIRE_THROWS_WITH(eval_kernel(k, 0.5), ContainsSubstring("unit disk"));
}

TEST_CASE("target builders validate their arguments") {
    auto u = NonlinearityFn::unity();
    REQUIRE_THROWS_AS(moment_targets_generic(u, -1, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(moment_targets_generic(u, 1, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(moment_targets_pt_literal(3.0, -1, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(moment_targets_negative(u, -1, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(moment_targets_klauder(0), std::invalid_argument);
    REQUIRE_THROWS_AS(assemble_moment_kernel_pt_literal(u, 1), std::invalid_argument);
}
