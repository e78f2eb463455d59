// Fractional generator designs: the explicit scale formula, the built-in
// tail budget, exact noticeability, and fooling against enumerable families.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polarwalk/errors.hpp"
#include "polarwalk/f2poly.hpp"
#include "polarwalk/fracprg.hpp"
#include "polarwalk/spectral.hpp"

using namespace polarwalk;

TEST_CASE("scale formula of the level-k design") {
    const FractionalPRG fprg = build_fracprg_mk(8, 3, 1.0, 0.1);
    const double r = std::pow(0.05, 1.0 / 3.0);
    CHECK(fprg.c == doctest::Approx(r / (1.0 + r)).epsilon(1e-12));
    CHECK(fprg.c == doctest::Approx(0.2692).epsilon(1e-3));
    CHECK(fprg.noticeability == doctest::Approx(0.0725).epsilon(1e-2));
    CHECK(fprg.seed_len() == 6);  // pairwise base over a degree-3 field

    // large b drives the scale toward zero
    CHECK(build_fracprg_mk(8, 3, 1e6, 0.1).c < 1e-2);
    // saturated budget caps the scale at one half (reachable once b < 1)
    CHECK(build_fracprg_mk(8, 3, 1.0, 0.999).c <= 0.5 + 1e-12);
    CHECK(build_fracprg_mk(4, 2, 0.5, 0.9999).c == doctest::Approx(0.5));
}

TEST_CASE("scale formula of the low-mass design") {
    const FractionalPRG fprg = build_fracprg_l1(8, 3, 2.0, 0.1);
    const double r = std::pow(0.05, 1.0 / 3.0) / 2.0;
    CHECK(fprg.c == doctest::Approx(std::min(r / (1.0 + r), 0.25)).epsilon(1e-12));
    CHECK(fprg.c == doctest::Approx(0.1556).epsilon(1e-3));

    // with b = 1 the extra cap coincides with the generic one
    const FractionalPRG mk = build_fracprg_mk(8, 3, 1.0, 0.1);
    const FractionalPRG l1 = build_fracprg_l1(8, 3, 1.0, 0.1);
    CHECK(mk.c == doctest::Approx(l1.c).epsilon(1e-12));

    CHECK_THROWS_AS((void)build_fracprg_mk(8, 10, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)build_fracprg_mk(8, 3, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)build_fracprg_mk(8, 3, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("design inequality holds for every built generator") {
    for (int k : {1, 2, 3, 5}) {
        for (double b : {1.0, 1.7, 3.0}) {
            for (double eps : {0.02, 0.1, 0.5}) {
                const FractionalPRG fprg = build_fracprg_mk(8, k, b, eps);
                const double lhs = std::pow(fprg.c / (1.0 - fprg.c) * b, k);
                CHECK(lhs <= 0.5 * eps + 1e-12);
            }
        }
    }
}

TEST_CASE("every output coordinate has second moment exactly c^2") {
    const FractionalPRG fprg = build_fracprg_mk(4, 3, 1.0, 0.2);
    std::vector<double> out(4);
    std::vector<double> second(4, 0.0);
    const std::int64_t seeds = std::int64_t{1} << fprg.seed_len();
    for (std::int64_t s = 0; s < seeds; ++s) {
        IntSeedStream stream(static_cast<std::uint64_t>(s));
        fprg.sample(stream, out);
        for (int i = 0; i < 4; ++i) {
            CHECK(std::fabs(out[static_cast<std::size_t>(i)]) == doctest::Approx(fprg.c));
            second[static_cast<std::size_t>(i)] += out[static_cast<std::size_t>(i)] * out[static_cast<std::size_t>(i)];
        }
    }
    for (int i = 0; i < 4; ++i)
        CHECK(second[static_cast<std::size_t>(i)] / static_cast<double>(seeds) ==
              doctest::Approx(fprg.c * fprg.c).epsilon(1e-12));
}

TEST_CASE("scaled parities of the exact base vanish up to the design level") {
    const FractionalPRG fprg = build_fracprg_mk(8, 3, 1.0, 0.1);  // pairwise base
    const BiasAuditResult audit = bias_audit(*fprg.base, 2);
    CHECK(audit.max_numerator == 0);  // scaling by c^|S| preserves exact zeros
}

TEST_CASE("fooling a constant family costs nothing") {
    const FractionalPRG fprg = build_fracprg_mk(4, 3, 1.0, 0.05);
    const FunctionFamily constants = family_from_tables(
        "constants", {TruthTable::constant(4, +1), TruthTable::constant(4, -1)});
    const ExperimentReport report = fooling_error(fprg, constants);
    CHECK(report.passed());
    CHECK(report.quantities["max_error"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("a zero-scale generator fools everything exactly") {
    const FractionalPRG degenerate = fractional_from_base(kwise_generator(4, 2), 0.0, 0.01);
    const FunctionFamily family = family_f2(4, 1, 1 << 10);
    const ExperimentReport report = fooling_error(degenerate, family);
    CHECK(report.quantities["max_error"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("level-k design fools the quadratic lifts within budget") {
    // family: all degree-2 polynomials on 5 variables is large; sample it
    const FunctionFamily family = family_f2_sampled(8, 2, 60, 7);
    ClassMetricsOptions closure;
    closure.mode = ClosureMode::restriction_closure;
    const LevelMetrics m3 = class_metrics(family, 3, closure);
    const double b = std::max(1.0, std::pow(m3.mk, 1.0 / 3.0));
    const FractionalPRG fprg = build_fracprg_mk(8, 3, b, 0.1);
    const ExperimentReport report = fooling_error(fprg, family);
    CHECK(report.passed());
    CHECK(report.quantities["max_error"].get<double>() <= 0.1);
}

TEST_CASE("exact fooling check respects the seed cap") {
    const FractionalPRG fprg = build_fracprg_l1(8, 3, 1.0, 0.001);
    Caps caps;
    caps.max_seed_bits = 4;
    const FunctionFamily family = family_f2(8, 1, 1 << 10);
    CHECK_THROWS_AS((void)fooling_error(fprg, family, FoolingOptions{}, caps), ResourceError);
    FoolingOptions sampled;
    sampled.exact = false;
    sampled.samples = 2000;
    const ExperimentReport report = fooling_error(fprg, family, sampled, caps);
    CHECK(report.mode == "sampled(2000)");
}
