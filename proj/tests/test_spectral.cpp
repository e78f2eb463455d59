// Level metrics: absolute mass, corner maxima, unsigned sums, and the class
// identities that tie them together.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polarwalk/errors.hpp"
#include "polarwalk/seeding.hpp"
#include "polarwalk/spectral.hpp"

using namespace polarwalk;

TEST_CASE("level mass and corner maxima on canonical functions") {
    const FourierExpansion and2 = wht_forward(and2_table());
    CHECK(l1_level_mass(and2, 1) == doctest::Approx(1.0));
    CHECK(level_abs_sum(and2, 2).mk == doctest::Approx(0.5));
    CHECK(unsigned_level_sum(and2, 1) == doctest::Approx(1.0));

    const FourierExpansion par3 = wht_forward(parity_table(3, 0b111));
    CHECK(l1_level_mass(par3, 3) == doctest::Approx(1.0));
    CHECK(l1_level_mass(par3, 1) == doctest::Approx(0.0));
    CHECK(level_abs_sum(par3, 2).mk == doctest::Approx(0.0));
    const int flip_first[] = {-1, 1, 1};
    CHECK(unsigned_level_sum(negate_inputs(par3, flip_first), 3) == doctest::Approx(-1.0));

    const FourierExpansion maj3 = wht_forward(majority_table(3));
    CHECK(l1_level_mass(maj3, 1) == doctest::Approx(1.5));
    const LevelMetrics m1 = level_abs_sum(maj3, 1);
    CHECK(m1.mk == doctest::Approx(1.5));
    // attained where every coordinate pulls the same way; index 0 is all +1
    CHECK(m1.argmax == 0);

    const FourierExpansion one = wht_forward(TruthTable::constant(3, +1));
    for (int k = 1; k <= 3; ++k) CHECK(unsigned_level_sum(one, k) == doctest::Approx(0.0));

    CHECK_THROWS_AS((void)l1_level_mass(and2, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)level_abs_sum(and2, -1), std::invalid_argument);
}

TEST_CASE("metric ordering holds for random functions at every level") {
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(mix64(3100 + trial) % 8);
        const FourierExpansion fe = wht_forward(random_table(n, mix64(3200 + trial)));
        for (int k = 0; k <= n; ++k) {
            const LevelMetrics m = level_abs_sum(fe, k);
            CHECK(m.mk <= m.l1 + 1e-12);
            CHECK(std::fabs(m.unsigned_sum) <= m.mk + 1e-12);
        }
    }
}

TEST_CASE("class metrics over closures") {
    const FunctionFamily lone_parity = family_single(parity_table(3, 0b111), "parity3");
    ClassMetricsOptions closure;
    closure.mode = ClosureMode::restriction_closure;
    // sub-parities appear once a variable is pinned
    CHECK(class_metrics(lone_parity, 2, closure).mk == doctest::Approx(1.0));

    const FunctionFamily just_and = family_single(and2_table(), "and2");
    CHECK(class_metrics(just_and, 2).mk == doctest::Approx(0.5));

    const FunctionFamily all2 = family_all_functions(2);
    CHECK(all2.size() == 16);
    CHECK(class_metrics(all2, 1).mk == doctest::Approx(1.0));

    CHECK_THROWS_AS((void)class_metrics(all2, 5), std::invalid_argument);
}

TEST_CASE("negation-closure identity: class corner max equals max unsigned sum") {
    const FunctionFamily all2 = family_all_functions(2);
    REQUIRE(all2.closed_under_negations());
    for (int k = 0; k <= 2; ++k) {
        const LevelMetrics metrics = class_metrics(all2, k);
        double max_unsigned = -1e300;
        for (std::size_t i = 0; i < all2.size(); ++i)
            max_unsigned = std::max(max_unsigned, unsigned_level_sum(all2.member_expansion(i), k));
        CHECK(metrics.mk == doctest::Approx(max_unsigned).epsilon(1e-12));
        CHECK(metrics.unsigned_sum == doctest::Approx(max_unsigned).epsilon(1e-12));
    }
}

TEST_CASE("convex combinations never exceed the class corner maximum") {
    const FunctionFamily all2 = family_all_functions(2);
    for (int k = 0; k <= 2; ++k) {
        const double class_mk = class_metrics(all2, k).mk;
        for (int trial = 0; trial < 25; ++trial) {
            // random convex combination of four members
            FourierExpansion mix = FourierExpansion::zeros(2);
            double total = 0.0;
            double lambda[4];
            std::size_t pick[4];
            for (int j = 0; j < 4; ++j) {
                lambda[j] = 1.0 + static_cast<double>(mix64(trial * 17 + j + k * 101) % 1000);
                pick[j] = static_cast<std::size_t>(mix64(trial * 29 + j + k * 7) % all2.size());
                total += lambda[j];
            }
            for (int j = 0; j < 4; ++j) {
                const FourierExpansion fe = all2.member_expansion(pick[j]);
                for (std::uint32_t m = 0; m < 4; ++m)
                    mix.coeffs[m] += (lambda[j] / total) * fe.coeffs[m];
            }
            CHECK(level_abs_sum(mix, k).mk <= class_mk + 1e-9);
        }
    }
}

TEST_CASE("sampled closure is labeled and deterministic") {
    const FunctionFamily lone = family_single(random_table(6, 99), "random6");
    ClassMetricsOptions options;
    options.mode = ClosureMode::restriction_closure;
    options.closure_budget = 100;  // 3^6 = 729 > 100 forces sampling
    options.closure_samples = 64;
    options.sample_seed = 7;
    const LevelMetrics a = class_metrics(lone, 2, options);
    const LevelMetrics b = class_metrics(lone, 2, options);
    CHECK_FALSE(a.exact);
    CHECK(a.mk == b.mk);
    CHECK(a.argmax == b.argmax);

    ClassMetricsOptions exact;
    exact.mode = ClosureMode::restriction_closure;
    const LevelMetrics full = class_metrics(lone, 2, exact);
    CHECK(full.exact);
    // a sampled closure estimate is a lower bound on the exact class value
    CHECK(a.mk <= full.mk + 1e-12);
}
