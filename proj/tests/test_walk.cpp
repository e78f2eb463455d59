// Walk mechanics, composition accounting, end-to-end builders, and the
// invariants that keep the rounding honest.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polarwalk/errors.hpp"
#include "polarwalk/f2poly.hpp"
#include "polarwalk/taylor.hpp"
#include "polarwalk/walk.hpp"

using namespace polarwalk;

TEST_CASE("single step arithmetic") {
    WalkState state = WalkState::origin(3);
    const double first[] = {0.25, 0.25, 0.25};
    walk_step_inplace(state, first);
    for (double pos : state.position) CHECK(pos == doctest::Approx(0.25));

    // absorbed coordinate stays put
    state.position = {1.0, 0.5, -1.0};
    const double second[] = {-0.5, 0.5, 0.9};
    walk_step_inplace(state, second);
    CHECK(state.position[0] == doctest::Approx(1.0));
    CHECK(state.position[1] == doctest::Approx(0.75));
    CHECK(state.position[2] == doctest::Approx(-1.0));
    CHECK(state.step == 2);

    const double bad[] = {2.0, 0.0, 0.0};
    CHECK_THROWS_AS(walk_step_inplace(state, bad), std::invalid_argument);
}

TEST_CASE("containment: every position stays inside the solid cube") {
    // exhaustive over the full composed seed space at a small shape
    const FractionalPRG inner = fractional_from_base(kwise_generator(4, 1), 0.45, 0.01);
    Constants constants;
    constants.walk_step_constant = 0.5;  // small shape so the seed space enumerates
    const ComposedPRG prg = walk_compose(inner, 0.35, constants);
    REQUIRE(prg.steps() <= 8);
    REQUIRE(prg.seed_len() <= 20);
    for (std::int64_t s = 0; s < (std::int64_t{1} << prg.seed_len()); ++s) {
        IntSeedStream stream(static_cast<std::uint64_t>(s));
        const std::vector<WalkState> trace = prg.trace(stream);
        for (const WalkState& state : trace)
            for (double pos : state.position) REQUIRE(std::fabs(pos) <= 1.0 + 1e-12);
    }
}

TEST_CASE("seed accounting is byte-exact") {
    const FractionalPRG inner = build_fracprg_mk(8, 3, 1.0, 0.3);
    const ComposedPRG prg = walk_compose(inner, 0.3);
    CHECK(prg.seed_len() == prg.steps() * inner.seed_len());
    CounterSeedStream stream(5, 0);
    std::int8_t out[8];
    prg.sample_signs(stream, std::span<std::int8_t>(out, 8));
    CHECK(stream.consumed() == prg.seed_len());
    for (int i = 0; i < 8; ++i) CHECK((out[i] == 1 || out[i] == -1));
}

TEST_CASE("composition step count follows the formula") {
    const FractionalPRG inner = build_fracprg_mk(8, 3, 1.0, 0.2);
    Constants constants;
    const ComposedPRG prg = walk_compose(inner, 0.2, constants);
    const double expected =
        std::ceil(4.0 * std::log(16.0 / 0.2) / inner.noticeability);
    CHECK(static_cast<double>(prg.steps()) == doctest::Approx(expected));
    CHECK(prg.ledger().step_error_total ==
          doctest::Approx(static_cast<double>(prg.steps()) * inner.eps_target));

    // a unit-scale inner generator polarizes in one step but keeps the
    // formula's step count; outputs equal the base signs
    const FractionalPRG unit = fractional_from_base(raw_seed_generator(4), 1.0, 0.0);
    const ComposedPRG absorbed = walk_compose(unit, 0.5);
    IntSeedStream stream(0b1010u);
    std::int8_t out[4];
    absorbed.sample_signs(stream, std::span<std::int8_t>(out, 4));
    CHECK(out[0] == +1);
    CHECK(out[1] == -1);
    CHECK(out[2] == +1);
    CHECK(out[3] == -1);

    Caps caps;
    caps.max_walk_steps = 4;
    CHECK_THROWS_AS((void)walk_compose(build_fracprg_mk(8, 3, 1.0, 0.001), 0.001, Constants{}, caps),
                    ResourceError);
    CHECK_THROWS_AS((void)walk_compose(fractional_from_base(raw_seed_generator(4), 0.0, 0.1), 0.1),
                    std::invalid_argument);
}

TEST_CASE("polarization distance is monotone under an exact inner generator") {
    const FractionalPRG inner = fractional_from_base(kwise_generator(4, 2), 0.5, 0.01);
    Caps caps;
    caps.max_walk_steps = 6;
    Constants constants;
    constants.walk_step_constant = 0.4;
    const ComposedPRG prg = walk_compose(inner, 0.9, constants, caps);
    REQUIRE(prg.seed_len() <= 26);
    const std::vector<double> profile = polarization_profile(prg, true, 0, 0, caps);
    for (std::size_t t = 1; t < profile.size(); ++t) CHECK(profile[t] <= profile[t - 1] + 1e-9);
    CHECK(profile.front() == doctest::Approx(4.0));
}

TEST_CASE("recentering identity: averaged restrictions equal the shifted walk polynomial") {
    // the step map a -> a + (1-|a|) o y is exactly the averaging the
    // three-point law produces, tested as polynomial identity
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(mix64(9100 + trial) % 6);
        const FourierExpansion fe = wht_forward(random_table(n, mix64(9200 + trial)));
        std::vector<double> a(static_cast<std::size_t>(n)), width(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            a[static_cast<std::size_t>(i)] =
                (static_cast<double>(mix64(trial * 41 + i) % 2001) / 1000.0) - 1.0;
            width[static_cast<std::size_t>(i)] = 1.0 - std::fabs(a[static_cast<std::size_t>(i)]);
        }
        const FourierExpansion averaged = recentering_average(fe, a, width);
        const FourierExpansion direct = affine_substitute(fe, a, width);
        for (std::uint32_t m = 0; m < averaged.size(); ++m)
            REQUIRE(averaged.coeffs[m] == doctest::Approx(direct.coeffs[m]).epsilon(1e-10));
    }
}

TEST_CASE("level guard: two levels cannot drive the composition") {
    CHECK_THROWS_AS((void)build_prg_levelk(8, 2, 1.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS((void)build_prg_uptok(8, 1, 1.0, 0.2), std::invalid_argument);
}

TEST_CASE("level-k build: seed length drops when the level rises") {
    const ComposedPRG k3 = build_prg_levelk(8, 3, 1.0, 0.25);
    const ComposedPRG k4 = build_prg_levelk(8, 4, 1.0, 0.25);
    CHECK(k4.ledger().seed_len < k3.ledger().seed_len);
    CHECK(k3.ledger().level_k == 3);
}

TEST_CASE("level-k build fools quadratic lifts at a verifiable budget") {
    const ComposedPRG prg = build_prg_levelk(8, 3, 1.0, 0.35);
    const FunctionFamily family = family_f2_sampled(8, 2, 40, 3);
    PrgFoolingOptions options;
    options.exact = false;
    options.samples = 20000;
    options.seed = 11;
    const ExperimentReport report = prg_fooling_error(prg, 0.35, family, options);
    CHECK(report.passed());
}

TEST_CASE("up-to-level build and its admissible range flag") {
    const ComposedPRG prg = build_prg_uptok(8, 5, 1.0, 0.3);
    CHECK(prg.ledger().admissible_range);
    const FunctionFamily family = family_f2_sampled(8, 2, 40, 5);
    PrgFoolingOptions options;
    options.exact = false;
    options.samples = 40000;
    options.seed = 13;
    CHECK(prg_fooling_error(prg, 0.3, family, options).passed());

    // below the admissible range: still built, flagged
    const ComposedPRG flagged = build_prg_uptok(8, 5, 2.0, 0.2);
    CHECK_FALSE(flagged.ledger().admissible_range);
}

TEST_CASE("auto level formula") {
    Constants constants;
    const int k = auto_level(8, 1.0, 0.3, constants);
    CHECK(k == std::max(3, static_cast<int>(std::ceil(
                               constants.f2_level_constant *
                               std::log2(std::max(2.0, 1.0 * std::log2(16.0) / 0.3))))));
    CHECK(auto_level(8, 1.0, 0.9, constants) >= 3);
}

TEST_CASE("field-polynomial recipe wiring") {
    const ComposedPRG prg = build_prg_f2(8, 2, 0.3);
    CHECK(prg.ledger().level_k >= 3);
    CHECK(prg.ledger().analytic_b ==
          doctest::Approx(prg.ledger().level_k * std::pow(2.0, 6.0)));
    CHECK(prg.ledger().configured_b >= 1.0);
    CHECK(prg.ledger().seed_len == prg.steps() * prg.inner().seed_len());

    // overflowing degree is rejected before any construction work
    CHECK_THROWS_AS((void)build_prg_f2(8, 14, 0.3), ResourceError);
    CHECK_THROWS_AS((void)build_prg_f2(8, 0, 0.3), std::invalid_argument);
}

TEST_CASE("affine lifts are fooled by the degree-1 recipe build") {
    const ComposedPRG prg = build_prg_f2(8, 1, 0.3);
    const FunctionFamily affine = family_f2(8, 1, 1 << 10);
    PrgFoolingOptions options;
    options.exact = false;
    options.samples = 50000;
    options.seed = 17;
    const ExperimentReport report = prg_fooling_error(prg, 0.3, affine, options);
    CHECK(report.passed());
}

TEST_CASE("fooling oracle endpoints") {
    // the uniform generator has error exactly zero
    const auto uniform = raw_seed_generator(4);
    const FunctionFamily family = family_f2(4, 2, 1 << 12);
    const ExperimentReport exact = prg_fooling_error(*uniform, 0.0, family);
    CHECK(exact.passed());
    CHECK(exact.quantities["max_error"].get<double>() == doctest::Approx(0.0));

    // the constant generator fails maximally against a parity
    const auto constant = constant_generator(8, +1);
    const FunctionFamily parity = family_single(parity_table(8, 0xFF), "parity8");
    const ExperimentReport worst = prg_fooling_error(*constant, 0.5, parity);
    CHECK_FALSE(worst.passed());
    CHECK(worst.quantities["max_error"].get<double>() == doctest::Approx(1.0));
}
