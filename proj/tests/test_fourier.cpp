// Exact transform, evaluation, restriction, and closure checks for the
// boolean core. Everything here is integer-exact or pinned to 1e-9.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "polarwalk/errors.hpp"
#include "polarwalk/fourier.hpp"
#include "polarwalk/seeding.hpp"
#include "polarwalk/truth_table.hpp"

using namespace polarwalk;

namespace {
double coeff(const FourierExpansion& fe, std::uint32_t mask) { return fe.coeffs[mask]; }
}  // namespace

TEST_CASE("forward transform on the canonical small functions") {
    const FourierExpansion and2 = wht_forward(and2_table());
    CHECK(coeff(and2, 0b00) == doctest::Approx(0.5));
    CHECK(coeff(and2, 0b01) == doctest::Approx(0.5));
    CHECK(coeff(and2, 0b10) == doctest::Approx(0.5));
    CHECK(coeff(and2, 0b11) == doctest::Approx(-0.5));

    const FourierExpansion par3 = wht_forward(parity_table(3, 0b111));
    for (std::uint32_t m = 0; m < 8; ++m)
        CHECK(coeff(par3, m) == doctest::Approx(m == 0b111 ? 1.0 : 0.0));

    const FourierExpansion one = wht_forward(TruthTable::constant(3, +1));
    CHECK(coeff(one, 0) == doctest::Approx(1.0));
    for (std::uint32_t m = 1; m < 8; ++m) CHECK(coeff(one, m) == doctest::Approx(0.0));
}

TEST_CASE("round trip is exact and Parseval holds on random tables") {
    for (int trial = 0; trial < 52; ++trial) {
        // two trials pin the largest exhaustive shape; the rest sweep n <= 10
        const int n = trial >= 50 ? 16 : 1 + static_cast<int>(mix64(900 + trial) % 10);
        const TruthTable table = random_table(n, mix64(trial));
        const auto scaled = wht_forward_scaled(table);
        CHECK(wht_inverse_scaled(n, scaled) == table);

        const FourierExpansion fe = wht_forward(table);
        double parseval = 0.0;
        for (double c : fe.coeffs) parseval += c * c;
        CHECK(std::fabs(parseval - 1.0) < 1e-9);
    }
}

TEST_CASE("multilinear evaluation") {
    const FourierExpansion and2 = wht_forward(and2_table());
    const double at_zero[] = {0.0, 0.0};
    CHECK(eval_multilinear(and2, at_zero) == doctest::Approx(0.5));
    const double boolean_point[] = {1.0, -1.0};
    CHECK(eval_multilinear(and2, boolean_point) == doctest::Approx(1.0));

    const FourierExpansion par3 = wht_forward(parity_table(3, 0b111));
    const double half[] = {0.5, 0.5, 0.5};
    CHECK(eval_multilinear(par3, half) == doctest::Approx(0.125));

    const double wrong_dim[] = {0.5};
    CHECK_THROWS_AS((void)eval_multilinear(par3, wrong_dim), std::invalid_argument);
}

TEST_CASE("evaluation agrees with the table at every corner") {
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(mix64(7000 + trial) % 7);
        const TruthTable table = random_table(n, mix64(400 + trial));
        const FourierExpansion fe = wht_forward(table);
        const std::vector<double> corners = corner_values(fe);
        for (std::uint32_t m = 0; m < table.size(); ++m) {
            CHECK(corners[m] == doctest::Approx(table.at(m)).epsilon(1e-12));
            std::vector<double> x(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (m >> i) & 1 ? -1.0 : 1.0;
            CHECK(eval_multilinear(fe, x) == doctest::Approx(table.at(m)).epsilon(1e-12));
        }
    }
}

TEST_CASE("restriction substitutes fixed variables") {
    const FourierExpansion par3 = wht_forward(parity_table(3, 0b111));
    Restriction rho = Restriction::all_free(3);
    rho.assignment[2] = -1;
    const FourierExpansion restricted = apply_restriction(par3, rho);
    CHECK(coeff(restricted, 0b011) == doctest::Approx(-1.0));
    CHECK(coeff(restricted, 0b111) == doctest::Approx(0.0));

    const FourierExpansion and2 = wht_forward(and2_table());
    Restriction fix_x2 = Restriction::all_free(2);
    fix_x2.assignment[1] = +1;
    const FourierExpansion constant_true = apply_restriction(and2, fix_x2);
    CHECK(coeff(constant_true, 0) == doctest::Approx(1.0));
    for (std::uint32_t m = 1; m < 4; ++m) CHECK(coeff(constant_true, m) == doctest::Approx(0.0));

    const FourierExpansion same = apply_restriction(and2, Restriction::all_free(2));
    for (std::uint32_t m = 0; m < 4; ++m) CHECK(coeff(same, m) == doctest::Approx(coeff(and2, m)));
}

TEST_CASE("restrict-then-evaluate equals evaluate on the completed point") {
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 2 + static_cast<int>(mix64(50 + trial) % 5);
        const TruthTable table = random_table(n, mix64(1000 + trial));
        const FourierExpansion fe = wht_forward(table);
        const Restriction rho = decode_restriction(
            n, derive_seed(2000, static_cast<std::uint64_t>(trial)) % restriction_count(n));
        const FourierExpansion restricted = apply_restriction(fe, rho);
        // exhaustive over completions of the free coordinates
        for (std::uint32_t m = 0; m < table.size(); ++m) {
            std::vector<double> point(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                const std::int8_t a = rho.assignment[static_cast<std::size_t>(i)];
                point[static_cast<std::size_t>(i)] =
                    a == Restriction::kFree ? ((m >> i) & 1 ? -1.0 : 1.0) : static_cast<double>(a);
            }
            CHECK(eval_multilinear(restricted, point) ==
                  doctest::Approx(eval_multilinear(fe, point)).epsilon(1e-12));
        }
    }
}

TEST_CASE("negating inputs flips coefficient signs") {
    const FourierExpansion par3 = wht_forward(parity_table(3, 0b111));
    const int flip_first[] = {-1, 1, 1};
    CHECK(coeff(negate_inputs(par3, flip_first), 0b111) == doctest::Approx(-1.0));

    const FourierExpansion and2 = wht_forward(and2_table());
    const int identity[] = {1, 1};
    const FourierExpansion same = negate_inputs(and2, identity);
    for (std::uint32_t m = 0; m < 4; ++m) CHECK(coeff(same, m) == doctest::Approx(coeff(and2, m)));

    const int both[] = {-1, -1};
    const FourierExpansion flipped = negate_inputs(and2, both);
    CHECK(coeff(flipped, 0b00) == doctest::Approx(0.5));
    CHECK(coeff(flipped, 0b01) == doctest::Approx(-0.5));
    CHECK(coeff(flipped, 0b10) == doctest::Approx(-0.5));
    CHECK(coeff(flipped, 0b11) == doctest::Approx(-0.5));
    // magnitudes preserved
    for (std::uint32_t m = 0; m < 4; ++m)
        CHECK(std::fabs(coeff(flipped, m)) == doctest::Approx(std::fabs(coeff(and2, m))));
}

TEST_CASE("restriction closure counts and determinism") {
    const FourierExpansion par2 = wht_forward(parity_table(2, 0b11));
    const auto closure = restriction_closure(par2, 16);
    CHECK(closure.size() == 9);

    const FourierExpansion x1 = wht_forward(parity_table(1, 0b1));
    CHECK(restriction_closure(x1, 8).size() == 3);

    const auto sampled_a = restriction_closure(par2, 1, std::uint64_t{42});
    const auto sampled_b = restriction_closure(par2, 1, std::uint64_t{42});
    REQUIRE(sampled_a.size() == 1);
    REQUIRE(sampled_b.size() == 1);
    CHECK(sampled_a[0].coeffs == sampled_b[0].coeffs);

    CHECK_THROWS_AS((void)restriction_closure(par2, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)restriction_closure(par2, 8), ResourceError);
}

TEST_CASE("affine substitution matches direct evaluation") {
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + static_cast<int>(mix64(6100 + trial) % 4);
        const FourierExpansion fe = wht_forward(random_table(n, mix64(6200 + trial)));
        std::vector<double> offset(static_cast<std::size_t>(n)), scale(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double a = (static_cast<double>(mix64(trial * 31 + i) % 2001) / 1000.0) - 1.0;
            offset[static_cast<std::size_t>(i)] = a;
            scale[static_cast<std::size_t>(i)] = 1.0 - std::fabs(a);
        }
        const FourierExpansion sub = affine_substitute(fe, offset, scale);
        for (std::uint32_t m = 0; m < (1u << n); ++m) {
            std::vector<double> x(static_cast<std::size_t>(n)), composed(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                x[static_cast<std::size_t>(i)] = (m >> i) & 1 ? -1.0 : 1.0;
                composed[static_cast<std::size_t>(i)] =
                    offset[static_cast<std::size_t>(i)] +
                    scale[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            }
            CHECK(eval_multilinear(sub, x) ==
                  doctest::Approx(eval_multilinear(fe, composed)).epsilon(1e-10));
        }
    }
}

TEST_CASE("truth table file format round trips") {
    const TruthTable and_table = and2_table();
    const std::string text = format_truth_table(and_table);
    CHECK(text == "n=2\n8\n");
    std::istringstream in(text);
    CHECK(parse_truth_table(in) == and_table);

    for (int trial = 0; trial < 6; ++trial) {
        const int n = 1 + static_cast<int>(mix64(8800 + trial) % 8);
        const TruthTable table = random_table(n, mix64(8900 + trial));
        std::istringstream round(format_truth_table(table));
        CHECK(parse_truth_table(round) == table);
    }

    std::istringstream bad_header("m=2\nff\n");
    CHECK_THROWS_AS((void)parse_truth_table(bad_header), IoError);
    std::istringstream bad_digit("n=2\nzz\n");
    CHECK_THROWS_AS((void)parse_truth_table(bad_digit), IoError);
    std::istringstream short_payload("n=3\nf\n");
    CHECK_THROWS_AS((void)parse_truth_table(short_payload), IoError);
    std::istringstream empty("");
    CHECK_THROWS_AS((void)parse_truth_table(empty), IoError);
}

TEST_CASE("resource cap on the transform") {
    Caps caps;
    caps.max_n = 4;
    CHECK_THROWS_AS((void)wht_forward(random_table(5, 1), caps), ResourceError);
}
