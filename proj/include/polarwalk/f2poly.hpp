#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polarwalk/config.hpp"
#include "polarwalk/family.hpp"
#include "polarwalk/report.hpp"
#include "polarwalk/truth_table.hpp"

namespace polarwalk {

// Polynomial over the two-element field in n variables, stored as a set of
// monomials (bitmask per monomial, mask 0 is the constant term 1).
struct F2Polynomial {
    int n = 0;
    std::vector<std::uint32_t> monomials;  // strictly increasing, no duplicates

    int degree() const;

    // Sorts and validates; duplicate or out-of-range monomials are rejected.
    static F2Polynomial from_monomials(int n_vars, std::vector<std::uint32_t> monos);
};

// Evaluation over the two-element field; x packed as bits (bit i = x_{i+1}).
int f2_eval(const F2Polynomial& poly, std::uint32_t x_bits);

// Sign lift (-1)^p under the standard identification +1 -> 0, -1 -> 1 on
// inputs. With the table convention (set bit = -1 input) the table index is
// the field point itself.
TruthTable lift_pm(const F2Polynomial& poly, const Caps& caps = Caps{});

// Inverse of lift_pm: exact algebraic normal form of a sign function.
F2Polynomial refit_f2(const TruthTable& table);

// File format: one monomial per line, ascending variable indices joined by
// '*' ("x3*x5"); the constant term is the line "1".
std::string format_f2(const F2Polynomial& poly);
F2Polynomial parse_f2(std::istream& in, const Caps& caps = Caps{});

// The class of degree <= d polynomials on n variables: full enumeration when
// 2^(#monomials) fits the budget, otherwise `sample_count` members drawn
// deterministically from the seed. Closed under restrictions either way.
FunctionFamily family_f2(int n, int d, std::int64_t enumerate_budget, const Caps& caps = Caps{});
FunctionFamily family_f2_sampled(int n, int d, std::size_t sample_count, std::uint64_t seed,
                                 const Caps& caps = Caps{});

// Checks the imported level-mass bound max L_{1,k} <= (k * 2^{3d})^k over the
// family and records the measured level-k corner maximum alongside. A failure
// at sampled scale would point at an implementation bug, not at the bound.
ExperimentReport prop51_check(int n, int d, int k, const FunctionFamily& family,
                              const Caps& caps = Caps{});

}  // namespace polarwalk
