#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polarwalk/config.hpp"
#include "polarwalk/truth_table.hpp"

namespace polarwalk {

// Multilinear expansion of a function on the n-cube: coeffs[m] is the
// coefficient of the monomial prod_{i in m} x_{i+1}, with subsets packed as
// bitmasks. Produced from a TruthTable the coefficients satisfy Parseval;
// the type also holds tails, level parts, and other derived expansions.
struct FourierExpansion {
    int n = 0;
    std::vector<double> coeffs;  // 2^n entries indexed by subset mask

    FourierExpansion() = default;
    FourierExpansion(int n_vars, std::vector<double> c);
    static FourierExpansion zeros(int n_vars);

    std::size_t size() const { return coeffs.size(); }
};

// Per-coordinate restriction: fix a variable to +1 or -1, or leave it free.
struct Restriction {
    static constexpr std::int8_t kFree = 0;
    std::vector<std::int8_t> assignment;  // entries in {-1, 0, +1}, length n

    static Restriction all_free(int n) { return Restriction{std::vector<std::int8_t>(n, kFree)}; }
    int fixed_count() const;
};

// Forward transform: coeffs[m] = 2^{-n} sum_x f(x) x^m. The in-place
// butterfly is its own inverse up to the 2^{-n} normalization, so the exact
// integer variants below share the same kernel.
FourierExpansion wht_forward(const TruthTable& table, const Caps& caps = Caps{});

// Exact integer mode: coefficients scaled by 2^n. Round-trips bit-exactly.
std::vector<std::int64_t> wht_forward_scaled(const TruthTable& table, const Caps& caps = Caps{});
TruthTable wht_inverse_scaled(int n, const std::vector<std::int64_t>& scaled_coeffs);

// Evaluates the expansion at every corner of the cube in one pass:
// result[m] = f(x_m) where x_m is the point encoded by mask m.
std::vector<double> corner_values(const FourierExpansion& fe);

// Multilinear evaluation at an arbitrary point of [-1,1]^n.
double eval_multilinear(const FourierExpansion& fe, std::span<const double> x);

// Substitutes the fixed coordinates of rho; the result lives on the same
// index space with the fixed variables eliminated.
FourierExpansion apply_restriction(const FourierExpansion& fe, const Restriction& rho);

// g with g-hat(S) = f-hat(S) * prod_{i in S} signs[i].
FourierExpansion negate_inputs(const FourierExpansion& fe, std::span<const int> signs);

// Substitutes x_i -> offset[i] + scale[i] * x_i.
FourierExpansion affine_substitute(const FourierExpansion& fe, std::span<const double> offset,
                                   std::span<const double> scale);

// 3^n, the number of restrictions of an n-variate function.
std::uint64_t restriction_count(int n);

// Decodes restriction `index` (base-3 digits: 0 free, 1 fixed +1, 2 fixed -1).
Restriction decode_restriction(int n, std::uint64_t index);

// Visits the restriction closure. Exact mode walks all 3^n assignments and
// requires 3^n <= budget; otherwise pass a seed to sample `budget`
// assignments deterministically. Returns the number visited.
std::uint64_t for_each_restriction(const FourierExpansion& fe, std::int64_t budget,
                                   std::optional<std::uint64_t> sample_seed,
                                   const std::function<void(const Restriction&, const FourierExpansion&)>& fn);

// Materialized closure for small n.
std::vector<FourierExpansion> restriction_closure(const FourierExpansion& fe, std::int64_t budget,
                                                  std::optional<std::uint64_t> sample_seed = std::nullopt);

}  // namespace polarwalk
