#pragma once

#include <cstdint>
#include <vector>

#include "polarwalk/config.hpp"
#include "polarwalk/report.hpp"
#include "polarwalk/truth_table.hpp"

namespace polarwalk {

// 0/1-valued function on {0,1}^n, the convention of the covariance harness:
// table index bits are the input bits, |x| is the Hamming weight, and
// e(f) = (-1)^f is the sign lift.
struct ZeroOneFunction {
    int n = 0;
    std::vector<std::uint8_t> values;  // 2^n entries in {0,1}

    ZeroOneFunction() = default;
    ZeroOneFunction(int n_vars, std::vector<std::uint8_t> vals);

    std::size_t size() const { return values.size(); }
    TruthTable sign_lift() const;  // (-1)^f with matching index conventions
};

ZeroOneFunction random_zero_one(int n, std::uint64_t seed, const Caps& caps = Caps{});

// Shifted majority: 1 exactly when the Hamming weight exceeds a.
ZeroOneFunction maj_a(int n, int a);

// Signed threshold band: the majority sign when the weight deviates from n/2
// by at least theta, 0 inside the band. The non-strict comparison is what
// makes the telescoping identity below exact; n must be even.
std::vector<std::int8_t> thr_theta(int n, int theta);

// |E[e(f)e(g)] - E[e(f)]E[e(g)]|, exact over all 2^n inputs.
double covariance(const ZeroOneFunction& f, const ZeroOneFunction& g);

// Block composition on k*n variables: block i feeds a shifted majority with
// its own shift, outputs combined by XOR.
ZeroOneFunction xor_shifted_majorities(int n, const std::vector<int>& shifts,
                                       const Caps& caps = Caps{});

// Identity sum_i e(x_i) = 2 * sum_{1<=a<=n/2} Thr_a(x), exhaustively. Odd n
// is reported not-applicable: the left side is odd, the right side even.
ExperimentReport fact62_check(int n);

// Equipartition bound: |sum of level-k coefficients| is at most the best
// cross-block sum over k-equipartitions divided by the exact probability
// that a fixed k-set crosses a random equipartition.
ExperimentReport fact63_check(const ZeroOneFunction& f, int k, const Caps& caps = Caps{});

// Exact binomial tails against the explicit exponential bound 2 exp(-2a^2/n),
// plus the least shift a with tail at most n^{-k}.
ExperimentReport fact64_check(int n, int k);

struct Lemma61Options {
    double range_constant = 1.0;  // shift window half-width multiplier
    double bound_constant = 1.0;  // conclusion constant
    Caps caps = Caps{};
};

// Diagnostic reduction harness: measures the worst covariance with XORs of
// shifted majorities over the admissible shift window, infers the least t
// satisfying the hypothesis, and reports the measured level-k corner maximum
// against the implied bound. No hard pass/fail; a flag marks an exceedance.
ExperimentReport lemma61_harness(const std::vector<ZeroOneFunction>& family, int n, int k,
                                 const Lemma61Options& options = Lemma61Options{});

}  // namespace polarwalk
