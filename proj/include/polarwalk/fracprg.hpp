#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "polarwalk/config.hpp"
#include "polarwalk/family.hpp"
#include "polarwalk/generators.hpp"
#include "polarwalk/report.hpp"

namespace polarwalk {

// Scaled sign generator with outputs in {-c, +c}^n: a fractional generator
// whose fooling target is the multilinear value at the origin. Every
// coordinate has second moment exactly c^2, which is its noticeability.
struct FractionalPRG {
    std::shared_ptr<const SeededGenerator> base;
    double c = 0.0;
    double noticeability = 0.0;  // c^2
    double eps_target = 0.0;
    int k = 0;
    double b = 1.0;
    std::string b_provenance = "analytic";

    int n() const { return base->n(); }
    std::int64_t seed_len() const { return base->seed_len(); }

    void sample(SeedStream& seed, std::span<double> out) const;
    std::uint32_t sample_mask(SeedStream& seed) const { return base->sample_mask(seed); }
};

// Wraps any sign generator at an explicit scale; c in [0, 1] is allowed here
// so degenerate experiments (c = 0, c = 1) stay expressible. The design
// routes below always keep c <= 1/2.
FractionalPRG fractional_from_base(std::shared_ptr<const SeededGenerator> base, double c,
                                   double eps_target = 0.0);

// Level-k design: base is (k-1)-wise exact, so the first k-1 levels
// contribute no error at all, and the scale is the largest c with
// (c/(1-c))^k * b^k <= split * eps (capped at 1/2).
FractionalPRG build_fracprg_mk(int n, int k, double b, double eps, const Caps& caps = Caps{},
                               const Constants& constants = Constants{});

// Low-level-mass design: base is small-bias with per-parity bound
// split * eps, and the scale is additionally capped at 1/(2b) so the
// geometric series over the low levels stays under the same budget.
FractionalPRG build_fracprg_l1(int n, int k, double b, double eps, const Caps& caps = Caps{},
                               const Constants& constants = Constants{});

struct FoolingOptions {
    bool exact = true;            // full seed enumeration
    std::int64_t samples = 1 << 16;
    std::uint64_t seed = 1;
};

// max over family members of |E f(X) - f(0)|, by exact seed enumeration or
// counter-seeded sampling. Pass iff within the generator's error target.
ExperimentReport fooling_error(const FractionalPRG& fprg, const FunctionFamily& family,
                               const FoolingOptions& options = FoolingOptions{},
                               const Caps& caps = Caps{});

}  // namespace polarwalk
