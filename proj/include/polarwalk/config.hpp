#pragma once

#include <cstdint>

namespace polarwalk {

// Everything in this library is exact by default. These caps mark the line
// past which a caller must opt into sampling explicitly; crossing one in
// exact mode raises ResourceError rather than silently degrading.
struct Caps {
    int max_n = 20;                     // truth tables up to 2^20 entries
    int max_lp_n = 14;                  // corner constraints per approximation LP
    int max_closure_n = 12;             // exact restriction closure up to 3^12
    std::int64_t max_seed_bits = 26;    // exact seed enumeration up to 2^26 seeds
    std::int64_t max_walk_steps = 1 << 20;

    // Reads POLARWALK_MAX_N and POLARWALK_MAX_SEED_BITS when set.
    static Caps from_env();
};

// Named constants behind the asymptotic statements. Defaults are desk-scale
// choices; every report echoes the values it was run with.
struct Constants {
    double walk_step_constant = 4.0;        // multiplier in the step-count formula
    double budget_split = 0.5;              // error split: low-order terms vs tail
    double per_step_error_constant = 1.0;   // multiplier on the per-step error target
    double f2_level_constant = 2.0;         // level recipe multiplier for the F2 build
    double f2_base_constant = 1.0 / 128.0;  // base-bound recipe multiplier for the F2 build
    double corr_range_constant = 1.0;       // shift range multiplier in the covariance harness
    double corr_bound_constant = 1.0;       // conclusion constant in the covariance harness
};

}  // namespace polarwalk
