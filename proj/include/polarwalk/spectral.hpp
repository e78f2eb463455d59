#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "polarwalk/config.hpp"
#include "polarwalk/family.hpp"
#include "polarwalk/fourier.hpp"

namespace polarwalk {

// Level-k quantities of a function or class. `mk` is the exact maximum over
// all sign vectors of the signed level-k coefficient sum; `l1` the absolute
// coefficient sum; `unsigned_sum` the plain signed sum. Always mk <= l1 and
// |unsigned_sum| <= mk.
struct LevelMetrics {
    int k = 0;
    double l1 = 0.0;
    double mk = 0.0;
    double unsigned_sum = 0.0;
    std::uint32_t argmax = 0;      // corner attaining mk (lowest index on ties)
    bool exact = true;             // false when a closure or family was sampled
    std::size_t witness_member = 0;  // class level: member attaining mk
};

double l1_level_mass(const FourierExpansion& fe, int k);
double unsigned_level_sum(const FourierExpansion& fe, int k);

// Exact corner maximization of the level-k part; multilinearity makes the
// corner maximum equal the maximum over the solid cube.
LevelMetrics level_abs_sum(const FourierExpansion& fe, int k, const Caps& caps = Caps{});

// All-level metrics of one function (for the analyze surface).
std::vector<LevelMetrics> all_level_metrics(const FourierExpansion& fe, const Caps& caps = Caps{});

enum class ClosureMode { as_given, restriction_closure };

struct ClassMetricsOptions {
    ClosureMode mode = ClosureMode::as_given;
    // Exact closure when 3^n <= closure_budget; otherwise sampled with
    // closure_samples draws per member and the declared seed.
    std::int64_t closure_budget = 531441;  // 3^12
    std::int64_t closure_samples = 4096;
    std::uint64_t sample_seed = 1;
    Caps caps = Caps{};
};

// Maxima of the level metrics over the (optionally restriction-closed)
// member set. Sampled results are lower bounds on the true class quantity
// and are labeled exact=false.
LevelMetrics class_metrics(const FunctionFamily& family, int k,
                           const ClassMetricsOptions& options = ClassMetricsOptions{});

// Exact level metrics over the full restriction closure of one function,
// fused into a single scratch-buffer sweep (the closure has 3^n members, so
// the per-restriction constant dominates everything).
LevelMetrics closure_level_metrics(const FourierExpansion& fe, int k, const Caps& caps = Caps{});

}  // namespace polarwalk
