#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "polarwalk/config.hpp"
#include "polarwalk/family.hpp"
#include "polarwalk/fracprg.hpp"
#include "polarwalk/generators.hpp"
#include "polarwalk/report.hpp"

namespace polarwalk {

// Position of the random walk inside the solid cube.
struct WalkState {
    std::vector<double> position;
    int step = 0;
    std::int64_t seed_bits = 0;

    static WalkState origin(int n) { return WalkState{std::vector<double>(n, 0.0), 0, 0}; }
};

// One step: position <- position + (1 - |position|) o y. The update keeps
// every coordinate inside [-1, 1] and fixes coordinates that reached +-1.
void walk_step_inplace(WalkState& state, std::span<const double> y);
WalkState walk_step(WalkState state, std::span<const double> y);

// Error and seed accounting of a composed generator.
struct WalkLedger {
    std::int64_t steps = 0;
    std::int64_t seed_len = 0;
    double target_eps = 0.0;
    double per_step_eps = 0.0;
    double step_error_total = 0.0;         // steps * per_step_eps
    double polarization_residual = 0.0;    // probe mean of sum_i (1 - |pos_i|) at the end
    double inner_c = 0.0;
    double inner_p = 0.0;
    int level_k = 0;
    double configured_b = 0.0;
    double analytic_b = 0.0;               // filled by the F2 recipe
    bool admissible_range = true;          // range check of the up-to-level recipe
    double step_constant = 0.0;
};

// Runs `steps` independent copies of the fractional generator through the
// walk and rounds the final position to signs (ties to +1). Seed length is
// steps times the inner seed length, verified byte-exact by construction.
class ComposedPRG final : public SeededGenerator {
public:
    ComposedPRG(FractionalPRG inner, std::int64_t steps, WalkLedger ledger);

    void sample_signs(SeedStream& seed, std::span<std::int8_t> out) const override;

    const FractionalPRG& inner() const { return inner_; }
    const WalkLedger& ledger() const { return ledger_; }
    WalkLedger& ledger() { return ledger_; }
    std::int64_t steps() const { return ledger_.steps; }

    // Walk trace for invariants: per-step positions for one seed stream.
    std::vector<WalkState> trace(SeedStream& seed) const;

private:
    FractionalPRG inner_;
    WalkLedger ledger_;
};

// steps = ceil(C * ln(2n / eps_final) / p). The polarization residual in the
// ledger is measured by a fixed deterministic probe.
ComposedPRG walk_compose(FractionalPRG inner, double eps_final, const Constants& constants = Constants{},
                         const Caps& caps = Caps{});

// Full generator from a level-k corner bound b^k (k > 2): per-step error
// delta = C * (eps / (b^2 log2(n/eps)))^{k/(k-2)}, exact (k-1)-wise inner.
ComposedPRG build_prg_levelk(int n, int k, double b, double eps, const Constants& constants = Constants{},
                             const Caps& caps = Caps{});

// Same composition with the small-bias inner generator; valid down to
// eps ~ b log(n) 2^{-k}, below which the ledger flags the range.
ComposedPRG build_prg_uptok(int n, int k, double b, double eps, const Constants& constants = Constants{},
                            const Caps& caps = Caps{});

// Level choice for a target error under the up-to-level recipe.
int auto_level(int n, double b, double eps, const Constants& constants = Constants{});

// Degree-d field-polynomial recipe: level and base bound derived from
// (n, d, eps); the analytic base bound is recorded next to the configured one.
ComposedPRG build_prg_f2(int n, int d, double eps, const Constants& constants = Constants{},
                         const Caps& caps = Caps{});

struct PrgFoolingOptions {
    bool exact = true;             // full composed seed space
    std::int64_t samples = 1000000;
    std::uint64_t seed = 1;
};

// max over members of |E f(X) - f-hat(empty)| for a sign-valued generator.
// Sampled mode reports the three-sigma radius of the estimate.
ExperimentReport prg_fooling_error(const SeededGenerator& gen, double eps_target,
                                   const FunctionFamily& family,
                                   const PrgFoolingOptions& options = PrgFoolingOptions{},
                                   const Caps& caps = Caps{});

// Mean distance-to-corner sum per step, for the polarization invariant.
std::vector<double> polarization_profile(const ComposedPRG& prg, bool exact, std::int64_t samples,
                                         std::uint64_t seed, const Caps& caps = Caps{});

}  // namespace polarwalk
