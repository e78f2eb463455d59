#include "polarwalk/walk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/fourier.hpp"
#include "polarwalk/parallel.hpp"

namespace polarwalk {

void walk_step_inplace(WalkState& state, std::span<const double> y) {
    if (y.size() != state.position.size()) throw std::invalid_argument("step dimension mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (std::fabs(y[i]) > 1.0 + 1e-12) throw std::invalid_argument("step outside [-1,1]");
        double& pos = state.position[i];
        pos += (1.0 - std::fabs(pos)) * y[i];
        if (pos > 1.0) pos = 1.0;
        if (pos < -1.0) pos = -1.0;
    }
    ++state.step;
}

WalkState walk_step(WalkState state, std::span<const double> y) {
    walk_step_inplace(state, y);
    return state;
}

ComposedPRG::ComposedPRG(FractionalPRG inner, std::int64_t steps, WalkLedger ledger)
    : SeededGenerator("walk(" + inner.base->kind() + ",T=" + std::to_string(steps) + ")", inner.n(),
                      steps * inner.seed_len()),
      inner_(std::move(inner)),
      ledger_(ledger) {
    if (n() > 32) throw std::invalid_argument("composed walk supports up to 32 coordinates");
}

void ComposedPRG::sample_signs(SeedStream& seed, std::span<std::int8_t> out) const {
    double position[32] = {0.0};
    const int dim = n();
    const double c = inner_.c;
    std::int8_t signs[32];
    for (std::int64_t t = 0; t < ledger_.steps; ++t) {
        inner_.base->sample_signs(seed, std::span<std::int8_t>(signs, static_cast<std::size_t>(dim)));
        for (int i = 0; i < dim; ++i) {
            double& pos = position[i];
            pos += (1.0 - std::fabs(pos)) * c * signs[i];
        }
    }
    for (int i = 0; i < dim; ++i)
        out[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(position[i] < 0.0 ? -1 : +1);
}

std::vector<WalkState> ComposedPRG::trace(SeedStream& seed) const {
    std::vector<WalkState> states;
    WalkState state = WalkState::origin(n());
    states.push_back(state);
    std::vector<double> y(static_cast<std::size_t>(n()));
    for (std::int64_t t = 0; t < ledger_.steps; ++t) {
        inner_.sample(seed, y);
        walk_step_inplace(state, y);
        state.seed_bits = seed.consumed();
        states.push_back(state);
    }
    return states;
}

namespace {

double measure_residual(const FractionalPRG& inner, std::int64_t steps) {
    const std::int64_t probes =
        std::clamp<std::int64_t>((std::int64_t{1} << 22) / std::max<std::int64_t>(steps, 1), 64, 2048);
    const int dim = inner.n();
    double total = 0.0;
    std::int8_t signs[32];
    for (std::int64_t probe = 0; probe < probes; ++probe) {
        CounterSeedStream seed(0x706f6c6172u, static_cast<std::uint64_t>(probe));
        double position[32] = {0.0};
        for (std::int64_t t = 0; t < steps; ++t) {
            inner.base->sample_signs(seed, std::span<std::int8_t>(signs, static_cast<std::size_t>(dim)));
            for (int i = 0; i < dim; ++i) {
                double& pos = position[i];
                pos += (1.0 - std::fabs(pos)) * inner.c * signs[i];
            }
        }
        for (int i = 0; i < dim; ++i) total += 1.0 - std::fabs(position[i]);
    }
    return total / static_cast<double>(probes);
}

}  // namespace

ComposedPRG walk_compose(FractionalPRG inner, double eps_final, const Constants& constants,
                         const Caps& caps) {
    if (!(eps_final > 0.0)) throw std::invalid_argument("final error target must be positive");
    if (inner.noticeability <= 0.0)
        throw std::invalid_argument("composition needs positive noticeability");
    const double steps_exact = constants.walk_step_constant *
                               std::log(2.0 * inner.n() / eps_final) / inner.noticeability;
    if (!(steps_exact >= 0.0) || steps_exact > static_cast<double>(caps.max_walk_steps))
        throw ResourceError("walk needs " + std::to_string(steps_exact) + " steps, beyond the cap of " +
                            std::to_string(caps.max_walk_steps));
    const auto steps = static_cast<std::int64_t>(std::ceil(steps_exact));

    WalkLedger ledger;
    ledger.steps = std::max<std::int64_t>(steps, 1);
    ledger.seed_len = ledger.steps * inner.seed_len();
    ledger.target_eps = eps_final;
    ledger.per_step_eps = inner.eps_target;
    ledger.step_error_total = static_cast<double>(ledger.steps) * inner.eps_target;
    ledger.inner_c = inner.c;
    ledger.inner_p = inner.noticeability;
    ledger.level_k = inner.k;
    ledger.configured_b = inner.b;
    ledger.step_constant = constants.walk_step_constant;
    ledger.polarization_residual = measure_residual(inner, ledger.steps);
    return ComposedPRG(std::move(inner), ledger.steps, ledger);
}

namespace {

double per_step_target(int n, int k, double b, double eps, const Constants& constants) {
    const double log_term = std::log2(std::max(2.0, static_cast<double>(n) / eps));
    const double base = eps / (b * b * log_term);
    const double delta = constants.per_step_error_constant *
                         std::pow(base, static_cast<double>(k) / static_cast<double>(k - 2));
    if (!(delta > 1e-14))
        throw ResourceError("per-step error target underflows for these parameters");
    return std::min(delta, 0.5);
}

void check_level_for_walk(int k) {
    if (k <= 2)
        throw std::invalid_argument(
            "level must exceed 2: with bounds only up to the second level the walk's step count "
            "grows as fast as its per-step error budget shrinks");
}

}  // namespace

ComposedPRG build_prg_levelk(int n, int k, double b, double eps, const Constants& constants,
                             const Caps& caps) {
    check_level_for_walk(k);
    const double delta = per_step_target(n, k, b, eps, constants);
    FractionalPRG inner = build_fracprg_mk(n, k, b, delta, caps, constants);
    return walk_compose(std::move(inner), eps, constants, caps);
}

ComposedPRG build_prg_uptok(int n, int k, double b, double eps, const Constants& constants,
                            const Caps& caps) {
    check_level_for_walk(k);
    const double delta = per_step_target(n, k, b, eps, constants);
    FractionalPRG inner = build_fracprg_l1(n, k, b, delta, caps, constants);
    const bool admissible = eps >= b * std::log2(2.0 * n) * std::pow(2.0, -k);
    ComposedPRG prg = walk_compose(std::move(inner), eps, constants, caps);
    prg.ledger().admissible_range = admissible;
    return prg;
}

int auto_level(int n, double b, double eps, const Constants& constants) {
    const double inside = b * std::log2(2.0 * n) / eps;
    const int k = static_cast<int>(
        std::ceil(constants.f2_level_constant * std::log2(std::max(2.0, inside))));
    return std::max(3, k);
}

ComposedPRG build_prg_f2(int n, int d, double eps, const Constants& constants, const Caps& caps) {
    if (d < 1) throw std::invalid_argument("degree must be at least 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("error target must lie in (0, 1)");
    if (3 * d > 40) throw ResourceError("degree recipe overflows: 2^(3d) is astronomically large");

    const double level_inside = std::log2(2.0 * n) / eps;
    int k = static_cast<int>(
        std::ceil(constants.f2_level_constant * std::log2(std::max(2.0, level_inside))));
    k = std::clamp(k, 3, n + 1);

    const double analytic_b = static_cast<double>(k) * std::pow(2.0, 3.0 * d);
    const double b = std::max(1.0, constants.f2_base_constant * analytic_b);

    ComposedPRG prg = build_prg_uptok(n, k, b, eps, constants, caps);
    if (prg.inner().c < 1e-9)
        throw ResourceError("degree drives the walk scale below resolution");
    prg.ledger().analytic_b = analytic_b;
    return prg;
}

ExperimentReport prg_fooling_error(const SeededGenerator& gen, double eps_target,
                                   const FunctionFamily& family, const PrgFoolingOptions& options,
                                   const Caps& caps) {
    if (family.n() != gen.n()) throw std::invalid_argument("family dimension mismatch");
    if (gen.n() > 26) throw std::invalid_argument("fooling check supports up to 26 variables");

    std::int64_t seed_count;
    if (options.exact) {
        if (gen.seed_len() > caps.max_seed_bits)
            throw ResourceError("exact check over 2^" + std::to_string(gen.seed_len()) +
                                " seeds exceeds cap; rerun with sampling");
        seed_count = std::int64_t{1} << gen.seed_len();
    } else {
        if (options.samples <= 0) throw std::invalid_argument("empty sample budget");
        seed_count = options.samples;
    }

    // output histogram once; member expectations are table averages
    const std::vector<std::int64_t> histogram = parallel_tally(
        seed_count, 1 << 12, std::size_t{1} << gen.n(),
        [&](std::int64_t begin, std::int64_t end, std::vector<std::int64_t>& local) {
            for (std::int64_t s = begin; s < end; ++s) {
                std::uint32_t mask;
                if (options.exact) {
                    IntSeedStream stream(static_cast<std::uint64_t>(s));
                    mask = gen.sample_mask(stream);
                } else {
                    CounterSeedStream stream(options.seed, static_cast<std::uint64_t>(s));
                    mask = gen.sample_mask(stream);
                }
                ++local[mask];
            }
        });

    struct Worst {
        double error = -1.0;
        std::size_t member = 0;
    };
    const Worst worst = parallel_reduce<Worst>(
        static_cast<std::int64_t>(family.size()), 8, Worst{},
        [&](std::int64_t begin, std::int64_t end) {
            Worst local;
            for (std::int64_t i = begin; i < end; ++i) {
                const TruthTable table = family.member(static_cast<std::size_t>(i));
                std::int64_t signed_sum = 0;
                std::int64_t table_sum = 0;
                for (std::size_t mask = 0; mask < table.size(); ++mask) {
                    signed_sum += histogram[mask] * table.values[mask];
                    table_sum += table.values[mask];
                }
                const double expectation =
                    static_cast<double>(signed_sum) / static_cast<double>(seed_count);
                const double uniform_mean =
                    static_cast<double>(table_sum) / static_cast<double>(table.size());
                const double error = std::fabs(expectation - uniform_mean);
                if (error > local.error) {
                    local.error = error;
                    local.member = static_cast<std::size_t>(i);
                }
            }
            return local;
        },
        [](Worst acc, const Worst& other) { return other.error > acc.error ? other : acc; });

    ExperimentReport report;
    report.name = "prg_fooling_error";
    report.config = {{"generator", gen.kind()},
                     {"seed_len", gen.seed_len()},
                     {"eps_target", eps_target},
                     {"family", family.descriptor()}};
    report.quantities = {{"max_error", worst.error < 0.0 ? 0.0 : worst.error},
                         {"worst_member", worst.member},
                         {"seeds", seed_count}};
    if (!options.exact)
        report.quantities["three_sigma"] = 3.0 / std::sqrt(static_cast<double>(seed_count));
    report.mode = options.exact ? "exact" : "sampled(" + std::to_string(seed_count) + ")";
    report.status = (worst.error <= eps_target + 1e-12) ? ExperimentReport::Status::pass
                                                        : ExperimentReport::Status::fail;
    return report;
}

std::vector<double> polarization_profile(const ComposedPRG& prg, bool exact, std::int64_t samples,
                                         std::uint64_t seed, const Caps& caps) {
    std::int64_t count;
    if (exact) {
        if (prg.seed_len() > caps.max_seed_bits)
            throw ResourceError("exact polarization profile exceeds the seed cap");
        count = std::int64_t{1} << prg.seed_len();
    } else {
        count = samples;
    }
    const int dim = prg.n();
    const std::int64_t steps = prg.steps();
    std::vector<double> totals(static_cast<std::size_t>(steps) + 1, 0.0);
    std::vector<double> y(static_cast<std::size_t>(dim));
    for (std::int64_t s = 0; s < count; ++s) {
        WalkState state = WalkState::origin(dim);
        std::unique_ptr<SeedStream> stream;
        if (exact) stream = std::make_unique<IntSeedStream>(static_cast<std::uint64_t>(s));
        else stream = std::make_unique<CounterSeedStream>(seed, static_cast<std::uint64_t>(s));
        totals[0] += dim;
        for (std::int64_t t = 0; t < steps; ++t) {
            prg.inner().sample(*stream, y);
            walk_step_inplace(state, y);
            double distance = 0.0;
            for (double pos : state.position) distance += 1.0 - std::fabs(pos);
            totals[static_cast<std::size_t>(t) + 1] += distance;
        }
    }
    for (double& v : totals) v /= static_cast<double>(count);
    return totals;
}

}  // namespace polarwalk
