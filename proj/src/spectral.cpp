#include "polarwalk/spectral.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/parallel.hpp"
#include "polarwalk/seeding.hpp"

namespace polarwalk {

namespace {
void check_level(const FourierExpansion& fe, int k) {
    if (k < 0 || k > fe.n) throw std::invalid_argument("level k out of range [0, n]");
}
}  // namespace

double l1_level_mass(const FourierExpansion& fe, int k) {
    check_level(fe, k);
    double sum = 0.0;
    for (std::uint32_t m = 0; m < fe.size(); ++m)
        if (std::popcount(m) == k) sum += std::fabs(fe.coeffs[m]);
    return sum;
}

double unsigned_level_sum(const FourierExpansion& fe, int k) {
    check_level(fe, k);
    double sum = 0.0;
    for (std::uint32_t m = 0; m < fe.size(); ++m)
        if (std::popcount(m) == k) sum += fe.coeffs[m];
    return sum;
}

LevelMetrics level_abs_sum(const FourierExpansion& fe, int k, const Caps& caps) {
    check_level(fe, k);
    if (fe.n > caps.max_n)
        throw ResourceError("corner search on " + std::to_string(fe.n) + " variables exceeds cap " +
                            std::to_string(caps.max_n));
    LevelMetrics metrics;
    metrics.k = k;
    metrics.l1 = l1_level_mass(fe, k);
    metrics.unsigned_sum = unsigned_level_sum(fe, k);

    FourierExpansion level = FourierExpansion::zeros(fe.n);
    for (std::uint32_t m = 0; m < fe.size(); ++m)
        if (std::popcount(m) == k) level.coeffs[m] = fe.coeffs[m];
    const std::vector<double> values = corner_values(level);
    double best = -1.0;
    std::uint32_t arg = 0;
    for (std::uint32_t m = 0; m < values.size(); ++m) {
        const double v = std::fabs(values[m]);
        if (v > best) {
            best = v;
            arg = m;
        }
    }
    metrics.mk = best < 0.0 ? 0.0 : best;
    metrics.argmax = arg;
    // free invariant: the corner maximum can never beat the absolute mass
    if (metrics.mk > metrics.l1 + 1e-9)
        throw std::logic_error("level metrics ordering violated: corner max exceeds absolute mass");
    return metrics;
}

std::vector<LevelMetrics> all_level_metrics(const FourierExpansion& fe, const Caps& caps) {
    std::vector<LevelMetrics> out;
    out.reserve(static_cast<std::size_t>(fe.n) + 1);
    for (int k = 0; k <= fe.n; ++k) out.push_back(level_abs_sum(fe, k, caps));
    return out;
}

LevelMetrics closure_level_metrics(const FourierExpansion& fe, int k, const Caps& caps) {
    if (k < 0 || k > fe.n) throw std::invalid_argument("level k out of range [0, n]");
    if (fe.n > caps.max_closure_n)
        throw ResourceError("exact closure on " + std::to_string(fe.n) + " variables exceeds cap " +
                            std::to_string(caps.max_closure_n));
    const std::size_t size = fe.size();
    const int n = fe.n;

    std::vector<std::uint8_t> pops(size);
    for (std::uint32_t m = 0; m < size; ++m) pops[m] = static_cast<std::uint8_t>(std::popcount(m));

    std::vector<double> scratch(size);
    std::vector<std::int8_t> digits(static_cast<std::size_t>(n), 0);  // 0 free, 1 -> +1, 2 -> -1
    std::uint32_t fixed_mask = 0;
    std::uint32_t minus_mask = 0;

    LevelMetrics best;
    best.k = k;
    best.mk = -1.0;
    best.unsigned_sum = -1e300;

    for (;;) {
        std::fill(scratch.begin(), scratch.end(), 0.0);
        for (std::uint32_t m = 0; m < size; ++m) {
            const double c = fe.coeffs[m];
            if (c == 0.0) continue;
            scratch[m & ~fixed_mask] += (pops[m & minus_mask] & 1) ? -c : c;
        }
        double l1 = 0.0;
        double unsigned_sum = 0.0;
        for (std::uint32_t m = 0; m < size; ++m) {
            if (pops[m] == k) {
                l1 += std::fabs(scratch[m]);
                unsigned_sum += scratch[m];
            } else {
                scratch[m] = 0.0;
            }
        }
        // butterfly in place: corner values of the level part
        for (std::size_t half = 1; half < size; half <<= 1) {
            for (std::size_t block = 0; block < size; block += half << 1) {
                for (std::size_t i = block; i < block + half; ++i) {
                    const double a = scratch[i];
                    const double b = scratch[i + half];
                    scratch[i] = a + b;
                    scratch[i + half] = a - b;
                }
            }
        }
        double mk = 0.0;
        std::uint32_t arg = 0;
        for (std::uint32_t m = 0; m < size; ++m) {
            const double v = std::fabs(scratch[m]);
            if (v > mk) {
                mk = v;
                arg = m;
            }
        }
        best.l1 = std::max(best.l1, l1);
        best.unsigned_sum = std::max(best.unsigned_sum, unsigned_sum);
        if (mk > best.mk) {
            best.mk = mk;
            best.argmax = arg;
        }

        // odometer over the base-3 assignment digits
        int pos = 0;
        while (pos < n) {
            const std::uint32_t bit = 1u << pos;
            std::int8_t& digit = digits[static_cast<std::size_t>(pos)];
            if (++digit == 3) digit = 0;
            switch (digit) {
                case 0: fixed_mask &= ~bit; minus_mask &= ~bit; break;
                case 1: fixed_mask |= bit; minus_mask &= ~bit; break;
                default: minus_mask |= bit; break;
            }
            if (digit != 0) break;
            ++pos;
        }
        if (pos == n) break;
    }

    if (best.mk < 0.0) best.mk = 0.0;
    if (best.mk > best.l1 + 1e-9)
        throw std::logic_error("level metrics ordering violated: corner max exceeds absolute mass");
    return best;
}

LevelMetrics class_metrics(const FunctionFamily& family, int k, const ClassMetricsOptions& options) {
    if (family.size() == 0) throw std::invalid_argument("class metrics of an empty family");
    if (k < 0 || k > family.n()) throw std::invalid_argument("level k out of range [0, n]");

    const bool close = options.mode == ClosureMode::restriction_closure;
    const bool closure_exact =
        !close || restriction_count(family.n()) <= static_cast<std::uint64_t>(options.closure_budget);

    struct Best {
        double l1 = 0.0;
        double mk = -1.0;
        double unsigned_sum = 0.0;
        std::uint32_t argmax = 0;
        std::size_t member = 0;
    };
    auto fold = [](Best acc, const Best& other) {
        acc.l1 = std::max(acc.l1, other.l1);
        if (other.mk > acc.mk) {
            acc.mk = other.mk;
            acc.argmax = other.argmax;
            acc.member = other.member;
        }
        acc.unsigned_sum = std::max(acc.unsigned_sum, other.unsigned_sum);
        return acc;
    };

    Best init;
    init.unsigned_sum = -1e300;
    const Best best = parallel_reduce<Best>(
        static_cast<std::int64_t>(family.size()), 1, init,
        [&](std::int64_t begin, std::int64_t end) {
            Best local = init;
            for (std::int64_t i = begin; i < end; ++i) {
                const FourierExpansion fe = family.member_expansion(static_cast<std::size_t>(i), options.caps);
                auto absorb = [&](const FourierExpansion& g) {
                    const LevelMetrics m = level_abs_sum(g, k, options.caps);
                    Best item{m.l1, m.mk, m.unsigned_sum, m.argmax, static_cast<std::size_t>(i)};
                    local = fold(local, item);
                };
                if (!close) {
                    absorb(fe);
                } else if (closure_exact) {
                    const LevelMetrics m = closure_level_metrics(fe, k, options.caps);
                    local = fold(local, Best{m.l1, m.mk, m.unsigned_sum, m.argmax,
                                             static_cast<std::size_t>(i)});
                } else {
                    for_each_restriction(fe, options.closure_samples,
                                         derive_seed(options.sample_seed, static_cast<std::uint64_t>(i)),
                                         [&](const Restriction&, const FourierExpansion& g) { absorb(g); });
                }
            }
            return local;
        },
        fold);

    LevelMetrics metrics;
    metrics.k = k;
    metrics.l1 = best.l1;
    metrics.mk = best.mk < 0.0 ? 0.0 : best.mk;
    metrics.unsigned_sum = best.unsigned_sum;
    metrics.argmax = best.argmax;
    metrics.witness_member = best.member;
    metrics.exact = closure_exact;
    return metrics;
}

}  // namespace polarwalk
