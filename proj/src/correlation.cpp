#include "polarwalk/correlation.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/fourier.hpp"
#include "polarwalk/seeding.hpp"
#include "polarwalk/spectral.hpp"

namespace polarwalk {

ZeroOneFunction::ZeroOneFunction(int n_vars, std::vector<std::uint8_t> vals)
    : n(n_vars), values(std::move(vals)) {
    if (values.size() != (std::size_t{1} << n))
        throw std::invalid_argument("value table length must be 2^n");
    for (std::uint8_t v : values)
        if (v > 1) throw std::invalid_argument("values must be 0 or 1");
}

TruthTable ZeroOneFunction::sign_lift() const {
    std::vector<std::int8_t> signs(values.size());
    for (std::size_t m = 0; m < values.size(); ++m)
        signs[m] = static_cast<std::int8_t>(values[m] ? -1 : +1);
    return TruthTable(n, std::move(signs));
}

ZeroOneFunction random_zero_one(int n, std::uint64_t seed, const Caps& caps) {
    if (n < 0 || n > caps.max_n) throw ResourceError("function size exceeds cap");
    std::vector<std::uint8_t> vals(std::size_t{1} << n);
    for (std::size_t m = 0; m < vals.size(); ++m)
        vals[m] = static_cast<std::uint8_t>((mix64(seed + (m >> 6)) >> (m & 63)) & 1);
    return ZeroOneFunction(n, std::move(vals));
}

ZeroOneFunction maj_a(int n, int a) {
    if (n < 1 || n > 26) throw std::invalid_argument("maj_a: bad n");
    if (a < 0 || a > n) throw std::invalid_argument("maj_a: shift out of [0, n]");
    std::vector<std::uint8_t> vals(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < vals.size(); ++m)
        vals[m] = static_cast<std::uint8_t>(std::popcount(m) > a ? 1 : 0);
    return ZeroOneFunction(n, std::move(vals));
}

std::vector<std::int8_t> thr_theta(int n, int theta) {
    if (n < 2 || n % 2 != 0 || n > 26) throw std::invalid_argument("thr_theta: n must be even");
    if (theta < 1 || theta > n / 2) throw std::invalid_argument("thr_theta: theta out of [1, n/2]");
    std::vector<std::int8_t> vals(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < vals.size(); ++m) {
        const int weight = std::popcount(m);
        const int deviation = std::abs(2 * weight - n);  // 2 * |weight - n/2|
        if (deviation >= 2 * theta)
            vals[m] = static_cast<std::int8_t>(weight > n / 2 ? -1 : +1);  // (-1)^{Maj_{n/2}}
        else
            vals[m] = 0;
    }
    return vals;
}

double covariance(const ZeroOneFunction& f, const ZeroOneFunction& g) {
    if (f.n != g.n) throw std::invalid_argument("covariance: dimension mismatch");
    std::int64_t sum_f = 0;
    std::int64_t sum_g = 0;
    std::int64_t sum_fg = 0;
    for (std::size_t m = 0; m < f.size(); ++m) {
        const int ef = f.values[m] ? -1 : +1;
        const int eg = g.values[m] ? -1 : +1;
        sum_f += ef;
        sum_g += eg;
        sum_fg += ef * eg;
    }
    const auto count = static_cast<double>(f.size());
    return std::fabs(static_cast<double>(sum_fg) / count -
                     (static_cast<double>(sum_f) / count) * (static_cast<double>(sum_g) / count));
}

ZeroOneFunction xor_shifted_majorities(int n, const std::vector<int>& shifts, const Caps& caps) {
    const int k = static_cast<int>(shifts.size());
    if (k < 1) throw std::invalid_argument("need at least one block");
    if (n * k > caps.max_n) throw ResourceError("composition exceeds the variable cap");
    for (int a : shifts)
        if (a < 0 || a > n) throw std::invalid_argument("shift out of [0, n]");
    const std::uint32_t block_mask = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<std::uint8_t> vals(std::size_t{1} << (n * k));
    for (std::uint32_t m = 0; m < vals.size(); ++m) {
        int acc = 0;
        for (int block = 0; block < k; ++block) {
            const std::uint32_t bits = (m >> (block * n)) & block_mask;
            acc ^= std::popcount(bits) > shifts[static_cast<std::size_t>(block)] ? 1 : 0;
        }
        vals[m] = static_cast<std::uint8_t>(acc);
    }
    return ZeroOneFunction(n * k, std::move(vals));
}

ExperimentReport fact62_check(int n) {
    ExperimentReport report;
    report.name = "fact62_check";
    report.config = {{"n", n}};
    if (n % 2 != 0) {
        // left side n - 2|x| is odd while the right side is even
        report.status = ExperimentReport::Status::not_applicable;
        report.quantities = {{"reason", "identity has an odd/even mismatch for odd n"}};
        return report;
    }
    if (n < 2 || n > 16) throw std::invalid_argument("fact62_check: n must be even, in [2, 16]");

    std::vector<std::vector<std::int8_t>> bands;
    for (int a = 1; a <= n / 2; ++a) bands.push_back(thr_theta(n, a));

    std::int64_t mismatches = 0;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        const int lhs = n - 2 * std::popcount(m);
        int rhs = 0;
        for (const auto& band : bands) rhs += band[m];
        if (lhs != 2 * rhs) ++mismatches;
    }
    report.quantities = {{"inputs", std::int64_t{1} << n}, {"mismatches", mismatches}};
    report.status =
        mismatches == 0 ? ExperimentReport::Status::pass : ExperimentReport::Status::fail;
    return report;
}

namespace {

// All partitions of [kn] into k unordered blocks of size n; the first free
// element anchors each new block so each partition appears once.
void enumerate_equipartitions(int total, int block_size, std::uint32_t remaining,
                              std::vector<std::uint32_t>& blocks,
                              const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    if (remaining == 0) {
        fn(blocks);
        return;
    }
    const int anchor = std::countr_zero(remaining);
    std::uint32_t rest = remaining & ~(1u << anchor);
    // choose block_size - 1 companions for the anchor
    std::vector<int> candidates;
    for (int i = 0; i < total; ++i)
        if ((rest >> i) & 1) candidates.push_back(i);
    std::vector<int> pick(static_cast<std::size_t>(block_size - 1));
    const std::function<void(std::size_t, int)> choose = [&](std::size_t slot, int first) {
        if (slot == pick.size()) {
            std::uint32_t block = 1u << anchor;
            for (int idx : pick) block |= 1u << idx;
            blocks.push_back(block);
            enumerate_equipartitions(total, block_size, remaining & ~block, blocks, fn);
            blocks.pop_back();
            return;
        }
        for (std::size_t j = static_cast<std::size_t>(first); j < candidates.size(); ++j) {
            pick[slot] = candidates[j];
            choose(slot + 1, static_cast<int>(j) + 1);
        }
    };
    choose(0, 0);
}

}  // namespace

ExperimentReport fact63_check(const ZeroOneFunction& f, int k, const Caps& caps) {
    if (k < 2) throw std::invalid_argument("fact63_check: needs k >= 2");
    if (f.n % k != 0) throw std::invalid_argument("fact63_check: variable count must be k * n");
    const int n = f.n / k;
    if (f.n > 12) throw ResourceError("fact63_check: exhaustive partitions need kn <= 12");

    const FourierExpansion fe = wht_forward(f.sign_lift(), caps);
    double total = 0.0;
    for (std::uint32_t m = 0; m < fe.size(); ++m)
        if (std::popcount(m) == k) total += fe.coeffs[m];

    // exact crossing probability of a fixed k-set under a random equipartition
    double crossing_probability = 1.0;
    for (int i = 1; i <= k - 1; ++i)
        crossing_probability *= static_cast<double>((k - i) * n) / static_cast<double>(k * n - i);

    double best_cross = 0.0;
    std::int64_t partitions = 0;
    std::vector<std::uint32_t> blocks;
    enumerate_equipartitions(f.n, n, (f.n == 32 ? ~0u : (1u << f.n) - 1), blocks,
                             [&](const std::vector<std::uint32_t>& partition) {
                                 ++partitions;
                                 // sum of coefficients with one index in each block
                                 double cross = 0.0;
                                 std::vector<int> choice(static_cast<std::size_t>(k), 0);
                                 const std::function<void(std::size_t, std::uint32_t)> rec =
                                     [&](std::size_t depth, std::uint32_t mask) {
                                         if (depth == partition.size()) {
                                             cross += fe.coeffs[mask];
                                             return;
                                         }
                                         std::uint32_t block = partition[depth];
                                         while (block) {
                                             const std::uint32_t low = block & (~block + 1);
                                             rec(depth + 1, mask | low);
                                             block ^= low;
                                         }
                                     };
                                 rec(0, 0);
                                 best_cross = std::max(best_cross, std::fabs(cross));
                             });

    const double rhs = best_cross / crossing_probability;
    ExperimentReport report;
    report.name = "fact63_check";
    report.config = {{"kn", f.n}, {"k", k}, {"n", n}};
    report.quantities = {{"level_sum_abs", std::fabs(total)},
                         {"best_cross", best_cross},
                         {"crossing_probability", crossing_probability},
                         {"rhs", rhs},
                         {"partitions", partitions}};
    report.status = std::fabs(total) <= rhs + 1e-12 ? ExperimentReport::Status::pass
                                                    : ExperimentReport::Status::fail;
    return report;
}

ExperimentReport fact64_check(int n, int k) {
    if (n < 1 || n > 62) throw std::invalid_argument("fact64_check: n out of range");
    // exact binomial row
    std::vector<double> binom(static_cast<std::size_t>(n) + 1, 0.0);
    binom[0] = 1.0;
    for (int row = 1; row <= n; ++row)
        for (int j = row; j >= 1; --j) binom[static_cast<std::size_t>(j)] += binom[static_cast<std::size_t>(j) - 1];
    const double scale = std::pow(0.5, n);

    auto tail = [&](int a) {
        // Pr[|2W - n| >= 2a], exact
        double mass = 0.0;
        for (int w = 0; w <= n; ++w)
            if (std::abs(2 * w - n) >= 2 * a) mass += binom[static_cast<std::size_t>(w)];
        return mass * scale;
    };

    bool bounded = true;
    int worst_a = 0;
    double worst_gap = 0.0;
    for (int a = 1; a <= n / 2; ++a) {
        const double exact = tail(a);
        const double chernoff = 2.0 * std::exp(-2.0 * a * a / static_cast<double>(n));
        if (exact > chernoff + 1e-12) {
            bounded = false;
            if (exact - chernoff > worst_gap) {
                worst_gap = exact - chernoff;
                worst_a = a;
            }
        }
    }

    const double target = std::pow(static_cast<double>(n), -static_cast<double>(k));
    int least_a = -1;
    for (int a = 0; a <= (n + 1) / 2 + 1; ++a) {
        if (tail(a) <= target) {
            least_a = a;
            break;
        }
    }

    ExperimentReport report;
    report.name = "fact64_check";
    report.config = {{"n", n}, {"k", k}};
    report.quantities = {{"tail_at_zero", tail(0)},
                         {"least_a_for_target", least_a},
                         {"target", target},
                         {"bound_violation_at", worst_a}};
    report.status = bounded ? ExperimentReport::Status::pass : ExperimentReport::Status::fail;
    return report;
}

ExperimentReport lemma61_harness(const std::vector<ZeroOneFunction>& family, int n, int k,
                                 const Lemma61Options& options) {
    if (family.empty()) throw std::invalid_argument("lemma61_harness: empty family");
    const int kn = n * k;
    for (const ZeroOneFunction& f : family)
        if (f.n != kn) throw std::invalid_argument("lemma61_harness: members must live on k*n variables");
    if (kn > options.caps.max_n) throw ResourceError("lemma61_harness: exceeds variable cap");

    // admissible shift window around n/2
    const double half_width =
        options.range_constant * std::sqrt(static_cast<double>(kn) * std::log(std::max(2.0, double(n))));
    const int lo = std::max(0, static_cast<int>(std::floor(n / 2.0 - half_width)));
    const int hi = std::min(n, static_cast<int>(std::ceil(n / 2.0 + half_width)));

    std::vector<int> shifts(static_cast<std::size_t>(k), lo);
    double max_cov = 0.0;
    bool done = false;
    while (!done) {
        const ZeroOneFunction xor_maj = xor_shifted_majorities(n, shifts, options.caps);
        for (const ZeroOneFunction& f : family) max_cov = std::max(max_cov, covariance(f, xor_maj));
        int pos = 0;
        for (;;) {
            if (pos == k) {
                done = true;
                break;
            }
            if (++shifts[static_cast<std::size_t>(pos)] <= hi) break;
            shifts[static_cast<std::size_t>(pos)] = lo;
            ++pos;
        }
    }

    // least t >= 1 with max_cov <= (t/n)^{k/2}
    const double t = std::max(1.0, static_cast<double>(n) * std::pow(max_cov, 2.0 / k));

    double measured_mk = 0.0;
    for (const ZeroOneFunction& f : family) {
        const FourierExpansion fe = wht_forward(f.sign_lift(), options.caps);
        measured_mk = std::max(measured_mk, level_abs_sum(fe, k, options.caps).mk);
    }
    const double bound = std::pow(
        options.bound_constant * std::sqrt(t * k * std::log(std::max(2.0, double(n)))), k);

    ExperimentReport report;
    report.name = "lemma61_harness";
    report.config = {{"n", n},
                     {"k", k},
                     {"members", family.size()},
                     {"shift_lo", lo},
                     {"shift_hi", hi},
                     {"range_constant", options.range_constant},
                     {"bound_constant", options.bound_constant}};
    report.quantities = {{"max_covariance", max_cov},
                         {"inferred_t", t},
                         {"measured_mk", measured_mk},
                         {"implied_bound", bound},
                         {"flag_exceeded", measured_mk > bound}};
    report.status = ExperimentReport::Status::diagnostic;
    return report;
}

}  // namespace polarwalk
