#include "polarwalk/fracprg.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/fourier.hpp"
#include "polarwalk/parallel.hpp"

namespace polarwalk {

void FractionalPRG::sample(SeedStream& seed, std::span<double> out) const {
    if (static_cast<int>(out.size()) != n()) throw std::invalid_argument("output span size mismatch");
    std::int8_t signs[32];
    base->sample_signs(seed, std::span<std::int8_t>(signs, static_cast<std::size_t>(n())));
    for (int i = 0; i < n(); ++i) out[static_cast<std::size_t>(i)] = c * signs[i];
}

FractionalPRG fractional_from_base(std::shared_ptr<const SeededGenerator> base, double c,
                                   double eps_target) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("scale must lie in [0, 1]");
    if (base == nullptr || base->n() > 32) throw std::invalid_argument("bad base generator");
    FractionalPRG fprg;
    fprg.base = std::move(base);
    fprg.c = c;
    fprg.noticeability = c * c;
    fprg.eps_target = eps_target;
    return fprg;
}

namespace {

// Largest c with (c/(1-c))^k b^k <= budget, i.e. c = r/(1+r) for
// r = budget^{1/k} / b, never exceeding 1/2.
double design_scale(int k, double b, double budget) {
    const double r = std::pow(budget, 1.0 / k) / b;
    return std::min(0.5, r / (1.0 + r));
}

void check_design_args(int n, int k, double b, double eps, const Caps& caps) {
    if (n < 1 || n > caps.max_n) throw std::invalid_argument("bad output dimension");
    if (k < 1) throw std::invalid_argument("level k must be at least 1");
    if (k - 1 > n) throw std::invalid_argument("independence degree k-1 exceeds n");
    if (!(b > 0.0)) throw std::invalid_argument("level bound base b must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("error target must lie in (0, 1)");
}

void assert_design_inequality(const FractionalPRG& fprg, double budget) {
    const double lhs = std::pow(fprg.c / (1.0 - fprg.c) * fprg.b, fprg.k);
    if (lhs > budget + 1e-12)
        throw std::logic_error("tail budget violated by the constructed scale");
}

}  // namespace

FractionalPRG build_fracprg_mk(int n, int k, double b, double eps, const Caps& caps,
                               const Constants& constants) {
    check_design_args(n, k, b, eps, caps);
    const double budget = constants.budget_split * eps;
    const int t = std::max(1, k - 1);
    FractionalPRG fprg = fractional_from_base(kwise_generator(n, t, caps), design_scale(k, b, budget), eps);
    fprg.k = k;
    fprg.b = b;
    assert_design_inequality(fprg, budget);
    return fprg;
}

FractionalPRG build_fracprg_l1(int n, int k, double b, double eps, const Caps& caps,
                               const Constants& constants) {
    check_design_args(n, k, b, eps, caps);
    const double budget = constants.budget_split * eps;
    const double c = std::min(design_scale(k, b, budget), 1.0 / (2.0 * b));
    FractionalPRG fprg = fractional_from_base(smallbias_generator(n, budget, caps), c, eps);
    fprg.k = k;
    fprg.b = b;
    assert_design_inequality(fprg, budget);
    return fprg;
}

ExperimentReport fooling_error(const FractionalPRG& fprg, const FunctionFamily& family,
                               const FoolingOptions& options, const Caps& caps) {
    if (family.n() != fprg.n()) throw std::invalid_argument("family dimension mismatch");

    std::int64_t seed_count;
    if (options.exact) {
        if (fprg.seed_len() > caps.max_seed_bits)
            throw ResourceError("exact fooling check over 2^" + std::to_string(fprg.seed_len()) +
                                " seeds exceeds cap; rerun with sampling");
        seed_count = std::int64_t{1} << fprg.seed_len();
    } else {
        if (options.samples <= 0) throw std::invalid_argument("empty sample budget");
        seed_count = options.samples;
    }

    // histogram of sign patterns; every member is then an exact table average
    if (fprg.n() > 26) throw std::invalid_argument("fooling check supports up to 26 variables");
    const std::vector<std::int64_t> histogram = parallel_tally(
        seed_count, 1 << 12, std::size_t{1} << fprg.n(),
        [&](std::int64_t begin, std::int64_t end, std::vector<std::int64_t>& local) {
            for (std::int64_t s = begin; s < end; ++s) {
                std::uint32_t mask;
                if (options.exact) {
                    IntSeedStream stream(static_cast<std::uint64_t>(s));
                    mask = fprg.sample_mask(stream);
                } else {
                    CounterSeedStream stream(options.seed, static_cast<std::uint64_t>(s));
                    mask = fprg.sample_mask(stream);
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
                const FourierExpansion fe = family.member_expansion(static_cast<std::size_t>(i), caps);
                // values of f on the scaled corner set, one transform per member
                FourierExpansion scaled = fe;
                for (std::uint32_t m = 0; m < scaled.size(); ++m)
                    scaled.coeffs[m] *= std::pow(fprg.c, std::popcount(m));
                const std::vector<double> values = corner_values(scaled);
                double expectation = 0.0;
                for (std::size_t mask = 0; mask < values.size(); ++mask)
                    if (histogram[mask] != 0)
                        expectation += static_cast<double>(histogram[mask]) * values[mask];
                expectation /= static_cast<double>(seed_count);
                const double error = std::fabs(expectation - fe.coeffs[0]);
                if (error > local.error) {
                    local.error = error;
                    local.member = static_cast<std::size_t>(i);
                }
            }
            return local;
        },
        [](Worst acc, const Worst& other) { return other.error > acc.error ? other : acc; });

    ExperimentReport report;
    report.name = "fooling_error";
    report.config = {{"n", fprg.n()},       {"k", fprg.k},
                     {"b", fprg.b},         {"b_provenance", fprg.b_provenance},
                     {"c", fprg.c},         {"eps_target", fprg.eps_target},
                     {"seed_len", fprg.seed_len()}, {"family", family.descriptor()}};
    report.quantities = {{"max_error", worst.error < 0.0 ? 0.0 : worst.error},
                         {"worst_member", worst.member},
                         {"seeds", seed_count}};
    report.mode = options.exact ? "exact" : "sampled(" + std::to_string(seed_count) + ")";
    report.status = (worst.error <= fprg.eps_target + 1e-12) ? ExperimentReport::Status::pass
                                                             : ExperimentReport::Status::fail;
    return report;
}

}  // namespace polarwalk
