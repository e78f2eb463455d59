#include "polarwalk/generators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/gf2.hpp"
#include "polarwalk/parallel.hpp"

namespace polarwalk {

std::uint32_t SeededGenerator::sample_mask(SeedStream& seed) const {
    std::int8_t buffer[32];
    if (n_ > 32) throw std::invalid_argument("mask sampling supports up to 32 outputs");
    sample_signs(seed, std::span<std::int8_t>(buffer, static_cast<std::size_t>(n_)));
    std::uint32_t mask = 0;
    for (int i = 0; i < n_; ++i)
        if (buffer[i] == -1) mask |= 1u << i;
    return mask;
}

namespace {

int field_degree_for(int n) {
    int m = 1;
    while ((1 << m) < n) ++m;
    return m;
}

class KWiseGenerator final : public SeededGenerator {
public:
    KWiseGenerator(int n, int t, int m)
        : SeededGenerator("kwise(n=" + std::to_string(n) + ",t=" + std::to_string(t) + ")", n,
                          std::int64_t{t} * m),
          t_(t),
          m_(m),
          field_(Gf2Field::get(m)) {}

    void sample_signs(SeedStream& seed, std::span<std::int8_t> out) const override {
        std::uint32_t coeffs[32];
        for (int j = 0; j < t_; ++j) coeffs[j] = static_cast<std::uint32_t>(seed.take(m_));
        for (int i = 0; i < n(); ++i) {
            const auto point = static_cast<std::uint32_t>(i);
            std::uint32_t value = 0;
            for (int j = t_ - 1; j >= 0; --j) value = field_.mul(value, point) ^ coeffs[j];
            out[static_cast<std::size_t>(i)] = static_cast<std::int8_t>((value & 1) ? -1 : +1);
        }
    }

private:
    int t_;
    int m_;
    const Gf2Field& field_;
};

class SmallBiasGenerator final : public SeededGenerator {
public:
    SmallBiasGenerator(int n, double delta, int m)
        : SeededGenerator("smallbias(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")", n,
                          2 * std::int64_t{m}),
          m_(m),
          delta_(delta),
          field_(Gf2Field::get(m)) {}

    double delta() const { return delta_; }

    void sample_signs(SeedStream& seed, std::span<std::int8_t> out) const override {
        const auto x = static_cast<std::uint32_t>(seed.take(m_));
        const auto y = static_cast<std::uint32_t>(seed.take(m_));
        std::uint32_t power = 1;
        for (int i = 0; i < n(); ++i) {
            power = field_.mul(power, x);  // exponents 1..n; x = 0 collapses to zero
            const int bit = std::popcount(power & y) & 1;
            out[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(bit ? -1 : +1);
        }
    }

private:
    int m_;
    double delta_;
    const Gf2Field& field_;
};

class RawSeedGenerator final : public SeededGenerator {
public:
    explicit RawSeedGenerator(int n)
        : SeededGenerator("raw(n=" + std::to_string(n) + ")", n, n) {}

    void sample_signs(SeedStream& seed, std::span<std::int8_t> out) const override {
        for (int i = 0; i < n(); ++i)
            out[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(seed.take(1) ? -1 : +1);
    }
};

class ConstantSignGenerator final : public SeededGenerator {
public:
    ConstantSignGenerator(int n, int sign)
        : SeededGenerator("constant(n=" + std::to_string(n) + "," + (sign < 0 ? "-1" : "+1") + ")", n, 0),
          sign_(static_cast<std::int8_t>(sign)) {}

    void sample_signs(SeedStream&, std::span<std::int8_t> out) const override {
        for (int i = 0; i < n(); ++i) out[static_cast<std::size_t>(i)] = sign_;
    }

private:
    std::int8_t sign_;
};

}  // namespace

std::unique_ptr<SeededGenerator> kwise_generator(int n, int t, const Caps& caps) {
    if (n < 1 || n > caps.max_n) throw std::invalid_argument("kwise_generator: bad output count");
    if (t < 1 || t > n) throw std::invalid_argument("kwise_generator: need 1 <= t <= n");
    if (t > 32) throw std::invalid_argument("kwise_generator: t too large");
    const int m = field_degree_for(n);
    return std::make_unique<KWiseGenerator>(n, t, m);
}

std::unique_ptr<SeededGenerator> smallbias_generator(int n, double delta, const Caps& caps) {
    if (n < 1 || n > caps.max_n) throw std::invalid_argument("smallbias_generator: bad output count");
    if (delta <= 0.0) throw std::invalid_argument("smallbias_generator: bias target must be positive");
    if (delta >= 1.0) return kwise_generator(n, 1, caps);  // vacuous bound
    const double ratio = static_cast<double>(n) / delta;
    const int m = std::max(field_degree_for(n), static_cast<int>(std::ceil(std::log2(ratio))));
    if (m > 24)
        throw ResourceError("bias target needs a field of degree " + std::to_string(m) +
                            ", beyond the supported 24");
    return std::make_unique<SmallBiasGenerator>(n, delta, m);
}

std::unique_ptr<SeededGenerator> raw_seed_generator(int n) {
    if (n < 1 || n > 32) throw std::invalid_argument("raw_seed_generator: bad output count");
    return std::make_unique<RawSeedGenerator>(n);
}

std::unique_ptr<SeededGenerator> constant_generator(int n, int sign) {
    if (n < 1 || n > 32) throw std::invalid_argument("constant_generator: bad output count");
    if (sign != 1 && sign != -1) throw std::invalid_argument("constant_generator: sign must be +-1");
    return std::make_unique<ConstantSignGenerator>(n, sign);
}

BiasAuditResult bias_audit(const SeededGenerator& gen, int max_set_size,
                           const BiasAuditOptions& options, const Caps& caps) {
    if (max_set_size < 1 || max_set_size > gen.n())
        throw std::invalid_argument("bias_audit: set size out of range");
    if (gen.n() > 26) throw std::invalid_argument("bias_audit: output dimension too large");

    // sets ordered by (size, mask); the witness is the first maximizer
    std::vector<std::uint32_t> sets;
    for (int size = 1; size <= max_set_size; ++size)
        for (std::uint32_t s = 1; s < (1u << gen.n()); ++s)
            if (std::popcount(s) == size) sets.push_back(s);

    BiasAuditResult result;
    result.sets_checked = static_cast<std::int64_t>(sets.size());
    result.exact = options.exact;

    std::int64_t seed_count;
    if (options.exact) {
        if (gen.seed_len() > caps.max_seed_bits)
            throw ResourceError("exact audit over 2^" + std::to_string(gen.seed_len()) +
                                " seeds exceeds cap 2^" + std::to_string(caps.max_seed_bits));
        seed_count = std::int64_t{1} << gen.seed_len();
    } else {
        if (options.samples <= 0) throw std::invalid_argument("bias_audit: empty sample budget");
        seed_count = options.samples;
    }

    const std::vector<std::int64_t> totals = parallel_tally(
        seed_count, 1 << 12, sets.size(),
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
                for (std::size_t j = 0; j < sets.size(); ++j)
                    local[j] += (std::popcount(mask & sets[j]) & 1) ? -1 : +1;
            }
        });

    result.denominator = seed_count;
    for (std::size_t j = 0; j < sets.size(); ++j) {
        const std::int64_t numerator = std::llabs(totals[j]);
        if (numerator > result.max_numerator) {
            result.max_numerator = numerator;
            result.witness = sets[j];
        }
    }
    result.max_bias = static_cast<double>(result.max_numerator) / static_cast<double>(seed_count);
    return result;
}

}  // namespace polarwalk
