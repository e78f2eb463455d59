#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "polarwalk/config.hpp"
#include "polarwalk/seeding.hpp"

namespace polarwalk {

// Explicit finite generator: a total deterministic map from seed bits to a
// sign vector. Identical seeds give identical outputs.
class SeededGenerator {
public:
    virtual ~SeededGenerator() = default;

    int n() const { return n_; }
    std::int64_t seed_len() const { return seed_len_; }
    const std::string& kind() const { return kind_; }

    // Consumes exactly seed_len() bits and fills out (size n) with +-1.
    virtual void sample_signs(SeedStream& seed, std::span<std::int8_t> out) const = 0;

    // Sign pattern packed with the table convention: bit i set means -1.
    std::uint32_t sample_mask(SeedStream& seed) const;

protected:
    SeededGenerator(std::string kind, int n, std::int64_t seed_len)
        : kind_(std::move(kind)), n_(n), seed_len_(seed_len) {}

private:
    std::string kind_;
    int n_;
    std::int64_t seed_len_;
};

// Signs are least significant bits of a random degree-(t-1) polynomial over
// a binary field evaluated at n fixed distinct points: any t evaluations are
// jointly uniform, so every parity of at most t outputs vanishes exactly.
// Seed length t*m with m = ceil(log2 n) (at least 1).
std::unique_ptr<SeededGenerator> kwise_generator(int n, int t, const Caps& caps = Caps{});

// Powering construction: seed is a field pair (x, y); output i is the inner
// product <x^{i+1}, y> over bits. Every nonempty parity has bias at most
// n/2^m, and m = ceil(log2(n/delta)) pins that under the target. Seed 2m.
// delta >= 1 degenerates to the 1-wise construction (any generator is valid).
std::unique_ptr<SeededGenerator> smallbias_generator(int n, double delta, const Caps& caps = Caps{});

// n outputs fed directly by n seed bits: the uniform distribution.
std::unique_ptr<SeededGenerator> raw_seed_generator(int n);

// Seedless constant output; the worst case for every audit.
std::unique_ptr<SeededGenerator> constant_generator(int n, int sign);

struct BiasAuditOptions {
    bool exact = true;           // full seed enumeration
    std::int64_t samples = 1 << 16;
    std::uint64_t seed = 1;
};

// max over nonempty sets up to max_set_size of |E[X^S]|. In exact mode the
// numerator is an integer, so "zero bias" is a literal integer test.
struct BiasAuditResult {
    double max_bias = 0.0;
    std::int64_t max_numerator = 0;     // exact mode: max |sum over seeds|
    std::int64_t denominator = 1;       // exact mode: number of seeds
    std::uint32_t witness = 0;          // set attaining the maximum
    bool exact = true;
    std::int64_t sets_checked = 0;
};

BiasAuditResult bias_audit(const SeededGenerator& gen, int max_set_size,
                           const BiasAuditOptions& options = BiasAuditOptions{},
                           const Caps& caps = Caps{});

}  // namespace polarwalk
