#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polarwalk {

// Fixed public mixing function (the splitmix64 finalizer). All derived
// randomness in the library flows through this, so parallel runs are
// schedule-independent and every result is reproducible from (master, counter).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    return mix64(master ^ mix64(counter));
}

// Parses a hex string (with or without 0x prefix) into a 64-bit master seed.
std::uint64_t parse_seed_hex(const std::string& text);

// Deterministic bit source. Generators consume seed material LSB-first and
// must take exactly their declared seed length per sample.
class SeedStream {
public:
    virtual ~SeedStream() = default;
    // Returns the next `bits` bits (0 <= bits <= 64) packed LSB-first.
    virtual std::uint64_t take(int bits) = 0;
    std::int64_t consumed() const { return consumed_; }

protected:
    std::int64_t consumed_ = 0;
};

// Stream over an explicit bit string; used to enumerate a seed space exactly.
class IntSeedStream final : public SeedStream {
public:
    explicit IntSeedStream(std::uint64_t value) : words_{value} {}
    explicit IntSeedStream(std::vector<std::uint64_t> words) : words_(std::move(words)) {}
    std::uint64_t take(int bits) override;
    void rewind() { cursor_ = 0; consumed_ = 0; }

private:
    std::vector<std::uint64_t> words_;
    std::int64_t cursor_ = 0;
};

// Counter-based stream: word i of stream s under master m is
// mix64(derive_seed(m, s) + i). Unbounded, deterministic, splittable.
class CounterSeedStream final : public SeedStream {
public:
    CounterSeedStream(std::uint64_t master, std::uint64_t stream)
        : state_(derive_seed(master, stream)) {}
    std::uint64_t take(int bits) override;

private:
    std::uint64_t word(std::uint64_t index) const { return mix64(state_ + index); }
    std::uint64_t state_;
    std::uint64_t next_word_ = 0;
    std::uint64_t buffer_ = 0;
    int buffered_bits_ = 0;
};

}  // namespace polarwalk
