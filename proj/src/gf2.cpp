#include "polarwalk/gf2.hpp"

#include <array>
#include <mutex>
#include <stdexcept>

namespace polarwalk {

namespace {

// Primitive polynomials per degree, taps written including the x^m term.
constexpr std::array<std::uint32_t, 25> kModulus = {
    0,         0x3,       0x7,      0xB,      0x13,     0x25,      0x43,      0x83,     0x11D,
    0x211,     0x409,     0x805,    0x1053,   0x201B,   0x4443,    0x8003,    0x1100B,  0x20009,
    0x40081,   0x80027,   0x100009, 0x200005, 0x400003, 0x800021,  0x1000087,
};

constexpr int kTableLimit = 16;  // log/antilog tables up to 2^16 elements

}  // namespace

Gf2Field::Gf2Field(int m) : m_(m) {
    if (m < 1 || m > 24) throw std::invalid_argument("field degree must lie in [1, 24]");
    modulus_ = kModulus[static_cast<std::size_t>(m)];
    if (m > kTableLimit) return;

    const std::uint32_t size = order();
    const std::uint32_t top = std::uint32_t{1} << (m - 1);
    log_.assign(size, 0);
    alog_.assign(2 * (size - 1), 0);
    std::uint32_t value = 1;  // x is a generator because the modulus is primitive
    for (std::uint32_t i = 0; i < size - 1; ++i) {
        if (i > 0 && value == 1) throw std::logic_error("modulus table entry is not primitive");
        alog_[i] = value;
        alog_[i + size - 1] = value;
        log_[value] = i;
        value = (value & top) ? ((value << 1) ^ modulus_) : (value << 1);
        value &= size - 1;
    }
    if (value != 1) throw std::logic_error("modulus table entry is not primitive");
}

std::uint32_t Gf2Field::mul_shift(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t acc = 0;
    std::uint64_t shifted = a;
    while (b) {
        if (b & 1) acc ^= shifted;
        shifted <<= 1;
        b >>= 1;
    }
    // reduce the carry bits from degree 2m-2 down to m-1
    for (int bit = 2 * m_ - 2; bit >= m_; --bit)
        if ((acc >> bit) & 1) acc ^= static_cast<std::uint64_t>(modulus_) << (bit - m_);
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t Gf2Field::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ > kTableLimit) return mul_shift(a, b);
    return alog_[log_[a] + log_[b]];
}

std::uint32_t Gf2Field::pow(std::uint32_t base, std::uint64_t exponent) const {
    std::uint32_t acc = 1;
    std::uint32_t sq = base;
    while (exponent) {
        if (exponent & 1) acc = mul(acc, sq);
        sq = mul(sq, sq);
        exponent >>= 1;
    }
    return acc;
}

const Gf2Field& Gf2Field::get(int m) {
    static std::mutex mutex;
    static std::array<const Gf2Field*, 25> cache{};
    if (m < 1 || m > 24) throw std::invalid_argument("field degree must lie in [1, 24]");
    std::lock_guard<std::mutex> lock(mutex);
    if (cache[static_cast<std::size_t>(m)] == nullptr)
        cache[static_cast<std::size_t>(m)] = new Gf2Field(m);
    return *cache[static_cast<std::size_t>(m)];
}

}  // namespace polarwalk
