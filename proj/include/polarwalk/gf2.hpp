#pragma once

#include <cstdint>
#include <vector>

namespace polarwalk {

// Binary field with 2^m elements, 1 <= m <= 24. Elements are polynomial bit
// vectors reduced by a fixed primitive modulus per m; multiplication uses
// log/antilog tables for m <= 16 and shift-xor reduction beyond.
class Gf2Field {
public:
    explicit Gf2Field(int m);

    int degree() const { return m_; }
    std::uint32_t order() const { return std::uint32_t{1} << m_; }
    std::uint32_t modulus() const { return modulus_; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t base, std::uint64_t exponent) const;

    // Shared per-degree instance.
    static const Gf2Field& get(int m);

private:
    std::uint32_t mul_shift(std::uint32_t a, std::uint32_t b) const;

    int m_;
    std::uint32_t modulus_;
    std::vector<std::uint32_t> log_;   // log_[x] for x != 0
    std::vector<std::uint32_t> alog_;  // alog_[i] = g^i, doubled to skip the mod
};

}  // namespace polarwalk
