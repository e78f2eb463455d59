#include "polarwalk/seeding.hpp"

#include <stdexcept>

namespace polarwalk {

std::uint64_t parse_seed_hex(const std::string& text) {
    std::string body = text;
    if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) body = body.substr(2);
    if (body.empty() || body.size() > 16)
        throw std::invalid_argument("seed must be 1..16 hex digits: '" + text + "'");
    std::uint64_t value = 0;
    for (char ch : body) {
        int digit;
        if (ch >= '0' && ch <= '9') digit = ch - '0';
        else if (ch >= 'a' && ch <= 'f') digit = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') digit = ch - 'A' + 10;
        else throw std::invalid_argument("invalid hex digit in seed: '" + text + "'");
        value = (value << 4) | static_cast<std::uint64_t>(digit);
    }
    return value;
}

std::uint64_t IntSeedStream::take(int bits) {
    if (bits < 0 || bits > 64) throw std::invalid_argument("take: bits out of range");
    std::uint64_t out = 0;
    for (int produced = 0; produced < bits;) {
        const std::size_t word_index = static_cast<std::size_t>(cursor_ >> 6);
        const int offset = static_cast<int>(cursor_ & 63);
        const std::uint64_t word = word_index < words_.size() ? words_[word_index] : 0;
        const int chunk = std::min(bits - produced, 64 - offset);
        const std::uint64_t mask = chunk == 64 ? ~0ULL : ((1ULL << chunk) - 1);
        out |= ((word >> offset) & mask) << produced;
        produced += chunk;
        cursor_ += chunk;
    }
    consumed_ += bits;
    return out;
}

std::uint64_t CounterSeedStream::take(int bits) {
    if (bits < 0 || bits > 64) throw std::invalid_argument("take: bits out of range");
    std::uint64_t out = 0;
    int produced = 0;
    while (produced < bits) {
        if (buffered_bits_ == 0) {
            buffer_ = word(next_word_++);
            buffered_bits_ = 64;
        }
        const int chunk = std::min(bits - produced, buffered_bits_);
        const std::uint64_t mask = chunk == 64 ? ~0ULL : ((1ULL << chunk) - 1);
        out |= (buffer_ & mask) << produced;
        buffer_ = chunk == 64 ? 0 : (buffer_ >> chunk);
        buffered_bits_ -= chunk;
        produced += chunk;
    }
    consumed_ += bits;
    return out;
}

}  // namespace polarwalk
