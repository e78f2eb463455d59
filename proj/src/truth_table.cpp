#include "polarwalk/truth_table.hpp"

#include <bit>
#include <istream>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/seeding.hpp"

namespace polarwalk {

namespace {
void check_n(int n, const Caps& caps) {
    if (n < 0) throw std::invalid_argument("variable count must be nonnegative");
    if (n > caps.max_n)
        throw ResourceError("table on " + std::to_string(n) + " variables exceeds cap " +
                            std::to_string(caps.max_n));
}
}  // namespace

TruthTable::TruthTable(int n_vars, std::vector<std::int8_t> vals) : n(n_vars), values(std::move(vals)) {
    if (values.size() != (std::size_t{1} << n))
        throw std::invalid_argument("truth table length must be 2^n");
    for (std::int8_t v : values)
        if (v != 1 && v != -1) throw std::invalid_argument("truth table entries must be +1 or -1");
}

TruthTable TruthTable::constant(int n_vars, int sign, const Caps& caps) {
    check_n(n_vars, caps);
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    return TruthTable(n_vars, std::vector<std::int8_t>(std::size_t{1} << n_vars,
                                                       static_cast<std::int8_t>(sign)));
}

TruthTable parity_table(int n, std::uint32_t subset, int sign) {
    if (n < 0 || n > 30) throw std::invalid_argument("parity_table: bad n");
    if (subset >> n) throw std::invalid_argument("parity_table: subset outside [n]");
    std::vector<std::int8_t> vals(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < vals.size(); ++m)
        vals[m] = static_cast<std::int8_t>((std::popcount(m & subset) & 1) ? -sign : sign);
    return TruthTable(n, std::move(vals));
}

TruthTable and2_table() {
    return TruthTable(2, {+1, +1, +1, -1});
}

TruthTable majority_table(int n) {
    if (n < 1 || n % 2 == 0 || n > 25) throw std::invalid_argument("majority_table: n must be odd");
    std::vector<std::int8_t> vals(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < vals.size(); ++m) {
        // set bits are -1 inputs; majority of -1s makes the output -1
        const int minus_ones = std::popcount(m);
        vals[m] = static_cast<std::int8_t>(2 * minus_ones > n ? -1 : +1);
    }
    return TruthTable(n, std::move(vals));
}

TruthTable tribes_table(int width, int tribes) {
    if (width < 1 || tribes < 1 || width * tribes > 25)
        throw std::invalid_argument("tribes_table: bad shape");
    const int n = width * tribes;
    const std::uint32_t block = (width == 32) ? ~0u : ((1u << width) - 1);
    std::vector<std::int8_t> vals(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < vals.size(); ++m) {
        bool fired = false;
        for (int t = 0; t < tribes && !fired; ++t) {
            const std::uint32_t tribe_bits = (m >> (t * width)) & block;
            fired = tribe_bits == block;  // all inputs of the tribe are -1
        }
        vals[m] = static_cast<std::int8_t>(fired ? -1 : +1);
    }
    return TruthTable(n, std::move(vals));
}

TruthTable random_table(int n, std::uint64_t seed, const Caps& caps) {
    check_n(n, caps);
    std::vector<std::int8_t> vals(std::size_t{1} << n);
    for (std::size_t m = 0; m < vals.size(); ++m) {
        const std::uint64_t word = mix64(seed + (m >> 6));
        vals[m] = static_cast<std::int8_t>(((word >> (m & 63)) & 1) ? -1 : +1);
    }
    return TruthTable(n, std::move(vals));
}

std::string format_truth_table(const TruthTable& table) {
    const std::size_t bits = table.size();
    const std::size_t digits = (bits + 3) / 4;
    std::string hex(digits, '0');
    static const char* kDigits = "0123456789abcdef";
    for (std::size_t m = 0; m < bits; ++m) {
        if (table.values[m] != -1) continue;
        // digit holding numeric weight 2^m sits at the end of the string
        const std::size_t digit_pos = digits - 1 - (m >> 2);
        const int nibble_bit = static_cast<int>(m & 3);
        int value = hex[digit_pos] <= '9' ? hex[digit_pos] - '0' : hex[digit_pos] - 'a' + 10;
        value |= 1 << nibble_bit;
        hex[digit_pos] = kDigits[value];
    }
    return "n=" + std::to_string(table.n) + "\n" + hex + "\n";
}

TruthTable parse_truth_table(std::istream& in, const Caps& caps) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("line 1: empty input");
    if (line.rfind("n=", 0) != 0) throw IoError("line 1: expected 'n=<int>'");
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(line.substr(2), &used);
        if (used != line.size() - 2) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw IoError("line 1: invalid variable count '" + line + "'");
    }
    if (n < 0) throw IoError("line 1: variable count must be nonnegative");
    if (n > caps.max_n)
        throw ResourceError("line 1: n=" + std::to_string(n) + " exceeds cap " +
                            std::to_string(caps.max_n));
    if (!std::getline(in, line)) throw IoError("line 2: missing hex payload");
    const std::size_t bits = std::size_t{1} << n;
    const std::size_t digits = (bits + 3) / 4;
    if (line.size() != digits)
        throw IoError("line 2: expected " + std::to_string(digits) + " hex digits, got " +
                      std::to_string(line.size()));
    std::vector<std::int8_t> vals(bits, +1);
    for (std::size_t pos = 0; pos < digits; ++pos) {
        const char ch = line[pos];
        int value;
        if (ch >= '0' && ch <= '9') value = ch - '0';
        else if (ch >= 'a' && ch <= 'f') value = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') value = ch - 'A' + 10;
        else throw IoError("line 2: invalid hex digit at column " + std::to_string(pos + 1));
        const std::size_t base = (digits - 1 - pos) << 2;
        for (int bit = 0; bit < 4; ++bit) {
            if (((value >> bit) & 1) == 0) continue;
            const std::size_t m = base + static_cast<std::size_t>(bit);
            if (m >= bits) throw IoError("line 2: stray bit beyond table size");
            vals[m] = -1;
        }
    }
    return TruthTable(n, std::move(vals));
}

}  // namespace polarwalk
