#include "polarwalk/family.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/f2poly.hpp"
#include "polarwalk/seeding.hpp"

namespace polarwalk {

FunctionFamily::FunctionFamily(std::string descriptor, int n, std::size_t size, Generator generator,
                               bool closed_under_restrictions, bool closed_under_negations)
    : descriptor_(std::move(descriptor)),
      n_(n),
      size_(size),
      generator_(std::move(generator)),
      closed_under_restrictions_(closed_under_restrictions),
      closed_under_negations_(closed_under_negations) {
    if (size_ == 0) throw std::invalid_argument("family must have at least one member");
}

TruthTable FunctionFamily::member(std::size_t index) const {
    if (index >= size_) throw std::out_of_range("family member index out of range");
    return generator_(index);
}

FourierExpansion FunctionFamily::member_expansion(std::size_t index, const Caps& caps) const {
    return wht_forward(member(index), caps);
}

FunctionFamily family_from_tables(std::string descriptor, std::vector<TruthTable> tables,
                                  bool closed_under_restrictions, bool closed_under_negations) {
    if (tables.empty()) throw std::invalid_argument("family must have at least one member");
    const int n = tables.front().n;
    for (const TruthTable& t : tables)
        if (t.n != n) throw std::invalid_argument("family members must share the variable count");
    auto shared = std::make_shared<std::vector<TruthTable>>(std::move(tables));
    return FunctionFamily(std::move(descriptor), n, shared->size(),
                          [shared](std::size_t i) { return (*shared)[i]; },
                          closed_under_restrictions, closed_under_negations);
}

FunctionFamily family_single(TruthTable table, std::string name) {
    std::vector<TruthTable> tables;
    tables.push_back(std::move(table));
    return family_from_tables(std::move(name), std::move(tables), false, false);
}

FunctionFamily family_all_functions(int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("family_all_functions: n must be in [1, 4]");
    const std::size_t table_bits = std::size_t{1} << n;
    const std::size_t count = std::size_t{1} << table_bits;
    return FunctionFamily(
        "all:n=" + std::to_string(n), n, count,
        [n, table_bits](std::size_t index) {
            std::vector<std::int8_t> vals(table_bits);
            for (std::size_t m = 0; m < table_bits; ++m)
                vals[m] = static_cast<std::int8_t>(((index >> m) & 1) ? -1 : +1);
            return TruthTable(n, std::move(vals));
        },
        true, true);
}

FunctionFamily family_signed_parities(int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("family_signed_parities: bad n");
    const std::size_t count = std::size_t{2} << n;  // sign bit + subset mask
    return FunctionFamily(
        "parities:n=" + std::to_string(n), n, count,
        [n](std::size_t index) {
            const int sign = (index & 1) ? -1 : +1;
            return parity_table(n, static_cast<std::uint32_t>(index >> 1), sign);
        },
        true, true);
}

FunctionFamily family_majorities(int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("family_majorities: bad n");
    auto supports = std::make_shared<std::vector<std::uint32_t>>();
    for (std::uint32_t s = 1; s < (1u << n); ++s)
        if (std::popcount(s) % 2 == 1) supports->push_back(s);
    return FunctionFamily(
        "majorities:n=" + std::to_string(n), n, supports->size(),
        [n, supports](std::size_t index) {
            const std::uint32_t support = (*supports)[index];
            const int w = std::popcount(support);
            std::vector<std::int8_t> vals(std::size_t{1} << n);
            for (std::uint32_t m = 0; m < vals.size(); ++m) {
                const int minus_ones = std::popcount(m & support);
                vals[m] = static_cast<std::int8_t>(2 * minus_ones > w ? -1 : +1);
            }
            return TruthTable(n, std::move(vals));
        },
        false, false);
}

FunctionFamily family_tribes(int width, int tribes) {
    TruthTable base = tribes_table(width, tribes);
    std::vector<TruthTable> tables;
    tables.push_back(std::move(base));
    return family_from_tables("tribes:w=" + std::to_string(width) + ",s=" + std::to_string(tribes),
                              std::move(tables), false, false);
}

FunctionFamily family_random_juntas(int n, int k, std::size_t count, std::uint64_t seed) {
    if (n < 1 || n > 20 || k < 0 || k > n || k > 12)
        throw std::invalid_argument("family_random_juntas: bad shape");
    if (count == 0) throw std::invalid_argument("family_random_juntas: empty family");
    return FunctionFamily(
        "juntas:n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",count=" + std::to_string(count) +
            ",seed=" + std::to_string(seed),
        n, count,
        [n, k, seed](std::size_t index) {
            const std::uint64_t base = derive_seed(seed, index);
            // choose the support: k distinct coordinates by rejection-free shuffle
            std::vector<int> coords(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) coords[static_cast<std::size_t>(i)] = i;
            for (int i = 0; i < k; ++i) {
                const std::size_t j =
                    i + static_cast<std::size_t>(mix64(base + static_cast<std::uint64_t>(i)) %
                                                 static_cast<std::uint64_t>(n - i));
                std::swap(coords[static_cast<std::size_t>(i)], coords[j]);
            }
            std::vector<std::int8_t> vals(std::size_t{1} << n);
            for (std::uint32_t m = 0; m < vals.size(); ++m) {
                std::uint32_t sub = 0;
                for (int i = 0; i < k; ++i)
                    if (m & (1u << coords[static_cast<std::size_t>(i)])) sub |= 1u << i;
                const std::uint64_t word = mix64(base ^ 0x6a09e667f3bcc909ULL ^ (sub >> 6));
                vals[m] = static_cast<std::int8_t>(((word >> (sub & 63)) & 1) ? -1 : +1);
            }
            return TruthTable(n, std::move(vals));
        },
        false, false);
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& body) {
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        if (comma == std::string::npos) comma = body.size();
        const std::string item = body.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("family descriptor item must look like key=value: '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
        pos = comma + 1;
    }
    return kv;
}

long long kv_int(const std::map<std::string, std::string>& kv, const std::string& key,
                 std::optional<long long> fallback = std::nullopt) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (fallback.has_value()) return *fallback;
        throw std::invalid_argument("family descriptor missing '" + key + "'");
    }
    return std::stoll(it->second);
}

}  // namespace

FunctionFamily parse_family_descriptor(const std::string& descriptor, const Caps& caps) {
    const std::size_t colon = descriptor.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("family descriptor must be '<kind>:<args>': '" + descriptor + "'");
    const std::string kind = descriptor.substr(0, colon);
    const std::string body = descriptor.substr(colon + 1);
    if (kind == "file") {
        std::ifstream in(body);
        if (!in) throw IoError("cannot open family file '" + body + "'");
        return family_single(parse_truth_table(in, caps), descriptor);
    }
    const auto kv = parse_kv(body);
    if (kind == "f2") {
        const int n = static_cast<int>(kv_int(kv, "n"));
        const int d = static_cast<int>(kv_int(kv, "d"));
        if (kv.count("sample")) {
            const auto count = static_cast<std::size_t>(kv_int(kv, "sample"));
            const auto seed = static_cast<std::uint64_t>(kv_int(kv, "seed", 0));
            return family_f2_sampled(n, d, count, seed, caps);
        }
        return family_f2(n, d, kv_int(kv, "budget", 1 << 16), caps);
    }
    if (kind == "parities") return family_signed_parities(static_cast<int>(kv_int(kv, "n")));
    if (kind == "all") return family_all_functions(static_cast<int>(kv_int(kv, "n")));
    if (kind == "majorities") return family_majorities(static_cast<int>(kv_int(kv, "n")));
    if (kind == "tribes")
        return family_tribes(static_cast<int>(kv_int(kv, "w")), static_cast<int>(kv_int(kv, "s")));
    if (kind == "juntas")
        return family_random_juntas(static_cast<int>(kv_int(kv, "n")), static_cast<int>(kv_int(kv, "k")),
                                    static_cast<std::size_t>(kv_int(kv, "count")),
                                    static_cast<std::uint64_t>(kv_int(kv, "seed", 0)));
    throw std::invalid_argument("unknown family kind '" + kind + "'");
}

}  // namespace polarwalk
