#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polarwalk/config.hpp"

namespace polarwalk {

// Exact sign function on the n-cube. Entry at index m is f(x) where bit i of
// m encodes variable i+1: bit set means x_{i+1} = -1, clear means +1 (x_1 is
// the least significant bit). The same bit convention is used everywhere a
// point or a subset of [n] is packed into a mask.
struct TruthTable {
    int n = 0;
    std::vector<std::int8_t> values;  // 2^n entries, each +1 or -1

    TruthTable() = default;
    TruthTable(int n_vars, std::vector<std::int8_t> vals);

    std::size_t size() const { return values.size(); }
    std::int8_t at(std::uint32_t index) const { return values[index]; }

    bool operator==(const TruthTable& other) const = default;

    static TruthTable constant(int n_vars, int sign, const Caps& caps = Caps{});
};

// Canonical small functions used throughout the test and experiment suites.
TruthTable parity_table(int n, std::uint32_t subset, int sign = +1);
TruthTable and2_table();                   // -1 exactly when both inputs are -1
TruthTable majority_table(int n);          // n odd; sign of the coordinate sum
TruthTable tribes_table(int width, int tribes);  // OR of disjoint ANDs, "true" = -1
TruthTable random_table(int n, std::uint64_t seed, const Caps& caps = Caps{});

// File format: line 1 "n=<int>", line 2 a hex string of 2^n bits where bit m
// (numeric weight 2^m) set means entry m is -1. The hex string has exactly
// ceil(2^n / 4) digits.
std::string format_truth_table(const TruthTable& table);
TruthTable parse_truth_table(std::istream& in, const Caps& caps = Caps{});

}  // namespace polarwalk
