#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "polarwalk/config.hpp"
#include "polarwalk/fourier.hpp"
#include "polarwalk/truth_table.hpp"

namespace polarwalk {

// A finite, deterministically indexable class of n-variate sign functions.
// member(i) is a pure function of (descriptor, i), so enumeration order and
// sampled families are reproducible across runs and thread schedules.
class FunctionFamily {
public:
    using Generator = std::function<TruthTable(std::size_t)>;

    FunctionFamily(std::string descriptor, int n, std::size_t size, Generator generator,
                   bool closed_under_restrictions, bool closed_under_negations);

    const std::string& descriptor() const { return descriptor_; }
    int n() const { return n_; }
    std::size_t size() const { return size_; }
    TruthTable member(std::size_t index) const;
    FourierExpansion member_expansion(std::size_t index, const Caps& caps = Caps{}) const;

    // Metadata asserted by the constructor; testable at desk scale.
    // closed_under_negations covers both input negations and the global sign flip.
    bool closed_under_restrictions() const { return closed_under_restrictions_; }
    bool closed_under_negations() const { return closed_under_negations_; }

private:
    std::string descriptor_;
    int n_;
    std::size_t size_;
    Generator generator_;
    bool closed_under_restrictions_;
    bool closed_under_negations_;
};

FunctionFamily family_from_tables(std::string descriptor, std::vector<TruthTable> tables,
                                  bool closed_under_restrictions = false,
                                  bool closed_under_negations = false);
FunctionFamily family_single(TruthTable table, std::string name = "explicit");

// All 2^(2^n) sign functions; n <= 4.
FunctionFamily family_all_functions(int n);

// All signed parities +-x^S, 2^(n+1) members; closed under restrictions and negations.
FunctionFamily family_signed_parities(int n);

// Majority juntas over every odd-size subset of [n].
FunctionFamily family_majorities(int n);

FunctionFamily family_tribes(int width, int tribes);

// `count` random k-juntas: random support of size k, random table on it.
FunctionFamily family_random_juntas(int n, int k, std::size_t count, std::uint64_t seed);

// Parses descriptors like "f2:n=8,d=2,sample=500,seed=7", "parities:n=3",
// "all:n=2", "majorities:n=5", "tribes:w=2,s=2",
// "juntas:n=8,k=3,count=100,seed=1", "file:<path>".
FunctionFamily parse_family_descriptor(const std::string& descriptor, const Caps& caps = Caps{});

}  // namespace polarwalk
