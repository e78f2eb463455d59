#include "polarwalk/f2poly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/seeding.hpp"
#include "polarwalk/spectral.hpp"

namespace polarwalk {

int F2Polynomial::degree() const {
    int d = 0;
    for (std::uint32_t mono : monomials) d = std::max(d, std::popcount(mono));
    return d;
}

F2Polynomial F2Polynomial::from_monomials(int n_vars, std::vector<std::uint32_t> monos) {
    if (n_vars < 0 || n_vars > 30) throw std::invalid_argument("bad variable count");
    std::sort(monos.begin(), monos.end());
    for (std::size_t i = 0; i < monos.size(); ++i) {
        if (n_vars < 32 && (monos[i] >> n_vars))
            throw std::invalid_argument("monomial uses a variable outside [n]");
        if (i > 0 && monos[i] == monos[i - 1])
            throw std::invalid_argument("duplicate monomial");
    }
    return F2Polynomial{n_vars, std::move(monos)};
}

int f2_eval(const F2Polynomial& poly, std::uint32_t x_bits) {
    int acc = 0;
    for (std::uint32_t mono : poly.monomials) acc ^= static_cast<int>((x_bits & mono) == mono);
    return acc;
}

TruthTable lift_pm(const F2Polynomial& poly, const Caps& caps) {
    if (poly.n > caps.max_n)
        throw ResourceError("lift on " + std::to_string(poly.n) + " variables exceeds cap");
    std::vector<std::int8_t> vals(std::size_t{1} << poly.n);
    // Table index bits are exactly the field point: set bit = -1 input = 1.
    for (std::uint32_t m = 0; m < vals.size(); ++m)
        vals[m] = static_cast<std::int8_t>(f2_eval(poly, m) ? -1 : +1);
    return TruthTable(poly.n, std::move(vals));
}

F2Polynomial refit_f2(const TruthTable& table) {
    const std::size_t size = table.size();
    std::vector<std::uint8_t> anf(size);
    for (std::size_t m = 0; m < size; ++m) anf[m] = table.values[m] == -1 ? 1 : 0;
    for (int i = 0; i < table.n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t m = 0; m < size; ++m)
            if (m & bit) anf[m] ^= anf[m ^ bit];
    }
    std::vector<std::uint32_t> monos;
    for (std::uint32_t m = 0; m < size; ++m)
        if (anf[m]) monos.push_back(m);
    return F2Polynomial{table.n, std::move(monos)};
}

std::string format_f2(const F2Polynomial& poly) {
    std::string out;
    for (std::uint32_t mono : poly.monomials) {
        if (mono == 0) {
            out += "1\n";
            continue;
        }
        bool first = true;
        for (int i = 0; i < 32; ++i) {
            if ((mono >> i) & 1) {
                if (!first) out += "*";
                out += "x" + std::to_string(i + 1);
                first = false;
            }
        }
        out += "\n";
    }
    if (poly.monomials.empty()) out = "0\n";
    return out;
}

F2Polynomial parse_f2(std::istream& in, const Caps& caps) {
    std::vector<std::uint32_t> monos;
    std::string line;
    int line_no = 0;
    int max_var = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        any = true;
        if (line == "0") continue;  // the zero polynomial
        if (line == "1") {
            monos.push_back(0);
            continue;
        }
        std::uint32_t mono = 0;
        std::size_t pos = 0;
        while (pos < line.size()) {
            std::size_t star = line.find('*', pos);
            if (star == std::string::npos) star = line.size();
            const std::string term = line.substr(pos, star - pos);
            if (term.size() < 2 || term[0] != 'x')
                throw IoError("line " + std::to_string(line_no) + ": expected variable like 'x3', got '" +
                              term + "'");
            int var = 0;
            try {
                std::size_t used = 0;
                var = std::stoi(term.substr(1), &used);
                if (used != term.size() - 1) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw IoError("line " + std::to_string(line_no) + ": invalid variable '" + term + "'");
            }
            if (var < 1 || var > 30)
                throw IoError("line " + std::to_string(line_no) + ": variable index out of range");
            const std::uint32_t bit = 1u << (var - 1);
            if (mono & bit)
                throw IoError("line " + std::to_string(line_no) + ": repeated variable in monomial");
            mono |= bit;
            max_var = std::max(max_var, var);
            pos = star + 1;
        }
        monos.push_back(mono);
    }
    if (!any) throw IoError("line 1: empty polynomial file");
    std::sort(monos.begin(), monos.end());
    for (std::size_t i = 1; i < monos.size(); ++i)
        if (monos[i] == monos[i - 1]) throw IoError("duplicate monomial in polynomial file");
    if (max_var > caps.max_n) throw ResourceError("polynomial variable count exceeds cap");
    return F2Polynomial{max_var, std::move(monos)};
}

namespace {

std::vector<std::uint32_t> monomial_universe(int n, int d) {
    std::vector<std::uint32_t> universe;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (std::popcount(m) <= d) universe.push_back(m);
    return universe;
}

TruthTable member_from_bits(int n, const std::vector<std::uint32_t>& universe,
                            const std::function<bool(std::size_t)>& bit) {
    std::vector<std::uint32_t> monos;
    for (std::size_t j = 0; j < universe.size(); ++j)
        if (bit(j)) monos.push_back(universe[j]);
    return lift_pm(F2Polynomial{n, std::move(monos)});
}

}  // namespace

FunctionFamily family_f2(int n, int d, std::int64_t enumerate_budget, const Caps& caps) {
    if (n < 1 || n > caps.max_n || d < 0 || d > n) throw std::invalid_argument("family_f2: bad shape");
    auto universe = std::make_shared<std::vector<std::uint32_t>>(monomial_universe(n, d));
    if (universe->size() >= 63 ||
        (std::int64_t{1} << universe->size()) > enumerate_budget)
        throw ResourceError("f2 family enumeration exceeds budget; use sampling");
    const std::size_t count = std::size_t{1} << universe->size();
    return FunctionFamily(
        "f2:n=" + std::to_string(n) + ",d=" + std::to_string(d), n, count,
        [n, universe](std::size_t index) {
            return member_from_bits(n, *universe, [index](std::size_t j) { return (index >> j) & 1; });
        },
        true, true);
}

FunctionFamily family_f2_sampled(int n, int d, std::size_t sample_count, std::uint64_t seed,
                                 const Caps& caps) {
    if (n < 1 || n > caps.max_n || d < 0 || d > n) throw std::invalid_argument("family_f2: bad shape");
    if (sample_count == 0) throw std::invalid_argument("family_f2: empty sample");
    auto universe = std::make_shared<std::vector<std::uint32_t>>(monomial_universe(n, d));
    return FunctionFamily(
        "f2:n=" + std::to_string(n) + ",d=" + std::to_string(d) + ",sample=" +
            std::to_string(sample_count) + ",seed=" + std::to_string(seed),
        n, sample_count,
        [n, universe, seed](std::size_t index) {
            const std::uint64_t base = derive_seed(seed, index);
            return member_from_bits(n, *universe, [base](std::size_t j) {
                return (mix64(base + (j >> 6)) >> (j & 63)) & 1;
            });
        },
        true, true);
}

ExperimentReport prop51_check(int n, int d, int k, const FunctionFamily& family, const Caps& caps) {
    if (k < 0 || k > n) throw std::invalid_argument("prop51_check: level out of range");
    ExperimentReport report;
    report.name = "prop51_check";
    report.config = {{"n", n}, {"d", d}, {"k", k}, {"family", family.descriptor()}};

    ClassMetricsOptions options;
    options.mode = ClosureMode::as_given;
    options.caps = caps;
    const LevelMetrics metrics = class_metrics(family, k, options);
    const double bound = std::pow(static_cast<double>(k) * std::pow(2.0, 3.0 * d),
                                  static_cast<double>(k));
    report.quantities = {{"max_l1", metrics.l1},
                         {"bound", bound},
                         {"measured_mk", metrics.mk},
                         {"members", family.size()}};
    report.mode = "members(" + std::to_string(family.size()) + ")";
    report.status = metrics.l1 <= bound + 1e-9 ? ExperimentReport::Status::pass
                                               : ExperimentReport::Status::fail;
    if (report.status == ExperimentReport::Status::fail)
        report.quantities["note"] =
            "a violation at this scale points at an implementation fault, not at the bound";
    return report;
}

}  // namespace polarwalk
