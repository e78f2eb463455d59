#include "polarwalk/taylor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/parallel.hpp"
#include "polarwalk/seeding.hpp"
#include "polarwalk/simplex.hpp"

namespace polarwalk {

namespace {

void check_point(const FourierExpansion& fe, std::span<const double> x, double bound) {
    if (static_cast<int>(x.size()) != fe.n)
        throw std::invalid_argument("point dimension does not match expansion");
    for (double v : x)
        if (std::fabs(v) > bound + 1e-12) throw std::invalid_argument("point outside the required cube");
}

// prod[mask] = product of x_i over i in mask, built incrementally.
std::vector<double> monomial_products(std::span<const double> x) {
    const std::size_t size = std::size_t{1} << x.size();
    std::vector<double> prod(size, 1.0);
    for (std::size_t m = 1; m < size; ++m) {
        const std::size_t low = m & (~m + 1);
        prod[m] = prod[m ^ low] * x[static_cast<std::size_t>(std::countr_zero(low))];
    }
    return prod;
}

double tail_ratio_bound(double c, int k) { return std::pow(c / (1.0 - c), k); }

}  // namespace

double UnivariateRestriction::eval(double t) const {
    double acc = 0.0;
    for (std::size_t l = level_values.size(); l-- > 0;) acc = acc * t + level_values[l];
    return acc;
}

double UnivariateRestriction::derivative_value(int k, double t) const {
    if (k < 0) throw std::invalid_argument("derivative order must be nonnegative");
    double acc = 0.0;
    for (std::size_t l = level_values.size(); l-- > static_cast<std::size_t>(k);) {
        double falling = 1.0;
        for (int j = 0; j < k; ++j) falling *= static_cast<double>(l - static_cast<std::size_t>(j));
        acc = acc * t + falling * level_values[l];
    }
    return acc;
}

std::vector<double> UnivariateRestriction::derivative_poly(int k) const {
    if (k < 0) throw std::invalid_argument("derivative order must be nonnegative");
    if (static_cast<std::size_t>(k) >= level_values.size()) return {0.0};
    std::vector<double> out(level_values.size() - static_cast<std::size_t>(k));
    for (std::size_t l = static_cast<std::size_t>(k); l < level_values.size(); ++l) {
        double falling = 1.0;
        for (int j = 0; j < k; ++j) falling *= static_cast<double>(l - static_cast<std::size_t>(j));
        out[l - static_cast<std::size_t>(k)] = falling * level_values[l];
    }
    return out;
}

double tail_eval(const FourierExpansion& fe, int k, std::span<const double> x) {
    check_point(fe, x, 1.0);
    if (k < 0 || k > fe.n + 1) throw std::invalid_argument("tail level out of range");
    const std::vector<double> prod = monomial_products(x);
    double acc = 0.0;
    for (std::uint32_t m = 0; m < fe.size(); ++m)
        if (std::popcount(m) >= k) acc += fe.coeffs[m] * prod[m];
    return acc;
}

UnivariateRestriction univariate_restriction(const FourierExpansion& fe, std::span<const double> x) {
    check_point(fe, x, 1.0);
    const std::vector<double> prod = monomial_products(x);
    UnivariateRestriction g;
    g.anchor.assign(x.begin(), x.end());
    g.level_values.assign(static_cast<std::size_t>(fe.n) + 1, 0.0);
    for (std::uint32_t m = 0; m < fe.size(); ++m)
        g.level_values[static_cast<std::size_t>(std::popcount(m))] += fe.coeffs[m] * prod[m];
    return g;
}

ExperimentReport taylor_tail_check(const FourierExpansion& fe, int k, double c, double mk_class,
                                   const ProbeOptions& probes, const Caps& caps) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("scale c must lie in (0,1)");
    if (k < 1 || k > fe.n) throw std::invalid_argument("tail level must lie in [1, n]");
    if (!probes.exact && probes.samples <= 0) throw std::invalid_argument("empty corner probe set");
    if (probes.exact && fe.n > caps.max_n)
        throw ResourceError("exhaustive corner probe exceeds cap");

    // values of the tail at every corner of the scaled cube in one transform
    FourierExpansion scaled = FourierExpansion::zeros(fe.n);
    for (std::uint32_t m = 0; m < fe.size(); ++m) {
        const int level = std::popcount(m);
        if (level >= k) scaled.coeffs[m] = fe.coeffs[m] * std::pow(c, level);
    }
    const std::vector<double> corners = corner_values(scaled);

    double lhs = 0.0;
    std::uint32_t witness = 0;
    if (probes.exact) {
        for (std::uint32_t m = 0; m < corners.size(); ++m)
            if (std::fabs(corners[m]) > lhs) {
                lhs = std::fabs(corners[m]);
                witness = m;
            }
    } else {
        for (std::int64_t s = 0; s < probes.samples; ++s) {
            const auto m = static_cast<std::uint32_t>(derive_seed(probes.seed, static_cast<std::uint64_t>(s)) &
                                                      (corners.size() - 1));
            if (std::fabs(corners[m]) > lhs) {
                lhs = std::fabs(corners[m]);
                witness = m;
            }
        }
    }

    const double rhs = tail_ratio_bound(c, k) * mk_class;
    ExperimentReport report;
    report.name = "taylor_tail_check";
    report.config = {{"n", fe.n}, {"k", k}, {"c", c}, {"mk_class", mk_class}};
    report.quantities = {{"lhs", lhs}, {"rhs", rhs}, {"witness_corner", witness}};
    report.mode = probes.exact ? "exact" : "sampled(" + std::to_string(probes.samples) + ")";
    report.status =
        lhs <= rhs + 1e-9 ? ExperimentReport::Status::pass : ExperimentReport::Status::fail;
    return report;
}

ExperimentReport lagrange_term_check(const FourierExpansion& fe, int k, double c,
                                     std::span<const double> x, int grid_points, double mk_class,
                                     const Caps& caps) {
    (void)caps;
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("scale c must lie in (0,1)");
    if (k < 1 || k > fe.n) throw std::invalid_argument("derivative order must lie in [1, n]");
    if (grid_points < 2) throw std::invalid_argument("derivative grid needs at least two points");
    check_point(fe, x, c);

    const UnivariateRestriction g = univariate_restriction(fe, x);

    double grid_max = 0.0;
    double witness_s = 0.0;
    auto consider = [&](double s) {
        const double value = std::fabs(g.derivative_value(k, s));
        if (value > grid_max) {
            grid_max = value;
            witness_s = s;
        }
    };
    for (int i = 0; i < grid_points; ++i)
        consider(static_cast<double>(i) / static_cast<double>(grid_points - 1));
    // refine: interior extrema of g^(k) sit at sign changes of g^(k+1)
    double prev_s = 0.0;
    double prev_d = g.derivative_value(k + 1, 0.0);
    for (int i = 1; i < grid_points; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(grid_points - 1);
        const double d = g.derivative_value(k + 1, s);
        if ((prev_d < 0.0) != (d < 0.0)) {
            double lo = prev_s, hi = s;
            double dlo = prev_d;
            for (int iter = 0; iter < 60; ++iter) {
                const double mid = 0.5 * (lo + hi);
                const double dmid = g.derivative_value(k + 1, mid);
                if ((dlo < 0.0) != (dmid < 0.0)) hi = mid;
                else lo = mid, dlo = dmid;
            }
            consider(0.5 * (lo + hi));
        }
        prev_s = s;
        prev_d = d;
    }

    // Taylor split of g(1): low-order level values plus the tail at x
    double low_order = 0.0;
    for (int i = 0; i < k; ++i) low_order += g.level_values[static_cast<std::size_t>(i)];
    const double tail = tail_eval(fe, k, x);
    const double total = eval_multilinear(fe, x);
    const double split_residual = std::fabs(low_order + tail - total);

    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    const double rhs = tail_ratio_bound(c, k) * factorial * mk_class;

    ExperimentReport report;
    report.name = "lagrange_term_check";
    report.config = {{"n", fe.n}, {"k", k}, {"c", c}, {"mk_class", mk_class}, {"grid", grid_points}};
    report.quantities = {{"max_derivative", grid_max},
                         {"rhs", rhs},
                         {"witness_s", witness_s},
                         {"taylor_split_residual", split_residual}};
    report.mode = "grid+roots";
    report.status = (grid_max <= rhs + 1e-9 && split_residual <= 1e-9)
                        ? ExperimentReport::Status::pass
                        : ExperimentReport::Status::fail;
    return report;
}

ExperimentReport level_scaling_check(const FourierExpansion& fe, int k, double c, double mk_class,
                                     const Caps& caps) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("scale c must lie in (0,1)");
    if (k < 0 || k > fe.n) throw std::invalid_argument("level out of range");
    if (fe.n > caps.max_n) throw ResourceError("exhaustive corner probe exceeds cap");

    FourierExpansion level = FourierExpansion::zeros(fe.n);
    for (std::uint32_t m = 0; m < fe.size(); ++m)
        if (std::popcount(m) == k) level.coeffs[m] = fe.coeffs[m] * std::pow(c, k);
    const std::vector<double> corners = corner_values(level);
    double lhs = 0.0;
    for (double v : corners) lhs = std::max(lhs, std::fabs(v));
    const double rhs = std::pow(c, k) * mk_class;

    ExperimentReport report;
    report.name = "level_scaling_check";
    report.config = {{"n", fe.n}, {"k", k}, {"c", c}, {"mk_class", mk_class}};
    report.quantities = {{"lhs", lhs}, {"rhs", rhs}};
    report.status =
        lhs <= rhs + 1e-9 ? ExperimentReport::Status::pass : ExperimentReport::Status::fail;
    return report;
}

ApproxResult best_lowdeg_approx(const FourierExpansion& fe, int k, double c, const Caps& caps) {
    const int n = fe.n;
    if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("scale c must lie in (0,1]");
    if (k < 1 || k > n + 1) throw std::invalid_argument("degree bound k must lie in [1, n+1]");
    if (n > caps.max_lp_n)
        throw ResourceError("approximation LP on " + std::to_string(n) + " variables exceeds cap " +
                            std::to_string(caps.max_lp_n));

    ApproxResult result;
    result.k = k;
    result.c = c;

    if (k == n + 1) {
        // every multilinear function has degree at most n; it approximates itself
        for (std::uint32_t m = 0; m < fe.size(); ++m)
            if (fe.coeffs[m] != 0.0) result.approximant.emplace_back(m, fe.coeffs[m]);
        result.eps_lp = 0.0;
        return result;
    }

    std::vector<std::uint32_t> monomials;
    for (std::uint32_t m = 0; m < fe.size(); ++m)
        if (std::popcount(m) < k) monomials.push_back(m);
    const int p = static_cast<int>(monomials.size());
    const std::size_t corners = fe.size();

    // f at the corners of the scaled cube
    FourierExpansion scaled = fe;
    for (std::uint32_t m = 0; m < fe.size(); ++m)
        scaled.coeffs[m] *= std::pow(c, std::popcount(m));
    const std::vector<double> f = corner_values(scaled);

    // Dual of the minimax program: one equality row per monomial plus the
    // normalization row; a (u, v) column pair per corner. The row multipliers
    // of the optimum carry the approximant.
    const int nrows = p + 1;
    const int ncols = static_cast<int>(2 * corners);
    std::vector<double> A(static_cast<std::size_t>(nrows) * ncols, 0.0);
    std::vector<double> b(static_cast<std::size_t>(nrows), 0.0);
    std::vector<double> cost(static_cast<std::size_t>(ncols), 0.0);
    b[static_cast<std::size_t>(p)] = 1.0;
    for (std::size_t j = 0; j < corners; ++j) {
        cost[2 * j] = -f[j];
        cost[2 * j + 1] = f[j];
        for (int row = 0; row < p; ++row) {
            const std::uint32_t mask = monomials[static_cast<std::size_t>(row)];
            const double phi = std::pow(c, std::popcount(mask)) *
                               ((std::popcount(static_cast<std::uint32_t>(j) & mask) & 1) ? -1.0 : 1.0);
            A[static_cast<std::size_t>(row) * ncols + 2 * j] = phi;
            A[static_cast<std::size_t>(row) * ncols + 2 * j + 1] = -phi;
        }
        A[static_cast<std::size_t>(p) * ncols + 2 * j] = 1.0;
        A[static_cast<std::size_t>(p) * ncols + 2 * j + 1] = 1.0;
    }

    const lp::Result solved = lp::maximize(A, nrows, ncols, b, cost);
    if (solved.status != lp::Status::optimal)
        throw std::runtime_error("approximation LP did not reach an optimum");

    result.eps_lp = std::max(0.0, solved.objective);
    for (int row = 0; row < p; ++row) {
        const double coeff = -solved.y[static_cast<std::size_t>(row)];
        if (std::fabs(coeff) > 1e-12)
            result.approximant.emplace_back(monomials[static_cast<std::size_t>(row)], coeff);
    }

    // the recovered approximant must certify the optimum
    double residual = 0.0;
    for (std::size_t j = 0; j < corners; ++j) {
        double g = 0.0;
        for (const auto& [mask, coeff] : result.approximant)
            g += coeff * std::pow(c, std::popcount(mask)) *
                 ((std::popcount(static_cast<std::uint32_t>(j) & mask) & 1) ? -1.0 : 1.0);
        residual = std::max(residual, std::fabs(f[j] - g));
    }
    if (residual > result.eps_lp + 1e-6)
        throw std::runtime_error("approximation LP certificate mismatch");

    return result;
}

double eps_ck_family(const FunctionFamily& family, int k, double c, const Caps& caps) {
    return parallel_reduce<double>(
        static_cast<std::int64_t>(family.size()), 1, 0.0,
        [&](std::int64_t begin, std::int64_t end) {
            double local = 0.0;
            for (std::int64_t i = begin; i < end; ++i)
                local = std::max(local, best_lowdeg_approx(family.member_expansion(static_cast<std::size_t>(i), caps),
                                                           k, c, caps)
                                            .eps_lp);
            return local;
        },
        [](double a, double bv) { return std::max(a, bv); });
}

double c_k_search(const FunctionFamily& family, int k, double eps, double tol, const Caps& caps) {
    if (tol <= 0.0) throw std::invalid_argument("search tolerance must be positive");
    if (eps <= 0.0) throw std::invalid_argument("target error must be positive");
    if (eps >= 1.0) return 1.0;  // the zero polynomial already achieves error <= 1
    if (eps_ck_family(family, k, 1.0, caps) <= eps) return 1.0;
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (eps_ck_family(family, k, mid, caps) <= eps) lo = mid;
        else hi = mid;
    }
    return lo;
}

namespace {

// Closure member list for class-level approximation statements: families
// already closed under restrictions stand as-is.
std::vector<FourierExpansion> closure_members(const FunctionFamily& family, const Caps& caps) {
    std::vector<FourierExpansion> members;
    if (family.closed_under_restrictions()) {
        members.reserve(family.size());
        for (std::size_t i = 0; i < family.size(); ++i)
            members.push_back(family.member_expansion(i, caps));
        return members;
    }
    const std::uint64_t closure = restriction_count(family.n());
    if (closure > (std::uint64_t{1} << 16) ||
        closure * family.size() > (std::uint64_t{1} << 18))
        throw ResourceError("restriction closure too large for exact class approximation");
    for (std::size_t i = 0; i < family.size(); ++i) {
        for_each_restriction(family.member_expansion(i, caps), static_cast<std::int64_t>(closure),
                             std::nullopt, [&](const Restriction&, const FourierExpansion& g) {
                                 members.push_back(g);
                             });
    }
    return members;
}

}  // namespace

ExperimentReport cheby_lower_check(const FunctionFamily& family, int k, double c, const Caps& caps) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("scale c must lie in (0,1)");
    if (k < 1 || k > family.n()) throw std::invalid_argument("level out of range");

    const std::vector<FourierExpansion> members = closure_members(family, caps);
    double mk = 0.0;
    double mk_next = 0.0;
    for (const FourierExpansion& fe : members) {
        mk = std::max(mk, level_abs_sum(fe, k, caps).mk);
        if (k + 1 <= fe.n) mk_next = std::max(mk_next, level_abs_sum(fe, k + 1, caps).mk);
    }

    const bool hypothesis =
        c <= 1.0 / 3.0 + 1e-12 &&
        (mk_next <= 0.0 || c <= std::pow(3.0, -k) * mk / mk_next + 1e-12);

    ExperimentReport report;
    report.name = "cheby_lower_check";
    report.config = {{"n", family.n()}, {"k", k}, {"c", c}, {"family", family.descriptor()}};
    report.quantities = {{"mk", mk}, {"mk_next", mk_next}, {"hypothesis_status", "verified-exact"}};
    if (!hypothesis) {
        report.quantities["hypothesis_status"] = "violated";
        report.status = ExperimentReport::Status::not_applicable;
        return report;
    }

    double eps = 0.0;
    for (const FourierExpansion& fe : members)
        eps = std::max(eps, best_lowdeg_approx(fe, k, c, caps).eps_lp);
    const double rhs = std::pow(c / 2.0, k) * mk;
    report.quantities["eps_lp"] = eps;
    report.quantities["rhs"] = rhs;
    report.status =
        eps >= rhs - 1e-9 ? ExperimentReport::Status::pass : ExperimentReport::Status::fail;
    return report;
}

std::vector<double> chebyshev_monic_coefficients(int d) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    std::vector<double> prev{1.0};        // T_0
    std::vector<double> curr{0.0, 1.0};   // T_1
    for (int deg = 2; deg <= d; ++deg) {
        std::vector<double> next(static_cast<std::size_t>(deg) + 1, 0.0);
        for (std::size_t i = 0; i < curr.size(); ++i) next[i + 1] += 2.0 * curr[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(curr);
        curr = std::move(next);
    }
    std::vector<double> monic(curr.begin(), curr.end());
    const double scale = std::pow(2.0, 1 - d);
    for (double& v : monic) v *= scale;
    return monic;
}

ExperimentReport monic_chebyshev_check(int d) {
    if (d < 1 || d > 8) throw std::invalid_argument("degree must lie in [1, 8]");
    const int grid = 4097;
    std::vector<double> points(static_cast<std::size_t>(grid));
    for (int j = 0; j < grid; ++j)
        points[static_cast<std::size_t>(j)] =
            std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid - 1));

    const int nrows = d + 1;
    const int ncols = 2 * grid;
    std::vector<double> A(static_cast<std::size_t>(nrows) * ncols, 0.0);
    std::vector<double> b(static_cast<std::size_t>(nrows), 0.0);
    std::vector<double> cost(static_cast<std::size_t>(ncols), 0.0);
    b[static_cast<std::size_t>(d)] = 1.0;
    for (int j = 0; j < grid; ++j) {
        const double t = points[static_cast<std::size_t>(j)];
        const double target = std::pow(t, d);
        cost[static_cast<std::size_t>(2 * j)] = -target;
        cost[static_cast<std::size_t>(2 * j) + 1] = target;
        double power = 1.0;
        for (int row = 0; row < d; ++row) {
            A[static_cast<std::size_t>(row) * ncols + 2 * j] = power;
            A[static_cast<std::size_t>(row) * ncols + 2 * j + 1] = -power;
            power *= t;
        }
        A[static_cast<std::size_t>(d) * ncols + 2 * j] = 1.0;
        A[static_cast<std::size_t>(d) * ncols + 2 * j + 1] = 1.0;
    }
    const lp::Result solved = lp::maximize(A, nrows, ncols, b, cost);
    if (solved.status != lp::Status::optimal)
        throw std::runtime_error("univariate minimax LP did not reach an optimum");

    const double expected = std::pow(2.0, 1 - d);
    // monic optimizer: x^d minus the recovered best approximant
    std::vector<double> monic(static_cast<std::size_t>(d) + 1, 0.0);
    monic[static_cast<std::size_t>(d)] = 1.0;
    for (int row = 0; row < d; ++row) monic[static_cast<std::size_t>(row)] = solved.y[static_cast<std::size_t>(row)];
    const std::vector<double> reference = chebyshev_monic_coefficients(d);
    double coeff_gap = 0.0;
    for (std::size_t i = 0; i < monic.size(); ++i)
        coeff_gap = std::max(coeff_gap, std::fabs(monic[i] - reference[i]));

    ExperimentReport report;
    report.name = "monic_chebyshev_check";
    report.config = {{"d", d}, {"grid", grid}};
    report.quantities = {{"lp_value", solved.objective},
                         {"expected", expected},
                         {"value_gap", std::fabs(solved.objective - expected)},
                         {"coeff_gap", coeff_gap}};
    report.mode = "grid(4097)";
    report.status = (std::fabs(solved.objective - expected) <= 1e-4 && coeff_gap <= 1e-3)
                        ? ExperimentReport::Status::pass
                        : ExperimentReport::Status::fail;
    return report;
}

std::vector<CoordinateLaw> restriction_decompose(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("offset and scale dimensions differ");
    std::vector<CoordinateLaw> laws(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] < -1e-12 || std::fabs(a[i]) + b[i] > 1.0 + 1e-12)
            throw std::invalid_argument("recentering requires |a_i| + b_i <= 1 and b_i >= 0");
        laws[i].p_plus = (1.0 + a[i] - b[i]) / 2.0;
        laws[i].p_minus = (1.0 - a[i] - b[i]) / 2.0;
        laws[i].p_free = b[i];
    }
    return laws;
}

FourierExpansion recentering_average(const FourierExpansion& fe, std::span<const double> a,
                                     std::span<const double> b) {
    if (static_cast<int>(a.size()) != fe.n) throw std::invalid_argument("dimension mismatch");
    const std::vector<CoordinateLaw> laws = restriction_decompose(a, b);
    FourierExpansion acc = FourierExpansion::zeros(fe.n);
    const std::uint64_t total = restriction_count(fe.n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const Restriction rho = decode_restriction(fe.n, idx);
        double weight = 1.0;
        for (int i = 0; i < fe.n && weight != 0.0; ++i) {
            const CoordinateLaw& law = laws[static_cast<std::size_t>(i)];
            switch (rho.assignment[static_cast<std::size_t>(i)]) {
                case Restriction::kFree: weight *= law.p_free; break;
                case +1: weight *= law.p_plus; break;
                default: weight *= law.p_minus; break;
            }
        }
        if (weight == 0.0) continue;
        const FourierExpansion restricted = apply_restriction(fe, rho);
        for (std::uint32_t m = 0; m < acc.size(); ++m) acc.coeffs[m] += weight * restricted.coeffs[m];
    }
    return acc;
}

}  // namespace polarwalk
