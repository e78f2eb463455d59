#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "polarwalk/config.hpp"
#include "polarwalk/family.hpp"
#include "polarwalk/fourier.hpp"
#include "polarwalk/report.hpp"
#include "polarwalk/spectral.hpp"

namespace polarwalk {

// One-dimensional restriction g(t) = f(t * anchor): the coefficient of t^l is
// the level-l part of f evaluated at the anchor, so the k-th derivative at 0
// is k! times that level value.
struct UnivariateRestriction {
    std::vector<double> level_values;  // a_0 .. a_n
    std::vector<double> anchor;

    int degree() const { return static_cast<int>(level_values.size()) - 1; }
    double eval(double t) const;
    double derivative_value(int k, double t) const;      // g^(k)(t)
    std::vector<double> derivative_poly(int k) const;    // coefficients of g^(k)
};

// Sum of all levels >= k of the expansion at x.
double tail_eval(const FourierExpansion& fe, int k, std::span<const double> x);

UnivariateRestriction univariate_restriction(const FourierExpansion& fe, std::span<const double> x);

struct ProbeOptions {
    bool exact = true;             // all 2^n corners of the scaled cube
    std::int64_t samples = 4096;   // corner draws when not exact
    std::uint64_t seed = 1;
};

// Tail bound on the scaled cube: max |f_{>=k}| over {-c,c}^n against
// (c/(1-c))^k times the supplied class level bound.
ExperimentReport taylor_tail_check(const FourierExpansion& fe, int k, double c, double mk_class,
                                   const ProbeOptions& probes = ProbeOptions{},
                                   const Caps& caps = Caps{});

// Derivative bound along one anchor: max over s in [0,1] of |g^(k)(s)|
// against (c/(1-c))^k * k! * mk_class, with the Taylor split of g(1)
// validated against the tail value on the way.
ExperimentReport lagrange_term_check(const FourierExpansion& fe, int k, double c,
                                     std::span<const double> x, int grid_points, double mk_class,
                                     const Caps& caps = Caps{});

// Level rescaling bound: max |f_k| over {-c,c}^n against c^k * mk_class.
ExperimentReport level_scaling_check(const FourierExpansion& fe, int k, double c, double mk_class,
                                     const Caps& caps = Caps{});

struct ApproxResult {
    int k = 0;
    double c = 0.0;
    double eps_lp = 0.0;  // best uniform error of a degree-(k-1) approximant on [-c,c]^n
    std::vector<std::pair<std::uint32_t, double>> approximant;  // monomial mask -> coefficient
    double mk_value = 0.0;       // class level bound the sandwich was computed with
    double taylor_bound = 0.0;   // (c/(1-c))^k * mk_value
    double cheby_lower = 0.0;    // (c/2)^k * mk_value
    bool mk_exact = true;
};

// Solves the uniform-approximation linear program over the corners of
// [-c,c]^n; the corner optimum equals the solid-cube optimum by
// multilinearity. Bound fields are filled by the caller when a class bound
// is available.
ApproxResult best_lowdeg_approx(const FourierExpansion& fe, int k, double c,
                                const Caps& caps = Caps{});

// max over family members of the per-function LP value.
double eps_ck_family(const FunctionFamily& family, int k, double c, const Caps& caps = Caps{});

// Largest c (within tol) whose best degree-(k-1) approximation error over the
// family stays at or below eps; monotonicity in c justifies bisection.
double c_k_search(const FunctionFamily& family, int k, double eps, double tol,
                  const Caps& caps = Caps{});

// Chebyshev-style converse: under the hypothesis on c, the LP optimum is at
// least (c/2)^k times the class level bound. Reports not-applicable when the
// hypothesis fails.
ExperimentReport cheby_lower_check(const FunctionFamily& family, int k, double c,
                                   const Caps& caps = Caps{});

// Minimal sup-norm of a monic degree-d polynomial on [-1,1]: the grid LP must
// return 2^{1-d} and the optimizer must match the scaled Chebyshev polynomial.
ExperimentReport monic_chebyshev_check(int d);

// Monomial coefficients (ascending degree) of the monic minimizer.
std::vector<double> chebyshev_monic_coefficients(int d);

// Per-coordinate three-point law z_i in {+1, -1, free} with mean
// a_i + b_i x_i; requires |a_i| + b_i <= 1. Averaging restrictions of f under
// the product law reproduces f(a + b o x) exactly.
struct CoordinateLaw {
    double p_plus = 0.0;
    double p_minus = 0.0;
    double p_free = 0.0;
};
std::vector<CoordinateLaw> restriction_decompose(std::span<const double> a, std::span<const double> b);

// Exact expectation of the restricted expansions under the product law;
// the identity test compares this to affine_substitute(fe, a, b).
FourierExpansion recentering_average(const FourierExpansion& fe, std::span<const double> a,
                                     std::span<const double> b);

}  // namespace polarwalk
