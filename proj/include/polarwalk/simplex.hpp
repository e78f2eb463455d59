#pragma once

#include <vector>

namespace polarwalk::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Result {
    Status status = Status::optimal;
    double objective = 0.0;
    std::vector<double> x;  // primal solution, length ncols
    std::vector<double> y;  // row multipliers c_B B^{-1}, length nrows
};

// Maximize c'x subject to A x = b, x >= 0, via a dense two-phase simplex.
// A is row-major with nrows * ncols entries. Small instances only; the
// multipliers y solve the dual, which is how the approximation code recovers
// optimal polynomials from the compact dual formulation.
Result maximize(const std::vector<double>& A, int nrows, int ncols, const std::vector<double>& b,
                const std::vector<double>& c);

}  // namespace polarwalk::lp
