#include "polarwalk/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace polarwalk::lp {

namespace {

constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;

class Tableau {
public:
    Tableau(const std::vector<double>& A, int nrows, int ncols, const std::vector<double>& b)
        : m_(nrows), n_(ncols), width_(ncols + nrows + 1) {
        rows_.assign(static_cast<std::size_t>(m_ + 1) * width_, 0.0);
        basis_.resize(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            const double flip = b[static_cast<std::size_t>(i)] < 0.0 ? -1.0 : 1.0;
            double* row = row_ptr(i);
            for (int j = 0; j < n_; ++j)
                row[j] = flip * A[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
            row[n_ + i] = 1.0;  // artificial
            row[width_ - 1] = flip * b[static_cast<std::size_t>(i)];
            basis_[static_cast<std::size_t>(i)] = n_ + i;
        }
    }

    double* row_ptr(int i) { return rows_.data() + static_cast<std::size_t>(i) * width_; }
    const double* row_ptr(int i) const { return rows_.data() + static_cast<std::size_t>(i) * width_; }
    double* obj() { return row_ptr(m_); }
    double rhs(int i) const { return row_ptr(i)[width_ - 1]; }

    // obj row <- sum_i cost(basis[i]) * row_i - cost; artificial entries end
    // up holding the row multipliers.
    void load_objective(const std::vector<double>& cost, bool artificial_phase) {
        double* obj_row = obj();
        for (int j = 0; j < width_; ++j) obj_row[j] = 0.0;
        for (int j = 0; j < n_ && !artificial_phase; ++j) obj_row[j] = -cost[static_cast<std::size_t>(j)];
        if (artificial_phase)
            for (int k = 0; k < m_; ++k) obj_row[n_ + k] = 1.0;  // cost -1, negated
        for (int i = 0; i < m_; ++i) {
            const double c_b = basic_cost(cost, artificial_phase, basis_[static_cast<std::size_t>(i)]);
            if (c_b == 0.0) continue;
            const double* row = row_ptr(i);
            for (int j = 0; j < width_; ++j) obj_row[j] += c_b * row[j];
        }
    }

    Status run(bool artificial_phase) {
        const long max_iters = 20000 + 50L * (m_ + n_);
        for (long iter = 0; iter < max_iters; ++iter) {
            const bool bland = iter > 2000 + 10L * (m_ + n_);
            const int entering = pick_entering(artificial_phase, bland);
            if (entering < 0) return Status::optimal;
            const int leaving = pick_leaving(entering);
            if (leaving < 0) return Status::unbounded;
            pivot(leaving, entering);
        }
        return Status::iteration_limit;
    }

    double objective_value() const { return row_ptr(m_)[width_ - 1]; }

    void extract(Result* out) const {
        out->x.assign(static_cast<std::size_t>(n_), 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[static_cast<std::size_t>(i)] < n_)
                out->x[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = rhs(i);
        out->y.assign(static_cast<std::size_t>(m_), 0.0);
        const double* obj_row = row_ptr(m_);
        for (int k = 0; k < m_; ++k) out->y[static_cast<std::size_t>(k)] = obj_row[n_ + k];
        out->objective = objective_value();
    }

    bool artificial_basic_positive() const {
        for (int i = 0; i < m_; ++i)
            if (basis_[static_cast<std::size_t>(i)] >= n_ && rhs(i) > 1e-7) return true;
        return false;
    }

    // Pivots zero-level artificials out of the basis so phase 2 cannot grow
    // them. Rows with no real-column support are redundant and stay put; they
    // are invariant under later pivots.
    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < n_) continue;
            const double* row = row_ptr(i);
            int column = -1;
            for (int j = 0; j < n_; ++j) {
                if (std::fabs(row[j]) > kPivotTol) {
                    column = j;
                    break;
                }
            }
            if (column >= 0) pivot(i, column);
        }
    }

private:
    static double basic_cost(const std::vector<double>& cost, bool artificial_phase, int column) {
        if (artificial_phase) return column >= static_cast<int>(cost.size()) ? -1.0 : 0.0;
        return column < static_cast<int>(cost.size()) ? cost[static_cast<std::size_t>(column)] : 0.0;
    }

    int pick_entering(bool artificial_phase, bool bland) const {
        const double* obj_row = row_ptr(m_);
        const int limit = artificial_phase ? width_ - 1 : n_;  // artificials never re-enter in phase 2
        int best = -1;
        double best_value = -kCostTol;
        for (int j = 0; j < limit; ++j) {
            if (obj_row[j] < best_value) {
                if (bland) return j;
                best_value = obj_row[j];
                best = j;
            }
        }
        return best;
    }

    int pick_leaving(int entering) const {
        int best = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m_; ++i) {
            const double a = row_ptr(i)[entering];
            if (a <= kPivotTol) continue;
            const double ratio = rhs(i) / a;
            if (best < 0 || ratio < best_ratio - 1e-12 ||
                (std::fabs(ratio - best_ratio) <= 1e-12 &&
                 basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(best)])) {
                best = i;
                best_ratio = ratio;
            }
        }
        return best;
    }

    void pivot(int leaving, int entering) {
        double* prow = row_ptr(leaving);
        const double inv = 1.0 / prow[entering];
        for (int j = 0; j < width_; ++j) prow[j] *= inv;
        prow[entering] = 1.0;
        for (int i = 0; i <= m_; ++i) {
            if (i == leaving) continue;
            double* row = row_ptr(i);
            const double factor = row[entering];
            if (factor == 0.0) continue;
            for (int j = 0; j < width_; ++j) row[j] -= factor * prow[j];
            row[entering] = 0.0;
        }
        basis_[static_cast<std::size_t>(leaving)] = entering;
    }

    int m_;
    int n_;
    int width_;
    std::vector<double> rows_;
    std::vector<int> basis_;
};

}  // namespace

Result maximize(const std::vector<double>& A, int nrows, int ncols, const std::vector<double>& b,
                const std::vector<double>& c) {
    if (nrows <= 0 || ncols <= 0 || A.size() != static_cast<std::size_t>(nrows) * ncols ||
        b.size() != static_cast<std::size_t>(nrows) || c.size() != static_cast<std::size_t>(ncols))
        throw std::invalid_argument("simplex: inconsistent dimensions");

    Tableau tableau(A, nrows, ncols, b);
    Result result;

    tableau.load_objective(c, /*artificial_phase=*/true);
    Status status = tableau.run(/*artificial_phase=*/true);
    if (status != Status::optimal) {
        result.status = status;
        return result;
    }
    if (tableau.objective_value() < -1e-7 || tableau.artificial_basic_positive()) {
        result.status = Status::infeasible;
        return result;
    }
    tableau.drive_out_artificials();

    tableau.load_objective(c, /*artificial_phase=*/false);
    status = tableau.run(/*artificial_phase=*/false);
    result.status = status;
    if (status == Status::optimal) tableau.extract(&result);
    return result;
}

}  // namespace polarwalk::lp
