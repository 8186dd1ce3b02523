#include "chainnorm/simplex_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chainnorm {

DenseSimplex::DenseSimplex(int rows, int cols)
    : rows_(rows), cols_(cols), stride_(static_cast<size_t>(cols) + 1) {
    tab_.assign(static_cast<size_t>(rows) * stride_, 0.0);
    cost_.assign(static_cast<size_t>(cols), 0.0);
}

LpResult DenseSimplex::solve(const std::vector<int>& basis_in, double tol) {
    if (static_cast<int>(basis_in.size()) != rows_)
        throw std::invalid_argument("simplex: basis size must equal the row count");
    std::vector<int> basis = basis_in;

    // Reduce the tableau with respect to the starting basis.
    for (int i = 0; i < rows_; ++i) {
        double* row = &tab_[static_cast<size_t>(i) * stride_];
        double piv = row[basis[static_cast<size_t>(i)]];
        if (std::abs(piv) < tol)
            throw std::invalid_argument("simplex: starting basis is singular");
        if (piv != 1.0)
            for (size_t j = 0; j <= static_cast<size_t>(cols_); ++j) row[j] /= piv;
        for (int r = 0; r < rows_; ++r) {
            if (r == i) continue;
            double* other = &tab_[static_cast<size_t>(r) * stride_];
            double f = other[basis[static_cast<size_t>(i)]];
            if (f == 0.0) continue;
            for (size_t j = 0; j <= static_cast<size_t>(cols_); ++j) other[j] -= f * row[j];
        }
    }
    for (int i = 0; i < rows_; ++i) {
        if (rhs(i) < -1e-7)
            throw std::invalid_argument("simplex: starting basis is infeasible");
        if (rhs(i) < 0.0) rhs(i) = 0.0;
    }

    // Reduced-cost row.
    std::vector<double> red = cost_;
    double objective = 0.0;
    for (int i = 0; i < rows_; ++i) {
        double cb = cost_[static_cast<size_t>(basis[static_cast<size_t>(i)])];
        if (cb == 0.0) continue;
        const double* row = &tab_[static_cast<size_t>(i) * stride_];
        for (int j = 0; j < cols_; ++j) red[static_cast<size_t>(j)] -= cb * row[j];
        objective += cb * row[cols_];
    }

    LpResult result;
    while (true) {
        // Bland: first column with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < cols_; ++j)
            if (red[static_cast<size_t>(j)] < -tol) {
                enter = j;
                break;
            }
        if (enter < 0) break;

        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < rows_; ++i) {
            double aij = tab_[static_cast<size_t>(i) * stride_ + enter];
            if (aij <= tol) continue;
            double ratio = tab_[static_cast<size_t>(i) * stride_ + cols_] / aij;
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && leave >= 0 &&
                 basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0) {
            result.status = LpResult::Status::unbounded;
            return result;
        }

        // Pivot on (leave, enter).
        double* prow = &tab_[static_cast<size_t>(leave) * stride_];
        double piv = prow[enter];
        for (size_t j = 0; j <= static_cast<size_t>(cols_); ++j) prow[j] /= piv;
        for (int r = 0; r < rows_; ++r) {
            if (r == leave) continue;
            double* row = &tab_[static_cast<size_t>(r) * stride_];
            double f = row[enter];
            if (f == 0.0) continue;
            for (size_t j = 0; j <= static_cast<size_t>(cols_); ++j) row[j] -= f * prow[j];
            row[enter] = 0.0;
        }
        double rf = red[static_cast<size_t>(enter)];
        if (rf != 0.0) {
            for (int j = 0; j < cols_; ++j) red[static_cast<size_t>(j)] -= rf * prow[j];
            objective -= rf * prow[cols_];
            red[static_cast<size_t>(enter)] = 0.0;
        }
        basis[static_cast<size_t>(leave)] = enter;
    }

    result.x.assign(static_cast<size_t>(cols_), 0.0);
    for (int i = 0; i < rows_; ++i) {
        double v = tab_[static_cast<size_t>(i) * stride_ + cols_];
        result.x[static_cast<size_t>(basis[static_cast<size_t>(i)])] = std::max(0.0, v);
    }
    double obj = 0.0;
    for (int j = 0; j < cols_; ++j) obj += cost_[static_cast<size_t>(j)] * result.x[static_cast<size_t>(j)];
    result.objective = obj;
    return result;
}

}  // namespace chainnorm
