#pragma once

#include <vector>

namespace chainnorm {

/// Result of a linear program solve.
struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::optimal;
    double objective = 0.0;
    std::vector<double> x;
};

/// Dense primal simplex for  min c^T z  s.t.  A z = b, z >= 0.
///
/// `basis` names one column per row forming a feasible starting basis (the
/// callers construct split-variable programs where unit columns with b >= 0
/// are available by inspection).  Pivoting is Bland's rule: entering column
/// is the lowest index with negative reduced cost, leaving row breaks ratio
/// ties by the lowest basis index, so the solve is deterministic and cannot
/// cycle.
class DenseSimplex {
public:
    DenseSimplex(int rows, int cols);

    double& a(int row, int col) { return tab_[static_cast<size_t>(row) * stride_ + col]; }
    double& rhs(int row) { return tab_[static_cast<size_t>(row) * stride_ + cols_]; }
    double& cost(int col) { return cost_[static_cast<size_t>(col)]; }

    LpResult solve(const std::vector<int>& basis, double tol = 1e-10);

private:
    int rows_;
    int cols_;
    size_t stride_;
    std::vector<double> tab_;   // rows_ x (cols_+1)
    std::vector<double> cost_;  // cols_
};

}  // namespace chainnorm
