#pragma once

#include "chainnorm/chain.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chainnorm {

/// A finite complex of oriented simplices organized by dimension, carrying
/// the integer incidence (boundary) matrices between consecutive levels.
/// Used as the search space for flat-norm and natural-norm optimization.
class SpanningComplex {
public:
    struct Entry {
        int row;
        int sign;  // -1 or +1
    };

    SpanningComplex(int m, int base_dim);

    /// Build from explicit cell lists per dimension; missing lower
    /// dimensions down to base_dim are derived as faces.
    static SpanningComplex from_cells(int m, int base_dim,
                                      const std::map<int, std::vector<OrientedSimplex>>& cells);

    int m() const { return m_; }
    int base_dim() const { return base_dim_; }
    int top_dim() const { return base_dim_ + static_cast<int>(levels_.size()) - 1; }
    bool has_dim(int dim) const;
    const std::vector<OrientedSimplex>& cells(int dim) const;

    /// Column-major incidence of the (dim+1) -> dim boundary: for each
    /// (dim+1)-cell, the rows and signs of its dim-faces.
    const std::vector<std::vector<Entry>>& incidence(int dim) const;

    /// Coefficient vector for a chain on the cells of its dimension.  Terms
    /// are matched to single cells modulo orientation, or covered geometrically
    /// by collinear/coplanar cells; throws if some term cannot be expressed.
    std::vector<double> express(const SimplicialChain& chain) const;

    SimplicialChain chain_from_coefficients(int dim, const std::vector<double>& coef) const;

    /// Boundary coefficients: result[row over dim-cells] of d(coef on dim+1).
    std::vector<double> apply_incidence(int dim, const std::vector<double>& coef) const;

    std::vector<double> cell_masses(int dim) const;
    /// Projected masses of each dim-cell onto coordinate plane `plane` of
    /// that dimension, raised to `exponent`.
    std::vector<double> projected_cell_masses(int dim, int plane, double exponent) const;

    /// Optional warm-start coefficient vectors recorded by constructions
    /// (keyed by name, on the cells of `dim`).
    void add_hint(const std::string& name, int dim, const std::vector<double>& coef);
    const std::map<std::string, std::pair<int, std::vector<double>>>& hints() const {
        return hints_;
    }

    /// Validates that consecutive incidence matrices compose to zero.
    bool boundary_squares_to_zero() const;

    void append_cell(int dim, const OrientedSimplex& cell);
    /// Recomputes face levels and incidence after appending cells.
    void finalize();

private:
    int m_;
    int base_dim_;
    std::vector<std::vector<OrientedSimplex>> levels_;          // [dim - base_dim]
    std::vector<std::map<std::vector<double>, int>> index_;     // canonical key -> cell id
    std::vector<std::vector<std::vector<Entry>>> incidence_;    // per upper level, per cell
    std::map<std::string, std::pair<int, std::vector<double>>> hints_;

    int level_of(int dim) const;
    int find_cell(int dim, const OrientedSimplex& simplex, int& sign) const;
};

}  // namespace chainnorm
