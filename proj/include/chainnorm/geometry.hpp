#pragma once

#include <Eigen/Dense>
#include <vector>
#include <cstdint>
#include <string>

namespace chainnorm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// An oriented n-simplex in R^m, stored as an ordered list of n+1 vertices.
/// The vertex order fixes the orientation; an odd permutation of the
/// vertices represents the same pointset with opposite sign.
class OrientedSimplex {
public:
    OrientedSimplex(std::vector<Vec> vertices);

    int n() const { return static_cast<int>(verts_.size()) - 1; }
    int m() const { return static_cast<int>(verts_[0].size()); }
    const std::vector<Vec>& vertices() const { return verts_; }
    const Vec& vertex(int i) const { return verts_[static_cast<size_t>(i)]; }

    /// Edge matrix [p_1-p_0, ..., p_n-p_0], m x n.
    Mat edge_matrix() const;

    /// n-dimensional volume sqrt(det(E^T E)) / n!.  Zero for degenerate
    /// simplices.  A 0-simplex has mass 1.
    double mass() const;

    /// True when the edge vectors are linearly dependent, tested via the
    /// scale-relative rule mass < 1e-12 * (max edge length)^n.
    bool degenerate() const;

    double max_edge_length() const;

    OrientedSimplex reversed() const;
    OrientedSimplex with_vertices_swapped(int i, int j) const;

    /// Vertices sorted lexicographically by coordinates; `sign` receives the
    /// permutation parity (+1/-1).  Canonical form is the merge key for
    /// chain terms.
    OrientedSimplex canonical(int& sign) const;

    /// Lexicographic comparison key (flattened vertex coordinates).
    std::vector<double> flat_key() const;

private:
    std::vector<Vec> verts_;
};

OrientedSimplex make_simplex(std::initializer_list<std::initializer_list<double>> pts);

/// Lexicographically ordered n-element subsets of {0,...,m-1}; these are the
/// coordinate n-planes of R^m, N = C(m,n) of them.
std::vector<std::vector<int>> coordinate_planes(int m, int n);

long long binomial(int m, int n);

/// Signed area of a 2D triangle (a,b,c).
double signed_area_2d(const Vec& a, const Vec& b, const Vec& c);

/// Point-in-triangle test in 2D with a tolerance on barycentric coordinates.
bool point_in_triangle_2d(const Vec& p, const Vec& a, const Vec& b, const Vec& c,
                          double tol = 1e-12);

}  // namespace chainnorm
