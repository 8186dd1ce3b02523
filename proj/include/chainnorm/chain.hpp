#pragma once

#include "chainnorm/geometry.hpp"

#include <map>
#include <optional>
#include <vector>

namespace chainnorm {

struct Term {
    double coef;
    OrientedSimplex simplex;
};

/// A finite formal sum of oriented n-simplices in R^m with real coefficients.
/// Degenerate simplices and zero coefficients are dropped on insertion, and
/// terms with the same vertex set are merged (an odd vertex permutation
/// contributes with flipped sign).  Term order is canonical, so all
/// downstream sums are deterministic.
class SimplicialChain {
public:
    SimplicialChain(int n, int m);

    int n() const { return n_; }
    int m() const { return m_; }
    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    void add_term(double coef, const OrientedSimplex& simplex);
    void add_chain(const SimplicialChain& other, double scale = 1.0);

    SimplicialChain operator+(const SimplicialChain& other) const;
    SimplicialChain operator-(const SimplicialChain& other) const;
    SimplicialChain operator*(double scale) const;
    SimplicialChain operator-() const;

    bool was_reduced() const { return reduced_; }
    void mark_reduced() { reduced_ = true; }

    /// Axis-aligned bounding box over all vertices; nullopt for the zero chain.
    std::optional<std::pair<Vec, Vec>> bounding_box() const;

    double coefficient_max() const;

private:
    int n_;
    int m_;
    bool reduced_ = false;
    std::vector<Term> terms_;                       // canonical order
    std::map<std::vector<double>, size_t> index_;   // canonical key -> position
};

/// Alternating-sign sum of vertex-deleted faces, extended linearly.
/// Throws for 0-chains, which have no boundary.
SimplicialChain boundary(const SimplicialChain& chain);

/// Orthogonal projection onto the `plane`-th coordinate n-plane (0-based,
/// planes enumerated by coordinate_planes(m, n)).  The image lives in R^n
/// with the kept axes in increasing order; degenerate images are dropped.
SimplicialChain project(const SimplicialChain& chain, int plane);

OrientedSimplex project_simplex(const OrientedSimplex& simplex, const std::vector<int>& axes);

/// Barycentric subdivision of a single simplex (n <= 2), orientation
/// preserved so the subdivided chain is equivalent to the input.
std::vector<OrientedSimplex> barycentric_subdivision(const OrientedSimplex& simplex);

SimplicialChain scale_coordinates(const SimplicialChain& chain, double factor);

}  // namespace chainnorm
