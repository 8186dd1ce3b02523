#pragma once

#include "chainnorm/chain.hpp"

#include <vector>

namespace chainnorm {

/// One line of a 1-chain arrangement: anchor + unit direction (canonical
/// sign) and the sorted breakpoint parameters along it.
struct LineArrangement {
    Vec anchor;
    Vec direction;
    std::vector<double> breakpoints;
};

/// One plane of a coplanar 2-chain arrangement: an orthonormal frame and the
/// triangulated cells in frame coordinates (all CCW).
struct PlaneArrangement {
    Vec origin;
    Vec u;
    Vec v;
    std::vector<std::array<Vec, 3>> cells;  // 2D coordinates
};

/// Common refinement complex produced by refine(); supports 1-chains on
/// shared lines and coplanar 2-chains.
struct RefinementComplex {
    int n = 0;
    int m = 0;
    std::vector<LineArrangement> lines;    // n == 1
    std::vector<PlaneArrangement> planes;  // n == 2

    size_t cell_count() const;
};

/// Build a simplicial complex on which both chains are representable.
/// Supported: n == 1 (segment arrangements on shared lines) and n == 2 with
/// all terms coplanar per plane group.  Other inputs are rejected.
RefinementComplex refine(const SimplicialChain& a, const SimplicialChain& b);
RefinementComplex refine(const SimplicialChain& a);

/// Rewrite the chain on the cells of the refinement, summing coefficients
/// with orientation signs and dropping zeros.  Throws if some term is not
/// representable on the complex.
SimplicialChain reduce(const SimplicialChain& chain, const RefinementComplex& complex);

/// Convenience: reduce on the chain's own arrangement.
SimplicialChain reduce(const SimplicialChain& chain);

/// True when chains of this shape can be refined (n == 1 always; n == 2 if
/// terms fall into affine-plane groups).
bool reducible(const SimplicialChain& chain);

}  // namespace chainnorm
