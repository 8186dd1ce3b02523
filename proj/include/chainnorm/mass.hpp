#pragma once

#include "chainnorm/chain.hpp"

#include <optional>

namespace chainnorm {

/// A computed mass or norm value.  `exact` means the value is realized by
/// the representative (reduced chain or pairwise non-overlapping terms);
/// otherwise the value is an upper bound over representatives.
struct MassValue {
    enum class Kind { exact, upper_bound };

    double value = 0.0;
    Kind kind = Kind::exact;
    double lambda = 0.0;
    std::optional<int> plane;

    bool exact() const { return kind == Kind::exact; }
};

/// n-mass: sum of |a_i| M_n(sigma_i) over the terms.
MassValue mass(const SimplicialChain& chain);

/// Projected lambda-mass for the `plane`-th coordinate n-plane (0-based)
/// with 0 <= lambda <= n: sum of |a_i| (M_n(pi sigma_i))^(lambda/n) after
/// reducing the projection where the refinement machinery supports it.
MassValue projected_mass(const SimplicialChain& chain, int plane, double lambda);

/// Base-case natural norm (0 <= lambda <= n): sum of the projected
/// lambda-masses over all coordinate n-planes.
MassValue natural_norm_base(const SimplicialChain& chain, double lambda);

/// True when the chain's terms have pairwise measure-zero intersections
/// (checked for n <= 2 and at most `limit` terms; false otherwise).
bool pairwise_disjoint(const SimplicialChain& chain, size_t limit = 512);

}  // namespace chainnorm
