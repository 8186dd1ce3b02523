#pragma once

#include "chainnorm/chain.hpp"

#include <vector>

namespace chainnorm {

/// Finite step function: disjoint half-open intervals with nonzero values.
struct StepFunction {
    struct Piece {
        double a;
        double b;
        double value;
    };
    std::vector<Piece> pieces;
};

/// The 2-chain under the graph: each rectangle [a,b) x [0,v) split into two
/// positively oriented triangles; negative values sit below the axis with
/// negated orientation.
SimplicialChain chain_from_step_function(const StepFunction& f);

struct LebesgueTriple {
    double closed_form;      // sum of value * length
    double area_integral;    // dx^dy over the region chain
    double boundary_integral;  // the graph integral of y dx, taken left to right
};

/// Closed form, area integral and boundary integral; all three agree.  The
/// boundary integral is computed with the primitive -y dx of dx^dy, which is
/// the graph traversed left to right.
LebesgueTriple lebesgue_consistency(const StepFunction& f);

}  // namespace chainnorm
