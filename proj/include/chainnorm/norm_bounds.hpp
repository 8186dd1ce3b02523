#pragma once

#include "chainnorm/chain.hpp"
#include "chainnorm/complex.hpp"
#include "chainnorm/forms.hpp"
#include "chainnorm/mass.hpp"

#include <vector>

namespace chainnorm {

/// Recursive tree of candidate spanning chains: one (n+1)-chain per
/// coordinate n-plane, each optionally carrying a witness for its own
/// norm evaluation one level up.
struct SpanningWitness {
    struct PlaneEntry {
        SimplicialChain chain;
        std::vector<SpanningWitness> children;  // children[0] evaluates `chain`
    };

    double lambda = 0.0;
    std::vector<PlaneEntry> planes;

    int depth() const;
};

/// A certified upper bound of a chain norm together with the witness that
/// realizes it and the per-plane residual masses M_{n,pi_i}(A - dC_i).
struct NormBound {
    enum class Kind { flat, natural };

    Kind kind = Kind::flat;
    double value = 0.0;
    double lambda = 0.0;
    SpanningWitness witness;
    std::vector<double> residual_masses;
    std::vector<double> per_plane_values;  // natural bounds only
};

/// Witness with C = 0 on every coordinate n-plane of an n-chain.
SpanningWitness zero_witness(const SimplicialChain& chain, double lambda);

/// Upper bound of Whitney's flat norm relative to the complex: minimizes
/// M_n(A - dC) + M_{n+1}(C) over real coefficients on K's (n+1)-cells by a
/// split-variable LP.  Exact relative to K.
NormBound flat_norm_bound(const SimplicialChain& chain, const SpanningComplex& complex);

/// Evaluates the recursive natural-norm expression
///   sum_i [ M_{n,pi_i}(A - dC_i) + |C_i|_lambda ]
/// on an explicit witness tree; the recursion bottoms out in the base-case
/// norm once lambda <= chain dimension.  Missing children mean C = 0.
NormBound natural_norm_eval(const SimplicialChain& chain, double lambda,
                            const SpanningWitness& witness);

/// Searches K for a good witness.  For lambda <= n+1 each per-plane problem
/// is a linear program solved exactly; for n+1 < lambda <= n+2 the
/// (n+1)-coefficients are searched over {-1,0,1} by greedy descent with
/// `budget` restarts around exact inner LPs.  The returned value is the
/// evaluation of the best witness found, never above the C = 0 evaluation
/// or the evaluation of an optional seed witness.
NormBound natural_norm_search(const SimplicialChain& chain, double lambda,
                              const SpanningComplex& complex, int budget,
                              const SpanningWitness* seed = nullptr);

/// M_n(A - dC) |omega|_0 + M_{n+1}(C) |domega|_0, an upper bound for
/// |integral of omega over A| by the Stokes argument.
double whitney_integral_bound(const SimplicialChain& chain, const SimplicialChain& spanning,
                              const PolynomialForm& form);

}  // namespace chainnorm
