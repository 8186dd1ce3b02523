#pragma once

#include "chainnorm/chain.hpp"
#include "chainnorm/forms.hpp"
#include "chainnorm/norm_bounds.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace chainnorm {

/// Description of a curve family with a polyline parameterization.
struct CurveSpec {
    enum class Kind { koch, harrison, spiral, polyline };

    Kind kind = Kind::polyline;
    int ambient = 2;
    bool closed = false;
    double orientation = 1.0;

    // koch: generator segment count and scale (only 4 and 1/3 are generated)
    int generator_count = 4;
    double generator_scale = 1.0 / 3.0;

    // spiral: number of axis crossings used by the parameterization
    int spiral_crossings = 12;

    // polyline: explicit vertices
    std::vector<Vec> points;

    /// Similarity dimension log(count)/log(1/scale) for self-similar kinds.
    std::optional<double> similarity_dimension() const;

    /// Polyline sampling of the curve fine enough for a grid of side `h`.
    std::vector<Vec> polyline_for_grid(double h) const;

    static CurveSpec koch_arc();
    static CurveSpec harrison_curve();
    static CurveSpec spiral(int crossings);
    static CurveSpec from_points(std::vector<Vec> pts, bool closed);
};

/// Koch curve on the unit interval: 4^k segments of length 3^-k.
/// Levels above 12 are rejected.
SimplicialChain koch_chain(int level);

/// Vertices of the Koch polyline at the given level.
std::vector<Vec> koch_polyline(int level);

/// Koch snowflake region at the given level: base triangle plus all bump
/// triangles, oriented so the boundary is the snowflake curve.
SimplicialChain koch_snowflake_region(int level);

/// Region between the Koch arc and the unit base segment (the spike
/// triangles only); its boundary is koch_chain(level) minus the base segment.
SimplicialChain koch_spike_region(int level);

/// Dyadic-lattice approximator: sample the spec's polyline at its crossings
/// of the grid of side 2^-k, snap to grid vertices (round half toward the
/// origin), connect consecutive snapped points, drop zero-length segments.
/// Commutes with the boundary operator on arcs.  k above 14 is rejected.
SimplicialChain binary_approximator(const CurveSpec& spec, int k);

/// Spiral arc through x-axis crossings x_j = 1/sqrt(j), j = 1..k, alternating
/// half-planes, each semicircle as 8 chords of a 16-gon.  Requires k >= 2.
SimplicialChain spiral_chain(int k);

struct ApproximatorSequence {
    CurveSpec spec;
    std::vector<std::pair<int, SimplicialChain>> levels;
};

ApproximatorSequence koch_sequence(int max_level);
ApproximatorSequence spiral_sequence(int max_crossings);

struct LimitDiagnostics {
    enum class Verdict { converged, diverged, undecided };

    double value = 0.0;
    std::vector<double> integrals;
    std::vector<double> deltas;
    double fitted_ratio = 0.0;
    bool deltas_decreasing = false;
    bool cauchy = false;
    Verdict verdict = Verdict::undecided;
};

/// Integrals along the sequence plus convergence diagnostics.  The ratio is
/// a least-squares fit on the log-deltas of the last four levels; the run is
/// Cauchy when the deltas decrease and the ratio stays under 0.8, and
/// converged when additionally the final delta is within `tol`.
LimitDiagnostics limit_integral(const PolynomialForm& form, const ApproximatorSequence& seq,
                                double tol);

/// Least-squares slope of log N(eps) against log(1/eps) over dyadic grids
/// 2^-j for j in [j_min, j_max]; N counts occupied boxes.
double box_dimension_estimate(const SimplicialChain& chain, int j_min, int j_max);

/// Self-similar closed curve in the unit cube built from 11 replicas at
/// scale 1/3 per level, together with a natural-norm witness for lambda = 3:
/// per-plane spanning surfaces (projection curtains plus winding-number
/// fills) and pair surfaces filled by lattice tetrahedra.
struct HarrisonCurve {
    SimplicialChain chain;
    SpanningWitness witness;
    double lattice_pitch = 0.0;
};

/// Supported levels: 1, 2, 3.
HarrisonCurve harrison_curve_chain(int level);

/// Complex assembled from the witness cells (2-cells of all C_i, 3-cells of
/// all D_ij, and the curve's own segments), with warm-start hints.
SpanningComplex harrison_witness_complex(int level);

}  // namespace chainnorm
