#pragma once

#include "chainnorm/chain.hpp"
#include "chainnorm/complex.hpp"
#include "chainnorm/forms.hpp"

#include <cstdint>

namespace chainnorm {

/// Positively oriented unit square [0,1]^2 as two triangles.
SimplicialChain unit_square_chain();

/// Rectangle [x0,x1] x [y0,y1] as two triangles; `orientation` +1 for CCW.
SimplicialChain rect_chain(double x0, double x1, double y0, double y1, double orientation = 1.0);

/// Boundary of the regular `sides`-gon inscribed in the circle of the given
/// radius, each polygon edge split into `subdiv` collinear segments.
SimplicialChain regular_polygon_chain(int sides, int subdiv = 1, double radius = 1.0);

/// Fan triangulation of the regular polygon disk: sides*subdiv triangles from
/// the origin, with rim vertices matching regular_polygon_chain(sides, subdiv).
SpanningComplex fan_disk_complex(int sides, int subdiv = 1, double radius = 1.0);

/// Portable deterministic RNG (splitmix-style) for test-case generation;
/// uniform in [0,1).
class PortableRng {
public:
    explicit PortableRng(uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}
    uint64_t next_u64();
    double uniform();
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);  // inclusive

private:
    uint64_t state_;
};

/// Random chain with coordinates snapped to a 1/8 grid in [-1,1]^m.
SimplicialChain random_chain(PortableRng& rng, int n, int m, int max_terms = 4);

/// Random polynomial form of the given degree with total polynomial degree
/// <= max_poly_degree and small integer-ish coefficients.
PolynomialForm random_form(PortableRng& rng, int degree, int ambient, int max_poly_degree = 3);

}  // namespace chainnorm
