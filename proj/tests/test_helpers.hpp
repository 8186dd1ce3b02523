#pragma once

#include "chainnorm/chain.hpp"
#include "chainnorm/shapes.hpp"

#include <cmath>

namespace chainnorm::testing {

inline Vec pt2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

inline Vec pt3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}

inline SimplicialChain segment_chain(const Vec& a, const Vec& b, double coef = 1.0) {
    SimplicialChain c(1, static_cast<int>(a.size()));
    c.add_term(coef, OrientedSimplex({a, b}));
    return c;
}

// total |coef| * mass, with no exactness bookkeeping (test-side oracle)
inline double raw_mass(const SimplicialChain& chain) {
    double total = 0.0;
    for (const auto& t : chain.terms()) total += std::abs(t.coef) * t.simplex.mass();
    return total;
}

}  // namespace chainnorm::testing
