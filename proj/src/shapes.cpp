#include "chainnorm/shapes.hpp"

#include <cmath>

namespace chainnorm {

SimplicialChain unit_square_chain() { return rect_chain(0.0, 1.0, 0.0, 1.0); }

SimplicialChain rect_chain(double x0, double x1, double y0, double y1, double orientation) {
    SimplicialChain out(2, 2);
    Vec a(2), b(2), c(2), d(2);
    a << x0, y0;
    b << x1, y0;
    c << x1, y1;
    d << x0, y1;
    // split along the min-max diagonal a-c
    out.add_term(orientation, OrientedSimplex({a, b, c}));
    out.add_term(orientation, OrientedSimplex({a, c, d}));
    return out;
}

namespace {

Vec polygon_rim_point(int sides, int subdiv, double radius, int idx) {
    // vertex `v = idx / subdiv` advanced by (idx % subdiv)/subdiv of an edge;
    // computed identically here and in the fan complex so coordinates match
    // bitwise.
    int total = sides * subdiv;
    idx %= total;
    int v = idx / subdiv;
    int frac = idx % subdiv;
    auto corner = [&](int k) {
        double angle = 2.0 * M_PI * static_cast<double>(k % sides) / static_cast<double>(sides);
        Vec p(2);
        p << radius * std::cos(angle), radius * std::sin(angle);
        return p;
    };
    Vec p0 = corner(v);
    if (frac == 0) return p0;
    Vec p1 = corner(v + 1);
    double t = static_cast<double>(frac) / static_cast<double>(subdiv);
    return p0 + t * (p1 - p0);
}

}  // namespace

SimplicialChain regular_polygon_chain(int sides, int subdiv, double radius) {
    SimplicialChain out(1, 2);
    int total = sides * subdiv;
    for (int i = 0; i < total; ++i)
        out.add_term(1.0, OrientedSimplex({polygon_rim_point(sides, subdiv, radius, i),
                                           polygon_rim_point(sides, subdiv, radius, i + 1)}));
    return out;
}

SpanningComplex fan_disk_complex(int sides, int subdiv, double radius) {
    SpanningComplex out(2, 1);
    Vec center = Vec::Zero(2);
    int total = sides * subdiv;
    for (int i = 0; i < total; ++i) {
        Vec a = polygon_rim_point(sides, subdiv, radius, i);
        Vec b = polygon_rim_point(sides, subdiv, radius, i + 1);
        out.append_cell(2, OrientedSimplex({center, a, b}));
    }
    out.finalize();
    return out;
}

uint64_t PortableRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double PortableRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
}

double PortableRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int PortableRng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
}

SimplicialChain random_chain(PortableRng& rng, int n, int m, int max_terms) {
    SimplicialChain out(n, m);
    int terms = rng.uniform_int(1, max_terms);
    for (int t = 0; t < terms; ++t) {
        std::vector<Vec> verts;
        for (int v = 0; v <= n; ++v) {
            Vec p(m);
            for (int ax = 0; ax < m; ++ax)
                p[ax] = rng.uniform_int(-8, 8) / 8.0;
            verts.push_back(std::move(p));
        }
        OrientedSimplex s(std::move(verts));
        if (s.degenerate()) {
            --t;
            continue;
        }
        double coef = rng.uniform_int(-16, 16) / 8.0;
        if (coef == 0.0) coef = 1.0;
        out.add_term(coef, s);
    }
    return out;
}

PolynomialForm random_form(PortableRng& rng, int degree, int ambient, int max_poly_degree) {
    PolynomialForm out(degree, ambient);
    auto planes = coordinate_planes(ambient, degree);
    if (degree == 0) planes = {{}};
    for (const auto& idx : planes) {
        Polynomial p(ambient);
        int monomials = rng.uniform_int(1, 3);
        for (int k = 0; k < monomials; ++k) {
            std::vector<int> powers(static_cast<size_t>(ambient), 0);
            int total = rng.uniform_int(0, max_poly_degree);
            for (int d = 0; d < total; ++d)
                ++powers[static_cast<size_t>(rng.uniform_int(0, ambient - 1))];
            double coef = rng.uniform_int(-8, 8) / 4.0;
            if (coef != 0.0) p.add_monomial(coef, std::move(powers));
        }
        if (!p.zero()) out.add_component(idx, p);
    }
    return out;
}

}  // namespace chainnorm
