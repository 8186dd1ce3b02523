#include <catch2/catch_amalgamated.hpp>

#include "chainnorm/mass.hpp"
#include "chainnorm/refine.hpp"
#include "chainnorm/shapes.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace chainnorm;
using namespace chainnorm::testing;

TEST_CASE("mass of reference chains", "[mass]") {
    CHECK(mass(SimplicialChain(2, 2)).value == 0.0);

    SimplicialChain square = unit_square_chain();
    MassValue m = mass(square);
    CHECK(m.value == Catch::Approx(1.0));
    CHECK(m.exact());  // the two triangles are disjoint

    SimplicialChain tripled(2, 2);
    auto tri = make_simplex({{0, 0}, {1, 0}, {0, 1}});
    tripled.add_term(2.0, tri);
    tripled.add_term(1.0, tri);
    CHECK(mass(tripled).value == Catch::Approx(1.5));
}

TEST_CASE("mass kind flags overlapping representatives", "[mass]") {
    SimplicialChain overlapping(2, 2);
    overlapping.add_term(1.0, make_simplex({{0, 0}, {2, 0}, {0, 2}}));
    overlapping.add_term(1.0, make_simplex({{0, 0}, {2, 0}, {2, 2}}));
    CHECK_FALSE(mass(overlapping).exact());

    SimplicialChain reduced = reduce(overlapping, refine(overlapping));
    CHECK(mass(reduced).exact());
}

TEST_CASE("projected mass on the diagonal segment", "[mass]") {
    SimplicialChain diag = segment_chain(pt2(0, 0), pt2(1, 1));
    MassValue x = projected_mass(diag, 0, 1.0);
    CHECK(x.value == Catch::Approx(1.0));
    CHECK(x.exact());
    CHECK(x.plane.value() == 0);

    SimplicialChain vertical = segment_chain(pt2(0, 0), pt2(0, 1));
    CHECK(projected_mass(vertical, 0, 1.0).value == 0.0);

    CHECK_THROWS_AS(projected_mass(diag, 0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(projected_mass(diag, 0, -0.1), std::invalid_argument);
}

TEST_CASE("projected mass of the slanted triangle", "[mass]") {
    // direct Gram computation of the projected triangle: xy-image is the
    // right triangle of area 1/2
    SimplicialChain tri(2, 3);
    tri.add_term(1.0, make_simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 1}}));
    CHECK(projected_mass(tri, 0, 2.0).value == Catch::Approx(0.5));
}

TEST_CASE("base natural norm on segments", "[mass]") {
    SimplicialChain axis = segment_chain(pt2(0, 0), pt2(1, 0));
    CHECK(natural_norm_base(axis, 1.0).value == Catch::Approx(1.0));

    SimplicialChain diag = segment_chain(pt2(0, 0), pt2(1, 1));
    CHECK(natural_norm_base(diag, 1.0).value == Catch::Approx(2.0));
}

TEST_CASE("base natural norm at lambda = n = m equals mass", "[mass]") {
    PortableRng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        SimplicialChain a = random_chain(rng, 2, 2, 4);
        // the single plane is the identity projection; overlapping terms are
        // first rewritten on the arrangement, so compare on the reduced chain
        SimplicialChain r = reduce(a, refine(a));
        CHECK(natural_norm_base(r, 2.0).value == Catch::Approx(mass(r).value).margin(1e-12));
        CHECK(natural_norm_base(a, 2.0).value <= mass(a).value + 1e-12);
    }
}

TEST_CASE("per-simplex projection sandwich at lambda = n", "[mass]") {
    PortableRng rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
        int m = rng.uniform_int(2, 4);
        int n = rng.uniform_int(1, std::min(3, m));
        SimplicialChain a = random_chain(rng, n, m, 1);
        const auto& s = a.terms().front().simplex;
        auto planes = coordinate_planes(m, n);
        double sum = 0.0;
        for (size_t i = 0; i < planes.size(); ++i) {
            OrientedSimplex p = project_simplex(s, planes[i]);
            if (!p.degenerate()) sum += p.mass();
        }
        double mn = s.mass();
        double root_n = std::sqrt(static_cast<double>(planes.size()));
        CHECK(mn <= sum * (1 + 1e-9) + 1e-15);
        CHECK(sum <= root_n * mn * (1 + 1e-9) + 1e-15);
    }
}

TEST_CASE("homogeneity in coefficients and coordinates", "[mass]") {
    PortableRng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        int m = rng.uniform_int(2, 3);
        int n = rng.uniform_int(1, 2);
        SimplicialChain a = random_chain(rng, n, m, 3);
        double t = rng.uniform(-3.0, 3.0);
        if (t == 0.0) t = 0.5;
        CHECK(mass(a * t).value == Catch::Approx(std::abs(t) * mass(a).value).margin(1e-12));

        double s = rng.uniform(0.25, 2.5);
        double lambda = rng.uniform(0.0, static_cast<double>(n));
        SimplicialChain scaled = scale_coordinates(a, s);
        long long planes = binomial(m, n);
        for (int i = 0; i < planes; ++i) {
            double lhs = projected_mass(scaled, i, lambda).value;
            double rhs = std::pow(s, lambda) * projected_mass(a, i, lambda).value;
            CHECK(lhs == Catch::Approx(rhs).epsilon(1e-9).margin(1e-12));
        }
    }
}

TEST_CASE("triangle inequality on concatenated representatives", "[mass]") {
    PortableRng rng(88);
    for (int trial = 0; trial < 50; ++trial) {
        int m = rng.uniform_int(2, 3);
        int n = rng.uniform_int(1, 2);
        SimplicialChain a = random_chain(rng, n, m, 3);
        SimplicialChain b = random_chain(rng, n, m, 3);
        SimplicialChain sum = a + b;
        CHECK(mass(sum).value <= mass(a).value + mass(b).value + 1e-12);
        double lambda = rng.uniform(0.0, static_cast<double>(n));
        CHECK(natural_norm_base(sum, lambda).value <=
              natural_norm_base(a, lambda).value + natural_norm_base(b, lambda).value + 1e-9);
    }
}

TEST_CASE("subdivision never decreases the lambda-sum below n", "[mass]") {
    PortableRng rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        SimplicialChain a = random_chain(rng, 2, 2, 1);
        const auto& s = a.terms().front().simplex;
        double lambda = 1.0;
        double whole = std::pow(s.mass(), lambda / 2.0);
        double split = 0.0;
        for (const auto& part : barycentric_subdivision(s))
            split += std::pow(part.mass(), lambda / 2.0);
        CHECK(split + 1e-12 >= whole);
    }
}

TEST_CASE("lambda = 0 convention keeps the zero chain at zero", "[mass]") {
    SimplicialChain vertical = segment_chain(pt2(0, 0), pt2(0, 2));
    // degenerate projection contributes 0 even at lambda = 0
    CHECK(projected_mass(vertical, 0, 0.0).value == 0.0);
    // nondegenerate projections contribute |coef| at lambda = 0
    SimplicialChain diag = segment_chain(pt2(0, 0), pt2(3, 1), 2.0);
    CHECK(projected_mass(diag, 0, 0.0).value == Catch::Approx(2.0));
}
