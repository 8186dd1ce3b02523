#pragma once

#include "chainnorm/chain.hpp"
#include "chainnorm/polynomial.hpp"

#include <map>

namespace chainnorm {

/// Axis-aligned box, used as the domain for form norms.
struct Box {
    Vec lo;
    Vec hi;
};

/// Degree-n differential form on R^m with polynomial components, stored per
/// increasing multi-index.  Zero components are omitted.
class PolynomialForm {
public:
    PolynomialForm(int degree, int ambient);

    int degree() const { return degree_; }
    int ambient() const { return ambient_; }
    const std::map<std::vector<int>, Polynomial>& components() const { return comps_; }

    /// Add coef * poly dx_I; the index is sorted and the sign adjusted, and
    /// indices with repeats are dropped.
    void add_component(std::vector<int> index, const Polynomial& poly);

    const Polynomial* component(const std::vector<int>& index) const;

    PolynomialForm operator+(const PolynomialForm& other) const;
    PolynomialForm operator*(double s) const;
    bool zero() const { return comps_.empty(); }

private:
    int degree_;
    int ambient_;
    std::map<std::vector<int>, Polynomial> comps_;
};

/// Sampled norm of a form: max over derivative orders <= k of the grid sup
/// of the pointwise component norm, plus a sampled Holder quotient of the
/// order-k derivatives when alpha > 0.  A lower estimate of the true norm.
struct FormNorm {
    int k = 0;
    double alpha = 0.0;
    Box box;
    double value = 0.0;
    int grid_resolution = 0;
};

PolynomialForm exterior_derivative(const PolynomialForm& form);

/// Exact integral over a simplicial chain via affine pullback to the
/// standard simplex and closed-form monomial integration.
double integrate(const PolynomialForm& form, const SimplicialChain& chain);

double integrate_over_simplex(const PolynomialForm& form, const OrientedSimplex& simplex);

/// grid_resolution 0 selects the default (64 per axis, doubled until two
/// successive estimates agree within 1%).
FormNorm form_norm(const PolynomialForm& form, int k, double alpha, const Box& box,
                   int grid_resolution = 0);

/// |∫_A dω − ∫_{∂A} ω| for an (n−1)-form ω and n-chain A.
double stokes_check(const PolynomialForm& form, const SimplicialChain& chain);

/// (k, alpha) pair realizing the order-s norm with s = k + alpha.
std::pair<int, double> holder_order(double s);

/// Bounding box of a family of chains, padded on each side.
Box chain_box(const std::vector<const SimplicialChain*>& chains, double pad = 1e-3);

}  // namespace chainnorm
