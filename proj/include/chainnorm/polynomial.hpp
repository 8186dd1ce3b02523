#pragma once

#include <map>
#include <vector>

#include "chainnorm/geometry.hpp"

namespace chainnorm {

/// Sparse multivariate polynomial with real coefficients.  Monomials are
/// keyed by their exponent vectors, so arithmetic and iteration order are
/// deterministic.
class Polynomial {
public:
    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(int nvars, double c);
    static Polynomial variable(int nvars, int index);

    int nvars() const { return nvars_; }
    bool zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, double>& terms() const { return terms_; }

    void add_monomial(double coef, std::vector<int> powers);

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator*(double s) const;

    Polynomial partial(int var) const;
    double evaluate(const Vec& x) const;
    int total_degree() const;

    /// Substitute x = origin + basis * t (affine map into `tvars` variables).
    Polynomial compose_affine(const Vec& origin, const Mat& basis) const;

private:
    int nvars_;
    std::map<std::vector<int>, double> terms_;
};

/// Exact integral of a monomial t^alpha over the standard n-simplex:
/// prod(alpha_i!) / (n + sum(alpha))!.
double simplex_monomial_integral(const std::vector<int>& powers);

}  // namespace chainnorm
