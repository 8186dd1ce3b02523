#include "chainnorm/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace chainnorm {

Polynomial Polynomial::constant(int nvars, double c) {
    Polynomial p(nvars);
    p.add_monomial(c, std::vector<int>(static_cast<size_t>(nvars), 0));
    return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
    Polynomial p(nvars);
    std::vector<int> pw(static_cast<size_t>(nvars), 0);
    pw[static_cast<size_t>(index)] = 1;
    p.add_monomial(1.0, std::move(pw));
    return p;
}

void Polynomial::add_monomial(double coef, std::vector<int> powers) {
    if (coef == 0.0) return;
    if (powers.size() != static_cast<size_t>(nvars_))
        throw std::invalid_argument("monomial exponent count does not match variable count");
    auto it = terms_.find(powers);
    if (it == terms_.end()) {
        terms_.emplace(std::move(powers), coef);
    } else {
        it->second += coef;
        if (it->second == 0.0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial out = *this;
    for (const auto& [pw, c] : other.terms_) out.add_monomial(c, pw);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    Polynomial out = *this;
    for (const auto& [pw, c] : other.terms_) out.add_monomial(-c, pw);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    Polynomial out(nvars_);
    for (const auto& [pa, ca] : terms_)
        for (const auto& [pb, cb] : other.terms_) {
            std::vector<int> pw(pa.size());
            for (size_t i = 0; i < pa.size(); ++i) pw[i] = pa[i] + pb[i];
            out.add_monomial(ca * cb, std::move(pw));
        }
    return out;
}

Polynomial Polynomial::operator*(double s) const {
    Polynomial out(nvars_);
    for (const auto& [pw, c] : terms_) out.add_monomial(c * s, pw);
    return out;
}

Polynomial Polynomial::partial(int var) const {
    Polynomial out(nvars_);
    for (const auto& [pw, c] : terms_) {
        int e = pw[static_cast<size_t>(var)];
        if (e == 0) continue;
        std::vector<int> d = pw;
        d[static_cast<size_t>(var)] = e - 1;
        out.add_monomial(c * e, std::move(d));
    }
    return out;
}

double Polynomial::evaluate(const Vec& x) const {
    double total = 0.0;
    for (const auto& [pw, c] : terms_) {
        double v = c;
        for (size_t i = 0; i < pw.size(); ++i)
            for (int e = 0; e < pw[i]; ++e) v *= x[static_cast<Eigen::Index>(i)];
        total += v;
    }
    return total;
}

int Polynomial::total_degree() const {
    int deg = 0;
    for (const auto& [pw, c] : terms_) {
        int d = 0;
        for (int e : pw) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

Polynomial Polynomial::compose_affine(const Vec& origin, const Mat& basis) const {
    const int tvars = static_cast<int>(basis.cols());
    Polynomial out(tvars);
    // per-variable affine images x_j = origin_j + sum_k basis(j,k) t_k
    std::vector<Polynomial> images;
    images.reserve(static_cast<size_t>(nvars_));
    for (int j = 0; j < nvars_; ++j) {
        Polynomial img = Polynomial::constant(tvars, origin[j]);
        for (int k = 0; k < tvars; ++k) {
            if (basis(j, k) == 0.0) continue;
            img = img + Polynomial::variable(tvars, k) * basis(j, k);
        }
        images.push_back(std::move(img));
    }
    for (const auto& [pw, c] : terms_) {
        Polynomial mono = Polynomial::constant(tvars, c);
        for (size_t j = 0; j < pw.size(); ++j)
            for (int e = 0; e < pw[j]; ++e) mono = mono * images[j];
        out = out + mono;
    }
    return out;
}

double simplex_monomial_integral(const std::vector<int>& powers) {
    // prod(alpha_i!) / (n + sum alpha)!
    int n = static_cast<int>(powers.size());
    int total = 0;
    for (int e : powers) total += e;
    double value = 1.0;
    for (int e : powers)
        for (int i = 2; i <= e; ++i) value *= i;
    for (int k = 1; k <= n + total; ++k) value /= k;
    return value;
}

}  // namespace chainnorm
