#include "chainnorm/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chainnorm {

SimplicialChain::SimplicialChain(int n, int m) : n_(n), m_(m) {
    if (n < 0 || m < 1 || n > m)
        throw std::invalid_argument("invalid chain dimensions (need 0 <= n <= m)");
}

void SimplicialChain::add_term(double coef, const OrientedSimplex& simplex) {
    if (coef == 0.0) return;
    if (simplex.n() != n_ || simplex.m() != m_)
        throw std::invalid_argument("term dimension does not match chain");
    if (simplex.degenerate()) return;  // equated with the zero chain
    int sign = 1;
    OrientedSimplex canon = simplex.canonical(sign);
    std::vector<double> key = canon.flat_key();
    auto it = index_.find(key);
    if (it == index_.end()) {
        index_.emplace(std::move(key), terms_.size());
        terms_.push_back(Term{coef * sign, std::move(canon)});
    } else {
        terms_[it->second].coef += coef * sign;
    }
    reduced_ = false;
}

void SimplicialChain::add_chain(const SimplicialChain& other, double scale) {
    if (other.n_ != n_ || other.m_ != m_)
        throw std::invalid_argument("chain dimensions do not match");
    for (const auto& t : other.terms_) add_term(scale * t.coef, t.simplex);
}

namespace {

SimplicialChain compact(const SimplicialChain& chain) {
    SimplicialChain out(chain.n(), chain.m());
    for (const auto& t : chain.terms())
        if (t.coef != 0.0) out.add_term(t.coef, t.simplex);
    return out;
}

}  // namespace

SimplicialChain SimplicialChain::operator+(const SimplicialChain& other) const {
    SimplicialChain out = *this;
    out.add_chain(other);
    return compact(out);
}

SimplicialChain SimplicialChain::operator-(const SimplicialChain& other) const {
    SimplicialChain out = *this;
    out.add_chain(other, -1.0);
    return compact(out);
}

SimplicialChain SimplicialChain::operator*(double scale) const {
    SimplicialChain out(n_, m_);
    for (const auto& t : terms_) out.add_term(scale * t.coef, t.simplex);
    return out;
}

SimplicialChain SimplicialChain::operator-() const { return *this * -1.0; }

std::optional<std::pair<Vec, Vec>> SimplicialChain::bounding_box() const {
    if (terms_.empty()) return std::nullopt;
    Vec lo = terms_[0].simplex.vertex(0);
    Vec hi = lo;
    for (const auto& t : terms_)
        for (const auto& v : t.simplex.vertices()) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
    return std::make_pair(lo, hi);
}

double SimplicialChain::coefficient_max() const {
    double c = 0.0;
    for (const auto& t : terms_) c = std::max(c, std::abs(t.coef));
    return c;
}

SimplicialChain boundary(const SimplicialChain& chain) {
    if (chain.n() == 0)
        throw std::invalid_argument("boundary of a 0-chain is not defined");
    SimplicialChain out(chain.n() - 1, chain.m());
    for (const auto& t : chain.terms()) {
        const auto& verts = t.simplex.vertices();
        for (size_t k = 0; k < verts.size(); ++k) {
            std::vector<Vec> face;
            face.reserve(verts.size() - 1);
            for (size_t j = 0; j < verts.size(); ++j)
                if (j != k) face.push_back(verts[j]);
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            out.add_term(sign * t.coef, OrientedSimplex(std::move(face)));
        }
    }
    return compact(out);
}

OrientedSimplex project_simplex(const OrientedSimplex& simplex, const std::vector<int>& axes) {
    std::vector<Vec> verts;
    verts.reserve(simplex.vertices().size());
    for (const auto& v : simplex.vertices()) {
        Vec p(static_cast<Eigen::Index>(axes.size()));
        for (size_t i = 0; i < axes.size(); ++i) p[static_cast<Eigen::Index>(i)] = v[axes[i]];
        verts.push_back(std::move(p));
    }
    return OrientedSimplex(std::move(verts));
}

SimplicialChain project(const SimplicialChain& chain, int plane) {
    auto planes = coordinate_planes(chain.m(), chain.n());
    if (plane < 0 || plane >= static_cast<int>(planes.size()))
        throw std::invalid_argument("projection plane index out of range");
    const auto& axes = planes[static_cast<size_t>(plane)];
    SimplicialChain out(chain.n(), chain.n());
    for (const auto& t : chain.terms())
        out.add_term(t.coef, project_simplex(t.simplex, axes));
    return compact(out);
}

std::vector<OrientedSimplex> barycentric_subdivision(const OrientedSimplex& simplex) {
    const int n = simplex.n();
    if (n == 0) return {simplex};
    if (n == 1) {
        Vec mid = 0.5 * (simplex.vertex(0) + simplex.vertex(1));
        return {OrientedSimplex({simplex.vertex(0), mid}), OrientedSimplex({mid, simplex.vertex(1)})};
    }
    if (n != 2)
        throw std::invalid_argument("barycentric subdivision implemented for n <= 2");
    const Vec& a = simplex.vertex(0);
    const Vec& b = simplex.vertex(1);
    const Vec& c = simplex.vertex(2);
    Vec mab = 0.5 * (a + b), mbc = 0.5 * (b + c), mac = 0.5 * (a + c);
    Vec cen = (a + b + c) / 3.0;
    // Six flags (vertex, adjacent edge midpoint, centroid), ordered to keep
    // the parent orientation.
    return {OrientedSimplex({a, mab, cen}), OrientedSimplex({mab, b, cen}),
            OrientedSimplex({b, mbc, cen}), OrientedSimplex({mbc, c, cen}),
            OrientedSimplex({c, mac, cen}), OrientedSimplex({mac, a, cen})};
}

SimplicialChain scale_coordinates(const SimplicialChain& chain, double factor) {
    SimplicialChain out(chain.n(), chain.m());
    for (const auto& t : chain.terms()) {
        std::vector<Vec> verts;
        for (const auto& v : t.simplex.vertices()) verts.push_back(factor * v);
        out.add_term(t.coef, OrientedSimplex(std::move(verts)));
    }
    return out;
}

}  // namespace chainnorm
