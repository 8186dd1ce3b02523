#include "chainnorm/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace chainnorm {

namespace {

// Sorts a multi-index, returning the permutation sign; 0 for repeated axes.
int sort_index(std::vector<int>& index) {
    int sign = 1;
    for (size_t i = 1; i < index.size(); ++i) {
        size_t j = i;
        while (j > 0 && index[j] < index[j - 1]) {
            std::swap(index[j], index[j - 1]);
            --j;
            sign = -sign;
        }
    }
    for (size_t i = 1; i < index.size(); ++i)
        if (index[i] == index[i - 1]) return 0;
    return sign;
}

}  // namespace

PolynomialForm::PolynomialForm(int degree, int ambient) : degree_(degree), ambient_(ambient) {
    if (degree < 0 || ambient < 1 || degree > ambient)
        throw std::invalid_argument("form degree must satisfy 0 <= n <= m");
}

void PolynomialForm::add_component(std::vector<int> index, const Polynomial& poly) {
    if (static_cast<int>(index.size()) != degree_)
        throw std::invalid_argument("component index length must equal the form degree");
    for (int ax : index)
        if (ax < 0 || ax >= ambient_)
            throw std::invalid_argument("component index axis out of range");
    if (poly.nvars() != ambient_)
        throw std::invalid_argument("component polynomial has wrong variable count");
    int sign = sort_index(index);
    if (sign == 0 || poly.zero()) return;
    auto it = comps_.find(index);
    if (it == comps_.end()) {
        Polynomial p = poly * static_cast<double>(sign);
        if (!p.zero()) comps_.emplace(std::move(index), std::move(p));
    } else {
        it->second = it->second + poly * static_cast<double>(sign);
        if (it->second.zero()) comps_.erase(it);
    }
}

const Polynomial* PolynomialForm::component(const std::vector<int>& index) const {
    auto it = comps_.find(index);
    return it == comps_.end() ? nullptr : &it->second;
}

PolynomialForm PolynomialForm::operator+(const PolynomialForm& other) const {
    PolynomialForm out = *this;
    for (const auto& [idx, poly] : other.comps_) out.add_component(idx, poly);
    return out;
}

PolynomialForm PolynomialForm::operator*(double s) const {
    PolynomialForm out(degree_, ambient_);
    for (const auto& [idx, poly] : comps_) out.add_component(idx, poly * s);
    return out;
}

PolynomialForm exterior_derivative(const PolynomialForm& form) {
    if (form.degree() == form.ambient())
        throw std::invalid_argument("exterior derivative of a top-degree form is not defined");
    PolynomialForm out(form.degree() + 1, form.ambient());
    for (const auto& [idx, poly] : form.components()) {
        for (int j = 0; j < form.ambient(); ++j) {
            Polynomial dp = poly.partial(j);
            if (dp.zero()) continue;
            std::vector<int> widx;
            widx.reserve(idx.size() + 1);
            widx.push_back(j);
            widx.insert(widx.end(), idx.begin(), idx.end());
            out.add_component(std::move(widx), dp);
        }
    }
    return out;
}

double integrate_over_simplex(const PolynomialForm& form, const OrientedSimplex& simplex) {
    const int n = form.degree();
    if (n == 0) {
        const Polynomial* f = form.component({});
        return f ? f->evaluate(simplex.vertex(0)) : 0.0;
    }
    Mat edges = simplex.edge_matrix();
    double total = 0.0;
    for (const auto& [idx, poly] : form.components()) {
        Mat sub(n, n);
        for (int r = 0; r < n; ++r) sub.row(r) = edges.row(idx[static_cast<size_t>(r)]);
        double det = sub.determinant();
        if (det == 0.0) continue;
        Polynomial pulled = poly.compose_affine(simplex.vertex(0), edges);
        double integral = 0.0;
        for (const auto& [pw, c] : pulled.terms()) integral += c * simplex_monomial_integral(pw);
        total += det * integral;
    }
    return total;
}

double integrate(const PolynomialForm& form, const SimplicialChain& chain) {
    if (form.degree() != chain.n())
        throw std::invalid_argument("integrate: form degree must equal the chain dimension");
    if (form.ambient() != chain.m())
        throw std::invalid_argument("integrate: ambient dimensions differ");
    double total = 0.0;
    for (const auto& t : chain.terms())
        total += t.coef * integrate_over_simplex(form, t.simplex);
    return total;
}

namespace {

// Pointwise Euclidean norm across components of the order-|beta| derivative
// family, evaluated at x.  The Euclidean combination dominates the action of
// the form on unit simple n-vectors, which is what the integral estimates
// in the norm inequalities require.
double pointwise_norm(const std::vector<std::vector<Polynomial>>& derivative_sets, size_t which,
                      const Vec& x) {
    double s = 0.0;
    for (const auto& polys : derivative_sets) {
        double v = polys[which].evaluate(x);
        s += v * v;
    }
    return std::sqrt(s);
}

std::vector<std::vector<int>> multi_indices_up_to(int m, int k) {
    std::vector<std::vector<int>> all;
    // compositions of d into m parts, for d = 0..k
    for (int d = 0; d <= k; ++d) {
        std::vector<int> beta(static_cast<size_t>(m), 0);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == m - 1) {
                beta[static_cast<size_t>(pos)] = left;
                all.push_back(beta);
                return;
            }
            for (int e = left; e >= 0; --e) {
                beta[static_cast<size_t>(pos)] = e;
                rec(pos + 1, left - e);
            }
        };
        rec(0, d);
    }
    return all;
}

double grid_coordinate(double lo, double hi, int i, int res) {
    return res <= 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(res - 1);
}

struct NormSample {
    double sup = 0.0;
    double holder = 0.0;
};

NormSample sample_norm(const PolynomialForm& form, int k, double alpha, const Box& box, int res) {
    const int m = form.ambient();
    auto betas = multi_indices_up_to(m, k);

    // derivative polynomials per component, per beta (ordered as in `betas`)
    std::vector<std::vector<Polynomial>> derivs;
    for (const auto& [idx, poly] : form.components()) {
        std::vector<Polynomial> per_beta;
        per_beta.reserve(betas.size());
        for (const auto& beta : betas) {
            Polynomial p = poly;
            for (int ax = 0; ax < m; ++ax)
                for (int e = 0; e < beta[static_cast<size_t>(ax)]; ++e) p = p.partial(ax);
            per_beta.push_back(std::move(p));
        }
        derivs.push_back(std::move(per_beta));
    }

    NormSample out;
    if (derivs.empty()) return out;

    std::vector<int> idx(static_cast<size_t>(m), 0);
    bool done = false;
    Vec x(m);
    while (!done) {
        for (int ax = 0; ax < m; ++ax)
            x[ax] = grid_coordinate(box.lo[ax], box.hi[ax], idx[static_cast<size_t>(ax)], res);
        for (size_t b = 0; b < betas.size(); ++b)
            out.sup = std::max(out.sup, pointwise_norm(derivs, b, x));
        int ax = 0;
        while (ax < m) {
            if (++idx[static_cast<size_t>(ax)] < res) break;
            idx[static_cast<size_t>(ax)] = 0;
            ++ax;
        }
        if (ax == m) done = true;
    }

    if (alpha > 0.0) {
        // Holder quotient of the order-k derivatives over a coarse pair grid.
        int pres = std::min(res, m >= 3 ? 5 : 9);
        std::vector<Vec> pts;
        std::vector<int> pidx(static_cast<size_t>(m), 0);
        bool pdone = false;
        while (!pdone) {
            Vec p(m);
            for (int ax = 0; ax < m; ++ax)
                p[ax] = grid_coordinate(box.lo[ax], box.hi[ax], pidx[static_cast<size_t>(ax)], pres);
            pts.push_back(p);
            int ax = 0;
            while (ax < m) {
                if (++pidx[static_cast<size_t>(ax)] < pres) break;
                pidx[static_cast<size_t>(ax)] = 0;
                ++ax;
            }
            if (ax == m) pdone = true;
        }
        size_t order_k_begin = 0;
        for (size_t b = 0; b < betas.size(); ++b) {
            int total = 0;
            for (int e : betas[b]) total += e;
            if (total == k) {
                order_k_begin = b;
                break;
            }
        }
        for (size_t b = order_k_begin; b < betas.size(); ++b) {
            for (const auto& per_beta : derivs) {
                const Polynomial& p = per_beta[b];
                for (size_t i = 0; i < pts.size(); ++i) {
                    double vi = p.evaluate(pts[i]);
                    for (size_t j = i + 1; j < pts.size(); ++j) {
                        double dist = (pts[i] - pts[j]).norm();
                        if (dist == 0.0) continue;
                        double q = std::abs(vi - p.evaluate(pts[j])) / std::pow(dist, alpha);
                        out.holder = std::max(out.holder, q);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

FormNorm form_norm(const PolynomialForm& form, int k, double alpha, const Box& box,
                   int grid_resolution) {
    if (k < 0 || alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("form_norm: need k >= 0 and alpha in [0, 1)");
    if (box.lo.size() != form.ambient() || box.hi.size() != form.ambient())
        throw std::invalid_argument("form_norm: box dimension mismatch");
    for (int ax = 0; ax < form.ambient(); ++ax)
        if (!(box.lo[ax] <= box.hi[ax])) throw std::invalid_argument("form_norm: empty box");

    FormNorm out;
    out.k = k;
    out.alpha = alpha;
    out.box = box;

    if (form.zero()) {
        out.grid_resolution = grid_resolution > 0 ? grid_resolution : 64;
        return out;
    }

    if (grid_resolution > 0) {
        NormSample s = sample_norm(form, k, alpha, box, grid_resolution);
        out.value = s.sup + s.holder;
        out.grid_resolution = grid_resolution;
        return out;
    }

    int res = 64;
    const long budget = 4'000'000;
    NormSample prev = sample_norm(form, k, alpha, box, res);
    while (true) {
        long next_points = 1;
        for (int ax = 0; ax < form.ambient(); ++ax) next_points *= 2L * res;
        if (next_points > budget) break;
        NormSample cur = sample_norm(form, k, alpha, box, 2 * res);
        double a = prev.sup + prev.holder, b = cur.sup + cur.holder;
        res *= 2;
        bool settled = std::abs(b - a) <= 0.01 * std::max({std::abs(a), std::abs(b), 1e-30});
        prev = cur;
        if (settled) break;
    }
    out.value = prev.sup + prev.holder;
    out.grid_resolution = res;
    return out;
}

double stokes_check(const PolynomialForm& form, const SimplicialChain& chain) {
    if (chain.n() < 1)
        throw std::invalid_argument("stokes_check: chain must have dimension >= 1");
    if (form.degree() != chain.n() - 1)
        throw std::invalid_argument("stokes_check: form degree must be n-1");
    double lhs = integrate(exterior_derivative(form), chain);
    double rhs = integrate(form, boundary(chain));
    return std::abs(lhs - rhs);
}

std::pair<int, double> holder_order(double s) {
    if (s < 0.0) throw std::invalid_argument("holder_order: negative smoothness");
    int k = static_cast<int>(std::floor(s));
    double alpha = s - k;
    if (alpha >= 1.0) {
        ++k;
        alpha = 0.0;
    }
    return {k, alpha};
}

Box chain_box(const std::vector<const SimplicialChain*>& chains, double pad) {
    Box box;
    bool first = true;
    for (const auto* c : chains) {
        auto bb = c->bounding_box();
        if (!bb) continue;
        if (first) {
            box.lo = bb->first;
            box.hi = bb->second;
            first = false;
        } else {
            box.lo = box.lo.cwiseMin(bb->first);
            box.hi = box.hi.cwiseMax(bb->second);
        }
    }
    if (first) throw std::invalid_argument("chain_box: all chains empty");
    box.lo.array() -= pad;
    box.hi.array() += pad;
    return box;
}

}  // namespace chainnorm
