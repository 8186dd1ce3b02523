#include "chainnorm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chainnorm {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

OrientedSimplex::OrientedSimplex(std::vector<Vec> vertices) : verts_(std::move(vertices)) {
    if (verts_.empty()) throw std::invalid_argument("simplex needs at least one vertex");
    const auto dim = verts_[0].size();
    for (const auto& v : verts_) {
        if (v.size() != dim) throw std::invalid_argument("simplex vertices of mixed dimension");
        if (!v.allFinite()) throw std::invalid_argument("simplex vertex with non-finite coordinate");
    }
    if (n() > m()) throw std::invalid_argument("simplex dimension exceeds ambient dimension");
}

Mat OrientedSimplex::edge_matrix() const {
    Mat e(m(), n());
    for (int j = 1; j <= n(); ++j) e.col(j - 1) = verts_[static_cast<size_t>(j)] - verts_[0];
    return e;
}

double OrientedSimplex::mass() const {
    if (n() == 0) return 1.0;
    Mat e = edge_matrix();
    Mat g = e.transpose() * e;
    double det = g.determinant();
    if (det <= 0.0) return 0.0;
    return std::sqrt(det) / factorial(n());
}

double OrientedSimplex::max_edge_length() const {
    double len = 0.0;
    for (size_t i = 0; i < verts_.size(); ++i)
        for (size_t j = i + 1; j < verts_.size(); ++j)
            len = std::max(len, (verts_[i] - verts_[j]).norm());
    return len;
}

bool OrientedSimplex::degenerate() const {
    if (n() == 0) return false;
    double scale = std::pow(max_edge_length(), n());
    return scale == 0.0 || mass() < 1e-12 * scale;
}

OrientedSimplex OrientedSimplex::reversed() const {
    return with_vertices_swapped(0, 1);
}

OrientedSimplex OrientedSimplex::with_vertices_swapped(int i, int j) const {
    std::vector<Vec> v = verts_;
    std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(j)]);
    return OrientedSimplex(std::move(v));
}

OrientedSimplex OrientedSimplex::canonical(int& sign) const {
    std::vector<int> order(verts_.size());
    std::iota(order.begin(), order.end(), 0);
    // Insertion sort, counting transpositions for the parity.
    int swaps = 0;
    for (size_t i = 1; i < order.size(); ++i) {
        size_t j = i;
        while (j > 0 && lex_less(verts_[static_cast<size_t>(order[j])],
                                 verts_[static_cast<size_t>(order[j - 1])])) {
            std::swap(order[j], order[j - 1]);
            --j;
            ++swaps;
        }
    }
    sign = (swaps % 2 == 0) ? 1 : -1;
    std::vector<Vec> v;
    v.reserve(verts_.size());
    for (int idx : order) v.push_back(verts_[static_cast<size_t>(idx)]);
    return OrientedSimplex(std::move(v));
}

std::vector<double> OrientedSimplex::flat_key() const {
    std::vector<double> key;
    key.reserve(verts_.size() * static_cast<size_t>(m()));
    for (const auto& v : verts_)
        for (int i = 0; i < v.size(); ++i) key.push_back(v[i]);
    return key;
}

OrientedSimplex make_simplex(std::initializer_list<std::initializer_list<double>> pts) {
    std::vector<Vec> verts;
    for (const auto& p : pts) {
        Vec v(static_cast<Eigen::Index>(p.size()));
        int i = 0;
        for (double x : p) v[i++] = x;
        verts.push_back(std::move(v));
    }
    return OrientedSimplex(std::move(verts));
}

std::vector<std::vector<int>> coordinate_planes(int m, int n) {
    std::vector<std::vector<int>> planes;
    std::vector<int> subset(static_cast<size_t>(n));
    std::iota(subset.begin(), subset.end(), 0);
    if (n == 0 || n > m) return planes;
    while (true) {
        planes.push_back(subset);
        int i = n - 1;
        while (i >= 0 && subset[static_cast<size_t>(i)] == m - n + i) --i;
        if (i < 0) break;
        ++subset[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
    }
    return planes;
}

long long binomial(int m, int n) {
    if (n < 0 || n > m) return 0;
    long long r = 1;
    for (int i = 1; i <= n; ++i) r = r * (m - n + i) / i;
    return r;
}

double signed_area_2d(const Vec& a, const Vec& b, const Vec& c) {
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

bool point_in_triangle_2d(const Vec& p, const Vec& a, const Vec& b, const Vec& c, double tol) {
    double area = signed_area_2d(a, b, c);
    if (area == 0.0) return false;
    double s = 1.0 / (2.0 * area);
    double w0 = s * ((b[0] - p[0]) * (c[1] - p[1]) - (c[0] - p[0]) * (b[1] - p[1]));
    double w1 = s * ((c[0] - p[0]) * (a[1] - p[1]) - (a[0] - p[0]) * (c[1] - p[1]));
    double w2 = 1.0 - w0 - w1;
    return w0 >= -tol && w1 >= -tol && w2 >= -tol;
}

}  // namespace chainnorm
