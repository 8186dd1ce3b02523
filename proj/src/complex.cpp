#include "chainnorm/complex.hpp"

#include "chainnorm/mass.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chainnorm {

SpanningComplex::SpanningComplex(int m, int base_dim) : m_(m), base_dim_(base_dim) {
    if (base_dim < 0 || base_dim > m)
        throw std::invalid_argument("complex: base dimension out of range");
}

int SpanningComplex::level_of(int dim) const {
    int lvl = dim - base_dim_;
    if (lvl < 0 || lvl >= static_cast<int>(levels_.size()))
        throw std::invalid_argument("complex: no cells of the requested dimension");
    return lvl;
}

bool SpanningComplex::has_dim(int dim) const {
    int lvl = dim - base_dim_;
    return lvl >= 0 && lvl < static_cast<int>(levels_.size()) &&
           !levels_[static_cast<size_t>(lvl)].empty();
}

const std::vector<OrientedSimplex>& SpanningComplex::cells(int dim) const {
    return levels_[static_cast<size_t>(level_of(dim))];
}

const std::vector<std::vector<SpanningComplex::Entry>>& SpanningComplex::incidence(int dim) const {
    int lvl = level_of(dim + 1);
    return incidence_[static_cast<size_t>(lvl - 1)];
}

void SpanningComplex::append_cell(int dim, const OrientedSimplex& cell) {
    if (cell.m() != m_) throw std::invalid_argument("complex: cell ambient mismatch");
    if (cell.degenerate()) return;
    int lvl = dim - base_dim_;
    if (lvl < 0) throw std::invalid_argument("complex: cell below the base dimension");
    while (static_cast<int>(levels_.size()) <= lvl) {
        levels_.emplace_back();
        index_.emplace_back();
    }
    int sign = 1;
    OrientedSimplex canon = cell.canonical(sign);
    auto key = canon.flat_key();
    auto& idx = index_[static_cast<size_t>(lvl)];
    if (idx.count(key)) return;  // already present (orientation of first insertion wins)
    idx.emplace(std::move(key), static_cast<int>(levels_[static_cast<size_t>(lvl)].size()));
    levels_[static_cast<size_t>(lvl)].push_back(cell);
}

int SpanningComplex::find_cell(int dim, const OrientedSimplex& simplex, int& sign) const {
    int lvl = dim - base_dim_;
    if (lvl < 0 || lvl >= static_cast<int>(levels_.size())) return -1;
    int s_in = 1;
    OrientedSimplex canon = simplex.canonical(s_in);
    auto it = index_[static_cast<size_t>(lvl)].find(canon.flat_key());
    if (it == index_[static_cast<size_t>(lvl)].end()) return -1;
    int s_stored = 1;
    levels_[static_cast<size_t>(lvl)][static_cast<size_t>(it->second)].canonical(s_stored);
    sign = s_in * s_stored;
    return it->second;
}

void SpanningComplex::finalize() {
    // Derive faces of every level down to the base dimension.
    for (int lvl = static_cast<int>(levels_.size()) - 1; lvl >= 1; --lvl) {
        for (const auto& cell : levels_[static_cast<size_t>(lvl)]) {
            const auto& verts = cell.vertices();
            for (size_t k = 0; k < verts.size(); ++k) {
                std::vector<Vec> face;
                for (size_t j = 0; j < verts.size(); ++j)
                    if (j != k) face.push_back(verts[j]);
                append_cell(base_dim_ + lvl - 1, OrientedSimplex(std::move(face)));
            }
        }
    }
    // Incidence matrices.
    incidence_.clear();
    for (size_t lvl = 1; lvl < levels_.size(); ++lvl) {
        std::vector<std::vector<Entry>> inc(levels_[lvl].size());
        for (size_t ci = 0; ci < levels_[lvl].size(); ++ci) {
            const auto& verts = levels_[lvl][ci].vertices();
            for (size_t k = 0; k < verts.size(); ++k) {
                std::vector<Vec> face;
                for (size_t j = 0; j < verts.size(); ++j)
                    if (j != k) face.push_back(verts[j]);
                OrientedSimplex fs(std::move(face));
                if (fs.degenerate()) continue;
                int sign = 1;
                int row = find_cell(base_dim_ + static_cast<int>(lvl) - 1, fs, sign);
                if (row < 0) throw std::logic_error("complex: face missing after finalize");
                int face_sign = (k % 2 == 0) ? 1 : -1;
                inc[ci].push_back(Entry{row, face_sign * sign});
            }
        }
        incidence_.push_back(std::move(inc));
    }
}

SpanningComplex SpanningComplex::from_cells(
    int m, int base_dim, const std::map<int, std::vector<OrientedSimplex>>& cells) {
    SpanningComplex out(m, base_dim);
    for (const auto& [dim, list] : cells)
        for (const auto& c : list) out.append_cell(dim, c);
    out.finalize();
    return out;
}

std::vector<double> SpanningComplex::apply_incidence(int dim, const std::vector<double>& coef) const {
    const auto& inc = incidence(dim);
    if (coef.size() != inc.size())
        throw std::invalid_argument("complex: coefficient vector length mismatch");
    std::vector<double> out(cells(dim).size(), 0.0);
    for (size_t ci = 0; ci < inc.size(); ++ci) {
        if (coef[ci] == 0.0) continue;
        for (const auto& e : inc[ci]) out[static_cast<size_t>(e.row)] += e.sign * coef[ci];
    }
    return out;
}

std::vector<double> SpanningComplex::express(const SimplicialChain& chain) const {
    if (chain.m() != m_) throw std::invalid_argument("express: ambient mismatch");
    const int dim = chain.n();
    const auto& cell_list = cells(dim);
    std::vector<double> coef(cell_list.size(), 0.0);
    for (size_t ti = 0; ti < chain.terms().size(); ++ti) {
        const auto& t = chain.terms()[ti];
        int sign = 1;
        int id = find_cell(dim, t.simplex, sign);
        if (id >= 0) {
            coef[static_cast<size_t>(id)] += sign * t.coef;
            continue;
        }
        // geometric cover: collinear cells inside a segment / coplanar cells
        // inside a triangle
        bool covered = false;
        if (dim == 1) {
            const Vec& p = t.simplex.vertex(0);
            const Vec& q = t.simplex.vertex(1);
            Vec d = q - p;
            double len = d.norm();
            d /= len;
            double tol = 1e-9 * std::max(1.0, len);
            double covered_len = 0.0;
            for (size_t ci = 0; ci < cell_list.size(); ++ci) {
                const Vec& a = cell_list[ci].vertex(0);
                const Vec& b = cell_list[ci].vertex(1);
                double ta = (a - p).dot(d), tb = (b - p).dot(d);
                if ((a - p - ta * d).norm() > tol || (b - p - tb * d).norm() > tol) continue;
                if (ta < -tol || ta > len + tol || tb < -tol || tb > len + tol) continue;
                double s = tb > ta ? 1.0 : -1.0;
                coef[ci] += s * t.coef;
                covered_len += std::abs(tb - ta);
            }
            covered = std::abs(covered_len - len) <= 1e-7 * len;
        } else if (dim == 2) {
            const Vec& p0 = t.simplex.vertex(0);
            Vec u = (t.simplex.vertex(1) - p0).normalized();
            Vec e2 = t.simplex.vertex(2) - p0;
            Vec v = (e2 - e2.dot(u) * u).normalized();
            double scale = t.simplex.max_edge_length();
            auto plane_pt = [&](const Vec& x) {
                Vec r = x - p0;
                Vec out2(2);
                out2 << r.dot(u), r.dot(v);
                return out2;
            };
            auto in_plane = [&](const Vec& x) {
                Vec r = x - p0;
                return (r - r.dot(u) * u - r.dot(v) * v).norm() <= 1e-9 * std::max(1.0, scale);
            };
            Vec a2 = plane_pt(p0), b2 = plane_pt(t.simplex.vertex(1)), c2 = plane_pt(t.simplex.vertex(2));
            double term_area = signed_area_2d(a2, b2, c2);
            double tsign = term_area >= 0.0 ? 1.0 : -1.0;
            double covered_area = 0.0;
            for (size_t ci = 0; ci < cell_list.size(); ++ci) {
                const auto& cell = cell_list[ci];
                bool coplanar = in_plane(cell.vertex(0)) && in_plane(cell.vertex(1)) &&
                                in_plane(cell.vertex(2));
                if (!coplanar) continue;
                Vec q0 = plane_pt(cell.vertex(0)), q1 = plane_pt(cell.vertex(1)),
                    q2 = plane_pt(cell.vertex(2));
                Vec cen = (q0 + q1 + q2) / 3.0;
                if (!point_in_triangle_2d(cen, a2, b2, c2, 1e-9)) continue;
                double cell_area = signed_area_2d(q0, q1, q2);
                double csign = cell_area >= 0.0 ? 1.0 : -1.0;
                coef[ci] += tsign * csign * t.coef;
                covered_area += std::abs(cell_area);
            }
            covered = std::abs(covered_area - std::abs(term_area)) <= 1e-7 * std::abs(term_area);
        }
        if (!covered) {
            std::ostringstream msg;
            msg << "express: term " << ti << " is not representable on the complex cells";
            throw std::runtime_error(msg.str());
        }
    }
    return coef;
}

SimplicialChain SpanningComplex::chain_from_coefficients(int dim,
                                                         const std::vector<double>& coef) const {
    const auto& cell_list = cells(dim);
    if (coef.size() != cell_list.size())
        throw std::invalid_argument("complex: coefficient vector length mismatch");
    SimplicialChain out(dim, m_);
    for (size_t ci = 0; ci < cell_list.size(); ++ci)
        if (coef[ci] != 0.0) out.add_term(coef[ci], cell_list[ci]);
    return out;
}

std::vector<double> SpanningComplex::cell_masses(int dim) const {
    const auto& cell_list = cells(dim);
    std::vector<double> out(cell_list.size());
    for (size_t i = 0; i < cell_list.size(); ++i) out[i] = cell_list[i].mass();
    return out;
}

std::vector<double> SpanningComplex::projected_cell_masses(int dim, int plane,
                                                           double exponent) const {
    auto planes = coordinate_planes(m_, dim);
    if (plane < 0 || plane >= static_cast<int>(planes.size()))
        throw std::invalid_argument("projected_cell_masses: plane index out of range");
    const auto& axes = planes[static_cast<size_t>(plane)];
    const auto& cell_list = cells(dim);
    std::vector<double> out(cell_list.size());
    for (size_t i = 0; i < cell_list.size(); ++i) {
        OrientedSimplex proj = project_simplex(cell_list[i], axes);
        double mass = proj.degenerate() ? 0.0 : proj.mass();
        out[i] = mass <= 0.0 ? 0.0 : std::pow(mass, exponent);
    }
    return out;
}

void SpanningComplex::add_hint(const std::string& name, int dim, const std::vector<double>& coef) {
    hints_[name] = {dim, coef};
}

bool SpanningComplex::boundary_squares_to_zero() const {
    for (size_t lvl = 2; lvl < levels_.size(); ++lvl) {
        const auto& upper = incidence_[lvl - 1];
        const auto& lower = incidence_[lvl - 2];
        for (size_t ci = 0; ci < upper.size(); ++ci) {
            std::map<int, int> acc;
            for (const auto& e : upper[ci])
                for (const auto& f : lower[static_cast<size_t>(e.row)]) acc[f.row] += e.sign * f.sign;
            for (const auto& [row, v] : acc)
                if (v != 0) return false;
        }
    }
    return true;
}

}  // namespace chainnorm
