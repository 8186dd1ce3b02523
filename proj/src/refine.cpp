#include "chainnorm/refine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace chainnorm {

namespace {

constexpr double kKeyRound = 1e-9;
constexpr size_t kMaxPlaneLines = 220;

double round_to(double x, double grid) { return std::round(x / grid) * grid; }

std::vector<double> rounded_key(const Vec& v) {
    std::vector<double> key(static_cast<size_t>(v.size()));
    for (int i = 0; i < v.size(); ++i) {
        double r = round_to(v[i], kKeyRound);
        key[static_cast<size_t>(i)] = (r == 0.0) ? 0.0 : r;  // normalize -0
    }
    return key;
}

Vec canonical_direction(Vec d) {
    int lead = 0;
    double best = 0.0;
    for (int i = 0; i < d.size(); ++i)
        if (std::abs(d[i]) > best + 1e-12) {
            best = std::abs(d[i]);
            lead = i;
        }
    if (d[lead] < 0.0) d = -d;
    return d;
}

struct LineRef {
    Vec anchor;
    Vec dir;
};

std::vector<double> line_key(const Vec& p, const Vec& q, LineRef& ref) {
    Vec d = canonical_direction((q - p).normalized());
    Vec a = p - p.dot(d) * d;
    ref.anchor = a;
    ref.dir = d;
    Vec key(2 * d.size());
    key << a, d;
    return rounded_key(key);
}

// ---- 1-chain arrangements ------------------------------------------------

RefinementComplex refine_segments(const SimplicialChain& a, const SimplicialChain& b) {
    RefinementComplex out;
    out.n = 1;
    out.m = a.m();
    std::map<std::vector<double>, size_t> line_index;
    std::vector<LineRef> refs;
    std::vector<std::vector<double>> params;

    auto visit = [&](const SimplicialChain& chain) {
        for (const auto& t : chain.terms()) {
            LineRef ref;
            auto key = line_key(t.simplex.vertex(0), t.simplex.vertex(1), ref);
            auto it = line_index.find(key);
            size_t idx;
            if (it == line_index.end()) {
                idx = refs.size();
                line_index.emplace(std::move(key), idx);
                refs.push_back(ref);
                params.emplace_back();
            } else {
                idx = it->second;
            }
            const auto& r = refs[idx];
            params[idx].push_back((t.simplex.vertex(0) - r.anchor).dot(r.dir));
            params[idx].push_back((t.simplex.vertex(1) - r.anchor).dot(r.dir));
        }
    };
    visit(a);
    visit(b);

    for (size_t i = 0; i < refs.size(); ++i) {
        auto& ts = params[i];
        std::sort(ts.begin(), ts.end());
        double span = std::max(1.0, std::abs(ts.back() - ts.front()));
        std::vector<double> bps;
        for (double t : ts)
            if (bps.empty() || t - bps.back() > 1e-12 * span) bps.push_back(t);
        if (bps.size() < 2) continue;
        out.lines.push_back(LineArrangement{refs[i].anchor, refs[i].dir, std::move(bps)});
    }
    return out;
}

SimplicialChain reduce_segments(const SimplicialChain& chain, const RefinementComplex& complex) {
    std::vector<std::vector<double>> cell_coef(complex.lines.size());
    for (size_t i = 0; i < complex.lines.size(); ++i)
        cell_coef[i].assign(complex.lines[i].breakpoints.size(), 0.0);  // difference array

    // key lookup first, geometric scan as the fallback
    std::map<std::vector<double>, size_t> by_key;
    for (size_t li = 0; li < complex.lines.size(); ++li) {
        Vec key(2 * complex.lines[li].anchor.size());
        key << complex.lines[li].anchor, complex.lines[li].direction;
        by_key.emplace(rounded_key(key), li);
    }

    for (size_t ti = 0; ti < chain.terms().size(); ++ti) {
        const auto& t = chain.terms()[ti];
        const Vec& p = t.simplex.vertex(0);
        const Vec& q = t.simplex.vertex(1);
        double scale = std::max(1.0, std::max(p.norm(), q.norm()));
        bool placed = false;
        std::vector<size_t> candidates;
        {
            LineRef ref;
            auto it = by_key.find(line_key(p, q, ref));
            if (it != by_key.end()) candidates.push_back(it->second);
        }
        for (size_t li = 0; li < complex.lines.size(); ++li) candidates.push_back(li);
        for (size_t li : candidates) {
            const auto& line = complex.lines[li];
            double tp = (p - line.anchor).dot(line.direction);
            double tq = (q - line.anchor).dot(line.direction);
            if ((p - line.anchor - tp * line.direction).norm() > 1e-9 * scale) continue;
            if ((q - line.anchor - tq * line.direction).norm() > 1e-9 * scale) continue;

            auto locate = [&](double tv) -> int {
                auto it = std::lower_bound(line.breakpoints.begin(), line.breakpoints.end(),
                                           tv - 1e-9 * scale);
                if (it == line.breakpoints.end() || std::abs(*it - tv) > 1e-9 * scale) return -1;
                return static_cast<int>(it - line.breakpoints.begin());
            };
            int ip = locate(tp), iq = locate(tq);
            if (ip < 0 || iq < 0) continue;
            double sgn = 1.0;
            if (ip > iq) {
                std::swap(ip, iq);
                sgn = -1.0;
            }
            cell_coef[li][static_cast<size_t>(ip)] += sgn * t.coef;
            cell_coef[li][static_cast<size_t>(iq)] -= sgn * t.coef;
            placed = true;
            break;
        }
        if (!placed) {
            std::ostringstream msg;
            msg << "reduce: term " << ti << " is not representable on the refinement";
            throw std::runtime_error(msg.str());
        }
    }

    SimplicialChain out(1, chain.m());
    for (size_t li = 0; li < complex.lines.size(); ++li) {
        const auto& line = complex.lines[li];
        auto& diff = cell_coef[li];
        // prefix sums -> per-cell coefficients, then merge equal-coefficient runs
        double running = 0.0;
        size_t cell_count = line.breakpoints.size() - 1;
        std::vector<double> coefs(cell_count);
        for (size_t c = 0; c < cell_count; ++c) {
            running += diff[c];
            coefs[c] = running;
        }
        size_t c = 0;
        while (c < cell_count) {
            if (coefs[c] == 0.0) {
                ++c;
                continue;
            }
            size_t e = c + 1;
            while (e < cell_count &&
                   std::abs(coefs[e] - coefs[c]) <=
                       1e-12 * std::max({1.0, std::abs(coefs[c]), std::abs(coefs[e])}))
                ++e;
            Vec v0 = line.anchor + line.breakpoints[c] * line.direction;
            Vec v1 = line.anchor + line.breakpoints[e] * line.direction;
            out.add_term(coefs[c], OrientedSimplex({v0, v1}));
            c = e;
        }
    }
    out.mark_reduced();
    return out;
}

// ---- coplanar 2-chain arrangements ---------------------------------------

struct PlaneFrame {
    Vec origin;
    Vec u;
    Vec v;
};

std::vector<double> plane_key(const OrientedSimplex& tri, PlaneFrame& frame) {
    const Vec& p0 = tri.vertex(0);
    Vec e1 = tri.vertex(1) - p0;
    Vec e2 = tri.vertex(2) - p0;
    Vec u = e1.normalized();
    Vec w = (e2 - e2.dot(u) * u).normalized();
    frame.origin = p0;
    frame.u = u;
    frame.v = w;
    Mat proj = u * u.transpose() + w * w.transpose();
    Vec offset = p0 - proj * p0;
    Vec key(proj.size() + offset.size());
    int k = 0;
    for (int i = 0; i < proj.rows(); ++i)
        for (int j = 0; j < proj.cols(); ++j) key[k++] = proj(i, j);
    for (int i = 0; i < offset.size(); ++i) key[k++] = offset[i];
    return rounded_key(key);
}

Vec to_plane(const PlaneFrame& f, const Vec& p) {
    Vec d = p - f.origin;
    Vec out(2);
    out << d.dot(f.u), d.dot(f.v);
    return out;
}

bool on_plane(const PlaneFrame& f, const Vec& p, double scale) {
    Vec d = p - f.origin;
    Vec rest = d - d.dot(f.u) * f.u - d.dot(f.v) * f.v;
    return rest.norm() <= 1e-9 * std::max(1.0, scale);
}

using Poly2 = std::vector<Vec>;  // convex polygon, CCW

struct Line2 {
    Vec normal;  // unit
    double offset;
};

void split_polygon(const Poly2& poly, const Line2& line, double tol,
                   Poly2& pos, Poly2& neg) {
    pos.clear();
    neg.clear();
    size_t count = poly.size();
    for (size_t i = 0; i < count; ++i) {
        const Vec& a = poly[i];
        const Vec& b = poly[(i + 1) % count];
        double sa = line.normal.dot(a) - line.offset;
        double sb = line.normal.dot(b) - line.offset;
        if (sa >= -tol) pos.push_back(a);
        if (sa <= tol) neg.push_back(a);
        if ((sa > tol && sb < -tol) || (sa < -tol && sb > tol)) {
            double t = sa / (sa - sb);
            Vec x = a + t * (b - a);
            pos.push_back(x);
            neg.push_back(x);
        }
    }
}

double polygon_area(const Poly2& poly) {
    double a = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % poly.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

struct PlaneGroup {
    PlaneFrame frame;
    std::vector<std::array<Vec, 3>> tris;  // 2D triangles of both inputs
};

RefinementComplex refine_coplanar(const SimplicialChain& a, const SimplicialChain& b) {
    RefinementComplex out;
    out.n = 2;
    out.m = a.m();
    std::map<std::vector<double>, size_t> group_index;
    std::vector<PlaneGroup> groups;

    auto visit = [&](const SimplicialChain& chain) {
        for (const auto& t : chain.terms()) {
            PlaneFrame frame;
            auto key = plane_key(t.simplex, frame);
            auto it = group_index.find(key);
            size_t gi;
            if (it == group_index.end()) {
                gi = groups.size();
                group_index.emplace(std::move(key), gi);
                groups.push_back(PlaneGroup{frame, {}});
            } else {
                gi = it->second;
            }
            auto& g = groups[gi];
            double scale = t.simplex.max_edge_length();
            for (int k = 0; k < 3; ++k)
                if (!on_plane(g.frame, t.simplex.vertex(k), scale))
                    throw std::runtime_error("refine: triangle fails coplanarity within its group");
            g.tris.push_back({to_plane(g.frame, t.simplex.vertex(0)),
                              to_plane(g.frame, t.simplex.vertex(1)),
                              to_plane(g.frame, t.simplex.vertex(2))});
        }
    };
    visit(a);
    visit(b);

    for (auto& g : groups) {
        // supporting lines of all triangle edges
        std::vector<Line2> lines;
        std::map<std::vector<double>, bool> seen;
        for (const auto& tri : g.tris) {
            for (int e = 0; e < 3; ++e) {
                Vec p = tri[static_cast<size_t>(e)];
                Vec q = tri[static_cast<size_t>((e + 1) % 3)];
                Vec d = q - p;
                double len = d.norm();
                if (len == 0.0) continue;
                Vec nrm(2);
                nrm << -d[1] / len, d[0] / len;
                nrm = canonical_direction(nrm);
                double off = nrm.dot(p);
                Vec keyv(3);
                keyv << nrm[0], nrm[1], off;
                auto key = rounded_key(keyv);
                if (!seen.emplace(key, true).second) continue;
                lines.push_back(Line2{nrm, off});
            }
        }
        if (lines.size() > kMaxPlaneLines)
            throw std::runtime_error("refine: coplanar arrangement exceeds the cell budget");

        Vec lo = g.tris[0][0], hi = g.tris[0][0];
        for (const auto& tri : g.tris)
            for (const auto& p : tri) {
                lo = lo.cwiseMin(p);
                hi = hi.cwiseMax(p);
            }
        double scale = std::max(1.0, (hi - lo).norm());
        Vec margin = Vec::Constant(2, 0.1 * scale + 0.1);
        lo -= margin;
        hi += margin;
        Poly2 box = {lo, Vec((Vec(2) << hi[0], lo[1]).finished()), hi,
                     Vec((Vec(2) << lo[0], hi[1]).finished())};

        std::vector<Poly2> polys = {box};
        double tol = 1e-10 * scale;
        for (const auto& line : lines) {
            std::vector<Poly2> next;
            Poly2 pos, neg;
            for (const auto& poly : polys) {
                split_polygon(poly, line, tol, pos, neg);
                if (polygon_area(pos) > tol * tol) next.push_back(pos);
                if (polygon_area(neg) > tol * tol) next.push_back(neg);
                if (next.size() > 40000)
                    throw std::runtime_error("refine: coplanar arrangement exceeds the cell budget");
            }
            polys.swap(next);
        }

        PlaneArrangement arr;
        arr.origin = g.frame.origin;
        arr.u = g.frame.u;
        arr.v = g.frame.v;
        for (const auto& poly : polys) {
            // keep only faces covered by some input triangle
            Vec cen = Vec::Zero(2);
            for (const auto& p : poly) cen += p;
            cen /= static_cast<double>(poly.size());
            bool covered = false;
            for (const auto& tri : g.tris)
                if (point_in_triangle_2d(cen, tri[0], tri[1], tri[2], 1e-9)) {
                    covered = true;
                    break;
                }
            if (!covered) continue;
            for (size_t k = 1; k + 1 < poly.size(); ++k) {
                Vec a2 = poly[0], b2 = poly[k], c2 = poly[k + 1];
                double area = signed_area_2d(a2, b2, c2);
                if (std::abs(area) < 1e-14 * scale * scale) continue;
                if (area < 0.0) std::swap(b2, c2);
                arr.cells.push_back({a2, b2, c2});
            }
        }
        out.planes.push_back(std::move(arr));
    }
    return out;
}

SimplicialChain reduce_coplanar(const SimplicialChain& chain, const RefinementComplex& complex) {
    std::vector<std::vector<double>> coefs(complex.planes.size());
    for (size_t pi = 0; pi < complex.planes.size(); ++pi)
        coefs[pi].assign(complex.planes[pi].cells.size(), 0.0);

    for (size_t ti = 0; ti < chain.terms().size(); ++ti) {
        const auto& t = chain.terms()[ti];
        double scale = t.simplex.max_edge_length();
        bool placed = false;
        for (size_t pi = 0; pi < complex.planes.size(); ++pi) {
            const auto& arr = complex.planes[pi];
            PlaneFrame f{arr.origin, arr.u, arr.v};
            if (!on_plane(f, t.simplex.vertex(0), scale) ||
                !on_plane(f, t.simplex.vertex(1), scale) ||
                !on_plane(f, t.simplex.vertex(2), scale))
                continue;
            Vec a2 = to_plane(f, t.simplex.vertex(0));
            Vec b2 = to_plane(f, t.simplex.vertex(1));
            Vec c2 = to_plane(f, t.simplex.vertex(2));
            double term_area = signed_area_2d(a2, b2, c2);
            double sgn = term_area >= 0.0 ? 1.0 : -1.0;
            double covered_area = 0.0;
            for (size_t ci = 0; ci < arr.cells.size(); ++ci) {
                const auto& cell = arr.cells[ci];
                Vec cen = (cell[0] + cell[1] + cell[2]) / 3.0;
                if (!point_in_triangle_2d(cen, a2, b2, c2, 1e-9)) continue;
                coefs[pi][ci] += sgn * t.coef;
                covered_area += signed_area_2d(cell[0], cell[1], cell[2]);
            }
            if (std::abs(covered_area - std::abs(term_area)) >
                1e-7 * std::max(1e-30, std::abs(term_area))) {
                std::ostringstream msg;
                msg << "reduce: term " << ti << " is not a union of refinement cells";
                throw std::runtime_error(msg.str());
            }
            placed = true;
            break;
        }
        if (!placed) {
            std::ostringstream msg;
            msg << "reduce: term " << ti << " lies on no plane of the refinement";
            throw std::runtime_error(msg.str());
        }
    }

    SimplicialChain out(2, chain.m());
    for (size_t pi = 0; pi < complex.planes.size(); ++pi) {
        const auto& arr = complex.planes[pi];
        for (size_t ci = 0; ci < arr.cells.size(); ++ci) {
            if (coefs[pi][ci] == 0.0) continue;
            std::vector<Vec> verts;
            for (const auto& p2 : arr.cells[ci])
                verts.push_back(arr.origin + p2[0] * arr.u + p2[1] * arr.v);
            out.add_term(coefs[pi][ci], OrientedSimplex(std::move(verts)));
        }
    }
    out.mark_reduced();
    return out;
}

}  // namespace

size_t RefinementComplex::cell_count() const {
    size_t c = 0;
    for (const auto& l : lines) c += l.breakpoints.size() - 1;
    for (const auto& p : planes) c += p.cells.size();
    return c;
}

RefinementComplex refine(const SimplicialChain& a, const SimplicialChain& b) {
    if (a.n() != b.n() || a.m() != b.m())
        throw std::invalid_argument("refine: chains must share n and m");
    if (a.n() == 1) return refine_segments(a, b);
    if (a.n() == 2) return refine_coplanar(a, b);
    RefinementComplex out;
    out.n = a.n();
    out.m = a.m();
    if (a.n() == 0) return out;  // merging handles 0-chains
    throw std::runtime_error("refine: unsupported chain dimension (n must be 0, 1 or 2)");
}

RefinementComplex refine(const SimplicialChain& a) {
    return refine(a, SimplicialChain(a.n(), a.m()));
}

SimplicialChain reduce(const SimplicialChain& chain, const RefinementComplex& complex) {
    if (chain.n() != complex.n && !(chain.n() == 0))
        throw std::invalid_argument("reduce: chain dimension does not match the complex");
    if (chain.n() == 0) {
        SimplicialChain out(0, chain.m());
        out.add_chain(chain);
        SimplicialChain compacted(0, chain.m());
        for (const auto& t : out.terms())
            if (t.coef != 0.0) compacted.add_term(t.coef, t.simplex);
        compacted.mark_reduced();
        return compacted;
    }
    if (chain.n() == 1) return reduce_segments(chain, complex);
    if (chain.n() == 2) return reduce_coplanar(chain, complex);
    throw std::runtime_error("reduce: unsupported chain dimension");
}

SimplicialChain reduce(const SimplicialChain& chain) { return reduce(chain, refine(chain)); }

bool reducible(const SimplicialChain& chain) { return chain.n() <= 2; }

}  // namespace chainnorm
