#include "chainnorm/fractals.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace chainnorm {

namespace {

using I3 = std::array<long, 3>;

// Base square side as a fraction of the unit cube.  27/64 keeps every
// lattice coordinate an exact binary fraction (pitch 9/64, 3/64, 1/64 at
// levels 1..3), so chain terms merge bitwise.
constexpr double kBaseSide = 27.0 / 64.0;

Vec to_world(const I3& p, double h) {
    Vec v(3);
    v << p[0] * h, p[1] * h, p[2] * h;
    return v;
}

// Replacement path: 11 moves per segment, net (3,0,0) in the local frame
// (d = direction, u, v = the two positive transverse axes).  Interior
// vertices in (d,u,v) units of a third of the parent segment:
constexpr std::array<std::array<int, 3>, 10> kGeneratorInterior = {{
    {0, 0, 1}, {0, 0, 2}, {1, 0, 2}, {1, 1, 2}, {1, 1, 1},
    {1, 1, 0}, {2, 1, 0}, {2, 1, 1}, {2, 0, 1}, {2, 0, 0},
}};

std::vector<I3> apply_generator(const std::vector<I3>& path) {
    std::vector<I3> out;
    out.reserve((path.size() - 1) * 11 + 1);
    for (size_t s = 0; s + 1 < path.size(); ++s) {
        const I3& p = path[s];
        const I3& q = path[s + 1];
        I3 diff{q[0] - p[0], q[1] - p[1], q[2] - p[2]};
        int axis = -1;
        for (int ax = 0; ax < 3; ++ax)
            if (diff[static_cast<size_t>(ax)] != 0) axis = ax;
        long len = std::abs(diff[static_cast<size_t>(axis)]);
        if (len % 3 != 0) throw std::logic_error("generator: segment length not divisible by 3");
        long step = diff[static_cast<size_t>(axis)] / 3;  // signed
        long lat = len / 3;
        int ua = (axis + 1) % 3;
        int va = (axis + 2) % 3;
        out.push_back(p);
        for (const auto& g : kGeneratorInterior) {
            I3 w = p;
            w[static_cast<size_t>(axis)] += step * g[0];
            w[static_cast<size_t>(ua)] += lat * g[1];
            w[static_cast<size_t>(va)] += lat * g[2];
            out.push_back(w);
        }
    }
    out.push_back(path.back());
    return out;
}

std::vector<I3> build_curve_path(int level) {
    long side = 1;
    for (int j = 0; j < level; ++j) side *= 3;
    std::vector<I3> path = {
        {0, 0, 0}, {side, 0, 0}, {side, side, 0}, {0, side, 0}, {0, 0, 0}};
    for (int j = 0; j < level; ++j) path = apply_generator(path);
    return path;
}

// Rotate a lattice rectangle loop so the lexicographically smallest corner
// leads, producing the two triangles that share the min-max diagonal.  The
// shared convention makes triangles from curtains, winding fills and voxel
// boundaries cancel exactly.
void emit_rect(SimplicialChain& chain, double coef, std::array<I3, 4> loop, double h) {
    size_t lead = 0;
    for (size_t i = 1; i < 4; ++i)
        if (loop[i] < loop[lead]) lead = i;
    std::array<I3, 4> r;
    for (size_t i = 0; i < 4; ++i) r[i] = loop[(lead + i) % 4];
    Vec a = to_world(r[0], h), b = to_world(r[1], h), c = to_world(r[2], h), d = to_world(r[3], h);
    chain.add_term(coef, OrientedSimplex({a, b, c}));
    chain.add_term(coef, OrientedSimplex({a, c, d}));
}

int dropped_axis_of_plane(int plane) {
    // coordinate 2-planes of R^3 in lexicographic order: {0,1}, {0,2}, {1,2}
    static const int drop[3] = {2, 1, 0};
    return drop[plane];
}

// Curtain from the curve down to the coordinate plane {x_drop = 0} plus the
// winding-number fill of the projected curve; the boundary is the curve
// (up to cancellations along lines parallel to the dropped axis).
SimplicialChain build_spanning_surface(const std::vector<I3>& path, int plane, double h) {
    const int drop = dropped_axis_of_plane(plane);
    const int b1 = drop == 0 ? 1 : 0;
    const int b2 = drop == 2 ? 1 : 2;
    SimplicialChain surface(2, 3);

    // curtains
    for (size_t s = 0; s + 1 < path.size(); ++s) {
        I3 p = path[s];
        I3 q = path[s + 1];
        if (p[static_cast<size_t>(b1)] == q[static_cast<size_t>(b1)] &&
            p[static_cast<size_t>(b2)] == q[static_cast<size_t>(b2)])
            continue;  // segment along the dropped axis
        long height = p[static_cast<size_t>(drop)];
        if (height == 0) continue;
        for (long c = 0; c < height; ++c) {
            I3 p_top = p, q_top = q, p_bot = p, q_bot = q;
            p_top[static_cast<size_t>(drop)] = c + 1;
            q_top[static_cast<size_t>(drop)] = c + 1;
            p_bot[static_cast<size_t>(drop)] = c;
            q_bot[static_cast<size_t>(drop)] = c;
            emit_rect(surface, 1.0, {p_top, q_top, q_bot, p_bot}, h);
        }
    }

    // winding-number fill of the projection at {drop = 0}
    std::map<std::pair<long, long>, long> vertical_edges;  // (x0, j) -> net +b2 coefficient
    for (size_t s = 0; s + 1 < path.size(); ++s) {
        const I3& p = path[s];
        const I3& q = path[s + 1];
        long px = p[static_cast<size_t>(b1)], py = p[static_cast<size_t>(b2)];
        long qx = q[static_cast<size_t>(b1)], qy = q[static_cast<size_t>(b2)];
        if (px == qx && py == qy) continue;
        if (px == qx) {
            long lo = std::min(py, qy), hi = std::max(py, qy);
            long dir = qy > py ? 1 : -1;
            for (long j = lo; j < hi; ++j) vertical_edges[{px, j}] += dir;
        }
    }
    // rows present in the edge map
    std::map<long, std::vector<std::pair<long, long>>> rows;  // j -> (x0, coef)
    for (const auto& [key, coef] : vertical_edges)
        if (coef != 0) rows[key.second].push_back({key.first, coef});

    std::map<std::pair<long, long>, long> winding;
    for (auto& [j, xs] : rows) {
        // xs sorted by x (map order); suffix sums give the winding level of
        // the cells to the left of each crossing
        long suffix = 0;
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
            suffix += it->second;
            long x_here = it->first;
            auto next = std::next(it);
            long x_left = next == xs.rend() ? x_here : next->first;
            for (long i = x_left; i < x_here; ++i)
                if (suffix != 0) winding[{i, j}] = suffix;
        }
    }
    for (const auto& [cell, w] : winding) {
        I3 c00{}, c10{}, c11{}, c01{};
        c00[static_cast<size_t>(b1)] = cell.first;
        c00[static_cast<size_t>(b2)] = cell.second;
        c00[static_cast<size_t>(drop)] = 0;
        c10 = c00;
        c10[static_cast<size_t>(b1)] += 1;
        c11 = c10;
        c11[static_cast<size_t>(b2)] += 1;
        c01 = c00;
        c01[static_cast<size_t>(b2)] += 1;
        emit_rect(surface, static_cast<double>(w), {c00, c10, c11, c01}, h);
    }
    return surface;
}

// 6-tetrahedron decomposition of a unit lattice voxel, positively oriented.
void emit_voxel(SimplicialChain& chain, double coef, const I3& corner, double h) {
    static const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
    }};
    for (const auto& perm : perms) {
        I3 v0 = corner;
        I3 v1 = v0;
        v1[static_cast<size_t>(perm[0])] += 1;
        I3 v2 = v1;
        v2[static_cast<size_t>(perm[1])] += 1;
        I3 v3{corner[0] + 1, corner[1] + 1, corner[2] + 1};
        OrientedSimplex tet({to_world(v0, h), to_world(v1, h), to_world(v2, h), to_world(v3, h)});
        Mat e = tet.edge_matrix();
        if (e.determinant() < 0.0)
            tet = tet.with_vertices_swapped(2, 3);
        chain.add_term(coef, tet);
    }
}

// Winding-number fill of a closed lattice surface by voxels: casts a ray
// along +z through each column of voxel centers and accumulates the signed
// jumps of the z-perpendicular faces.
SimplicialChain fill_closed_surface(const SimplicialChain& surface, double h) {
    // jumps[(i,j)][z0] accumulated from triangles containing the ray point
    std::map<std::pair<long, long>, std::map<long, double>> jumps;
    for (const auto& t : surface.terms()) {
        std::array<I3, 3> v;
        for (int k = 0; k < 3; ++k) {
            const Vec& w = t.simplex.vertex(k);
            v[static_cast<size_t>(k)] = {std::lround(w[0] / h), std::lround(w[1] / h),
                                         std::lround(w[2] / h)};
        }
        if (v[0][2] != v[1][2] || v[0][2] != v[2][2]) continue;  // not z-constant
        long z0 = v[0][2];
        long i = std::min({v[0][0], v[1][0], v[2][0]});
        long j = std::min({v[0][1], v[1][1], v[2][1]});
        // ray offset (1/4, 1/2) avoids lattice lines and the cell diagonal
        Vec ray(2), a(2), b(2), c(2);
        ray << 0.25, 0.5;
        a << static_cast<double>(v[0][0] - i), static_cast<double>(v[0][1] - j);
        b << static_cast<double>(v[1][0] - i), static_cast<double>(v[1][1] - j);
        c << static_cast<double>(v[2][0] - i), static_cast<double>(v[2][1] - j);
        if (!point_in_triangle_2d(ray, a, b, c, 1e-12)) continue;
        double sigma = signed_area_2d(a, b, c) > 0.0 ? 1.0 : -1.0;
        jumps[{i, j}][z0] += sigma * t.coef;
    }

    SimplicialChain out(3, 3);
    for (const auto& [column, faces] : jumps) {
        double w = 0.0;
        auto it = faces.begin();
        while (it != faces.end()) {
            long z0 = it->first;
            w -= it->second;  // crossing upward: w_above = w_below - sigma*coef
            ++it;
            long z_next = it == faces.end() ? z0 : it->first;
            if (std::abs(w) > 1e-9) {
                long wi = std::lround(w);
                for (long zc = z0; zc < z_next; ++zc)
                    emit_voxel(out, static_cast<double>(wi), {column.first, column.second, zc}, h);
            }
        }
    }
    return out;
}

struct HarrisonParts {
    std::vector<I3> path;
    double h = 0.0;
    std::vector<SimplicialChain> surfaces;            // one per 2-plane
    std::vector<std::vector<SimplicialChain>> fills;  // [q][j], fills[q][j] = -fills[j][q]
};

HarrisonParts build_parts(int level) {
    if (level < 1 || level > 3)
        throw std::invalid_argument("harrison_curve_chain: supported levels are 1, 2, 3");
    HarrisonParts parts;
    parts.path = build_curve_path(level);
    double denom = 1.0;
    for (int j = 0; j < level; ++j) denom *= 3.0;
    parts.h = kBaseSide / denom;

    for (int plane = 0; plane < 3; ++plane)
        parts.surfaces.push_back(build_spanning_surface(parts.path, plane, parts.h));

    parts.fills.assign(3, std::vector<SimplicialChain>(3, SimplicialChain(3, 3)));
    for (int qi = 0; qi < 3; ++qi)
        for (int j = qi + 1; j < 3; ++j) {
            SimplicialChain diff = parts.surfaces[static_cast<size_t>(qi)] -
                                   parts.surfaces[static_cast<size_t>(j)];
            SimplicialChain d = fill_closed_surface(diff, parts.h);
            parts.fills[static_cast<size_t>(j)][static_cast<size_t>(qi)] = -d;
            parts.fills[static_cast<size_t>(qi)][static_cast<size_t>(j)] = std::move(d);
        }
    return parts;
}

}  // namespace

HarrisonCurve harrison_curve_chain(int level) {
    HarrisonParts parts = build_parts(level);

    HarrisonCurve out{SimplicialChain(1, 3), SpanningWitness{}, parts.h};
    for (size_t s = 0; s + 1 < parts.path.size(); ++s)
        out.chain.add_term(1.0, OrientedSimplex({to_world(parts.path[s], parts.h),
                                                 to_world(parts.path[s + 1], parts.h)}));

    out.witness.lambda = 3.0;
    for (int q = 0; q < 3; ++q) {
        SpanningWitness::PlaneEntry entry{parts.surfaces[static_cast<size_t>(q)], {}};
        SpanningWitness child;
        child.lambda = 3.0;
        for (int j = 0; j < 3; ++j) {
            SimplicialChain d =
                j == q ? SimplicialChain(3, 3) : parts.fills[static_cast<size_t>(q)][static_cast<size_t>(j)];
            child.planes.push_back({d, {}});
        }
        entry.children.push_back(std::move(child));
        out.witness.planes.push_back(std::move(entry));
    }
    return out;
}

SpanningComplex harrison_witness_complex(int level) {
    HarrisonParts parts = build_parts(level);
    SpanningComplex complex(3, 1);
    for (size_t s = 0; s + 1 < parts.path.size(); ++s)
        complex.append_cell(1, OrientedSimplex({to_world(parts.path[s], parts.h),
                                                to_world(parts.path[s + 1], parts.h)}));
    for (int q = 0; q < 3; ++q)
        for (const auto& t : parts.surfaces[static_cast<size_t>(q)].terms())
            complex.append_cell(2, t.simplex);
    for (int q = 0; q < 3; ++q)
        for (int j = q + 1; j < 3; ++j)
            for (const auto& t : parts.fills[static_cast<size_t>(q)][static_cast<size_t>(j)].terms())
                complex.append_cell(3, t.simplex);
    complex.finalize();
    for (int q = 0; q < 3; ++q) {
        try {
            complex.add_hint("surface_" + std::to_string(q), 2,
                             complex.express(parts.surfaces[static_cast<size_t>(q)]));
        } catch (const std::runtime_error&) {
        }
    }
    return complex;
}

}  // namespace chainnorm
