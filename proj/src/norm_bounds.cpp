#include "chainnorm/norm_bounds.hpp"

#include "chainnorm/refine.hpp"
#include "chainnorm/simplex_lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chainnorm {

namespace {

constexpr double kTiny = 1e-12;

SimplicialChain reduce_if_cheap(const SimplicialChain& chain) {
    if (chain.empty()) return chain;
    if (chain.n() == 1 || chain.n() == 0) return reduce(chain);
    if (chain.n() == 2 && chain.size() <= 48) {
        try {
            return reduce(chain);
        } catch (const std::runtime_error&) {
        }
    }
    return chain;
}

struct SpanLpSolution {
    std::vector<double> residual;  // on dim-cells
    std::vector<double> spanning;  // on (dim+1)-cells
    double objective = 0.0;
};

// min  sum_tau |x - Dc|_tau * res_w[tau]  +  sum_rho |c_rho| * span_w[rho]
// via split variables u - v + D(p - q) = x.
SpanLpSolution solve_span_lp(const std::vector<double>& x, const SpanningComplex& complex,
                             int dim, const std::vector<double>& res_w,
                             const std::vector<double>& span_w) {
    const int rows = static_cast<int>(x.size());
    SpanLpSolution out;
    if (!complex.has_dim(dim + 1) || span_w.empty()) {
        out.residual = x;
        out.spanning.clear();
        double obj = 0.0;
        for (int t = 0; t < rows; ++t) obj += std::abs(x[static_cast<size_t>(t)]) * res_w[static_cast<size_t>(t)];
        out.objective = obj;
        return out;
    }
    const auto& inc = complex.incidence(dim);
    const int nspan = static_cast<int>(inc.size());
    const int cols = 2 * rows + 2 * nspan;

    DenseSimplex lp(rows, cols);
    for (int t = 0; t < rows; ++t) {
        lp.a(t, t) = 1.0;           // u
        lp.a(t, rows + t) = -1.0;   // v
        lp.rhs(t) = x[static_cast<size_t>(t)];
        lp.cost(t) = res_w[static_cast<size_t>(t)];
        lp.cost(rows + t) = res_w[static_cast<size_t>(t)];
    }
    for (int c = 0; c < nspan; ++c) {
        for (const auto& e : inc[static_cast<size_t>(c)]) {
            lp.a(e.row, 2 * rows + c) = e.sign;           // p
            lp.a(e.row, 2 * rows + nspan + c) = -e.sign;  // q
        }
        lp.cost(2 * rows + c) = span_w[static_cast<size_t>(c)];
        lp.cost(2 * rows + nspan + c) = span_w[static_cast<size_t>(c)];
    }
    std::vector<int> basis(static_cast<size_t>(rows));
    for (int t = 0; t < rows; ++t)
        basis[static_cast<size_t>(t)] = x[static_cast<size_t>(t)] >= 0.0 ? t : rows + t;

    LpResult res = lp.solve(basis);
    if (res.status != LpResult::Status::optimal)
        throw std::runtime_error("flat-norm LP did not reach an optimum (malformed complex?)");

    out.spanning.assign(static_cast<size_t>(nspan), 0.0);
    double cmax = 0.0;
    for (int c = 0; c < nspan; ++c) {
        double v = res.x[static_cast<size_t>(2 * rows + c)] - res.x[static_cast<size_t>(2 * rows + nspan + c)];
        out.spanning[static_cast<size_t>(c)] = v;
        cmax = std::max(cmax, std::abs(v));
    }
    for (auto& v : out.spanning)
        if (std::abs(v) <= kTiny * std::max(1.0, cmax)) v = 0.0;

    // residual recomputed from the cleaned witness
    std::vector<double> dc = complex.apply_incidence(dim, out.spanning);
    out.residual.assign(static_cast<size_t>(rows), 0.0);
    double obj = 0.0;
    for (int t = 0; t < rows; ++t) {
        double r = x[static_cast<size_t>(t)] - dc[static_cast<size_t>(t)];
        out.residual[static_cast<size_t>(t)] = r;
        obj += std::abs(r) * res_w[static_cast<size_t>(t)];
    }
    for (int c = 0; c < nspan; ++c)
        obj += std::abs(out.spanning[static_cast<size_t>(c)]) * span_w[static_cast<size_t>(c)];
    out.objective = obj;
    return out;
}

}  // namespace

int SpanningWitness::depth() const {
    int d = 1;
    for (const auto& p : planes)
        if (!p.children.empty()) d = std::max(d, 1 + p.children.front().depth());
    return d;
}

SpanningWitness zero_witness(const SimplicialChain& chain, double lambda) {
    SpanningWitness w;
    w.lambda = lambda;
    long long planes = binomial(chain.m(), chain.n());
    for (long long i = 0; i < planes; ++i)
        w.planes.push_back({SimplicialChain(chain.n() + 1, chain.m()), {}});
    return w;
}

NormBound flat_norm_bound(const SimplicialChain& chain, const SpanningComplex& complex) {
    const int n = chain.n();
    if (complex.base_dim() > n)
        throw std::invalid_argument("flat_norm_bound: complex has no cells of the chain dimension");
    std::vector<double> x = complex.express(chain);
    std::vector<double> res_w = complex.cell_masses(n);
    std::vector<double> span_w;
    if (complex.has_dim(n + 1)) span_w = complex.cell_masses(n + 1);

    SpanLpSolution sol = solve_span_lp(x, complex, n, res_w, span_w);

    NormBound out;
    out.kind = NormBound::Kind::flat;
    out.lambda = n + 1;
    out.value = sol.objective;
    SimplicialChain witness_chain = sol.spanning.empty()
                                        ? SimplicialChain(n + 1, chain.m())
                                        : complex.chain_from_coefficients(n + 1, sol.spanning);
    out.witness.lambda = n + 1;
    out.witness.planes.push_back({witness_chain, {}});

    SimplicialChain residual = complex.chain_from_coefficients(n, sol.residual);
    long long planes = binomial(chain.m(), n);
    for (long long i = 0; i < planes; ++i)
        out.residual_masses.push_back(projected_mass(residual, static_cast<int>(i), n).value);
    return out;
}

NormBound natural_norm_eval(const SimplicialChain& chain, double lambda,
                            const SpanningWitness& witness) {
    const int n = chain.n();
    const int m = chain.m();
    if (!(lambda > n && lambda <= m + 1e-12))
        throw std::invalid_argument("natural_norm_eval: need n < lambda <= m");
    if (std::abs(witness.lambda - lambda) > 1e-9)
        throw std::invalid_argument("natural_norm_eval: witness lambda mismatch");
    const long long nplanes = binomial(m, n);
    if (!witness.planes.empty() && static_cast<long long>(witness.planes.size()) != nplanes)
        throw std::invalid_argument("natural_norm_eval: witness plane count mismatch");

    NormBound out;
    out.kind = NormBound::Kind::natural;
    out.lambda = lambda;
    out.witness = witness;
    if (out.witness.planes.empty()) out.witness = zero_witness(chain, lambda);

    for (long long i = 0; i < nplanes; ++i) {
        const auto& entry = out.witness.planes[static_cast<size_t>(i)];
        if (!entry.chain.empty() &&
            (entry.chain.n() != n + 1 || entry.chain.m() != m))
            throw std::invalid_argument("natural_norm_eval: witness chain dimension mismatch");
        SimplicialChain residual =
            entry.chain.empty() ? chain : chain - boundary(entry.chain);
        residual = reduce_if_cheap(residual);
        double res_mass = projected_mass(residual, static_cast<int>(i), n).value;

        double child_value = 0.0;
        if (!entry.chain.empty()) {
            const SimplicialChain& c = entry.chain;
            if (lambda <= c.n() + 1e-12) {
                child_value = natural_norm_base(c, lambda).value;
            } else if (!entry.children.empty()) {
                child_value = natural_norm_eval(c, lambda, entry.children.front()).value;
            } else {
                child_value = natural_norm_eval(c, lambda, zero_witness(c, lambda)).value;
            }
        }
        out.residual_masses.push_back(res_mass);
        out.per_plane_values.push_back(res_mass + child_value);
        out.value += res_mass + child_value;
    }
    return out;
}

namespace {

// deterministic xorshift for seeded greedy restarts
struct SmallRng {
    uint64_t state;
    explicit SmallRng(uint64_t seed) : state(seed * 2654435761u + 1442695040888963407ull) {}
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
};

std::vector<double> rounded_to_unit(const std::vector<double>& v) {
    std::vector<double> out(v.size(), 0.0);
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 0.5) out[i] = 1.0;
        else if (v[i] < -0.5) out[i] = -1.0;
    }
    return out;
}

struct Depth2Context {
    const SpanningComplex* complex;
    int n;
    double lambda;
    std::vector<double> x;                          // A on n-cells
    std::vector<double> res_w;                      // per outer plane weights (set per plane)
    std::vector<std::vector<double>> w2;            // per (n+1)-plane: projected masses of (n+1)-cells
    std::vector<double> w3;                         // per (n+2)-cell: base-norm weight
    long long planes2 = 0;
};

// full objective for candidate c: outer residual + sum_j inner LPs
double depth2_objective(const Depth2Context& ctx, const std::vector<double>& c,
                        std::vector<std::vector<double>>* d_out) {
    double total = 0.0;
    std::vector<double> dc = ctx.complex->apply_incidence(ctx.n, c);
    for (size_t t = 0; t < ctx.x.size(); ++t)
        total += std::abs(ctx.x[t] - dc[t]) * ctx.res_w[t];
    if (d_out) d_out->clear();
    for (long long j = 0; j < ctx.planes2; ++j) {
        SpanLpSolution inner = solve_span_lp(c, *ctx.complex, ctx.n + 1,
                                             ctx.w2[static_cast<size_t>(j)], ctx.w3);
        total += inner.objective;
        if (d_out) d_out->push_back(inner.spanning);
    }
    return total;
}

}  // namespace

NormBound natural_norm_search(const SimplicialChain& chain, double lambda,
                              const SpanningComplex& complex, int budget,
                              const SpanningWitness* seed) {
    const int n = chain.n();
    const int m = chain.m();
    if (budget <= 0) throw std::invalid_argument("natural_norm_search: budget must be positive");
    if (!(lambda > n && lambda <= m + 1e-12))
        throw std::invalid_argument("natural_norm_search: need n < lambda <= m");

    const long long nplanes = binomial(m, n);
    std::vector<double> x = complex.express(chain);

    if (lambda <= n + 1 + 1e-12) {
        // Linear level: the per-plane objective is linear in the coefficient
        // magnitudes (the lambda power applies to the fixed cell masses), so
        // each plane is one exact LP.
        double exponent = lambda / static_cast<double>(n + 1);
        std::vector<double> span_w;
        if (complex.has_dim(n + 1)) {
            long long planes_child = binomial(m, n + 1);
            span_w.assign(complex.cells(n + 1).size(), 0.0);
            for (long long j = 0; j < planes_child; ++j) {
                auto pj = complex.projected_cell_masses(n + 1, static_cast<int>(j), exponent);
                for (size_t s = 0; s < span_w.size(); ++s) span_w[s] += pj[s];
            }
        }
        SpanningWitness w;
        w.lambda = lambda;
        for (long long i = 0; i < nplanes; ++i) {
            std::vector<double> res_w = complex.projected_cell_masses(n, static_cast<int>(i), 1.0);
            SpanLpSolution sol = solve_span_lp(x, complex, n, res_w, span_w);
            SimplicialChain ci = sol.spanning.empty()
                                     ? SimplicialChain(n + 1, m)
                                     : complex.chain_from_coefficients(n + 1, sol.spanning);
            w.planes.push_back({ci, {}});
        }
        NormBound found = natural_norm_eval(chain, lambda, w);
        NormBound zero = natural_norm_eval(chain, lambda, zero_witness(chain, lambda));
        if (zero.value < found.value) found = zero;
        if (seed) {
            NormBound seeded = natural_norm_eval(chain, lambda, *seed);
            if (seeded.value < found.value) found = seeded;
        }
        return found;
    }

    if (lambda > n + 2 + 1e-12)
        throw std::invalid_argument(
            "natural_norm_search: recursion deeper than two levels is not supported");
    if (!complex.has_dim(n + 1))
        throw std::invalid_argument("natural_norm_search: complex lacks (n+1)-cells");

    // Concave-looking two-level case: integer coefficients on (n+1)-cells,
    // greedy descent with exact inner LPs on the (n+2)-cells.
    Depth2Context ctx;
    ctx.complex = &complex;
    ctx.n = n;
    ctx.lambda = lambda;
    ctx.x = x;
    ctx.planes2 = binomial(m, n + 1);
    for (long long j = 0; j < ctx.planes2; ++j)
        ctx.w2.push_back(complex.projected_cell_masses(n + 1, static_cast<int>(j), 1.0));
    if (complex.has_dim(n + 2)) {
        long long planes3 = binomial(m, n + 2);
        ctx.w3.assign(complex.cells(n + 2).size(), 0.0);
        double exponent3 = lambda / static_cast<double>(n + 2);
        for (long long l = 0; l < planes3; ++l) {
            auto pl = complex.projected_cell_masses(n + 2, static_cast<int>(l), exponent3);
            for (size_t s = 0; s < ctx.w3.size(); ++s) ctx.w3[s] += pl[s];
        }
    }

    const size_t ncells = complex.cells(n + 1).size();
    std::vector<std::vector<double>> starts;
    starts.emplace_back(ncells, 0.0);
    for (const auto& [name, hint] : complex.hints())
        if (hint.first == n + 1 && hint.second.size() == ncells)
            starts.push_back(rounded_to_unit(hint.second));
    if (seed) {
        for (const auto& entry : seed->planes) {
            if (entry.chain.empty() || entry.chain.n() != n + 1) continue;
            try {
                starts.push_back(rounded_to_unit(complex.express(entry.chain)));
            } catch (const std::runtime_error&) {
            }
        }
    }
    {
        // surrogate LP start: treat the child norm linearly and round
        std::vector<double> span_w(ncells, 0.0);
        for (long long j = 0; j < ctx.planes2; ++j)
            for (size_t s = 0; s < ncells; ++s) span_w[s] += ctx.w2[static_cast<size_t>(j)][s];
        std::vector<double> res_w(x.size(), 0.0);
        for (long long i = 0; i < nplanes; ++i) {
            auto wi = complex.projected_cell_masses(n, static_cast<int>(i), 1.0);
            for (size_t t = 0; t < res_w.size(); ++t) res_w[t] += wi[t];
        }
        SpanLpSolution sur = solve_span_lp(x, complex, n, res_w, span_w);
        if (!sur.spanning.empty()) starts.push_back(rounded_to_unit(sur.spanning));
    }
    while (static_cast<int>(starts.size()) < budget) {
        SmallRng rng(static_cast<uint64_t>(starts.size()) * 7919u);
        std::vector<double> s(ncells, 0.0);
        for (size_t i = 0; i < ncells; ++i) {
            uint64_t r = rng.next() % 8;
            if (r == 0) s[i] = 1.0;
            else if (r == 1) s[i] = -1.0;
        }
        starts.push_back(std::move(s));
    }
    if (static_cast<int>(starts.size()) > budget)
        starts.resize(static_cast<size_t>(std::max(budget, 2)));

    SpanningWitness best_witness = zero_witness(chain, lambda);

    for (long long i = 0; i < nplanes; ++i) {
        ctx.res_w = complex.projected_cell_masses(n, static_cast<int>(i), 1.0);
        double plane_best = -1.0;
        std::vector<double> plane_best_c;
        std::vector<std::vector<double>> plane_best_d;
        for (const auto& start : starts) {
            std::vector<double> c = start;
            std::vector<std::vector<double>> d;
            double g = depth2_objective(ctx, c, &d);
            for (int iter = 0; iter < 8; ++iter) {
                // frozen-d coordinate sweeps
                std::vector<double> r = ctx.x;
                std::vector<double> dc = complex.apply_incidence(n, c);
                for (size_t t = 0; t < r.size(); ++t) r[t] -= dc[t];
                std::vector<std::vector<double>> e;
                for (long long j = 0; j < ctx.planes2; ++j) {
                    std::vector<double> ej = c;
                    if (!d[static_cast<size_t>(j)].empty()) {
                        auto dd = complex.apply_incidence(n + 1, d[static_cast<size_t>(j)]);
                        for (size_t s = 0; s < ej.size(); ++s) ej[s] -= dd[s];
                    }
                    e.push_back(std::move(ej));
                }
                const auto& inc = complex.incidence(n);
                bool moved = false;
                for (int sweep = 0; sweep < 4; ++sweep) {
                    double best_delta = -1e-12;
                    size_t best_cell = 0;
                    double best_step = 0.0;
                    for (size_t rho = 0; rho < ncells; ++rho) {
                        for (double step : {1.0, -1.0}) {
                            double nv = c[rho] + step;
                            if (nv < -1.0 || nv > 1.0) continue;
                            double delta = 0.0;
                            for (const auto& entry : inc[rho]) {
                                double rt = r[static_cast<size_t>(entry.row)];
                                delta += ctx.res_w[static_cast<size_t>(entry.row)] *
                                         (std::abs(rt - step * entry.sign) - std::abs(rt));
                            }
                            for (long long j = 0; j < ctx.planes2; ++j) {
                                double ev = e[static_cast<size_t>(j)][rho];
                                delta += ctx.w2[static_cast<size_t>(j)][rho] *
                                         (std::abs(ev + step) - std::abs(ev));
                            }
                            if (delta < best_delta) {
                                best_delta = delta;
                                best_cell = rho;
                                best_step = step;
                            }
                        }
                    }
                    if (best_step == 0.0) break;
                    c[best_cell] += best_step;
                    for (const auto& entry : inc[best_cell])
                        r[static_cast<size_t>(entry.row)] -= best_step * entry.sign;
                    for (long long j = 0; j < ctx.planes2; ++j)
                        e[static_cast<size_t>(j)][best_cell] += best_step;
                    moved = true;
                }
                double g2 = depth2_objective(ctx, c, &d);
                if (!moved || g2 >= g - 1e-12) {
                    g = std::min(g, g2);
                    break;
                }
                g = g2;
            }
            if (plane_best < 0.0 || g < plane_best) {
                plane_best = g;
                plane_best_c = c;
                plane_best_d = d;
            }
        }
        // install the plane's best chain into the witness
        auto& entry = best_witness.planes[static_cast<size_t>(i)];
        entry.chain = complex.chain_from_coefficients(n + 1, plane_best_c);
        entry.children.clear();
        if (!entry.chain.empty()) {
            SpanningWitness child;
            child.lambda = lambda;
            for (long long j = 0; j < ctx.planes2; ++j) {
                SimplicialChain dj =
                    (static_cast<size_t>(j) < plane_best_d.size() &&
                     !plane_best_d[static_cast<size_t>(j)].empty())
                        ? complex.chain_from_coefficients(n + 2, plane_best_d[static_cast<size_t>(j)])
                        : SimplicialChain(n + 2, m);
                child.planes.push_back({dj, {}});
            }
            entry.children.push_back(std::move(child));
        }
    }

    NormBound out = natural_norm_eval(chain, lambda, best_witness);
    NormBound zero = natural_norm_eval(chain, lambda, zero_witness(chain, lambda));
    if (zero.value < out.value) out = zero;
    if (seed) {
        NormBound seeded = natural_norm_eval(chain, lambda, *seed);
        if (seeded.value < out.value) out = seeded;
    }
    return out;
}

double whitney_integral_bound(const SimplicialChain& chain, const SimplicialChain& spanning,
                              const PolynomialForm& form) {
    const int n = chain.n();
    if (spanning.n() != n + 1 || spanning.m() != chain.m())
        throw std::invalid_argument("whitney_integral_bound: C must be an (n+1)-chain in the same space");
    if (form.degree() != n || form.ambient() != chain.m())
        throw std::invalid_argument("whitney_integral_bound: form degree/ambient mismatch");

    SimplicialChain residual = spanning.empty() ? chain : chain - boundary(spanning);
    residual = reduce_if_cheap(residual);

    std::vector<const SimplicialChain*> boxed = {&chain};
    if (!spanning.empty()) boxed.push_back(&spanning);
    Box box = chain_box(boxed, 1e-3);

    double omega0 = form_norm(form, 0, 0.0, box).value;
    double domega0 = 0.0;
    if (!spanning.empty()) {
        PolynomialForm d = exterior_derivative(form);
        domega0 = form_norm(d, 0, 0.0, box).value;
    }
    return mass(residual).value * omega0 + mass(spanning).value * domega0;
}

}  // namespace chainnorm
