#include "lorentz/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lorentz/duality.hpp"

namespace lorentz {

namespace {

// Smallest q with every interior knot of f on the grid b * j / q, or 0.
std::size_t alignment_base(const StepFunction& f, std::size_t limit) {
    const double b = f.support_end();
    std::size_t base = 1;
    const auto& ps = f.pieces();
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        double x = ps[i].b / b;
        std::size_t found = 0;
        for (std::size_t q = 1; q <= limit; ++q) {
            double y = x * static_cast<double>(q);
            if (std::abs(y - std::round(y)) <= 1e-9) {
                found = q;
                break;
            }
        }
        if (found == 0) return 0;
        base = std::lcm(base, found);
        if (base > limit) return 0;
    }
    return base;
}

struct Grid {
    std::vector<double> edges;
    std::vector<double> g;
};

// upper = true takes the cell supremum of f instead of its average.
// Smallest number >= b with 20 significant bits; grids over it have exact edges.
double dyadic_ceil(double b) {
    int ex = 0;
    std::frexp(b, &ex);
    const double scale = std::ldexp(1.0, 20 - ex);
    return std::ceil(b * scale) / scale;
}

Grid build_grid(const StepFunction& f, double b, std::size_t cells, bool aligned, bool upper) {
    Grid gr;
    gr.edges.resize(cells + 1);
    for (std::size_t k = 0; k <= cells; ++k)
        gr.edges[k] = b * static_cast<double>(k) / static_cast<double>(cells);
    gr.edges[cells] = b;
    const auto& ps = f.pieces();
    if (aligned) {
        // Snap edges onto the knots so g_nu reproduces f exactly.
        for (const auto& p : ps) {
            auto j = static_cast<std::size_t>(std::llround(p.b / b * static_cast<double>(cells)));
            gr.edges[j] = p.b;
        }
    }
    gr.g.resize(cells);
    std::size_t i = 0;
    for (std::size_t k = 0; k < cells; ++k) {
        double lo = gr.edges[k], hi = gr.edges[k + 1];
        while (i < ps.size() && ps[i].b <= lo) ++i;
        if (i < ps.size() && ps[i].a <= lo && (upper || ps[i].b >= hi)) {
            gr.g[k] = ps[i].value;
            continue;
        }
        double mass = 0.0;
        for (std::size_t j = i; j < ps.size() && ps[j].a < hi; ++j) {
            double l = std::max(lo, ps[j].a), h = std::min(hi, ps[j].b);
            if (h > l) mass += ps[j].value * (h - l);
        }
        gr.g[k] = mass / (hi - lo);
    }
    return gr;
}

struct DiscreteLevel {
    std::vector<double> psi;
    std::vector<CellRange> blocks;
};

// Level function of the cell values g with respect to the step weight
// w_k = (right edge of cell k)^{-alpha}.
DiscreteLevel discrete_level(const Grid& gr, double alpha) {
    const std::size_t n = gr.g.size();
    std::vector<double> w(n), U(n + 1, 0.0), G(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double h = gr.edges[k + 1] - gr.edges[k];
        w[k] = std::pow(gr.edges[k + 1], -alpha);
        U[k + 1] = U[k] + w[k] * h;
        G[k + 1] = G[k] + gr.g[k] * h;
    }
    std::vector<std::size_t> hull = upper_concave_hull(U, G, 0.0);
    DiscreteLevel dl;
    dl.psi.resize(n);
    for (std::size_t t = 0; t + 1 < hull.size(); ++t) {
        std::size_t i = hull[t], j = hull[t + 1];
        double lam = (G[j] - G[i]) / (U[j] - U[i]);
        for (std::size_t k = i; k < j; ++k) dl.psi[k] = lam * w[k];
        // Rounding can leave a prefix of the block a few ulps short of g;
        // lift the first entry so the column shuffle applies exactly.
        long double run = 0.0L, worst = 0.0L;
        for (std::size_t k = i; k < j; ++k) {
            run += static_cast<long double>(dl.psi[k]) - gr.g[k];
            worst = std::min(worst, run);
        }
        if (worst < 0.0L) dl.psi[i] = static_cast<double>(dl.psi[i] - 2.0L * worst);
        dl.blocks.push_back({i, j});
    }
    return dl;
}

// (f - g)_+ for steps.
StepFunction positive_excess(const StepFunction& f, const StepFunction& g) {
    std::vector<double> xs;
    for (const auto& p : f.pieces()) xs.insert(xs.end(), {p.a, p.b});
    for (const auto& p : g.pieces()) xs.insert(xs.end(), {p.a, p.b});
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<StepPiece> out;
    std::size_t i = 0, j = 0;
    const auto& fp = f.pieces();
    const auto& gp = g.pieces();
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        double lo = xs[k], hi = xs[k + 1];
        while (i < fp.size() && fp[i].b <= lo) ++i;
        while (j < gp.size() && gp[j].b <= lo) ++j;
        double fv = (i < fp.size() && fp[i].a <= lo) ? fp[i].value : 0.0;
        double gv = (j < gp.size() && gp[j].a <= lo) ? gp[j].value : 0.0;
        if (fv > gv) out.push_back({lo, hi, fv - gv});
    }
    return StepFunction(std::move(out));
}

StepFunction cells_to_step(const std::vector<double>& edges, const std::vector<double>& vals) {
    std::vector<StepPiece> ps;
    ps.reserve(vals.size());
    for (std::size_t k = 0; k < vals.size(); ++k) ps.push_back({edges[k], edges[k + 1], vals[k]});
    return StepFunction(std::move(ps));
}

}  // namespace

StepFunction DecompositionCertificate::psi_function() const { return cells_to_step(grid, psi); }
StepFunction DecompositionCertificate::g_function() const { return cells_to_step(grid, g); }

StepFunction DecompositionCertificate::part(std::size_t i) const {
    const std::uint64_t r = row_breaks.at(i);
    std::vector<double> vals(cells());
    for (std::size_t k = 0; k < cells(); ++k) {
        std::uint64_t seen = 0;
        for (const auto& run : columns[k]) {
            if (r < seen + run.count) {
                vals[k] = run.value;
                break;
            }
            seen += run.count;
        }
    }
    return cells_to_step(grid, vals);
}

void DecompositionCertificate::visit_parts(
    const std::function<void(std::size_t, const std::vector<const ColumnRun*>&)>& fn) const {
    const std::size_t n = cells();
    std::vector<std::size_t> idx(n, 0);
    std::vector<std::uint64_t> end(n, 0);
    std::vector<const ColumnRun*> at(n, nullptr);
    for (std::size_t k = 0; k < n; ++k) end[k] = columns[k].empty() ? 0 : columns[k][0].count;
    for (std::size_t i = 0; i < part_count(); ++i) {
        const std::uint64_t r = row_breaks[i];
        for (std::size_t k = 0; k < n; ++k) {
            while (r >= end[k]) end[k] += columns[k][++idx[k]].count;
            at[k] = &columns[k][idx[k]];
        }
        fn(i, at);
    }
}

std::vector<StepFunction> DecompositionCertificate::parts() const {
    std::vector<StepFunction> out;
    out.reserve(part_count());
    std::vector<double> vals(cells());
    visit_parts([&](std::size_t, const std::vector<const ColumnRun*>& at) {
        for (std::size_t k = 0; k < at.size(); ++k) vals[k] = at[k]->value;
        out.push_back(cells_to_step(grid, vals));
    });
    return out;
}

DecompositionCertificate epsilon_decomposition(const StepFunction& f, const Exponents& e, double epsilon,
                                               const DecompositionOptions& opt) {
    if (!(e.p < e.s)) throw InvalidArgument("epsilon_decomposition: requires p < s");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be > 0");
    if (opt.initial_nu == 0) throw InvalidArgument("initial_nu must be >= 1");

    DecompositionCertificate c;
    c.exps = e;
    c.epsilon = epsilon;
    const StepFunction fs = rearrange(f);
    if (fs.empty()) {
        c.converged = true;
        c.aligned = true;
        return c;
    }
    c.lower_bound = dual_norm(fs, e).value;
    std::size_t base = alignment_base(fs, std::max<std::size_t>(1, opt.max_cells / opt.initial_nu));
    c.aligned = base != 0;
    c.base = c.aligned ? base : 1;
    // Unaligned grids may overhang the support slightly in exchange for exact cell widths.
    const double b = c.aligned ? fs.support_end() : dyadic_ceil(fs.support_end());
    c.support_end = b;

    Grid grid;
    DiscreteLevel dl;
    for (std::size_t nu = opt.initial_nu;; nu *= 2) {
        std::size_t cells = c.base * nu;
        if (cells > opt.max_cells && !grid.g.empty()) break;
        c.nu = nu;
        bool first = true;
        for (bool upper : {false, true}) {
            if (upper && c.aligned) break;  // both envelopes coincide with f
            Grid gr = build_grid(fs, c.support_end, cells, c.aligned, upper);
            DiscreteLevel d = discrete_level(gr, e.alpha);
            double pn = lorentz_norm(cells_to_step(gr.edges, d.psi), e).value;
            double ae = lorentz_norm(positive_excess(fs, cells_to_step(gr.edges, gr.g)), e).value;
            if (first || pn + ae < c.psi_norm + c.approx_error) {
                grid = std::move(gr);
                dl = std::move(d);
                c.psi_norm = pn;
                c.approx_error = ae;
                c.upper_envelope = upper;
            }
            first = false;
        }
        if (c.approx_error < epsilon && c.psi_norm <= c.lower_bound + epsilon) {
            c.converged = true;
            break;
        }
        if (cells * 2 > opt.max_cells) break;
    }
    c.grid = std::move(grid.edges);
    c.g = std::move(grid.g);
    c.psi = std::move(dl.psi);
    c.blocks = std::move(dl.blocks);

    const double scale = e.s_infinite() ? 1.0 : std::pow(e.s / e.p, 1.0 / e.s);
    c.delta = 0.5 * epsilon * std::pow(b, -1.0 / e.p) * scale;
    c.chi_norm = e.char_norm() * std::pow(b, 1.0 / e.p);
    const double psi_max = *std::max_element(c.psi.begin(), c.psi.end());
    double ratio = std::floor(psi_max / c.delta) + 1.0;
    if (ratio > 4e18) throw InvalidArgument("epsilon_decomposition: part count overflows");
    c.N = static_cast<std::uint64_t>(ratio);
    while (!(psi_max < static_cast<double>(c.N) * c.delta)) ++c.N;
    const double Nd = static_cast<double>(c.N);

    c.columns.assign(c.cells(), Column{});
    for (const auto& blk : c.blocks) {
        std::vector<Column> cols;
        std::vector<double> alphas;
        for (std::size_t k = blk.begin; k < blk.end; ++k) {
            cols.push_back({ColumnRun{c.N, c.psi[k] / Nd, static_cast<std::uint32_t>(k)}});
            alphas.push_back(c.g[k]);
        }
        shuffle_columns(cols, alphas);
        for (std::size_t k = blk.begin; k < blk.end; ++k) c.columns[k] = std::move(cols[k - blk.begin]);
    }

    c.column_sums.resize(c.cells());
    std::vector<std::uint64_t> breaks{0, c.N};
    for (std::size_t k = 0; k < c.cells(); ++k) {
        long double acc = 0.0L;
        std::uint64_t seen = 0;
        for (const auto& run : c.columns[k]) {
            acc += static_cast<long double>(run.count) * run.value;
            seen += run.count;
            breaks.push_back(seen);
        }
        c.column_sums[k] = static_cast<double>(acc);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    c.row_breaks = std::move(breaks);

    std::vector<double> scaled_psi(c.psi);
    for (double& v : scaled_psi) v /= Nd;
    c.part_norm = lorentz_norm(cells_to_step(c.grid, scaled_psi), e).value;
    c.upper_bound = Nd * c.part_norm + c.delta * c.chi_norm + c.approx_error;
    return c;
}

CertificateCheck check_certificate(const DecompositionCertificate& c, bool literal, std::size_t norm_samples) {
    CertificateCheck out;
    const double eps = c.epsilon;
    out.bracket_ok = c.lower_bound <= c.upper_bound + 1e-12 * std::max(1.0, c.upper_bound) &&
                     c.upper_bound - c.lower_bound <= 4.0 * eps + 1e-9;
    const std::size_t n = c.cells();
    if (n == 0) {
        out.cover_ok = out.permutation_ok = out.norms_ok = true;
        return out;
    }
    const std::size_t D = c.part_count();
    std::vector<std::size_t> block_of(n);
    for (std::size_t b = 0; b < c.blocks.size(); ++b)
        for (std::size_t k = c.blocks[b].begin; k < c.blocks[b].end; ++k) block_of[k] = b;

    std::vector<bool> sample(D, literal);
    if (!literal && D > 0) {
        std::size_t m = std::min(D, std::max<std::size_t>(norm_samples, 2));
        for (std::size_t t = 0; t < m; ++t) sample[(D - 1) * t / (m - 1 == 0 ? 1 : m - 1)] = true;
    }

    const double Nd = static_cast<double>(c.N);
    const double target = c.psi_norm / Nd;
    std::vector<long double> acc(n, 0.0L);
    std::vector<std::size_t> stamp(n, static_cast<std::size_t>(-1));
    std::vector<double> vals(n);
    out.permutation_ok = true;
    c.visit_parts([&](std::size_t i, const std::vector<const ColumnRun*>& at) {
        for (std::size_t k = 0; k < n; ++k) {
            const ColumnRun& r = *at[k];
            const std::size_t src = r.src;
            bool ok = src < n && block_of[src] == block_of[k] && stamp[src] != i && r.value == c.psi[src] / Nd;
            if (!ok) out.permutation_ok = false;
            if (src < n) stamp[src] = i;
            vals[k] = r.value;
            if (literal) acc[k] += static_cast<long double>(c.multiplicity(i)) * r.value;
        }
        if (sample[i]) {
            double v = lorentz_norm(cells_to_step(c.grid, vals), c.exps).value;
            out.norm_worst_rel = std::max(out.norm_worst_rel, std::abs(v - target) / target);
            ++out.norms_checked;
        }
    });
    // Edges b k / n of a non-dyadic grid are rounded, so cell lengths jitter by
    // about an ulp of b and permuted parts drift apart by up to ~n ulps.
    out.norms_ok = out.norm_worst_rel <= 1e-12 + 8.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();

    out.cover_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        double sum = literal ? static_cast<double>(acc[k]) : c.column_sums[k];
        out.cover_margin = std::min(out.cover_margin, sum + c.delta - c.g[k]);
    }
    out.cover_ok = out.cover_margin >= 0.0;
    return out;
}

CharDecomposition char_decomposition(const Exponents& e, std::size_t N, std::size_t cells) {
    if (!(e.p < e.s) || e.s_infinite()) throw InvalidArgument("char_decomposition: requires p < s < inf");
    if (N == 0) throw InvalidArgument("char_decomposition: N must be >= 1");
    if (cells < 64 * N || cells % N != 0)
        throw InvalidArgument("char_decomposition: cells must be a multiple of N and >= 64 N");
    const double alpha = e.alpha;
    const double h = 1.0 / static_cast<double>(cells);
    const std::size_t m = cells / N;
    // int over one cell of Phi(y) = floor(y) + frac(y)^{1-alpha}, y = j h + (0, h).
    auto cell_mass = [&](std::size_t j) {
        std::size_t r = j % cells;
        double lo = static_cast<double>(r) * h;
        return monomial_mass(1.0, alpha - 1.0, lo, lo + h);
    };
    std::vector<double> edges(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) edges[i] = static_cast<double>(i) * h;
    edges[cells] = 1.0;

    CharDecomposition out;
    std::vector<std::vector<double>> vals(N, std::vector<double>(cells));
    for (std::size_t i = 0; i < cells; ++i) {
        for (std::size_t k = 1; k <= N; ++k) {
            std::size_t j1 = i + k * m, j0 = i + (k - 1) * m;
            double dn = static_cast<double>(j1 / cells) - static_cast<double>(j0 / cells);
            vals[k - 1][i] = (dn * h + (cell_mass(j1) - cell_mass(j0))) / h;
        }
    }
    for (std::size_t i = 0; i < cells; ++i) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k < N; ++k) acc += vals[k][i];
        out.partition_error = std::max(out.partition_error, static_cast<double>(std::abs(acc - 1.0L)));
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        out.parts.push_back(cells_to_step(edges, vals[k]));
        double v = lorentz_norm(out.parts.back(), e).value;
        out.part_norms.push_back(v);
        out.sum_of_norms += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out.norm_spread = hi > 0.0 ? (hi - lo) / hi : 0.0;
    return out;
}

TriangleCheck triangle_check(const std::vector<StepFunction>& fs, const Exponents& e) {
    TriangleCheck r;
    r.lhs = lorentz_norm(sum(fs), e).value;
    double acc = 0.0;
    for (const auto& f : fs) acc += lorentz_norm(f, e).value;
    r.rhs = e.c_ps * acc;
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    return r;
}

TriangleCheck minkowski_check(const std::vector<StepFunction>& rows, const std::vector<double>& weights,
                              const Exponents& e) {
    if (rows.size() != weights.size()) throw InvalidArgument("minkowski_check: one weight per row");
    for (double w : weights)
        if (!(w > 0.0)) throw InvalidArgument("minkowski_check: weights must be > 0");
    TriangleCheck r;
    r.lhs = lorentz_norm(sum(rows, weights), e).value;
    double acc = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) acc += weights[i] * lorentz_norm(rows[i], e).value;
    r.rhs = e.c_ps * acc;
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    return r;
}

}  // namespace lorentz
