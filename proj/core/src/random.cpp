#include "lorentz/random.hpp"

#include <algorithm>
#include <numeric>

namespace lorentz {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t count_in(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// n sorted cut points splitting (0, total) into pieces no shorter than total * 1e-3.
std::vector<double> cut_points(Rng& rng, std::size_t n, double total) {
    std::vector<double> w(n);
    for (double& x : w) x = uniform(rng, 1e-3, 1.0);
    double sum = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<double> out;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += w[i];
        out.push_back(i + 1 == n ? total : total * acc / sum);
    }
    return out;
}

}  // namespace

StepFunction random_step(Rng& rng, const CorpusOptions& opt) {
    if (opt.nonincreasing) return random_nonincreasing(rng, opt);
    const std::size_t n = count_in(rng, 1, std::max<std::size_t>(1, opt.max_pieces));
    const double b = uniform(rng, 0.25, 1.0) * opt.max_support;
    std::vector<double> cuts = cut_points(rng, n, b);
    std::vector<StepPiece> ps;
    double a = 0.0;
    for (double c : cuts) {
        double v = uniform(rng, opt.min_value, opt.max_value);
        if (opt.allow_gaps && std::bernoulli_distribution(0.2)(rng)) v = 0.0;
        ps.push_back({a, c, v});
        a = c;
    }
    return StepFunction(std::move(ps));
}

StepFunction random_nonincreasing(Rng& rng, const CorpusOptions& opt) {
    const std::size_t n = count_in(rng, 1, std::max<std::size_t>(1, opt.max_pieces));
    const double b = uniform(rng, 0.25, 1.0) * opt.max_support;
    std::vector<double> cuts = cut_points(rng, n, b);
    std::vector<double> vals(n);
    for (double& v : vals) v = uniform(rng, opt.min_value, opt.max_value);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    std::vector<StepPiece> ps;
    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ps.push_back({a, cuts[i], vals[i]});
        a = cuts[i];
    }
    return StepFunction(std::move(ps));
}

std::vector<StepFunction> random_corpus(std::uint64_t seed, std::size_t count, const CorpusOptions& opt) {
    std::vector<StepFunction> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(seed + i);
        out.push_back(random_step(rng, opt));
    }
    return out;
}

StepFunction random_majorant(const StepFunction& f, Rng& rng) {
    StepFunction g = rearrange(f);
    if (g.empty()) return g;
    // Compression t -> c t with mass kept: c f*(c t), c >= 1.
    const double c = uniform(rng, 1.0, 1.5);
    std::vector<StepPiece> ps;
    for (const auto& p : g.pieces()) ps.push_back({p.a / c, p.b / c, p.value * c});
    // Move a share of one later piece's mass onto the first piece.
    if (ps.size() >= 2) {
        std::size_t k = count_in(rng, 1, ps.size() - 1);
        double share = uniform(rng, 0.0, 0.9);
        double m = share * ps[k].value * (ps[k].b - ps[k].a);
        ps[k].value -= m / (ps[k].b - ps[k].a);
        ps[0].value += m / (ps[0].b - ps[0].a);
    }
    return StepFunction(std::move(ps));
}

StepFunction random_minorant(const StepFunction& f, Rng& rng) {
    std::vector<StepPiece> ps;
    for (const auto& p : f.pieces()) ps.push_back({p.a, p.b, p.value * uniform(rng, 0.0, 1.0)});
    return StepFunction(std::move(ps));
}

StepFunction random_shuffle(const StepFunction& f, Rng& rng) {
    std::vector<StepPiece> ps = f.pieces();
    std::vector<std::size_t> order(ps.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<StepPiece> out;
    double a = 0.0;
    for (std::size_t i : order) {
        double len = ps[i].b - ps[i].a;
        // Random gap before each piece; gaps do not change the distribution.
        a += uniform(rng, 0.0, 0.5) * len;
        out.push_back({a, a + len, ps[i].value});
        a += len;
    }
    return StepFunction(std::move(out));
}

ShuffleInstance random_shuffle_instance(Rng& rng, std::size_t N, std::size_t nu) {
    ShuffleInstance inst;
    inst.eta.assign(N, std::vector<double>(nu));
    std::vector<double> beta(nu, 0.0);
    for (auto& row : inst.eta)
        for (std::size_t k = 0; k < nu; ++k) {
            // (0, 1]: 1 - U with U in [0, 1)
            row[k] = 1.0 - uniform(rng, 0.0, 1.0);
            beta[k] += row[k];
        }
    std::vector<double> a(nu);
    for (double& x : a) x = 1.0 - uniform(rng, 0.0, 1.0);
    std::sort(a.begin(), a.end(), std::greater<>());
    double scale = kInfinity, pb = 0.0, pa = 0.0;
    for (std::size_t k = 0; k < nu; ++k) {
        pb += beta[k];
        pa += a[k];
        scale = std::min(scale, pb / pa);
    }
    const bool tight = std::bernoulli_distribution(0.25)(rng);
    scale *= tight ? 1.0 : uniform(rng, 0.5, 1.0);
    // Slightly inside the boundary so rounding cannot break feasibility.
    scale *= 1.0 - 1e-13;
    inst.alphas.resize(nu);
    for (std::size_t k = 0; k < nu; ++k) inst.alphas[k] = a[k] * scale;
    return inst;
}

std::vector<double> grid_p_values() { return {1.25, 1.5, 2.0, 3.0, 8.0}; }
std::vector<double> grid_s_values() { return {1.5, 2.0, 4.0, 16.0, kInfinity}; }

std::vector<Exponents> exponent_grid(bool only_p_below_s) {
    std::vector<Exponents> out;
    for (double p : grid_p_values())
        for (double s : grid_s_values())
            if (!only_p_below_s || p < s) out.push_back(Exponents::make(p, s));
    return out;
}

}  // namespace lorentz
