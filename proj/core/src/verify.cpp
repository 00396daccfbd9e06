#include "lorentz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "lorentz/decomposition.hpp"
#include "lorentz/duality.hpp"
#include "lorentz/io.hpp"
#include "lorentz/level.hpp"
#include "lorentz/random.hpp"

namespace lorentz {

namespace {

// Counts cases and tracks the largest excess lhs - rhs seen.
class Tally {
public:
    void le(double lhs, double rhs, double slack) { record(lhs - rhs, lhs - rhs > slack); }
    void eq(double a, double b, double tol) { record(std::abs(a - b), std::abs(a - b) > tol); }
    void truth(bool ok) { record(ok ? 0.0 : 1.0, !ok); }
    void note(const std::string& s) {
        if (out_.detail.empty()) out_.detail = s;
    }
    PropertyOutcome done() {
        if (out_.cases == 0) out_.worst = 0.0;
        return out_;
    }

private:
    void record(double excess, bool bad) {
        ++out_.cases;
        if (out_.cases == 1 || excess > out_.worst) out_.worst = excess;
        if (bad) ++out_.violations;
    }
    PropertyOutcome out_;
};

Rng trial_rng(const VerifyContext& ctx, std::uint64_t salt, std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(ctx.seed), static_cast<std::uint32_t>(ctx.seed >> 32),
                      static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(i)};
    return Rng(seq);
}

double rel(double a) { return std::max(1.0, std::abs(a)); }

CorpusOptions nonincreasing_opts() {
    CorpusOptions o;
    o.nonincreasing = true;
    return o;
}

CorpusOptions gappy_opts() {
    CorpusOptions o;
    o.allow_gaps = true;
    return o;
}

std::vector<double> alpha_grid() {
    std::vector<double> out;
    for (const auto& e : exponent_grid(true)) out.push_back(e.alpha);
    return out;
}

// Distribution function |{f > y}|.
double distribution(const StepFunction& f, double y) {
    double m = 0.0;
    for (const auto& p : f.pieces())
        if (p.value > y) m += p.b - p.a;
    return m;
}

// Raw (not rearranged) f2 with int_0^t f1 <= int_0^t f2 for all t.
StepFunction shift_left(const StepFunction& f, Rng& rng) {
    std::vector<StepPiece> ps = f.pieces();
    if (ps.size() < 2) return f.scaled(1.0 + std::uniform_real_distribution<double>(0.0, 0.5)(rng));
    std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
    std::size_t i = pick(rng), j = pick(rng);
    if (i > j) std::swap(i, j);
    if (i == j) return f;
    double m = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * ps[j].value * (ps[j].b - ps[j].a);
    ps[j].value -= m / (ps[j].b - ps[j].a);
    ps[i].value += m / (ps[i].b - ps[i].a);
    ps[j].value = std::max(ps[j].value, 0.0);
    return StepFunction(std::move(ps));
}

// Brute force over per-row cyclic shifts: does some choice meet alpha_k <= beta_k + eta?
bool cyclic_assignment_exists(const ShuffleInstance& inst) {
    const std::size_t N = inst.eta.size(), nu = inst.alphas.size();
    const double eta = inst.eta_max();
    std::vector<std::size_t> shift(N, 0);
    while (true) {
        bool ok = true;
        for (std::size_t k = 0; k < nu && ok; ++k) {
            double col = 0.0;
            for (std::size_t j = 0; j < N; ++j) col += inst.eta[j][(k + shift[j]) % nu];
            ok = inst.alphas[k] <= col + eta + 1e-12;
        }
        if (ok) return true;
        std::size_t j = 0;
        while (j < N && ++shift[j] == nu) shift[j++] = 0;
        if (j == N) return false;
    }
}

bool shuffle_output_ok(const ShuffleInstance& inst, const ShuffleResult& r, double* excess) {
    const std::size_t N = inst.eta.size(), nu = inst.alphas.size();
    const double eta = inst.eta_max();
    bool ok = true;
    double worst = -kInfinity;
    for (std::size_t k = 0; k < nu; ++k) {
        double col = 0.0;
        for (std::size_t j = 0; j < N; ++j) col += r.permuted[j][k];
        double ex = inst.alphas[k] - col - eta;
        worst = std::max(worst, ex);
        if (ex > 1e-12) ok = false;
    }
    for (std::size_t j = 0; j < N; ++j) {
        std::vector<std::size_t> perm = r.perms[j];
        for (std::size_t k = 0; k < nu; ++k)
            if (perm[k] >= nu || r.permuted[j][k] != inst.eta[j][perm[k]]) ok = false;
        std::sort(perm.begin(), perm.end());
        for (std::size_t k = 0; k < nu; ++k)
            if (perm[k] != k) ok = false;
    }
    if (excess) *excess = worst;
    return ok;
}

const std::vector<std::pair<double, double>>& decomposition_exponents() {
    static const std::vector<std::pair<double, double>> v{{2.0, 4.0}, {3.0, 16.0}, {8.0, 16.0}, {2.0, kInfinity}};
    return v;
}

std::vector<Property> build_registry() {
    std::vector<Property> r;
    auto add = [&](std::string name, std::string module, std::string statement,
                   std::function<PropertyOutcome(const VerifyContext&)> fn) {
        r.push_back({std::move(name), std::move(module), std::move(statement), std::move(fn)});
    };

    // ---- functions ----
    add("rearrange_idempotent", "functions", "rearrange(rearrange(f)) == rearrange(f) exactly",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 1, i);
                StepFunction r1 = rearrange(random_step(rng, gappy_opts()));
                t.truth(rearrange(r1) == r1 && r1.is_nonincreasing());
            }
            return t.done();
        });
    add("rearrange_lq_mass", "functions", "int f^q = int (f*)^q for q = 1, 2, 3 to 1e-12 relative",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 2, i);
                StepFunction f = random_step(rng, gappy_opts());
                StepFunction g = rearrange(f);
                for (int q = 1; q <= 3; ++q) {
                    double a = 0.0, b = 0.0;
                    for (const auto& p : f.pieces()) a += std::pow(p.value, q) * (p.b - p.a);
                    for (const auto& p : g.pieces()) b += std::pow(p.value, q) * (p.b - p.a);
                    t.le(std::abs(a - b) / rel(a), 0.0, 1e-12);
                }
            }
            return t.done();
        });
    add("rearrange_equimeasurable", "functions", "distribution functions of f and f* agree at 100 levels",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 3, i);
                CorpusOptions o = gappy_opts();
                o.max_pieces = 20;
                StepFunction f = random_step(rng, o);
                StepFunction g = rearrange(f);
                for (int k = 0; k < 100; ++k) {
                    double y = f.max_value() * (k + 0.5) / 100.0;
                    t.eq(distribution(f, y), distribution(g, y), 1e-12 * rel(f.support_end()));
                }
            }
            return t.done();
        });
    add("maximal_dominates", "functions", "f**(t) >= f*(t) at knots and 64 samples per piece",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 4, i);
                StepFunction g = rearrange(random_step(rng, gappy_opts()));
                MaximalFunction m = maximal_function(g, true);
                for (const auto& p : g.pieces()) {
                    for (int k = 0; k <= 64; ++k) {
                        double x = p.a + (p.b - p.a) * (k == 0 ? 1e-9 : k / 64.0);
                        t.le(p.value - m(x), 0.0, 1e-12 * rel(p.value));
                    }
                }
            }
            return t.done();
        });
    add("precedes_reflexive_transitive", "functions", "f < f; f < g and g < h imply f < h",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 5, i);
                StepFunction f = random_step(rng, gappy_opts());
                t.truth(precedes(f, f).holds);
                StepFunction g = random_majorant(f, rng);
                StepFunction h = random_majorant(g, rng);
                t.truth(precedes(f, g).holds && precedes(g, h).holds && precedes(f, h).holds);
                // Unrelated triple: transitivity as an implication.
                StepFunction a = random_step(rng), b = random_step(rng), c = random_step(rng);
                if (precedes(a, b).holds && precedes(b, c).holds) t.truth(precedes(a, c).holds);
            }
            return t.done();
        });
    add("integral_additivity", "functions", "integral(a,c) = integral(a,b) + integral(b,c) to 1e-13 relative",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 6, i);
                StepFunction f = random_step(rng, gappy_opts());
                std::uniform_real_distribution<double> u(0.0, 1.1 * f.support_end());
                double x[3] = {u(rng), u(rng), u(rng)};
                std::sort(x, x + 3);
                double whole = integral(f, x[0], x[2]);
                t.le(std::abs(whole - integral(f, x[0], x[1]) - integral(f, x[1], x[2])) / rel(whole), 0.0, 1e-13);
                StepFunction g = rearrange(f);
                LevelResult lr = level_function(g, alpha_grid()[i % alpha_grid().size()]);
                double wm = integral(lr.level, x[0], x[2]);
                t.le(std::abs(wm - integral(lr.level, x[0], x[1]) - integral(lr.level, x[1], x[2])) / rel(wm), 0.0,
                     1e-13);
            }
            return t.done();
        });

    // ---- norms ----
    add("exponent_identities", "norms", "conjugate identities to 1e-14, alpha range, c_ps >= 1 with equality iff s = p",
        [](const VerifyContext&) {
            Tally t;
            for (const auto& e : exponent_grid()) {
                t.eq(1.0 / e.p + 1.0 / e.p_conj, 1.0, 1e-14);
                t.eq(1.0 / e.s + 1.0 / e.s_conj, 1.0, 1e-14);
                if (e.p < e.s) t.truth(e.alpha > 0.0 && e.alpha < 1.0);
                else t.truth(e.alpha <= 0.0);
                t.le(1.0, e.c_ps, 1e-15);
                t.truth((std::abs(e.c_ps - 1.0) <= 1e-14) == (e.s == e.p));
            }
            return t.done();
        });
    add("norm_homogeneity", "norms", "||c f|| = c ||f|| for c in {0.5, 2, 7} to 1e-12 relative",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 7, i);
                StepFunction f = random_step(rng, gappy_opts());
                const Exponents& e = grid[i % grid.size()];
                double n = lorentz_norm(f, e).value;
                for (double c : {0.5, 2.0, 7.0})
                    t.le(std::abs(lorentz_norm(f.scaled(c), e).value - c * n) / (c * n), 0.0, 1e-12);
            }
            return t.done();
        });
    add("norm_rearrangement_invariance", "norms", "||f|| = ||f*|| exactly; shuffled pieces agree to 1e-12",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 8, i);
                StepFunction f = random_step(rng, gappy_opts());
                const Exponents& e = grid[i % grid.size()];
                double n = lorentz_norm(f, e).value;
                t.truth(n == lorentz_norm(rearrange(f), e).value);
                t.le(std::abs(lorentz_norm(random_shuffle(f, rng), e).value - n) / rel(n), 0.0, 1e-12);
            }
            return t.done();
        });
    add("maximal_norm_bracket", "norms", "(p')^{1/s} ||f|| <= ||f||* <= p' ||f|| per grid point, slack 1e-7",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t g = 0; g < grid.size(); ++g) {
                const Exponents& e = grid[g];
                const double lowc = e.s_infinite() ? 1.0 : std::pow(e.p_conj, 1.0 / e.s);
                for (std::size_t i = 0; i < ctx.trials; ++i) {
                    Rng rng = trial_rng(ctx, 9 + 100 * g, i);
                    StepFunction f = random_nonincreasing(rng);
                    double n = lorentz_norm(f, e).value;
                    double m = maximal_norm(f, e).value;
                    t.le(lowc * n, m, 1e-7 * rel(m));
                    t.le(m, e.p_conj * n, 1e-7 * rel(m));
                }
            }
            return t.done();
        });
    add("holder_inequality", "norms", "int f g <= ||f||_{p,s} ||g||_{p',s'} + 1e-9",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 10, i);
                StepFunction f = random_step(rng, gappy_opts()), g = random_step(rng, gappy_opts());
                const Exponents& e = grid[i % grid.size()];
                HolderResult raw = holder_pairing(f, g, e, false);
                HolderResult re = holder_pairing(f, g, e, true);
                t.le(raw.pairing, raw.bound, 1e-9);
                t.le(re.pairing, re.bound, 1e-9);
            }
            return t.done();
        });
    add("cross_index", "norms", "(p/s)^{1/s} ||f||_{p,s} <= (p/r)^{1/r} ||f||_{p,r} for r < s, slack 1e-9",
        [](const VerifyContext& ctx) {
            Tally t;
            std::vector<double> ss{1.0, 1.5, 2.0, 4.0, 16.0, kInfinity};
            auto ps = grid_p_values();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 11, i);
                StepFunction f = random_step(rng, gappy_opts());
                double p = ps[i % ps.size()];
                std::uniform_int_distribution<std::size_t> pick(0, ss.size() - 1);
                std::size_t a = pick(rng), b = pick(rng);
                if (a == b) b = (a + 1) % ss.size();
                if (a > b) std::swap(a, b);
                CrossIndexResult c = cross_index_check(f, Exponents::make(p, ss[a]), Exponents::make(p, ss[b]));
                if (c.lhs - c.rhs > 1e-9) {
                    std::ostringstream os;
                    os << "counterexample p=" << p << " r=" << format_exponent(ss[a]) << " s=" << format_exponent(ss[b])
                       << " lhs=" << c.lhs << " rhs=" << c.rhs;
                    t.note(os.str());
                }
                t.le(c.lhs, c.rhs, 1e-9);
            }
            return t.done();
        });
    add("cross_index_normalized", "norms",
        "(s/p)^{1/s} ||f||_{p,s} <= (r/p)^{1/r} ||f||_{p,r} for r < s, slack 1e-9 (equality for indicators)",
        [](const VerifyContext& ctx) {
            Tally t;
            std::vector<double> ss{1.0, 1.5, 2.0, 4.0, 16.0, kInfinity};
            auto ps = grid_p_values();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 11, i);
                StepFunction f = random_step(rng, gappy_opts());
                double p = ps[i % ps.size()];
                std::uniform_int_distribution<std::size_t> pick(0, ss.size() - 1);
                std::size_t a = pick(rng), b = pick(rng);
                if (a == b) b = (a + 1) % ss.size();
                if (a > b) std::swap(a, b);
                Exponents er = Exponents::make(p, ss[a]), es = Exponents::make(p, ss[b]);
                double lhs = lorentz_norm(f, es).value / es.char_norm();
                double rhs = lorentz_norm(f, er).value / er.char_norm();
                t.le(lhs, rhs, 1e-9 * rel(rhs));
            }
            return t.done();
        });
    add("chebyshev_weighted", "norms", "int_0^1 g <= (1 - alpha) int_0^1 g t^{-alpha}, slack 1e-10",
        [](const VerifyContext& ctx) {
            Tally t;
            auto alphas = alpha_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 12, i);
                CorpusOptions o = nonincreasing_opts();
                StepFunction g = random_nonincreasing(rng, o);
                g = g.dilated(1.0 / g.support_end());  // support exactly [0, 1]
                double al = alphas[i % alphas.size()];
                std::vector<MonomialPiece> w;
                for (const auto& p : g.pieces()) w.push_back({p.a, p.b, p.value, al});
                double lhs = integral(g, 0.0, 1.0);
                double rhs = (1.0 - al) * integral(MonomialFunction(std::move(w)), 0.0, 1.0);
                t.le(lhs, rhs, 1e-10);
            }
            return t.done();
        });
    add("two_variable_inequality", "norms", "(1-t^{s/p})^{1/s} (1-t^{s'/p'})^{1/s'} <= 1-t on a 1e-4 grid, slack 1e-12",
        [](const VerifyContext&) {
            Tally t;
            for (const auto& e : exponent_grid()) {
                for (int k = 0; k <= 10000; ++k) {
                    double x = k * 1e-4;
                    auto factor = [x](double s, double p) {
                        if (s == kInfinity) return x < 1.0 ? 1.0 : 0.0;
                        return std::pow(1.0 - std::pow(x, s / p), 1.0 / s);
                    };
                    double lhs = factor(e.s, e.p) * factor(e.s_conj, e.p_conj);
                    t.le(lhs, 1.0 - x, 1e-12);
                }
            }
            return t.done();
        });
    add("hardy_monotonicity", "norms", "F1 <= F2 at knots and g non-increasing imply int f1 g <= int f2 g, slack 1e-10",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 13, i);
                StepFunction f1 = random_step(rng, gappy_opts());
                StepFunction f2 = shift_left(f1, rng);
                // Confirm the hypothesis on raw running integrals at all knots.
                RunningIntegral F1{MonomialFunction(f1)}, F2{MonomialFunction(f2)};
                bool hyp = true;
                for (const auto& kn : F1.knots()) hyp = hyp && F1(kn.t) <= F2(kn.t) + 1e-12 * rel(F2(kn.t));
                for (const auto& kn : F2.knots()) hyp = hyp && F1(kn.t) <= F2(kn.t) + 1e-12 * rel(F2(kn.t));
                if (!hyp) continue;
                MonomialFunction g{random_nonincreasing(rng)};
                t.le(pair_integral(MonomialFunction(f1), g), pair_integral(MonomialFunction(f2), g), 1e-10);
            }
            return t.done();
        });
    add("limit_s_infinity", "norms", "| ||f||_{2,1024} - ||f||_{2,inf} | <= 0.02 ||f||_{2,inf}",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 14, i);
                StepFunction f = random_step(rng, gappy_opts());
                LimitResult lr = norm_limit_check(f, 2.0, {4.0, 16.0, 256.0, 1024.0});
                t.le(std::abs(lr.norms.back() - lr.sup_norm), 0.02 * lr.sup_norm, 0.0);
            }
            return t.done();
        });

    // ---- level ----
    add("level_structure", "level", "verify_level passes on random non-increasing f over the alpha grid",
        [](const VerifyContext& ctx) {
            Tally t;
            auto alphas = alpha_grid();
            alphas.push_back(0.0);
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 20, i);
                StepFunction f = random_nonincreasing(rng);
                LevelReport rep = verify_level(level_function(f, alphas[i % alphas.size()]));
                t.truth(rep.all_pass);
                if (!rep.all_pass)
                    for (const auto& c : rep.checks)
                        if (!c.pass) t.note(c.name + " " + c.detail);
            }
            return t.done();
        });
    add("level_fixed_point", "level", "re-running on the hull intervals reproduces intervals and slopes",
        [](const VerifyContext& ctx) {
            Tally t;
            auto alphas = alpha_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 21, i);
                StepFunction f = random_nonincreasing(rng);
                double al = alphas[i % alphas.size()];
                LevelResult lr = level_function(f, al);
                std::vector<StepPiece> ps;
                for (const auto& I : lr.intervals) ps.push_back({I.a, I.b, integral(f, I.a, I.b) / (I.b - I.a)});
                LevelResult again = level_function(StepFunction(std::move(ps)), al);
                bool same = again.slopes.size() == lr.slopes.size();
                for (std::size_t k = 0; same && k < lr.slopes.size(); ++k)
                    same = std::abs(again.slopes[k] - lr.slopes[k]) <= 1e-12 * lr.slopes[k] &&
                           again.intervals[k].a == lr.intervals[k].a && again.intervals[k].b == lr.intervals[k].b;
                t.truth(same);
            }
            return t.done();
        });
    add("level_mass_conservation", "level", "total mass of the level function equals that of f to 1e-12",
        [](const VerifyContext& ctx) {
            Tally t;
            auto alphas = alpha_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 22, i);
                StepFunction f = random_nonincreasing(rng);
                LevelResult lr = level_function(f, alphas[i % alphas.size()]);
                t.le(std::abs(lr.level.total_mass() - f.total_mass()) / f.total_mass(), 0.0, 1e-12);
            }
            return t.done();
        });
    add("level_majorization", "level", "F_level >= F at knots and 64 samples per piece",
        [](const VerifyContext& ctx) {
            Tally t;
            auto alphas = alpha_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 23, i);
                StepFunction f = random_nonincreasing(rng);
                LevelResult lr = level_function(f, alphas[i % alphas.size()]);
                PrecedenceResult pr = precedes(MonomialFunction(f), lr.level, 64);
                t.truth(pr.holds);
            }
            return t.done();
        });
    add("level_piecewise_holder", "level", "int_I (f°)^s t^{s/p-1} <= int_I f^s t^{s/p-1} on every I_k, slack 1e-10",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid(true);
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 24, i);
                StepFunction f = random_nonincreasing(rng);
                const Exponents& e = grid[i % grid.size()];
                if (e.s_infinite()) continue;
                LevelResult lr = level_function(f, e.alpha);
                MonomialFunction fm(f);
                for (const auto& I : lr.intervals) {
                    double lo = lorentz_integral(lr.level, e, I.a, I.b);
                    double hi = lorentz_integral(fm, e, I.a, I.b);
                    t.le(lo, hi, 1e-10 * rel(hi));
                }
            }
            return t.done();
        });
    add("level_scaling_covariance", "level", "level(c f) = c level(f); dilation by 2 and 1/3 maps I_k and slopes",
        [](const VerifyContext& ctx) {
            Tally t;
            auto alphas = alpha_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 25, i);
                StepFunction f = random_nonincreasing(rng);
                double al = alphas[i % alphas.size()];
                LevelResult lr = level_function(f, al);
                LevelResult sc = level_function(f.scaled(7.0), al);
                bool ok = sc.slopes.size() == lr.slopes.size();
                for (std::size_t k = 0; ok && k < lr.slopes.size(); ++k)
                    ok = std::abs(sc.slopes[k] - 7.0 * lr.slopes[k]) <= 1e-12 * sc.slopes[k];
                t.truth(ok);
                for (double c : {2.0, 1.0 / 3.0}) {
                    LevelResult d = level_function(f.dilated(c), al);
                    bool dk = d.slopes.size() == lr.slopes.size();
                    for (std::size_t k = 0; dk && k < lr.slopes.size(); ++k) {
                        dk = std::abs(d.slopes[k] - lr.slopes[k] * std::pow(c, al)) <= 1e-12 * d.slopes[k] &&
                             std::abs(d.intervals[k].b - c * lr.intervals[k].b) <= 1e-12 * d.intervals[k].b;
                    }
                    t.truth(dk);
                }
            }
            return t.done();
        });
    add("level_bracket", "level", "||f°|| <= ||f|| <= c_ps ||f°|| per grid point with p < s, slack 1e-9",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid(true);
            for (std::size_t g = 0; g < grid.size(); ++g) {
                for (std::size_t i = 0; i < ctx.trials; ++i) {
                    Rng rng = trial_rng(ctx, 26 + 100 * g, i);
                    Bracket b = level_bracket(random_nonincreasing(rng), grid[g]);
                    t.le(b.low, b.mid, 1e-9);
                    t.le(b.mid, b.high, 1e-9);
                }
            }
            return t.done();
        });

    // ---- duality ----
    add("dual_le_norm", "duality", "||f||' <= ||f|| on every grid point, slack 1e-12",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 30, i);
                StepFunction f = random_step(rng, gappy_opts());
                const Exponents& e = grid[i % grid.size()];
                double n = lorentz_norm(f, e).value;
                t.le(dual_norm(f, e).value, n, 1e-12 * rel(n));
            }
            return t.done();
        });
    add("sharp_constant_bracket", "duality", "||f|| <= c_ps ||f||' (slack 1e-9), equality for the unit indicator to 1e-12",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 31, i);
                StepFunction f = random_step(rng, gappy_opts());
                const Exponents& e = grid[i % grid.size()];
                t.le(lorentz_norm(f, e).value, e.c_ps * dual_norm(f, e).value, 1e-9);
            }
            StepFunction chi = StepFunction::indicator(0.0, 1.0);
            for (const auto& e : exponent_grid(true))
                t.eq(lorentz_norm(chi, e).value, e.c_ps * dual_norm(chi, e).value, 1e-12);
            return t.done();
        });
    add("witness_admissible", "duality", "||g||_{p',s'} = 1 to 1e-12 and int f* g = ||f||' to 1e-9 for s < inf",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 32, i);
                StepFunction f = random_step(rng, gappy_opts());
                const Exponents& e = grid[i % grid.size()];
                if (e.s_infinite()) continue;
                DualResult d = dual_norm(f, e);
                // f = 0 has dual norm 0 and no normalizable witness.
                if (f.empty()) {
                    t.truth(d.value == 0.0 && !d.witness);
                    continue;
                }
                if (!d.witness) {
                    t.truth(false);
                    continue;
                }
                t.eq(lorentz_norm(*d.witness, e.conjugate()).value, 1.0, 1e-12);
                t.eq(pair_integral(MonomialFunction(rearrange(f)), *d.witness), d.value, 1e-9 * rel(d.value));
            }
            return t.done();
        });
    add("dual_majorant_consistency", "duality", "f < h implies ||f||' <= ||h||_{p,s} + 1e-9",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 33, i);
                StepFunction f = random_step(rng, gappy_opts());
                StepFunction h = random_majorant(f, rng);
                const Exponents& e = grid[i % grid.size()];
                if (!precedes(f, h).holds) {
                    t.truth(false);
                    t.note("generated majorant does not dominate");
                    continue;
                }
                t.le(dual_norm(f, e).value, lorentz_norm(h, e).value, 1e-9);
            }
            return t.done();
        });
    add("dual_rearrangement_invariance", "duality", "||f||' = ||f*||' exactly; shuffled pieces agree to 1e-12",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 34, i);
                StepFunction f = random_step(rng, gappy_opts());
                const Exponents& e = grid[i % grid.size()];
                double d = dual_norm(f, e).value;
                t.truth(d == dual_norm(rearrange(f), e).value);
                t.le(std::abs(dual_norm(random_shuffle(f, rng), e).value - d) / rel(d), 0.0, 1e-12);
            }
            return t.done();
        });
    add("dual_oracle_bound", "duality", "oracle <= ||f||' + 1e-9; with the witness and s < inf, oracle >= ||f||' - 1e-9",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            const std::size_t n = std::min<std::size_t>(ctx.trials, 200);
            for (std::size_t i = 0; i < n; ++i) {
                Rng rng = trial_rng(ctx, 35, i);
                StepFunction f = random_step(rng, gappy_opts());
                const Exponents& e = grid[i % grid.size()];
                double d = dual_norm(f, e).value;
                OracleResult o = dual_oracle(f, e, 50, ctx.seed + i);
                t.le(o.lower_bound, d, 1e-9);
                if (o.witness_included) t.le(d, o.lower_bound, 1e-9);
            }
            return t.done();
        });
    add("equality_diagnosis", "duality",
        "||f||' = ||f|| forces f t^alpha non-increasing on the grid; discretized t^{-alpha} on 2^12 cells has ratio in [1, 1.01]",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid(true);
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 36, i);
                StepFunction f = random_nonincreasing(rng);
                EqualityDiagnosis d = equality_diagnosis(f, grid[i % grid.size()]);
                if (d.equal) t.truth(d.predicate_grid);
                t.le(1.0, d.ratio, 1e-12);
            }
            Exponents e = Exponents::make(2.0, 4.0);
            StepFunction ext = discretize(MonomialFunction({{0.0, 1.0, 1.0, e.alpha}}), 4096);
            EqualityDiagnosis d = equality_diagnosis(ext, e);
            t.le(1.0, d.ratio, 1e-12);
            t.le(d.ratio, 1.01, 0.0);
            return t.done();
        });

    // ---- decomposition ----
    add("column_shuffle", "decomposition", "alpha_k <= beta~_k + eta and each row is permuted, N, nu <= 6",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 40, i);
                std::uniform_int_distribution<std::size_t> d(1, 6);
                std::size_t N = d(rng), nu = d(rng);
                ShuffleInstance inst = random_shuffle_instance(rng, N, nu);
                double ex = 0.0;
                bool ok = shuffle_output_ok(inst, matrix_shuffle(inst), &ex);
                t.truth(ok);
            }
            return t.done();
        });
    add("column_shuffle_bruteforce", "decomposition",
        "whenever a per-row cyclic assignment meets the bound, the algorithm's output does too (N, nu <= 4)",
        [](const VerifyContext& ctx) {
            Tally t;
            std::size_t found = 0;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 41, i);
                std::uniform_int_distribution<std::size_t> d(1, 4);
                std::size_t N = d(rng), nu = d(rng);
                ShuffleInstance inst = random_shuffle_instance(rng, N, nu);
                bool brute = cyclic_assignment_exists(inst);
                bool algo = shuffle_output_ok(inst, matrix_shuffle(inst), nullptr);
                if (brute) ++found;
                t.truth(!brute || algo);
            }
            t.note("cyclic assignment found in " + std::to_string(found) + " instances");
            return t.done();
        });
    add("decomposition_bracket", "decomposition",
        "lower <= upper <= lower + 4 eps + 1e-9 with cover and equal-norm invariants, eps in {0.1, 0.01}",
        [](const VerifyContext& ctx) {
            Tally t;
            const auto& ex = decomposition_exponents();
            const std::size_t n = std::min<std::size_t>(ctx.trials, 8);
            for (double eps : {0.1, 0.01}) {
                for (std::size_t i = 0; i < n; ++i) {
                    Rng rng = trial_rng(ctx, 42, i);
                    StepFunction f = random_step(rng);
                    auto [p, s] = ex[i % ex.size()];
                    DecompositionCertificate c = epsilon_decomposition(f, Exponents::make(p, s), eps);
                    CertificateCheck ck = check_certificate(c);
                    t.le(c.upper_bound - c.lower_bound, 4.0 * eps, 1e-9);
                    t.truth(ck.all());
                }
            }
            return t.done();
        });
    add("decomposition_monotone", "decomposition", "0 <= g <= f implies upper(g) <= upper(f) + 4 eps",
        [](const VerifyContext& ctx) {
            Tally t;
            const auto& ex = decomposition_exponents();
            const std::size_t n = std::min<std::size_t>(ctx.trials, 12);
            const double eps = 0.1;
            for (std::size_t i = 0; i < n; ++i) {
                Rng rng = trial_rng(ctx, 43, i);
                StepFunction f = random_step(rng);
                StepFunction g = random_minorant(f, rng);
                auto [p, s] = ex[i % ex.size()];
                Exponents e = Exponents::make(p, s);
                if (g.empty()) continue;
                t.le(epsilon_decomposition(g, e, eps).upper_bound, epsilon_decomposition(f, e, eps).upper_bound,
                     4.0 * eps);
            }
            return t.done();
        });
    add("decomposition_rearrangement", "decomposition", "certificates of f and f* share lower bounds exactly, uppers within 8 eps",
        [](const VerifyContext& ctx) {
            Tally t;
            const auto& ex = decomposition_exponents();
            const std::size_t n = std::min<std::size_t>(ctx.trials, 12);
            const double eps = 0.1;
            for (std::size_t i = 0; i < n; ++i) {
                Rng rng = trial_rng(ctx, 44, i);
                StepFunction f = random_step(rng);
                auto [p, s] = ex[i % ex.size()];
                Exponents e = Exponents::make(p, s);
                DecompositionCertificate a = epsilon_decomposition(f, e, eps);
                DecompositionCertificate b = epsilon_decomposition(rearrange(f), e, eps);
                t.truth(a.lower_bound == b.lower_bound);
                t.le(std::abs(a.upper_bound - b.upper_bound), 8.0 * eps, 0.0);
            }
            return t.done();
        });
    add("dual_subadditive", "decomposition", "||f + g||' <= ||f||' + ||g||' + 1e-9",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 45, i);
                StepFunction f = random_step(rng, gappy_opts()), g = random_step(rng, gappy_opts());
                const Exponents& e = grid[i % grid.size()];
                t.le(dual_norm(sum({f, g}), e).value, dual_norm(f, e).value + dual_norm(g, e).value, 1e-9);
            }
            return t.done();
        });
    add("triangle_inequality", "decomposition", "||sum f_k|| <= c_ps sum ||f_k|| on random 5-tuples, slack 1e-9",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 46, i);
                std::vector<StepFunction> fs;
                for (int k = 0; k < 5; ++k) fs.push_back(random_step(rng, gappy_opts()));
                TriangleCheck c = triangle_check(fs, grid[i % grid.size()]);
                t.le(c.lhs, c.rhs, 1e-9);
            }
            return t.done();
        });
    add("minkowski_inequality", "decomposition", "||sum w_y f_y|| <= c_ps sum w_y ||f_y|| on 4-row tables, slack 1e-9",
        [](const VerifyContext& ctx) {
            Tally t;
            auto grid = exponent_grid();
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 47, i);
                std::vector<StepFunction> rows;
                std::vector<double> w;
                for (int k = 0; k < 4; ++k) {
                    rows.push_back(random_step(rng, gappy_opts()));
                    w.push_back(std::uniform_real_distribution<double>(0.01, 2.0)(rng));
                }
                TriangleCheck c = minkowski_check(rows, w, grid[i % grid.size()]);
                t.le(c.lhs, c.rhs, 1e-9);
            }
            // Homogeneity: weights (1/2, 1/2) match the triangle check on halved rows.
            StepFunction a = StepFunction::indicator(0.0, 1.0, 2.0), b = StepFunction::indicator(0.5, 3.0, 1.0);
            Exponents e = Exponents::make(2.0, 4.0);
            TriangleCheck m = minkowski_check({a, b}, {0.5, 0.5}, e);
            TriangleCheck tr = triangle_check({a.scaled(0.5), b.scaled(0.5)}, e);
            t.eq(m.lhs, tr.lhs, 1e-12);
            t.eq(m.rhs, tr.rhs, 1e-12);
            return t.done();
        });
    add("char_decomposition", "decomposition",
        "sum h_k = 1 on the grid to 1e-12, equal part norms to 1e-10, N = 1 gives (p/s)^{1/s}",
        [](const VerifyContext&) {
            Tally t;
            for (auto [p, s] : std::vector<std::pair<double, double>>{{2.0, 4.0}, {3.0, 16.0}, {1.5, 2.0}}) {
                Exponents e = Exponents::make(p, s);
                for (std::size_t N : {1, 4, 16}) {
                    CharDecomposition cd = char_decomposition(e, N, 64 * N * 4);
                    t.le(cd.partition_error, 0.0, 1e-12);
                    t.le(cd.norm_spread, 0.0, 1e-10);
                    if (N == 1) t.eq(cd.sum_of_norms, e.char_norm(), 1e-12);
                }
            }
            return t.done();
        });
    add("triangle_sharpness", "decomposition", "char decomposition reaches lhs/rhs >= 0.98 at N = 64, 2^14 cells",
        [](const VerifyContext&) {
            Tally t;
            for (auto [p, s] : std::vector<std::pair<double, double>>{{2.0, 4.0}, {3.0, 16.0}}) {
                Exponents e = Exponents::make(p, s);
                CharDecomposition cd = char_decomposition(e, 64, 1 << 14);
                TriangleCheck c = triangle_check(cd.parts, e);
                t.le(0.98, c.ratio, 0.0);
                t.le(c.lhs, c.rhs, 1e-9);
            }
            return t.done();
        });

    // ---- cli ----
    add("constants_invariant", "cli", "char_norm = c_ps char_dual to 1e-12 on the grid",
        [](const VerifyContext&) {
            Tally t;
            for (const auto& e : exponent_grid()) t.eq(e.char_norm(), e.c_ps * e.char_dual(), 1e-12);
            return t.done();
        });
    add("json_round_trip", "cli", "function JSON re-loads to an identical canonical piece list",
        [](const VerifyContext& ctx) {
            Tally t;
            for (std::size_t i = 0; i < ctx.trials; ++i) {
                Rng rng = trial_rng(ctx, 50, i);
                StepFunction f = random_step(rng, gappy_opts());
                AnyFunction back = parse_function(to_json(f).dump());
                t.truth(std::get<StepFunction>(back) == f);
                LevelResult lr = level_function(rearrange(f), 0.25);
                AnyFunction lb = parse_function(to_json(lr.level).dump());
                const auto& m = std::get<MonomialFunction>(lb).pieces();
                bool same = m.size() == lr.level.pieces().size();
                for (std::size_t k = 0; same && k < m.size(); ++k) {
                    const auto& x = m[k];
                    const auto& y = lr.level.pieces()[k];
                    same = x.a == y.a && x.b == y.b && x.coeff == y.coeff && x.beta == y.beta;
                }
                t.truth(same);
            }
            return t.done();
        });
    return r;
}

std::string fixed(double x, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << std::scientific << x;
    return os.str();
}

}  // namespace

const std::vector<Property>& property_registry() {
    static const std::vector<Property> reg = build_registry();
    return reg;
}

std::vector<PropertyReport> run_suite(const VerifyContext& ctx, const std::string& filter) {
    std::vector<PropertyReport> out;
    for (const auto& p : property_registry()) {
        if (!filter.empty() && p.name.find(filter) == std::string::npos) continue;
        PropertyReport rep{p.name, p.module, {}};
        try {
            rep.outcome = p.run(ctx);
        } catch (const std::exception& e) {
            rep.outcome.violations = std::max<std::size_t>(rep.outcome.violations, 1);
            rep.outcome.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(rep));
    }
    return out;
}

std::string reports_csv(const std::vector<PropertyReport>& reports) {
    std::ostringstream os;
    os << "property,module,cases,violations,worst,status\n";
    for (const auto& r : reports)
        os << r.name << ',' << r.module << ',' << r.outcome.cases << ',' << r.outcome.violations << ','
           << fixed(r.outcome.worst) << ',' << (r.outcome.pass() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

nlohmann::json reports_json(const std::vector<PropertyReport>& reports, const VerifyContext& ctx) {
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const auto& r : reports) {
        all = all && r.outcome.pass();
        arr.push_back({{"property", r.name},
                       {"module", r.module},
                       {"cases", r.outcome.cases},
                       {"violations", r.outcome.violations},
                       {"worst", r.outcome.worst},
                       {"pass", r.outcome.pass()},
                       {"detail", r.outcome.detail}});
    }
    return {{"trials", ctx.trials}, {"seed", ctx.seed}, {"all_pass", all}, {"properties", arr}};
}

}  // namespace lorentz
