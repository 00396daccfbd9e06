// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "lorentz/decomposition.hpp"
#include "lorentz/duality.hpp"
#include "lorentz/level.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/random.hpp"
#include "lorentz/verify.hpp"

using namespace lorentz;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

const StepFunction kChi = StepFunction::indicator(0.0, 1.0);

// 1. Extremal values on the p < s grid.
Verdict extremal_values() {
    double worst_norm = 0.0, worst_dual = 0.0;
    for (const auto& e : exponent_grid(true)) {
        const double expect_norm = e.s_infinite() ? 1.0 : std::pow(e.p / e.s, 1.0 / e.s);
        const double expect_dual = std::pow(e.s_conj / e.p_conj, 1.0 / e.s_conj);
        worst_norm = std::max(worst_norm, std::abs(lorentz_norm(kChi, e).value - expect_norm));
        worst_dual = std::max(worst_dual, std::abs(dual_norm(kChi, e).value - expect_dual));
    }
    return {worst_norm <= 1e-12 && worst_dual <= 1e-12,
            "max |norm err| " + fmt("%.2e", worst_norm) + ", max |dual err| " + fmt("%.2e", worst_dual)};
}

// 2. Sharpness of c_ps.
Verdict sharpness() {
    double worst = 0.0;
    for (const auto& e : exponent_grid(true))
        worst = std::max(worst, std::abs(lorentz_norm(kChi, e).value - e.c_ps * dual_norm(kChi, e).value));
    bool ok = worst <= 1e-12;
    std::string ratios;
    for (auto [p, s] : std::vector<std::pair<double, double>>{{2.0, 4.0}, {3.0, 16.0}}) {
        Exponents e = Exponents::make(p, s);
        CharDecomposition cd = char_decomposition(e, 64, std::size_t{1} << 14);
        TriangleCheck t = triangle_check(cd.parts, e);
        ok = ok && t.ratio >= 0.98;
        ratios += ", ratio(" + fmt("%g", p) + "," + fmt("%g", s) + ") " + fmt("%.4f", t.ratio);
    }
    return {ok, "max |norm - c dual| " + fmt("%.2e", worst) + ratios};
}

// 3. Level-function bracket.
Verdict bracket_criterion() {
    std::size_t violations = 0, cases = 0;
    double worst = 0.0;
    CorpusOptions opt;
    opt.nonincreasing = true;
    std::uint64_t salt = 0;
    for (const auto& e : exponent_grid(true)) {
        auto corpus = random_corpus(1000 * ++salt, 1000, opt);
        for (const auto& f : corpus) {
            Bracket b = level_bracket(f, e);
            double v = std::max(b.low - b.mid, b.mid - b.high);
            worst = std::max(worst, v);
            violations += v > 1e-9;
            ++cases;
        }
    }
    Exponents e = Exponents::make(2.0, 4.0);
    StepFunction g = discretize(MonomialFunction({{0.0, 1.0, 1.0, e.alpha}}), std::size_t{1} << 12);
    Bracket b = level_bracket(g, e);
    const double ratio = b.mid / b.low;
    bool ok = violations == 0 && ratio >= 1.0 - 1e-9 && ratio <= 1.01;
    return {ok, std::to_string(cases) + " cases, " + std::to_string(violations) + " violations, worst " +
                    fmt("%.2e", worst) + ", discretized left ratio " + fmt("%.5f", ratio)};
}

// 4. Dual = level, witness and oracle.
Verdict dual_witness() {
    auto corpus = random_corpus(4242, 100);
    double worst_norm = 0.0, worst_pair = 0.0, worst_oracle = -1.0;
    std::size_t cases = 0, oracle_cases = 0;
    for (const auto& e : exponent_grid()) {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const StepFunction& f = corpus[i];
            DualResult d = dual_norm(f, e);
            if (!e.s_infinite()) {
                if (!d.witness) return {false, "missing witness"};
                worst_norm = std::max(worst_norm, std::abs(lorentz_norm(*d.witness, e.conjugate()).value - 1.0));
                double level = e.p < e.s ? lorentz_norm(level_function(rearrange(f), e.alpha).level, e).value
                                         : lorentz_norm(f, e).value;
                worst_pair = std::max(worst_pair, std::abs(pair_integral(rearrange(f), *d.witness) - level));
                ++cases;
            }
            if (i % 4 == 0) {
                OracleResult o = dual_oracle(f, e, 100, 7 + i);
                worst_oracle = std::max(worst_oracle, o.lower_bound - d.value);
                ++oracle_cases;
            }
        }
    }
    bool ok = worst_norm <= 1e-12 && worst_pair <= 1e-9 && worst_oracle <= 1e-9;
    return {ok, std::to_string(cases) + " witnesses, max |norm-1| " + fmt("%.2e", worst_norm) +
                    ", max |pairing-level| " + fmt("%.2e", worst_pair) + "; " + std::to_string(oracle_cases) +
                    " oracle runs, max excess " + fmt("%.2e", worst_oracle)};
}

// 5. Dual = decomposition.
Verdict decomposition() {
    CorpusOptions opt;
    opt.max_support = 4.0;
    opt.max_pieces = 6;
    auto corpus = random_corpus(5150, 4, opt);
    corpus.insert(corpus.begin(), StepFunction({{0.0, 1.0, 2.0}, {1.0, 2.0, 1.0}}));
    corpus.insert(corpus.begin(), kChi);
    const std::vector<Exponents> exps{Exponents::make(2.0, 4.0), Exponents::make(3.0, 16.0),
                                      Exponents::make(8.0, 16.0), Exponents::make(2.0, kInfinity)};
    std::size_t cases = 0, failures = 0, literal = 0;
    double worst_gap = 0.0;
    std::string first_failure;
    for (double eps : {0.1, 0.01}) {
        for (const auto& e : exps) {
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                DecompositionCertificate c = epsilon_decomposition(corpus[i], e, eps);
                const bool small = c.part_count() * c.cells() <= 2'000'000;
                CertificateCheck ck = check_certificate(c, small);
                literal += small;
                const double gap = c.upper_bound - c.lower_bound;
                worst_gap = std::max(worst_gap, gap / eps);
                const bool ok = ck.all() && gap <= 4.0 * eps + 1e-9;
                ++cases;
                if (!ok) {
                    ++failures;
                    if (first_failure.empty())
                        first_failure = " first failure: f#" + std::to_string(i) + " p=" + fmt("%g", e.p) +
                                        " s=" + e.s_label() + " eps=" + fmt("%g", eps) +
                                        " gap/eps=" + fmt("%.3f", gap / eps);
                }
            }
        }
    }
    return {failures == 0, std::to_string(cases) + " certificates (" + std::to_string(literal) +
                               " checked literally), max gap/eps " + fmt("%.3f", worst_gap) + first_failure};
}

// Exhaustive search over per-row permutations; true when some assignment works.
bool brute_force(const ShuffleInstance& inst) {
    const std::size_t N = inst.eta.size(), nu = inst.alphas.size();
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> base(nu);
    for (std::size_t k = 0; k < nu; ++k) base[k] = k;
    do perms.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
    const double eta = inst.eta_max();
    std::vector<std::size_t> pick(N, 0);
    while (true) {
        bool ok = true;
        for (std::size_t k = 0; k < nu && ok; ++k) {
            double col = 0.0;
            for (std::size_t j = 0; j < N; ++j) col += inst.eta[j][perms[pick[j]][k]];
            ok = inst.alphas[k] <= col + eta + 1e-12;
        }
        if (ok) return true;
        std::size_t j = 0;
        while (j < N && ++pick[j] == perms.size()) pick[j++] = 0;
        if (j == N) return false;
    }
}

// 6. Column shuffle.
Verdict column_shuffle() {
    std::size_t bad = 0, brute = 0, disagree = 0;
    double worst = -kInfinity;
    for (std::size_t i = 0; i < 10000; ++i) {
        Rng rng(900000 + i);
        const std::size_t N = 1 + rng() % 6, nu = 1 + rng() % 6;
        ShuffleInstance inst = random_shuffle_instance(rng, N, nu);
        bool ok = true;
        try {
            ShuffleResult r = matrix_shuffle(inst);
            const double eta = inst.eta_max();
            for (std::size_t j = 0; j < N; ++j) {
                std::vector<std::size_t> p = r.perms[j];
                std::sort(p.begin(), p.end());
                for (std::size_t k = 0; k < nu; ++k) {
                    ok = ok && p[k] == k && r.permuted[j][k] == inst.eta[j][r.perms[j][k]];
                }
            }
            for (std::size_t k = 0; k < nu; ++k) {
                double col = 0.0;
                for (std::size_t j = 0; j < N; ++j) col += r.permuted[j][k];
                worst = std::max(worst, inst.alphas[k] - col - eta);
                ok = ok && inst.alphas[k] <= col + eta;
            }
        } catch (const std::exception&) {
            ok = false;
        }
        bad += !ok;
        if (N <= 4 && nu <= 4) {
            ++brute;
            disagree += brute_force(inst) != ok;
        }
    }
    return {bad == 0 && disagree == 0, "10000 instances, " + std::to_string(bad) + " failures, max alpha-beta-eta " +
                                           fmt("%.2e", worst) + "; " + std::to_string(brute) +
                                           " brute-force comparisons, " + std::to_string(disagree) + " disagreements"};
}

// 7. Inequality suite through the property registry.
Verdict inequality_suite() {
    const std::vector<std::string> names{"holder_inequality", "maximal_norm_bracket",        "cross_index",
                                         "chebyshev_weighted", "two_variable_inequality",        "hardy_monotonicity",
                                         "dual_subadditive",    "triangle_inequality", "minkowski_inequality"};
    VerifyContext ctx{1000, 20260101};
    bool ok = true;
    std::string detail;
    for (const auto& n : names) {
        std::size_t found = 0;
        for (const auto& r : run_suite(ctx, n)) {
            if (r.name != n) continue;
            ++found;
            if (!r.outcome.pass()) {
                ok = false;
                detail += " " + n + ": " + std::to_string(r.outcome.violations) + " violations " + r.outcome.detail;
            }
        }
        if (found != 1) {
            ok = false;
            detail += " " + n + ": not registered";
        }
    }
    // Informational: the indicator-normalized cross-index form.
    for (const auto& r : run_suite(ctx, "cross_index_normalized"))
        detail += "; " + r.name + " " + std::to_string(r.outcome.violations) + " violations";
    return {ok, std::to_string(names.size()) + " properties x 1000 trials" + (ok ? ", zero violations" : "") + detail};
}

// 8. s -> infinity.
Verdict limit_behavior() {
    auto corpus = random_corpus(8080, 20);
    double worst = 0.0;
    for (const auto& f : corpus) {
        double inf = lorentz_norm(f, Exponents::make(2.0, kInfinity)).value;
        double big = lorentz_norm(f, Exponents::make(2.0, 1024.0)).value;
        worst = std::max(worst, std::abs(big - inf) / inf);
    }
    return {worst <= 0.02, "20 functions, max relative gap " + fmt("%.4f", worst)};
}

// 9. Lower maximal-norm equality at (2, 4).
Verdict maximal_norm_equality() {
    Exponents e = Exponents::make(2.0, 4.0);
    const double star = maximal_norm(kChi, e).value;
    const double scaled = std::pow(e.p_conj, 1.0 / e.s) * lorentz_norm(kChi, e).value;
    return {std::abs(star - 1.0) <= 1e-7 && std::abs(scaled - 1.0) <= 1e-7,
            "maximal norm " + fmt("%.12f", star) + ", (p')^{1/s} norm " + fmt("%.12f", scaled)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        Verdict (*run)();
    };
    const Criterion criteria[] = {
        {1, "extremal values", extremal_values},   {2, "sharp constant", sharpness},
        {3, "level bracket", bracket_criterion},       {4, "dual equals level", dual_witness},
        {5, "dual equals decomposition", decomposition}, {6, "column shuffle", column_shuffle},
        {7, "inequality suite", inequality_suite}, {8, "limit in s", limit_behavior},
        {9, "maximal norm equality", maximal_norm_equality},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d (%s): %s [%.1fs]\n", v.ok ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !v.ok;
    }
    return failures == 0 ? 0 : 1;
}
