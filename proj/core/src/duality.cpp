#include "lorentz/duality.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lorentz {

const char* to_string(DualBranch b) {
    switch (b) {
        case DualBranch::s_le_p_identity: return "s_le_p_identity";
        case DualBranch::level_function: return "level_function";
        case DualBranch::sup_s_infinity: return "sup_s_infinity";
    }
    return "unknown";
}

namespace {

MonomialFunction normalized(const MonomialFunction& g, const Exponents& conj) {
    double n = lorentz_norm(g, conj).value;
    return g.scaled(1.0 / n);
}

}  // namespace

DualResult dual_norm(const StepFunction& f, const Exponents& e) {
    StepFunction g = rearrange(f);
    DualResult r;
    const Exponents conj = e.conjugate();
    if (e.s <= e.p) {
        r.branch = DualBranch::s_le_p_identity;
        r.value = lorentz_norm(g, e).value;
        if (g.empty()) return r;
        // psi = (f*)^{s-1} t^{s/p - 1}
        std::vector<MonomialPiece> psi;
        for (const auto& q : g.pieces())
            psi.push_back({q.a, q.b, std::pow(q.value, e.s - 1.0), 1.0 - e.s / e.p});
        r.witness = normalized(MonomialFunction(std::move(psi)), conj);
        return r;
    }
    LevelResult lr = level_function(g, e.alpha);
    r.value = lorentz_norm(lr.level, e).value;
    if (e.s_infinite()) {
        r.branch = DualBranch::sup_s_infinity;
        return r;
    }
    r.branch = DualBranch::level_function;
    if (g.empty()) return r;
    // (f°)^{s-1} t^{s/p-1} is the constant slope^{s-1} on each I_k.
    std::vector<MonomialPiece> psi;
    for (std::size_t k = 0; k < lr.intervals.size(); ++k)
        psi.push_back({lr.intervals[k].a, lr.intervals[k].b, std::pow(lr.slopes[k], e.s - 1.0), 0.0});
    r.witness = normalized(MonomialFunction(std::move(psi)), conj);
    return r;
}

OracleResult dual_oracle(const StepFunction& f, const Exponents& e, std::size_t trials,
                         std::uint64_t seed) {
    OracleResult r;
    StepFunction g = rearrange(f);
    if (g.empty()) return r;
    const MonomialFunction fm(g);
    const Exponents conj = e.conjugate();
    auto consider = [&](double v) {
        r.lower_bound = std::max(r.lower_bound, v);
        ++r.candidates;
    };

    DualResult d = dual_norm(g, e);
    if (d.witness) {
        consider(pair_integral(fm, *d.witness));
        r.witness_included = true;
    }
    if (e.s_infinite()) {
        // chi_(0,xi) / (p' xi^{1/p'}) has unit (p', 1) norm.
        std::vector<double> xis;
        for (const auto& q : g.pieces()) xis.push_back(q.b);
        LevelResult lr = level_function(g, e.alpha);
        for (const auto& I : lr.intervals) xis.push_back(I.b);
        RunningIntegral F(fm);
        for (double xi : xis) consider(F(xi) / (e.p_conj * std::pow(xi, 1.0 / e.p_conj)));
    }

    const double span = 1.5 * g.support_end();
    for (std::size_t i = 0; i < trials; ++i) {
        std::mt19937_64 rng(seed + i);
        std::uniform_int_distribution<int> npieces(1, 6);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int n = npieces(rng);
        std::vector<double> knots, values;
        for (int k = 0; k < n; ++k) {
            knots.push_back(span * (1e-3 + unit(rng)));
            values.push_back(1e-3 + unit(rng));
        }
        std::sort(knots.begin(), knots.end());
        std::sort(values.begin(), values.end(), std::greater<>());
        std::vector<StepPiece> ps;
        double a = 0.0;
        for (int k = 0; k < n; ++k) {
            if (knots[k] > a) ps.push_back({a, knots[k], values[k]});
            a = std::max(a, knots[k]);
        }
        MonomialFunction cand{StepFunction(std::move(ps))};
        double nrm = lorentz_norm(cand, conj).value;
        if (nrm > 0.0) consider(pair_integral(fm, cand) / nrm);
    }
    return r;
}

EqualityDiagnosis equality_diagnosis(const StepFunction& f, const Exponents& e) {
    if (!(e.p < e.s)) throw InvalidArgument("equality_diagnosis: requires p < s");
    if (!f.is_nonincreasing()) throw InvalidArgument("equality_diagnosis: input must be non-increasing");
    EqualityDiagnosis out;
    double nf = lorentz_norm(f, e).value;
    double nd = dual_norm(f, e).value;
    out.equal = std::abs(nf - nd) <= 1e-10 * std::max(1.0, nf);
    out.ratio = nd > 0.0 ? nf / nd : 1.0;

    const double al = e.alpha;
    std::vector<double> closures, mids;
    for (const auto& q : f.pieces()) {
        closures.push_back(q.value * std::pow(q.a, al));
        closures.push_back(q.value * std::pow(q.b, al));
        double m = 0.5 * (q.a + q.b);
        mids.push_back(q.value * std::pow(m, al));
    }
    auto monotone = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > v[i - 1] * (1.0 + 1e-12)) return false;
        return true;
    };
    out.predicate_closures = monotone(closures);
    out.predicate_grid = monotone(mids);
    return out;
}

}  // namespace lorentz
