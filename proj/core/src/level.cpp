#include "lorentz/level.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lorentz {

std::vector<std::size_t> upper_concave_hull(const std::vector<double>& u, const std::vector<double>& F,
                                            double rel_tol) {
    std::vector<std::size_t> st;
    st.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        while (st.size() >= 2) {
            std::size_t i0 = st[st.size() - 2];
            std::size_t i1 = st.back();
            // Pop i1 when it lies on or below the chord i0 -> i.
            long double lhs = (static_cast<long double>(F[i1]) - F[i0]) * (static_cast<long double>(u[i]) - u[i0]);
            long double rhs = (static_cast<long double>(F[i]) - F[i0]) * (static_cast<long double>(u[i1]) - u[i0]);
            long double tol = rel_tol * (std::abs(lhs) + std::abs(rhs));
            if (lhs <= rhs + tol) {
                st.pop_back();
            } else {
                break;
            }
        }
        st.push_back(i);
    }
    return st;
}

LevelResult level_function(const StepFunction& f, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("level_function: alpha must lie in [0, 1)");
    if (!f.is_nonincreasing()) throw InvalidArgument("level_function: input must be non-increasing");
    LevelResult r;
    r.alpha = alpha;
    r.source = f;
    if (f.empty()) return r;

    const auto& ps = f.pieces();
    std::vector<double> t{0.0}, u{0.0}, F{0.0};
    for (const auto& p : ps) {
        t.push_back(p.b);
        u.push_back(u.back() + monomial_mass(1.0, alpha, p.a, p.b));
        F.push_back(F.back() + p.value * (p.b - p.a));
    }
    std::vector<std::size_t> hull = upper_concave_hull(u, F);
    std::vector<MonomialPiece> pieces;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        std::size_t i = hull[k], j = hull[k + 1];
        double mass = 0.0;
        for (std::size_t m = i; m < j; ++m) mass += ps[m].value * (ps[m].b - ps[m].a);
        double lam = mass / monomial_mass(1.0, alpha, t[i], t[j]);
        r.intervals.push_back({t[i], t[j]});
        r.slopes.push_back(lam);
        pieces.push_back({t[i], t[j], lam, alpha});
    }
    r.level = MonomialFunction(std::move(pieces));
    return r;
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

LevelReport verify_level(const LevelResult& lr) {
    LevelReport rep;
    const StepFunction& f = lr.source;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    bool strict = true;
    for (std::size_t k = 1; k < lr.slopes.size(); ++k)
        if (!(lr.slopes[k] < lr.slopes[k - 1])) strict = false;
    add("slopes_strictly_decreasing", strict);

    bool ratio_ok = true;
    for (const auto& q : lr.level.pieces())
        if (q.beta != lr.alpha) ratio_ok = false;
    add("level_over_weight_nonincreasing", ratio_ok && strict);

    bool cover = true;
    double prev = 0.0;
    for (const auto& I : lr.intervals) {
        if (I.a != prev) cover = false;
        prev = I.b;
    }
    if (prev != f.support_end()) cover = false;
    add("intervals_cover_support", cover);

    double worst_mass = 0.0;
    for (std::size_t k = 0; k < lr.intervals.size(); ++k) {
        double mf = integral(f, lr.intervals[k].a, lr.intervals[k].b);
        double ml = integral(lr.level, lr.intervals[k].a, lr.intervals[k].b);
        worst_mass = std::max(worst_mass, std::abs(mf - ml) / std::max(mf, 1e-300));
    }
    add("interval_mass_equality", worst_mass <= 1e-12, "worst relative gap " + fmt(worst_mass));

    double tf = f.total_mass(), tl = lr.level.total_mass();
    add("total_mass_conserved", std::abs(tf - tl) <= 1e-12 * std::max(tf, 1e-300));

    PrecedenceResult pr = precedes(MonomialFunction(f), lr.level, 64);
    add("source_precedes_level", pr.holds, "worst gap " + fmt(pr.worst_gap));

    // f(t) t^alpha across piece closures.
    std::vector<double> seq;
    for (const auto& p : f.pieces()) {
        seq.push_back(p.value * std::pow(p.a, lr.alpha));
        seq.push_back(p.value * std::pow(p.b, lr.alpha));
    }
    if (!f.empty()) seq.push_back(0.0);
    rep.equality_predicate = true;
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i] > seq[i - 1] * (1.0 + 1e-12)) rep.equality_predicate = false;
    rep.level_equals_source = (f.empty() && lr.level.empty()) ||
                              (lr.alpha == 0.0 && approx_equal(f, StepFunction([&] {
                                   std::vector<StepPiece> v;
                                   for (const auto& q : lr.level.pieces()) v.push_back({q.a, q.b, q.coeff});
                                   return v;
                               }())));
    add("equality_iff_weighted_monotone", rep.equality_predicate == rep.level_equals_source);
    rep.diagnosis = rep.level_equals_source ? "equality" : "strict";

    // E = support minus the union of the I_k.
    double cursor = 0.0;
    for (const auto& I : lr.intervals) {
        if (I.a > cursor) rep.equality_set.push_back({cursor, I.a});
        cursor = std::max(cursor, I.b);
    }
    if (f.support_end() > cursor) rep.equality_set.push_back({cursor, f.support_end()});

    rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const LevelCheck& c) { return c.pass; });
    return rep;
}

Bracket level_bracket(const StepFunction& f, const Exponents& e) {
    if (!(e.p < e.s)) throw InvalidArgument("level_bracket: requires p < s");
    LevelResult lr = level_function(f, e.alpha);
    Bracket b;
    b.low = lorentz_norm(lr.level, e).value;
    b.mid = lorentz_norm(f, e).value;
    b.high = e.c_ps * b.low;
    return b;
}

}  // namespace lorentz
