#include "lorentz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lorentz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kGammaZero = 1e-12;

// ln of int_a^b t^(gamma-1) dt = ln((b^gamma - a^gamma) / gamma), 0 <= a < b.
double log_power_integral(double a, double b, double gamma) {
    if (a == 0.0) {
        if (gamma <= kGammaZero) return kInfinity;
        return gamma * std::log(b) - std::log(gamma);
    }
    const double L = std::log(b / a);
    if (std::abs(gamma) < kGammaZero) return std::log(L);
    const double x = gamma * L;
    double log_ratio;  // ln(expm1(x) / gamma)
    if (gamma > 0.0) {
        double log_em1 = x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x));
        log_ratio = log_em1 - std::log(gamma);
    } else {
        log_ratio = std::log(-std::expm1(x)) - std::log(-gamma);
    }
    return gamma * std::log(a) + log_ratio;
}

double log_sum_exp(const std::vector<double>& xs) {
    double m = -kInfinity;
    for (double x : xs) m = std::max(m, x);
    if (m == -kInfinity) return m;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

std::string label(double p, double s) {
    return "not in L^{" + format_exponent(p) + "," + format_exponent(s) + "}";
}

double sup_piece(const MonomialPiece& q, double p) {
    double e = 1.0 / p - q.beta;
    if (std::abs(e) < kGammaZero) return q.coeff;
    if (q.a == 0.0) {
        if (e < 0.0) return kInfinity;
        return q.coeff * std::pow(q.b, e);
    }
    return q.coeff * std::max(std::pow(q.a, e), std::pow(q.b, e));
}

}  // namespace

Exponents Exponents::make(double p, double s) {
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("p must lie in (1, inf)");
    if (!(s >= 1.0)) throw InvalidArgument("s must lie in [1, inf]");
    Exponents e;
    e.p = p;
    e.s = s;
    e.p_conj = p / (p - 1.0);
    if (s == kInfinity) {
        e.s_conj = 1.0;
    } else if (s == 1.0) {
        e.s_conj = kInfinity;
    } else {
        e.s_conj = s / (s - 1.0);
    }
    e.alpha = (e.s_conj == kInfinity) ? -kInfinity : 1.0 - e.s_conj / e.p_conj;
    double t2 = (e.s_conj == kInfinity) ? 1.0 : std::pow(e.p_conj / e.s_conj, 1.0 / e.s_conj);
    e.c_ps = e.char_norm() * t2;
    return e;
}

double Exponents::char_norm() const { return s_infinite() ? 1.0 : std::pow(p / s, 1.0 / s); }

double Exponents::char_dual() const {
    return s_conj == kInfinity ? 1.0 : std::pow(s_conj / p_conj, 1.0 / s_conj);
}

std::string Exponents::s_label() const { return format_exponent(s); }

std::string format_exponent(double x) {
    if (x == kInfinity) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
        char tmp[64];
        std::snprintf(tmp, sizeof tmp, "%.*g", prec, x);
        if (std::strtod(tmp, nullptr) == x) return tmp;
    }
    return buf;
}

double parse_exponent(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") return kInfinity;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw InvalidArgument("not a number: '" + text + "'");
    return v;
}

const char* to_string(NormMethod m) {
    switch (m) {
        case NormMethod::closed_form: return "closed_form";
        case NormMethod::quadrature: return "quadrature";
        case NormMethod::supremum: return "supremum";
    }
    return "unknown";
}

NormValue lorentz_norm(const MonomialFunction& f, const Exponents& e) {
    if (!f.is_nonincreasing()) throw InvalidArgument("lorentz_norm: monomial input must be non-increasing");
    NormValue out;
    if (f.empty()) {
        out.method = e.s_infinite() ? NormMethod::supremum : NormMethod::closed_form;
        return out;
    }
    if (e.s_infinite()) {
        out.method = NormMethod::supremum;
        for (const auto& q : f.pieces()) {
            double v = sup_piece(q, e.p);
            if (v == kInfinity) throw NotInSpace(label(e.p, e.s));
            out.value = std::max(out.value, v);
        }
        out.est_abs_error = 4 * kEps * out.value;
        return out;
    }
    std::vector<double> logs;
    logs.reserve(f.pieces().size());
    for (const auto& q : f.pieces()) {
        double gamma = e.s * (1.0 / e.p - q.beta);
        double li = log_power_integral(q.a, q.b, gamma);
        if (li == kInfinity) throw NotInSpace(label(e.p, e.s));
        logs.push_back(e.s * std::log(q.coeff) + li);
    }
    out.value = std::exp(log_sum_exp(logs) / e.s);
    out.method = NormMethod::closed_form;
    out.est_abs_error = 8 * kEps * out.value * static_cast<double>(logs.size());
    return out;
}

NormValue lorentz_norm(const StepFunction& f, const Exponents& e) {
    return lorentz_norm(MonomialFunction(rearrange(f)), e);
}

double lorentz_integral(const MonomialFunction& f, const Exponents& e, double a, double b) {
    if (e.s_infinite()) throw InvalidArgument("lorentz_integral: s must be finite");
    double acc = 0.0;
    for (const auto& q : f.pieces()) {
        double lo = std::max(a, q.a);
        double hi = std::min(b, q.b);
        if (hi <= lo) continue;
        double c = std::pow(q.coeff, e.s);
        acc += monomial_mass(c, e.s * q.beta - e.s / e.p + 1.0, lo, hi);
    }
    return acc;
}

NormValue maximal_norm(const StepFunction& f, const Exponents& e) {
    MaximalFunction mf = maximal_function(f);
    const auto& ps = mf.pieces();
    NormValue out;
    if (ps.empty()) {
        out.method = e.s_infinite() ? NormMethod::supremum : NormMethod::quadrature;
        return out;
    }
    const double p = e.p;
    // Supremum of t^{1/p} (A + B/t) on each piece.
    double M = 0.0;
    for (const auto& q : ps) {
        auto g = [&](double t) { return std::pow(t, 1.0 / p) * (q.A + q.B / t); };
        if (q.b == kInfinity) {
            M = std::max(M, g(q.a));
            continue;
        }
        if (q.a > 0.0) M = std::max(M, g(q.a));
        M = std::max(M, g(q.b));
        if (q.A > 0.0) {
            double ts = q.B * (p - 1.0) / q.A;
            if (ts > q.a && ts < q.b) M = std::max(M, g(ts));
        }
    }
    if (e.s_infinite()) {
        out.value = M;
        out.method = NormMethod::supremum;
        out.est_abs_error = 4 * kEps * M;
        return out;
    }
    const double s = e.s;
    const double lnM = std::log(M);
    double total = 0.0;
    double err_total = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const auto& q = ps[k];
        if (q.b == kInfinity) {
            // B^s int_b^inf t^{s/p - s - 1} dt
            double sp = s / e.p_conj;
            total += std::exp(s * (std::log(q.B) - std::log(q.a) / e.p_conj - lnM)) / sp;
            continue;
        }
        if (q.B == 0.0 && q.a == 0.0) {
            total += std::exp(s * (std::log(q.A) + std::log(q.b) / p - lnM)) * p / s;
            continue;
        }
        // Middle piece, integrated in u = ln t.
        auto integrand = [&](double u) {
            double h = u / p + std::log(q.A + q.B * std::exp(-u)) - lnM;
            return std::exp(s * h);
        };
        double err = 0.0;
        double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            integrand, std::log(q.a), std::log(q.b), 15, 1e-11, &err);
        total += val;
        err_total += err;
    }
    out.value = M * std::pow(total, 1.0 / s);
    out.method = NormMethod::quadrature;
    out.est_abs_error = out.value * (err_total / total) / s + 16 * kEps * out.value;
    return out;
}

double pair_integral(const MonomialFunction& f, const MonomialFunction& g) {
    const auto& x = f.pieces();
    const auto& y = g.pieces();
    std::size_t i = 0, j = 0;
    double acc = 0.0;
    while (i < x.size() && j < y.size()) {
        double lo = std::max(x[i].a, y[j].a);
        double hi = std::min(x[i].b, y[j].b);
        if (hi > lo) acc += monomial_mass(x[i].coeff * y[j].coeff, x[i].beta + y[j].beta, lo, hi);
        if (x[i].b < y[j].b) {
            ++i;
        } else {
            ++j;
        }
    }
    return acc;
}

HolderResult holder_pairing(const StepFunction& f, const StepFunction& g, const Exponents& e,
                            bool rearranged) {
    HolderResult r;
    if (rearranged) {
        r.pairing = pair_integral(MonomialFunction(rearrange(f)), MonomialFunction(rearrange(g)));
    } else {
        r.pairing = pair_integral(MonomialFunction(f), MonomialFunction(g));
    }
    r.bound = lorentz_norm(f, e).value * lorentz_norm(g, e.conjugate()).value;
    return r;
}

CrossIndexResult cross_index_check(const StepFunction& f, const Exponents& e_r, const Exponents& e_s) {
    if (e_r.p != e_s.p) throw InvalidArgument("cross_index_check: p must match");
    if (!(e_r.s < e_s.s)) throw InvalidArgument("cross_index_check: requires r < s");
    CrossIndexResult r;
    r.lhs = e_s.char_norm() * lorentz_norm(f, e_s).value;
    r.rhs = e_r.char_norm() * lorentz_norm(f, e_r).value;
    return r;
}

LimitResult norm_limit_check(const StepFunction& f, double p, const std::vector<double>& s_sequence) {
    LimitResult r;
    for (double s : s_sequence) {
        r.s_values.push_back(s);
        r.norms.push_back(lorentz_norm(f, Exponents::make(p, s)).value);
    }
    r.sup_norm = lorentz_norm(f, Exponents::make(p, kInfinity)).value;
    return r;
}

}  // namespace lorentz
