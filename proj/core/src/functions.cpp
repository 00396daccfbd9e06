#include "lorentz/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace lorentz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string field(std::size_t i, const char* name) {
    std::ostringstream os;
    os << "pieces[" << i << "]." << name;
    return os.str();
}

void require(bool ok, std::size_t i, const char* name, const char* what) {
    if (!ok) throw InvalidArgument(field(i, name) + ": " + what);
}

// Chebyshev-spaced interior points of (a, b).
std::vector<double> chebyshev_points(double a, double b, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(n, 0)));
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (2.0 * i + 1.0) / (2.0 * n));
        out.push_back(0.5 * (a + b) + 0.5 * (b - a) * x);
    }
    return out;
}

}  // namespace

StepFunction::StepFunction(std::vector<StepPiece> pieces, bool canonicalize) {
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        require(std::isfinite(p.a), i, "a", "must be finite");
        require(std::isfinite(p.b), i, "b", "must be finite");
        require(std::isfinite(p.value), i, "value", "must be finite");
        require(p.a >= 0.0, i, "a", "must be >= 0");
        require(p.a < p.b, i, "b", "must exceed a");
        require(p.value >= 0.0, i, "value", "must be >= 0");
    }
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const StepPiece& x, const StepPiece& y) { return x.a < y.a; });
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].a < pieces[i - 1].b) {
            std::ostringstream os;
            os << "pieces overlap near t=" << pieces[i].a;
            throw InvalidArgument(os.str());
        }
    }
    if (!canonicalize) {
        pieces_ = std::move(pieces);
        return;
    }
    for (const auto& p : pieces) {
        if (p.value == 0.0) continue;
        if (!pieces_.empty() && pieces_.back().b == p.a && pieces_.back().value == p.value) {
            pieces_.back().b = p.b;
        } else {
            pieces_.push_back(p);
        }
    }
}

StepFunction StepFunction::indicator(double a, double b, double value) {
    return StepFunction({{a, b, value}});
}

double StepFunction::operator()(double t) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](double x, const StepPiece& p) { return x < p.b; });
    if (it == pieces_.end() || t < it->a) return 0.0;
    return it->value;
}

double StepFunction::support_end() const { return pieces_.empty() ? 0.0 : pieces_.back().b; }

double StepFunction::total_mass() const {
    double m = 0.0;
    for (const auto& p : pieces_) m += p.value * (p.b - p.a);
    return m;
}

double StepFunction::max_value() const {
    double m = 0.0;
    for (const auto& p : pieces_) m = std::max(m, p.value);
    return m;
}

bool StepFunction::is_nonincreasing() const {
    if (pieces_.empty()) return true;
    if (pieces_.front().a != 0.0) return false;
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        if (pieces_[i].a != pieces_[i - 1].b) return false;
        if (pieces_[i].value > pieces_[i - 1].value) return false;
    }
    return true;
}

StepFunction StepFunction::scaled(double c) const {
    if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("scale must be finite and >= 0");
    std::vector<StepPiece> out = pieces_;
    for (auto& p : out) p.value *= c;
    return StepFunction(std::move(out));
}

StepFunction StepFunction::dilated(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("dilation must be finite and > 0");
    std::vector<StepPiece> out = pieces_;
    for (auto& p : out) {
        p.a *= c;
        p.b *= c;
    }
    return StepFunction(std::move(out));
}

bool approx_equal(const StepFunction& f, const StepFunction& g, double tol) {
    const auto& x = f.pieces();
    const auto& y = g.pieces();
    if (x.size() != y.size()) return false;
    auto close = [tol](double u, double v) {
        return std::abs(u - v) <= tol * std::max({1.0, std::abs(u), std::abs(v)});
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!close(x[i].a, y[i].a) || !close(x[i].b, y[i].b) || !close(x[i].value, y[i].value))
            return false;
    }
    return true;
}

MonomialFunction::MonomialFunction(std::vector<MonomialPiece> pieces) {
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        require(std::isfinite(p.a), i, "a", "must be finite");
        require(std::isfinite(p.b), i, "b", "must be finite");
        require(std::isfinite(p.coeff), i, "coeff", "must be finite");
        require(std::isfinite(p.beta), i, "beta", "must be finite");
        require(p.a >= 0.0, i, "a", "must be >= 0");
        require(p.a < p.b, i, "b", "must exceed a");
        require(p.coeff >= 0.0, i, "coeff", "must be >= 0");
        require(!(p.a == 0.0 && p.coeff > 0.0 && p.beta >= 1.0), i, "beta",
                "must be < 1 on a piece touching 0");
    }
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const MonomialPiece& x, const MonomialPiece& y) { return x.a < y.a; });
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].a < pieces[i - 1].b) {
            std::ostringstream os;
            os << "pieces overlap near t=" << pieces[i].a;
            throw InvalidArgument(os.str());
        }
    }
    for (const auto& p : pieces)
        if (p.coeff > 0.0) pieces_.push_back(p);
}

MonomialFunction::MonomialFunction(const StepFunction& f) {
    pieces_.reserve(f.size());
    for (const auto& p : f.pieces()) pieces_.push_back({p.a, p.b, p.value, 0.0});
}

double MonomialFunction::operator()(double t) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](double x, const MonomialPiece& p) { return x < p.b; });
    if (it == pieces_.end() || t < it->a) return 0.0;
    if (it->beta == 0.0) return it->coeff;
    return it->coeff * std::pow(t, -it->beta);
}

double MonomialFunction::support_end() const { return pieces_.empty() ? 0.0 : pieces_.back().b; }

double MonomialFunction::total_mass() const {
    double m = 0.0;
    for (const auto& p : pieces_) m += monomial_mass(p.coeff, p.beta, p.a, p.b);
    return m;
}

bool MonomialFunction::is_nonincreasing(double tol) const {
    if (pieces_.empty()) return true;
    if (pieces_.front().a != 0.0) return false;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (p.beta < 0.0) return false;
        if (i == 0) continue;
        const auto& q = pieces_[i - 1];
        if (std::abs(p.a - q.b) > tol * std::max(1.0, q.b)) return false;
        double left = q.coeff * std::pow(q.b, -q.beta);
        double right = p.coeff * std::pow(p.a, -p.beta);
        if (right > left * (1.0 + tol)) return false;
    }
    return true;
}

bool MonomialFunction::all_steps() const {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [](const MonomialPiece& p) { return p.beta == 0.0; });
}

MonomialFunction MonomialFunction::scaled(double c) const {
    std::vector<MonomialPiece> out = pieces_;
    for (auto& p : out) p.coeff *= c;
    return MonomialFunction(std::move(out));
}

StepFunction rearrange(const StepFunction& f) {
    // Already-sorted input keeps its exact breakpoints.
    if (f.is_nonincreasing()) return f;
    std::vector<StepPiece> by_value = f.pieces();
    std::stable_sort(by_value.begin(), by_value.end(),
                     [](const StepPiece& x, const StepPiece& y) { return x.value > y.value; });
    std::vector<StepPiece> out;
    out.reserve(by_value.size());
    // Extended accumulation keeps long rearrangements on their exact positions.
    long double t = 0.0L;
    double a = 0.0;
    for (const auto& p : by_value) {
        t += static_cast<long double>(p.b) - static_cast<long double>(p.a);
        double b = static_cast<double>(t);
        if (b > a) out.push_back({a, b, p.value});
        a = b;
    }
    return StepFunction(std::move(out));
}

double monomial_mass(double coeff, double beta, double a, double b) {
    if (coeff == 0.0 || b <= a) return 0.0;
    const double e = 1.0 - beta;
    if (beta == 0.0) return coeff * (b - a);
    if (a == 0.0) {
        if (e <= 0.0) return kInf;
        return coeff * std::pow(b, e) / e;
    }
    const double L = std::log(b / a);
    if (std::abs(e) < 1e-12) return coeff * L;
    return coeff * std::pow(a, e) * std::expm1(e * L) / e;
}

double integral(const StepFunction& f, double a, double b) {
    if (!(a >= 0.0) || b < a) throw InvalidArgument("integral requires 0 <= a <= b");
    double m = 0.0;
    for (const auto& p : f.pieces()) {
        double lo = std::max(a, p.a);
        double hi = std::min(b, p.b);
        if (hi > lo) m += p.value * (hi - lo);
    }
    return m;
}

double integral(const MonomialFunction& f, double a, double b) {
    if (!(a >= 0.0) || b < a) throw InvalidArgument("integral requires 0 <= a <= b");
    double m = 0.0;
    for (const auto& p : f.pieces()) {
        double lo = std::max(a, p.a);
        double hi = std::min(b, p.b);
        if (hi <= lo) continue;
        if (lo == 0.0 && p.beta >= 1.0) throw InvalidArgument("piece with beta >= 1 touches 0");
        m += monomial_mass(p.coeff, p.beta, lo, hi);
    }
    return m;
}

namespace {

std::vector<double> breakpoints(const std::vector<StepFunction>& fs) {
    std::vector<double> xs;
    for (const auto& f : fs)
        for (const auto& p : f.pieces()) {
            xs.push_back(p.a);
            xs.push_back(p.b);
        }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

// Calls visit(lo, hi, values) for every elementary interval of the merged grid.
template <class Visit>
void sweep(const std::vector<StepFunction>& fs, Visit&& visit) {
    std::vector<double> xs = breakpoints(fs);
    std::vector<std::size_t> idx(fs.size(), 0);
    std::vector<double> vals(fs.size(), 0.0);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double lo = xs[i];
        double hi = xs[i + 1];
        for (std::size_t k = 0; k < fs.size(); ++k) {
            const auto& ps = fs[k].pieces();
            while (idx[k] < ps.size() && ps[idx[k]].b <= lo) ++idx[k];
            vals[k] = (idx[k] < ps.size() && ps[idx[k]].a <= lo) ? ps[idx[k]].value : 0.0;
        }
        visit(lo, hi, vals);
    }
}

}  // namespace

StepFunction sum(const std::vector<StepFunction>& fs, const std::vector<double>& weights) {
    if (!weights.empty() && weights.size() != fs.size())
        throw InvalidArgument("weights must match the number of functions");
    std::vector<StepPiece> out;
    sweep(fs, [&](double lo, double hi, const std::vector<double>& vals) {
        double v = 0.0;
        for (std::size_t k = 0; k < vals.size(); ++k)
            v += (weights.empty() ? 1.0 : weights[k]) * vals[k];
        if (v > 0.0) out.push_back({lo, hi, v});
    });
    return StepFunction(std::move(out));
}

StepFunction abs_difference(const StepFunction& f, const StepFunction& g) {
    std::vector<StepPiece> out;
    sweep({f, g}, [&](double lo, double hi, const std::vector<double>& vals) {
        double v = std::abs(vals[0] - vals[1]);
        if (v > 0.0) out.push_back({lo, hi, v});
    });
    return StepFunction(std::move(out));
}

RunningIntegral::RunningIntegral(const MonomialFunction& f) : f_(f) {
    knots_.push_back({0.0, 0.0});
    double F = 0.0;
    for (const auto& p : f_.pieces()) {
        if (p.a > knots_.back().t) knots_.push_back({p.a, F});
        F += monomial_mass(p.coeff, p.beta, p.a, p.b);
        knots_.push_back({p.b, F});
    }
}

double RunningIntegral::operator()(double t) const {
    if (t <= 0.0) return 0.0;
    const auto& ps = f_.pieces();
    auto it = std::upper_bound(ps.begin(), ps.end(), t,
                               [](double x, const MonomialPiece& p) { return x < p.b; });
    // Mass of all pieces ending at or before t.
    auto kt = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double x, const Knot& k) { return x < k.t; });
    if (it == ps.end() || t <= it->a) return std::prev(kt)->F;
    auto start = std::lower_bound(knots_.begin(), knots_.end(), it->a,
                                  [](const Knot& k, double x) { return k.t < x; });
    return start->F + monomial_mass(it->coeff, it->beta, it->a, t);
}

double MaximalFunction::operator()(double t) const {
    if (t <= 0.0 || pieces_.empty()) return pieces_.empty() ? 0.0 : pieces_.front().A;
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](double x, const MaximalPiece& p) { return x < p.b; });
    if (it == pieces_.end()) it = std::prev(pieces_.end());
    return it->A + it->B / t;
}

MaximalFunction maximal_function(const StepFunction& f, bool require_nonincreasing) {
    if (require_nonincreasing && !f.is_nonincreasing())
        throw InvalidArgument("maximal_function: input is not non-increasing");
    StepFunction g = rearrange(f);
    std::vector<MaximalPiece> out;
    double F = 0.0;
    for (const auto& p : g.pieces()) {
        out.push_back({p.a, p.b, p.value, F - p.value * p.a});
        F += p.value * (p.b - p.a);
    }
    if (!g.empty()) out.push_back({g.support_end(), kInf, 0.0, F});
    return MaximalFunction(std::move(out));
}

PrecedenceResult precedes(const MonomialFunction& f, const MonomialFunction& g,
                          int samples_per_piece) {
    if (!f.is_nonincreasing() || !g.is_nonincreasing())
        throw InvalidArgument("precedes: operands must be non-increasing");
    PrecedenceResult r;
    r.sampled = !(f.all_steps() && g.all_steps());
    RunningIntegral F(f), G(g);
    std::vector<double> ts;
    for (const auto& k : F.knots()) ts.push_back(k.t);
    for (const auto& k : G.knots()) ts.push_back(k.t);
    if (r.sampled) {
        for (const auto* h : {&f, &g})
            for (const auto& p : h->pieces())
                for (double t : chebyshev_points(p.a, p.b, samples_per_piece)) ts.push_back(t);
    }
    r.holds = true;
    r.worst_gap = -kInf;
    for (double t : ts) {
        double a = F(t), b = G(t);
        double gap = a - b;
        r.worst_gap = std::max(r.worst_gap, gap);
        if (gap > 1e-12 * std::max({a, b, 1e-300})) r.holds = false;
    }
    return r;
}

PrecedenceResult precedes(const StepFunction& f, const StepFunction& g, int samples_per_piece) {
    return precedes(MonomialFunction(rearrange(f)), MonomialFunction(rearrange(g)),
                    samples_per_piece);
}

StepFunction discretize(const MonomialFunction& f, std::size_t cells) {
    if (cells == 0) throw InvalidArgument("discretize: cells must be >= 1");
    if (f.empty()) return {};
    const double b = f.support_end();
    const double n = static_cast<double>(cells);
    std::vector<StepPiece> out;
    out.reserve(cells);
    double prev_t = 0.0;
    for (std::size_t k = 1; k <= cells; ++k) {
        double t = (k == cells) ? b : b * static_cast<double>(k) / n;
        out.push_back({prev_t, t, integral(f, prev_t, t) / (t - prev_t)});
        prev_t = t;
    }
    return StepFunction(std::move(out));
}

}  // namespace lorentz
