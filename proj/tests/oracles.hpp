#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// the closed forms under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "lorentz/decomposition.hpp"
#include "lorentz/functions.hpp"

namespace oracle {

// |{f > y}| from the raw pieces.
inline double distribution(const lorentz::StepFunction& f, double y) {
    double m = 0.0;
    for (const auto& p : f.pieces())
        if (p.value > y) m += p.b - p.a;
    return m;
}

// f*(t) = min{y : |{f > y}| <= t}, scanning the value set.
inline double rearranged_value(const lorentz::StepFunction& f, double t) {
    std::vector<double> vals{0.0};
    for (const auto& p : f.pieces()) vals.push_back(p.value);
    std::sort(vals.begin(), vals.end());
    for (double y : vals)
        if (distribution(f, y) <= t) return y;
    return vals.back();
}

// Composite Simpson on [lo, hi] with n (even) panels.
inline double simpson(const std::function<double(double)>& g, double lo, double hi, int n) {
    if (n % 2) ++n;
    const double h = (hi - lo) / n;
    double acc = g(lo) + g(hi);
    for (int i = 1; i < n; ++i) acc += g(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// ||f||_{p,s}^s by quadrature in x = ln t over each piece of f*, finite s.
inline double lorentz_norm_quadrature(const lorentz::StepFunction& f, double p, double s) {
    // Head below t0 is under 1e-50 of the total for s/p >= 0.18.
    const double t0 = 1e-300;
    // Knots of f*: partial sums of piece lengths sorted by value.
    std::vector<lorentz::StepPiece> by = f.pieces();
    std::sort(by.begin(), by.end(), [](auto& x, auto& y) { return x.value > y.value; });
    double acc = 0.0, a = 0.0;
    for (const auto& q : by) {
        double b = a + (q.b - q.a);
        double lo = std::log(std::max(a, t0)), hi = std::log(b);
        double v = q.value;
        int n = 2000 + 2 * static_cast<int>(std::ceil(50.0 * (hi - lo) * std::max(1.0, s / p)));
        acc += simpson([&](double x) { return std::pow(std::exp(x / p) * v, s); }, lo, hi, n);
        a = b;
    }
    return acc;
}

// (1/t) int_0^t f* directly from the oracle rearrangement.
inline double maximal_value(const lorentz::StepFunction& f, double t) {
    std::vector<lorentz::StepPiece> by = f.pieces();
    std::sort(by.begin(), by.end(), [](auto& x, auto& y) { return x.value > y.value; });
    double a = 0.0, mass = 0.0;
    for (const auto& q : by) {
        double len = q.b - q.a;
        double use = std::clamp(t - a, 0.0, len);
        mass += use * q.value;
        a += len;
    }
    return mass / t;
}

// Least concave majorant of the points (u_i, F_i) evaluated at every u_i, O(n^2).
inline std::vector<double> concave_majorant(const std::vector<double>& u, const std::vector<double>& F) {
    const std::size_t n = u.size();
    std::vector<double> out(F);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            for (std::size_t k = i; k < n; ++k) {
                if (j == k) continue;
                double w = (u[i] - u[j]) / (u[k] - u[j]);
                out[i] = std::max(out[i], F[j] + w * (F[k] - F[j]));
            }
    return out;
}

// Exhaustive search over all per-row permutations (small N, nu only).
inline bool any_assignment(const lorentz::ShuffleInstance& inst) {
    const std::size_t N = inst.eta.size(), nu = inst.alphas.size();
    const double eta = inst.eta_max();
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> base(nu);
    for (std::size_t k = 0; k < nu; ++k) base[k] = k;
    do perms.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
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

}  // namespace oracle
