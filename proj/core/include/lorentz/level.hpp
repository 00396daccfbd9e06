#pragma once

#include <string>
#include <vector>

#include "lorentz/functions.hpp"
#include "lorentz/norms.hpp"

namespace lorentz {

struct Interval {
    double a = 0.0;
    double b = 0.0;
};

// Level function of a non-increasing step f with respect to t^{-alpha}:
// f° = slopes[k] * t^{-alpha} on intervals[k].
struct LevelResult {
    MonomialFunction level;
    std::vector<Interval> intervals;
    std::vector<double> slopes;
    double alpha = 0.0;
    StepFunction source;
};

// Vertex indices of the upper concave envelope of (u[i], F[i]), u increasing.
// Interior points within rel_tol of collinear are dropped.
std::vector<std::size_t> upper_concave_hull(const std::vector<double>& u, const std::vector<double>& F,
                                            double rel_tol = 1e-14);

LevelResult level_function(const StepFunction& f, double alpha);

struct LevelCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct LevelReport {
    std::vector<LevelCheck> checks;
    bool all_pass = false;
    // f(t) t^alpha non-increasing across piece closures.
    bool equality_predicate = false;
    bool level_equals_source = false;
    std::string diagnosis;                 // "equality" or "strict"
    std::vector<Interval> equality_set;    // complement of the union of I_k inside the support
};

LevelReport verify_level(const LevelResult& lr);

struct Bracket {
    double low = 0.0;   // ||f°||
    double mid = 0.0;   // ||f||
    double high = 0.0;  // c_ps ||f°||
};

// Requires p < s and a non-increasing f.
Bracket level_bracket(const StepFunction& f, const Exponents& e);

}  // namespace lorentz
