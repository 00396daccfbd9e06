#pragma once

#include <cstdint>
#include <optional>

#include "lorentz/functions.hpp"
#include "lorentz/level.hpp"
#include "lorentz/norms.hpp"

namespace lorentz {

enum class DualBranch { s_le_p_identity, level_function, sup_s_infinity };
const char* to_string(DualBranch b);

struct DualResult {
    double value = 0.0;
    DualBranch branch = DualBranch::s_le_p_identity;
    // Non-increasing g with ||g||_{p',s'} = 1 and int f* g = value (s < inf only).
    std::optional<MonomialFunction> witness;
};

DualResult dual_norm(const StepFunction& f, const Exponents& e);

struct OracleResult {
    double lower_bound = 0.0;
    std::size_t candidates = 0;
    bool witness_included = false;
};

// Randomized lower bound for the dual norm: max of int f* g over sampled
// non-increasing steps g normalized in L^{p',s'}, plus analytic candidates.
OracleResult dual_oracle(const StepFunction& f, const Exponents& e, std::size_t trials,
                         std::uint64_t seed);

struct EqualityDiagnosis {
    bool equal = false;            // |‖f‖' - ‖f‖| <= 1e-10 max(1, ‖f‖)
    double ratio = 1.0;            // ‖f‖ / ‖f‖'
    bool predicate_closures = false;  // f t^alpha non-increasing across piece closures
    bool predicate_grid = false;      // same, sampled at piece midpoints
};

// Requires p < s and a non-increasing f.
EqualityDiagnosis equality_diagnosis(const StepFunction& f, const Exponents& e);

}  // namespace lorentz
