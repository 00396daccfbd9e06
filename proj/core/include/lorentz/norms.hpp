#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lorentz/functions.hpp"

namespace lorentz {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// The integral defining ||f||_{p,s} diverges.
class NotInSpace : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// (p, s) with derived quantities. s = inf is stored as +infinity.
struct Exponents {
    double p = 2.0;
    double s = 2.0;
    double p_conj = 2.0;
    double s_conj = 2.0;
    double alpha = 0.0;
    double c_ps = 1.0;

    static Exponents make(double p, double s);

    bool s_infinite() const { return s == kInfinity; }
    // (p/s)^{1/s}: the (p, s) norm of the indicator of [0, 1].
    double char_norm() const;
    // (s'/p')^{1/s'}: its dual norm when p < s.
    double char_dual() const;
    Exponents conjugate() const { return make(p_conj, s_conj); }

    std::string s_label() const;
};

// Formats an exponent; infinity prints as "inf".
std::string format_exponent(double x);
double parse_exponent(const std::string& text);

enum class NormMethod { closed_form, quadrature, supremum };
const char* to_string(NormMethod m);

struct NormValue {
    double value = 0.0;
    NormMethod method = NormMethod::closed_form;
    double est_abs_error = 0.0;
};

NormValue lorentz_norm(const StepFunction& f, const Exponents& e);
// f must be non-increasing.
NormValue lorentz_norm(const MonomialFunction& f, const Exponents& e);

// int_a^b (t^{1/p} f(t))^s dt/t for finite s, without rearranging f.
double lorentz_integral(const MonomialFunction& f, const Exponents& e, double a, double b);

NormValue maximal_norm(const StepFunction& f, const Exponents& e);

// Closed-form int_0^inf f g for piecewise functions.
double pair_integral(const MonomialFunction& f, const MonomialFunction& g);

struct HolderResult {
    double pairing = 0.0;
    double bound = 0.0;
};
// pairing = int f g on the raw inputs, or on f*, g* when `rearranged` is set.
HolderResult holder_pairing(const StepFunction& f, const StepFunction& g, const Exponents& e,
                            bool rearranged = false);

struct CrossIndexResult {
    double lhs = 0.0;
    double rhs = 0.0;
};
// lhs = (p/s)^{1/s} ||f||_{p,s}, rhs = (p/r)^{1/r} ||f||_{p,r}, r < s.
CrossIndexResult cross_index_check(const StepFunction& f, const Exponents& e_r, const Exponents& e_s);

struct LimitResult {
    std::vector<double> s_values;
    std::vector<double> norms;
    double sup_norm = 0.0;
};
LimitResult norm_limit_check(const StepFunction& f, double p, const std::vector<double>& s_sequence);

}  // namespace lorentz
