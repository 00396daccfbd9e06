#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lorentz {

// Raised for malformed functions or out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct StepPiece {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    bool operator==(const StepPiece&) const = default;
};

// Nonnegative piecewise-constant function on (0, inf), zero off its pieces.
// Pieces are (a, b, value), sorted, pairwise disjoint, bounded support.
class StepFunction {
public:
    StepFunction() = default;

    // Validates and (by default) canonicalizes: sort, drop zero pieces,
    // merge touching pieces with equal values.
    explicit StepFunction(std::vector<StepPiece> pieces, bool canonicalize = true);

    static StepFunction indicator(double a, double b, double value = 1.0);

    const std::vector<StepPiece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    std::size_t size() const { return pieces_.size(); }

    double operator()(double t) const;
    double support_end() const;
    double total_mass() const;
    double max_value() const;
    bool is_nonincreasing() const;

    StepFunction scaled(double c) const;
    // t -> f(t / c)
    StepFunction dilated(double c) const;

    bool operator==(const StepFunction& other) const = default;

private:
    std::vector<StepPiece> pieces_;
};

// Equality of canonical piece lists with a relative value tolerance.
bool approx_equal(const StepFunction& f, const StepFunction& g, double tol = 1e-12);

struct MonomialPiece {
    double a = 0.0;
    double b = 0.0;
    double coeff = 0.0;
    double beta = 0.0;  // piece is coeff * t^(-beta)
    bool operator==(const MonomialPiece&) const = default;
};

class MonomialFunction {
public:
    MonomialFunction() = default;
    explicit MonomialFunction(std::vector<MonomialPiece> pieces);
    MonomialFunction(const StepFunction& f);  // NOLINT: steps embed as beta = 0

    const std::vector<MonomialPiece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }

    double operator()(double t) const;
    double support_end() const;
    double total_mass() const;
    // Starts at 0, no gaps, each piece non-increasing and no upward jumps.
    bool is_nonincreasing(double tol = 1e-12) const;
    bool all_steps() const;

    MonomialFunction scaled(double c) const;

private:
    std::vector<MonomialPiece> pieces_;
};

StepFunction rearrange(const StepFunction& f);

double integral(const StepFunction& f, double a, double b);
double integral(const MonomialFunction& f, double a, double b);
// Closed-form mass of c * t^(-beta) over (a, b).
double monomial_mass(double coeff, double beta, double a, double b);

// Sum of weighted step functions over the union of all breakpoints.
StepFunction sum(const std::vector<StepFunction>& fs, const std::vector<double>& weights = {});
StepFunction abs_difference(const StepFunction& f, const StepFunction& g);

// Cumulative mass F(t) = int_0^t f, closed form between knots.
class RunningIntegral {
public:
    struct Knot {
        double t;
        double F;
    };

    explicit RunningIntegral(const MonomialFunction& f);

    const std::vector<Knot>& knots() const { return knots_; }
    double operator()(double t) const;
    double total() const { return knots_.empty() ? 0.0 : knots_.back().F; }

private:
    MonomialFunction f_;
    std::vector<Knot> knots_;
};

// f**(t) = A + B / t on (a, b); the last piece runs to infinity.
struct MaximalPiece {
    double a;
    double b;
    double A;
    double B;
};

class MaximalFunction {
public:
    MaximalFunction() = default;
    explicit MaximalFunction(std::vector<MaximalPiece> pieces) : pieces_(std::move(pieces)) {}

    const std::vector<MaximalPiece>& pieces() const { return pieces_; }
    double operator()(double t) const;

private:
    std::vector<MaximalPiece> pieces_;
};

MaximalFunction maximal_function(const StepFunction& f, bool require_nonincreasing = false);

struct PrecedenceResult {
    bool holds = false;
    bool sampled = false;       // true when a monomial operand forced interior sampling
    double worst_gap = 0.0;     // max of F(t) - G(t) over checked points
};

// f < g in the Hardy-Littlewood-Polya sense: int_0^t f* <= int_0^t g*.
PrecedenceResult precedes(const StepFunction& f, const StepFunction& g, int samples_per_piece = 64);
PrecedenceResult precedes(const MonomialFunction& f, const MonomialFunction& g,
                          int samples_per_piece = 64);

// Mass-preserving cell averages on `cells` equal cells over [0, support_end].
StepFunction discretize(const MonomialFunction& f, std::size_t cells);

}  // namespace lorentz
