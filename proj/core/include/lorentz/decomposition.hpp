#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lorentz/functions.hpp"
#include "lorentz/level.hpp"
#include "lorentz/norms.hpp"

namespace lorentz {

// ---- column shuffle -------------------------------------------------

struct ShuffleInstance {
    std::vector<double> alphas;             // non-increasing, positive
    std::vector<std::vector<double>> eta;   // N rows x nu columns, positive
    double eta_max() const;
};

struct ShuffleResult {
    // perms[j][k] = original column of the entry that row j holds in column k.
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::vector<double>> permuted;
    std::vector<double> beta_tilde;
};

ShuffleResult matrix_shuffle(const ShuffleInstance& inst);

// Run-length form of one column: consecutive rows holding the same entry.
struct ColumnRun {
    std::uint64_t count = 0;
    double value = 0.0;
    std::uint32_t src = 0;  // column the entry started in
};
using Column = std::vector<ColumnRun>;

struct RunShuffleStats {
    std::size_t swaps = 0;
    std::vector<double> beta_tilde;
};

// In-place column shuffle on run-length columns. All columns must cover
// the same number of rows.
RunShuffleStats shuffle_columns(std::vector<Column>& columns, const std::vector<double>& alphas);

// ---- epsilon certificate ----------------------------------------------

struct DecompositionOptions {
    std::size_t initial_nu = 4;
    std::size_t max_cells = std::size_t{1} << 15;
};

struct CellRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Upper bound on the decomposition norm from an explicit representation
// g_nu <= sum_j f_j + delta on [0, b], each f_j a rearrangement of psi_nu / N.
// Since f* <= g_nu + (f* - g_nu)_+, the bound adds the norm of that excess.
struct DecompositionCertificate {
    Exponents exps;
    double epsilon = 0.0;
    double lower_bound = 0.0;     // dual norm
    double upper_bound = 0.0;     // sum ||f_j|| + delta ||chi_[0,b]|| + approx_error
    double delta = 0.0;
    std::uint64_t N = 0;
    std::size_t nu = 0;           // refinement level; cells = base * nu
    std::size_t base = 1;         // knot-alignment multiplier
    bool aligned = false;         // every knot of f* is a grid point
    bool converged = false;       // stopping rule met before the cell cap
    bool upper_envelope = false;  // g_nu = cell suprema of f* rather than cell averages
    double support_end = 0.0;     // grid end b >= support of f*
    double psi_norm = 0.0;
    double part_norm = 0.0;       // ||psi_nu / N||
    double approx_error = 0.0;    // ||(f* - g_nu)_+||
    double chi_norm = 0.0;        // ||chi_[0,b]||

    std::vector<double> grid;     // cell edges, size cells + 1
    std::vector<double> g;        // g_nu per cell
    std::vector<double> psi;      // psi_nu per cell
    std::vector<CellRange> blocks;
    std::vector<Column> columns;  // per cell, rows 0..N-1
    std::vector<double> column_sums;
    std::vector<std::uint64_t> row_breaks;  // 0 = r_0 < ... < r_D = N

    std::size_t cells() const { return g.size(); }
    std::size_t part_count() const { return row_breaks.empty() ? 0 : row_breaks.size() - 1; }
    std::uint64_t multiplicity(std::size_t i) const { return row_breaks[i + 1] - row_breaks[i]; }
    StepFunction part(std::size_t i) const;
    std::vector<StepFunction> parts() const;
    // Streams the distinct parts in row order; at[k] is the entry part i holds in cell k.
    void visit_parts(const std::function<void(std::size_t i, const std::vector<const ColumnRun*>& at)>& fn) const;
    StepFunction psi_function() const;
    StepFunction g_function() const;
};

// Requires p < s and epsilon > 0; f is rearranged first.
DecompositionCertificate epsilon_decomposition(const StepFunction& f, const Exponents& e, double epsilon,
                                               const DecompositionOptions& opt = {});

struct CertificateCheck {
    bool cover_ok = false;        // g_nu <= sum_j f_j + delta on every cell
    double cover_margin = 0.0;    // min over cells of sum + delta - g
    bool permutation_ok = false;  // every part permutes psi_nu / N within each block
    bool norms_ok = false;        // ||f_j|| = ||psi_nu|| / N to 1e-12 + 8 cells ulp on every checked part
    double norm_worst_rel = 0.0;
    std::size_t norms_checked = 0;
    bool bracket_ok = false;      // lower <= upper <= lower + 4 eps + 1e-9
    bool all() const { return cover_ok && permutation_ok && norms_ok && bracket_ok; }
};

// The default check sums column runs, verifies the block permutation
// structure of every part (which makes all parts equimeasurable on the
// uniform grid) and recomputes the norm of up to `norm_samples` evenly spaced
// parts. literal = true sums the materialized parts and recomputes every norm.
CertificateCheck check_certificate(const DecompositionCertificate& c, bool literal = false,
                                   std::size_t norm_samples = 256);

// ---- indicator decomposition ------------------------------------------

struct CharDecomposition {
    std::vector<StepFunction> parts;
    std::vector<double> part_norms;
    double sum_of_norms = 0.0;
    double partition_error = 0.0;  // max |sum_k h_k - 1| over cells
    double norm_spread = 0.0;      // (max - min) / max of the part norms
};

// Requires p < s < inf, N >= 1, cells >= 64 N and cells divisible by N.
CharDecomposition char_decomposition(const Exponents& e, std::size_t N, std::size_t cells);

// ---- triangle and Minkowski -------------------------------------------

struct TriangleCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

TriangleCheck triangle_check(const std::vector<StepFunction>& fs, const Exponents& e);
TriangleCheck minkowski_check(const std::vector<StepFunction>& rows, const std::vector<double>& weights,
                              const Exponents& e);

}  // namespace lorentz
