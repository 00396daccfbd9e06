#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lorentz/decomposition.hpp"
#include "lorentz/functions.hpp"
#include "lorentz/norms.hpp"

namespace lorentz {

using Rng = std::mt19937_64;

struct CorpusOptions {
    std::size_t max_pieces = 8;
    double max_support = 4.0;   // support lies in [0, max_support]
    double min_value = 0.05;
    double max_value = 3.0;
    bool nonincreasing = false;
    bool allow_gaps = false;    // leave zero stretches between pieces
};

StepFunction random_step(Rng& rng, const CorpusOptions& opt = {});
StepFunction random_nonincreasing(Rng& rng, const CorpusOptions& opt = {});

// Item i is drawn from Rng(seed + i), so items do not depend on count.
std::vector<StepFunction> random_corpus(std::uint64_t seed, std::size_t count, const CorpusOptions& opt = {});

// h with f < h: compresses f* and shifts mass from later pieces to earlier ones.
StepFunction random_majorant(const StepFunction& f, Rng& rng);
// g <= f pointwise.
StepFunction random_minorant(const StepFunction& f, Rng& rng);
// Same pieces in a random order; equimeasurable with f.
StepFunction random_shuffle(const StepFunction& f, Rng& rng);

// Instance satisfying prefix domination; roughly a quarter are tight at some prefix.
ShuffleInstance random_shuffle_instance(Rng& rng, std::size_t N, std::size_t nu);

// {1.25, 1.5, 2, 3, 8} x {1.5, 2, 4, 16, inf}.
std::vector<double> grid_p_values();
std::vector<double> grid_s_values();
std::vector<Exponents> exponent_grid(bool only_p_below_s = false);

}  // namespace lorentz
