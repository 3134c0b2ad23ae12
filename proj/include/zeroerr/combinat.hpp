#pragma once

#include <cstdint>
#include <vector>

#include "zeroerr/common.hpp"
#include "zeroerr/graph.hpp"

namespace zeroerr {

/// Proper vertex colouring with colours 0..color_count-1.
struct Coloring {
    std::vector<int> color_of;
    int color_count = 0;
};

bool is_valid_coloring(const Graph & g, const Coloring & c);
/// H(c(X)) in bits.
double coloring_entropy(const ProbabilisticGraph & pg, const Coloring & c);

struct SetResult {
    std::size_t size = 0;
    /// Sorted vertex list.
    std::vector<int> witness;
    /// False when the budget ran out: size is then only a lower bound.
    bool exact = true;
    std::uint64_t nodes = 0;
};

struct ColoringResult {
    int count = 0;
    Coloring coloring;
    /// False when the budget ran out: count is then only an upper bound.
    bool exact = true;
    int lower_bound = 0;
    std::uint64_t nodes = 0;
};

inline constexpr std::size_t alpha_vertex_limit = 1024;
inline constexpr std::size_t chromatic_vertex_limit = 256;

/// Maximum clique by bitset branch and bound with greedy-colouring bounds.
SetResult max_clique(const Graph & g, const SolverBudget & budget = {});
SetResult alpha_exact(const Graph & g, const SolverBudget & budget = {});
SetResult omega_exact(const Graph & g, const SolverBudget & budget = {});

/// Greedy DSATUR colouring (no backtracking).
Coloring dsatur_coloring(const Graph & g);
/// DSATUR branch and bound seeded with a maximum clique.
ColoringResult chromatic_number_exact(const Graph & g, const SolverBudget & budget = {});
/// Minimum number of cliques partitioning the vertices; the colouring is a
/// colouring of the complement, i.e. a clique partition of g.
ColoringResult clique_cover_number(const Graph & g, const SolverBudget & budget = {});

/// All inclusion-maximal independent sets, each sorted, in lexicographic
/// order. Throws BudgetError past `limit` sets.
std::vector<std::vector<int>> maximal_independent_sets(const Graph & g, std::size_t limit = 1'000'000);

/// Greedy maximal independent set in a fixed vertex order.
std::vector<int> greedy_independent_set(const Graph & g, std::span<const int> order);

enum class ColoringMode { exact, heuristic };

struct EntropyColoring {
    double h_chi = 0.0;
    Coloring coloring;
    /// False when the value is only an upper bound on H_chi.
    bool exact = true;
};

inline constexpr std::size_t entropy_coloring_exact_limit = 18;

/// Minimum-entropy colouring. Exact mode runs a subset DP and needs
/// n <= 18; larger inputs fall back to the heuristic with exact = false.
/// The heuristic repeatedly removes a maximum-probability independent set.
EntropyColoring min_entropy_coloring(const ProbabilisticGraph & pg, ColoringMode mode = ColoringMode::exact,
                                     const SolverBudget & budget = {});

/// Maximum-weight independent set; exact=false when the budget ran out.
SetResult max_weight_independent_set(const Graph & g, std::span<const double> weights,
                                     const SolverBudget & budget = {});

} // namespace zeroerr
