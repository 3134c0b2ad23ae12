#pragma once

#include <vector>

#include "zeroerr/common.hpp"
#include "zeroerr/graph.hpp"

namespace zeroerr {

struct PerfectOptions {
    /// Odd-hole search is exponential; larger graphs report undecided.
    std::size_t max_vertices = 14;
    SolverBudget budget{};
};

struct PerfectResult {
    Decision perfect = Decision::undecided;
    /// Cycle order of an odd hole when perfect == no.
    std::vector<int> witness;
    /// The hole lives in the complement (an odd antihole of g).
    bool in_complement = false;
};

/// Strong perfect graph test: no induced odd cycle of length >= 5 in g or in
/// its complement.
PerfectResult is_perfect(const Graph & g, const PerfectOptions & opts = {});

/// First odd hole found, in cycle order. Empty when none exists; sets
/// `exhausted` when the budget ran out first.
std::vector<int> find_odd_hole(const Graph & g, BudgetTracker & tracker, bool & exhausted);

/// True iff `cycle` (in order, length >= 3) induces exactly a cycle.
bool is_induced_cycle(const Graph & g, std::span<const int> cycle);

} // namespace zeroerr
