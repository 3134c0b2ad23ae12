#pragma once

#include <vector>

#include "zeroerr/common.hpp"
#include "zeroerr/graph.hpp"

namespace zeroerr {

struct IsoOptions {
    SolverBudget budget{};
    std::size_t max_vertices = 64;
    /// Vertex weights closer than this are treated as equal.
    double weight_tol = 1e-9;
};

/// mapping[v] is the image in the second graph of vertex v of the first.
struct IsoResult {
    Decision decision = Decision::undecided;
    std::vector<int> mapping;
};

/// Weighted isomorphism: adjacency and vertex weights both preserved.
IsoResult find_isomorphism(const ProbabilisticGraph & g1, const ProbabilisticGraph & g2, const IsoOptions & opts = {});
IsoResult find_isomorphism(const Graph & g1, const Graph & g2, const IsoOptions & opts = {});

/// Isomorphism respecting initial vertex colours (colour ids are compared
/// across the two graphs).
IsoResult find_isomorphism(const Graph & g1, std::span<const int> colors1, const Graph & g2,
                           std::span<const int> colors2, const IsoOptions & opts = {});

bool is_automorphism(const Graph & g, std::span<const int> perm);

struct TransitivityOptions {
    SolverBudget budget{};
    std::size_t max_vertices = 32;
};

Decision is_vertex_transitive(const Graph & g, const TransitivityOptions & opts = {});
/// Aut(G) transitive on unordered edges. Graphs without edges count as
/// edge-transitive.
Decision is_edge_transitive(const Graph & g, const TransitivityOptions & opts = {});

} // namespace zeroerr
