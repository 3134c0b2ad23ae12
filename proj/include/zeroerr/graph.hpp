#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zeroerr/bitset.hpp"
#include "zeroerr/common.hpp"

namespace zeroerr {

using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
/// Rows are kept symmetric and irreflexive; the self-adjacency convention of
/// the AND product lives in the product rule, never in stored rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    /// Throws Error on out-of-range endpoints or self-loops.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                            std::vector<std::string> labels = {});

    std::size_t size() const noexcept { return rows_.size(); }
    bool adjacent(int u, int v) const noexcept { return rows_[u].test(v); }
    const Bitset & row(int v) const noexcept { return rows_[v]; }
    std::size_t degree(int v) const noexcept { return rows_[v].count(); }
    std::size_t edge_count() const noexcept;
    std::vector<Edge> edges() const;
    /// Degree if every vertex has the same degree.
    std::optional<std::size_t> regular_degree() const;

    const std::vector<std::string> & labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> labels);

    /// Construction helpers; a Graph is treated as immutable once shared.
    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    friend bool operator==(const Graph & a, const Graph & b) noexcept { return a.rows_ == b.rows_; }

private:
    std::vector<Bitset> rows_;
    std::vector<std::string> labels_;
};

/// Probability vector over vertices. Optionally carries an exact rational form
/// (numerators over a common denominator) alongside the floating weights.
class Distribution {
public:
    static constexpr double sum_tolerance = 1e-9;

    Distribution() = default;
    /// Throws Error on negative weights or a sum outside 1 +- 1e-9.
    explicit Distribution(std::vector<double> weights);
    /// Exact form; numerators must be non-negative and sum to den.
    static Distribution rational(std::vector<std::int64_t> numerators, std::int64_t den);
    static Distribution uniform(std::size_t n);
    static Distribution point_mass(std::size_t n, std::size_t at);
    /// Normalizes non-negative weights with positive total.
    static Distribution normalized(std::vector<double> weights);

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t i) const noexcept { return w_[i]; }
    const std::vector<double> & weights() const noexcept { return w_; }

    bool is_rational() const noexcept { return den_ > 0; }
    const std::vector<std::int64_t> & numerators() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }

    /// Shannon entropy in bits, 0 log 0 = 0.
    double entropy() const noexcept;
    bool is_uniform(double tol = 1e-12) const noexcept;

private:
    std::vector<double> w_;
    std::vector<std::int64_t> num_;
    std::int64_t den_ = 0;
};

/// The pair (graph, distribution on its vertices).
struct ProbabilisticGraph {
    Graph graph;
    Distribution dist;

    ProbabilisticGraph() = default;
    /// Throws Error when dist.size() != graph.size().
    ProbabilisticGraph(Graph g, Distribution d);
    static ProbabilisticGraph uniform(Graph g);

    std::size_t size() const noexcept { return graph.size(); }
};

/// Support pattern of a conditional distribution P(y|x).
struct ChannelSpec {
    struct Weight {
        int x;
        int y;
        double p;
    };

    int x_count = 0;
    int y_count = 0;
    std::vector<std::pair<int, int>> support;
    std::vector<Weight> weights;

    /// Throws Error naming the offending entry; "input has no outputs" when
    /// some x never appears in the support.
    void validate() const;
    /// outputs[x] = sorted outputs reachable from x.
    std::vector<std::vector<int>> outputs() const;
    /// Row-major x_count*y_count support indicator.
    std::vector<std::uint8_t> support_matrix() const;

    static ChannelSpec identity(int n);
    static ChannelSpec full(int nx, int ny);
    /// x confusable with x+1 mod n: outputs of x are {x, x+1 mod n}.
    static ChannelSpec typewriter(int n);
};

/// Index algebra of a disjoint union: global = offsets[a] + local.
struct UnionLayout {
    std::vector<std::size_t> block_sizes;
    std::vector<std::size_t> offsets;

    std::size_t total() const noexcept
    {
        return offsets.empty() ? 0 : offsets.back() + block_sizes.back();
    }
    std::size_t global(std::size_t block, std::size_t local) const noexcept
    {
        return offsets[block] + local;
    }
    /// (block, local) of a global index.
    std::pair<std::size_t, std::size_t> locate(std::size_t global) const;
};

struct ProductOptions {
    std::size_t vertex_budget = default_vertex_budget;
};

Graph characteristic_graph(const ChannelSpec & channel);

/// Lexicographic indexing: (i1, i2) -> i1 * n2 + i2. Throws BudgetError
/// ("product too large") beyond the vertex budget.
Graph and_product(const Graph & g1, const Graph & g2, const ProductOptions & opts = {});
ProbabilisticGraph and_product(const ProbabilisticGraph & g1, const ProbabilisticGraph & g2,
                               const ProductOptions & opts = {});
Graph and_power(const Graph & g, std::size_t n, const ProductOptions & opts = {});
ProbabilisticGraph and_power(const ProbabilisticGraph & g, std::size_t n, const ProductOptions & opts = {});
Distribution product_distribution(const Distribution & a, const Distribution & b);

std::pair<ProbabilisticGraph, UnionLayout> disjoint_union(std::span<const ProbabilisticGraph> parts,
                                                          const Distribution & weights);
std::pair<Graph, UnionLayout> disjoint_union(std::span<const Graph> parts);

Graph complement(const Graph & g);

Graph induced_subgraph(const Graph & g, std::span<const int> keep);
/// With renormalize set, weights are divided by the kept mass; throws
/// Error("cannot renormalize") when that mass is zero.
ProbabilisticGraph induced_subgraph(const ProbabilisticGraph & g, std::span<const int> keep, bool renormalize);

/// Catalog names: cycle n, complete n, empty n, path n, schlafli.
Graph catalog_get(const std::string & name, std::span<const int> params = {});
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph empty_graph(int n);
Graph path_graph(int n);
/// Skew-lines graph of the 27 lines on a cubic surface, labelled a1..a6,
/// b1..b6, c12..c56.
Graph schlafli_graph();

/// True iff the multiset of edges is consistent with a strongly regular graph
/// with the given parameters.
bool is_strongly_regular(const Graph & g, int n, int k, int lambda, int mu);

/// Relabels vertices: result vertex perm[v] corresponds to g's vertex v.
Graph permute(const Graph & g, std::span<const int> perm);
ProbabilisticGraph permute(const ProbabilisticGraph & g, std::span<const int> perm);

bool is_independent(const Graph & g, std::span<const int> vertices);

} // namespace zeroerr
