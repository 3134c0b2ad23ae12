#include "zeroerr/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace zeroerr {

namespace {

// Colour refinement and individualization over the disjoint pair (g1, g2):
// vertices 0..n-1 belong to g1, n..2n-1 to g2, and colour ids are shared so
// that a class must hold equally many vertices on both sides.
class PairSearch {
public:
    PairSearch(const Graph & g1, const Graph & g2, const SolverBudget & budget)
        : n_(g1.size()), tracker_(budget)
    {
        adj_.resize(2 * n_);
        for (std::size_t v = 0; v < n_; ++v) {
            for (int w : g1.row(static_cast<int>(v)).to_vector())
                adj_[v].push_back(w);
            for (int w : g2.row(static_cast<int>(v)).to_vector())
                adj_[n_ + v].push_back(static_cast<int>(n_) + w);
        }
        g1_ = &g1;
        g2_ = &g2;
    }

    Decision run(std::vector<int> colors, std::vector<int> & mapping)
    {
        bool found = search(std::move(colors), mapping);
        if (found)
            return Decision::yes;
        return tracker_.exhausted() ? Decision::undecided : Decision::no;
    }

private:
    // Returns the number of classes; false via `balanced` when some class
    // is lopsided between the two graphs.
    std::size_t refine(std::vector<int> & colors, bool & balanced) const
    {
        std::size_t classes = count_classes(colors);
        while (true) {
            std::vector<std::vector<int>> sig(2 * n_);
            for (std::size_t v = 0; v < 2 * n_; ++v) {
                auto & s = sig[v];
                s.reserve(adj_[v].size() + 1);
                for (int w : adj_[v])
                    s.push_back(colors[static_cast<std::size_t>(w)]);
                std::sort(s.begin(), s.end());
                s.insert(s.begin(), colors[v]);
            }
            std::map<std::vector<int>, int> ids;
            for (const auto & s : sig)
                ids.emplace(s, 0);
            int next = 0;
            for (auto & [s, id] : ids)
                id = next++;
            for (std::size_t v = 0; v < 2 * n_; ++v)
                colors[v] = ids[sig[v]];
            const auto now = ids.size();
            if (now == classes)
                break;
            classes = now;
        }
        std::vector<int> balance(classes, 0);
        for (std::size_t v = 0; v < n_; ++v)
            ++balance[static_cast<std::size_t>(colors[v])];
        for (std::size_t v = n_; v < 2 * n_; ++v)
            --balance[static_cast<std::size_t>(colors[v])];
        balanced = std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; });
        return classes;
    }

    static std::size_t count_classes(const std::vector<int> & colors)
    {
        std::vector<int> c = colors;
        std::sort(c.begin(), c.end());
        return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
    }

    bool search(std::vector<int> colors, std::vector<int> & mapping)
    {
        if (!tracker_.tick())
            return false;
        bool balanced = true;
        const auto classes = refine(colors, balanced);
        if (!balanced)
            return false;

        std::vector<int> size(classes, 0);
        for (std::size_t v = 0; v < n_; ++v)
            ++size[static_cast<std::size_t>(colors[v])];
        int target = -1;
        for (std::size_t c = 0; c < classes; ++c)
            if (size[c] > 1 && (target < 0 || size[c] < size[static_cast<std::size_t>(target)]))
                target = static_cast<int>(c);

        if (target < 0) {
            std::vector<int> where(classes, -1);
            for (std::size_t v = n_; v < 2 * n_; ++v)
                where[static_cast<std::size_t>(colors[v])] = static_cast<int>(v - n_);
            std::vector<int> m(n_);
            for (std::size_t v = 0; v < n_; ++v)
                m[v] = where[static_cast<std::size_t>(colors[v])];
            for (std::size_t u = 0; u < n_; ++u)
                for (std::size_t v = u + 1; v < n_; ++v)
                    if (g1_->adjacent(static_cast<int>(u), static_cast<int>(v))
                        != g2_->adjacent(m[u], m[v]))
                        return false;
            mapping = std::move(m);
            return true;
        }

        std::size_t u = 0;
        while (colors[u] != target)
            ++u;
        const int fresh = static_cast<int>(classes);
        for (std::size_t v = n_; v < 2 * n_; ++v) {
            if (colors[v] != target)
                continue;
            auto next = colors;
            next[u] = fresh;
            next[v] = fresh;
            if (search(std::move(next), mapping))
                return true;
            if (tracker_.exhausted())
                return false;
        }
        return false;
    }

    std::size_t n_;
    std::vector<std::vector<int>> adj_;
    const Graph * g1_ = nullptr;
    const Graph * g2_ = nullptr;
    BudgetTracker tracker_;
};

IsoResult run_pair(const Graph & g1, std::span<const int> c1, const Graph & g2, std::span<const int> c2,
                   const SolverBudget & budget, std::size_t max_vertices)
{
    IsoResult r;
    if (g1.size() != g2.size() || g1.edge_count() != g2.edge_count()) {
        r.decision = Decision::no;
        return r;
    }
    if (g1.size() > max_vertices) {
        r.decision = Decision::undecided;
        return r;
    }
    std::vector<int> colors(c1.begin(), c1.end());
    colors.insert(colors.end(), c2.begin(), c2.end());
    PairSearch s(g1, g2, budget);
    r.decision = s.run(std::move(colors), r.mapping);
    return r;
}

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> parent;
};

} // namespace

IsoResult find_isomorphism(const Graph & g1, std::span<const int> colors1, const Graph & g2,
                           std::span<const int> colors2, const IsoOptions & opts)
{
    if (colors1.size() != g1.size() || colors2.size() != g2.size())
        throw Error("colour vector length does not match graph size");
    return run_pair(g1, colors1, g2, colors2, opts.budget, opts.max_vertices);
}

IsoResult find_isomorphism(const Graph & g1, const Graph & g2, const IsoOptions & opts)
{
    std::vector<int> c1(g1.size(), 0), c2(g2.size(), 0);
    return run_pair(g1, c1, g2, c2, opts.budget, opts.max_vertices);
}

IsoResult find_isomorphism(const ProbabilisticGraph & g1, const ProbabilisticGraph & g2, const IsoOptions & opts)
{
    if (g1.size() != g2.size())
        return {Decision::no, {}};
    // Weight classes: sort all weights of both graphs and cut wherever
    // consecutive values differ by more than the tolerance.
    const auto n = g1.size();
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t v = 0; v < n; ++v) {
        all.emplace_back(g1.dist[v], v);
        all.emplace_back(g2.dist[v], n + v);
    }
    std::sort(all.begin(), all.end());
    std::vector<int> cls(2 * n, 0);
    int c = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (i > 0 && all[i].first - all[i - 1].first > opts.weight_tol)
            ++c;
        cls[all[i].second] = c;
    }
    std::span<const int> s(cls);
    return run_pair(g1.graph, s.first(n), g2.graph, s.subspan(n), opts.budget, opts.max_vertices);
}

bool is_automorphism(const Graph & g, std::span<const int> perm)
{
    if (perm.size() != g.size())
        return false;
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v)
            if (g.adjacent(static_cast<int>(u), static_cast<int>(v)) != g.adjacent(perm[u], perm[v]))
                return false;
    return true;
}

Decision is_vertex_transitive(const Graph & g, const TransitivityOptions & opts)
{
    const auto n = g.size();
    if (n <= 1)
        return Decision::yes;
    if (!g.regular_degree())
        return Decision::no;
    if (n > opts.max_vertices)
        return Decision::undecided;
    UnionFind orbits(n);
    bool undecided = false;
    for (std::size_t v = 1; v < n; ++v) {
        if (orbits.find(v) == orbits.find(0))
            continue;
        std::vector<int> c1(n, 0), c2(n, 0);
        c1[0] = 1;
        c2[v] = 1;
        auto r = run_pair(g, c1, g, c2, opts.budget, n);
        if (r.decision == Decision::no)
            return Decision::no;
        if (r.decision == Decision::undecided) {
            undecided = true;
            continue;
        }
        for (std::size_t x = 0; x < n; ++x)
            orbits.unite(x, static_cast<std::size_t>(r.mapping[x]));
    }
    return undecided ? Decision::undecided : Decision::yes;
}

Decision is_edge_transitive(const Graph & g, const TransitivityOptions & opts)
{
    const auto edges = g.edges();
    if (edges.size() <= 1)
        return Decision::yes;
    const auto n = g.size();
    if (n > opts.max_vertices)
        return Decision::undecided;
    std::map<Edge, std::size_t> index;
    for (std::size_t i = 0; i < edges.size(); ++i)
        index[edges[i]] = i;
    UnionFind orbits(edges.size());
    auto absorb = [&](const std::vector<int> & m) {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            int a = m[static_cast<std::size_t>(edges[i].first)], b = m[static_cast<std::size_t>(edges[i].second)];
            if (a > b)
                std::swap(a, b);
            orbits.unite(i, index.at({a, b}));
        }
    };
    const auto [u0, v0] = edges[0];
    bool undecided = false;
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (orbits.find(i) == orbits.find(0))
            continue;
        bool found = false;
        bool unknown = false;
        for (int flip = 0; flip < 2 && !found; ++flip) {
            auto [a, b] = edges[i];
            if (flip)
                std::swap(a, b);
            std::vector<int> c1(n, 0), c2(n, 0);
            c1[static_cast<std::size_t>(u0)] = 1;
            c1[static_cast<std::size_t>(v0)] = 2;
            c2[static_cast<std::size_t>(a)] = 1;
            c2[static_cast<std::size_t>(b)] = 2;
            auto r = run_pair(g, c1, g, c2, opts.budget, n);
            if (r.decision == Decision::yes) {
                absorb(r.mapping);
                found = true;
            } else if (r.decision == Decision::undecided) {
                unknown = true;
            }
        }
        if (!found) {
            if (!unknown)
                return Decision::no;
            undecided = true;
        }
    }
    return undecided ? Decision::undecided : Decision::yes;
}

} // namespace zeroerr
