#include "zeroerr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zeroerr {

// ---------------------------------------------------------------- Graph

Graph::Graph(std::size_t n) : rows_(n, Bitset(n)) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, std::vector<std::string> labels)
{
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
            throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n="
                        + std::to_string(n));
        if (u == v)
            throw Error("self-loop at vertex " + std::to_string(u));
        g.add_edge(u, v);
    }
    if (!labels.empty())
        g.set_labels(std::move(labels));
    return g;
}

std::size_t Graph::edge_count() const noexcept
{
    std::size_t twice = 0;
    for (const auto & r : rows_)
        twice += r.count();
    return twice / 2;
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    for (std::size_t u = 0; u < size(); ++u)
        for (auto v = rows_[u].next(u + 1); v != Bitset::npos; v = rows_[u].next(v + 1))
            out.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return out;
}

std::optional<std::size_t> Graph::regular_degree() const
{
    if (rows_.empty())
        return std::size_t{0};
    const auto d = rows_[0].count();
    for (const auto & r : rows_)
        if (r.count() != d)
            return std::nullopt;
    return d;
}

void Graph::set_labels(std::vector<std::string> labels)
{
    if (!labels.empty() && labels.size() != size())
        throw Error("label count " + std::to_string(labels.size()) + " does not match n=" + std::to_string(size()));
    labels_ = std::move(labels);
}

void Graph::add_edge(int u, int v)
{
    if (u == v)
        return;
    rows_[u].set(v);
    rows_[v].set(u);
}

void Graph::remove_edge(int u, int v)
{
    rows_[u].reset(v);
    rows_[v].reset(u);
}

// ---------------------------------------------------------------- Distribution

Distribution::Distribution(std::vector<double> weights) : w_(std::move(weights))
{
    double s = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (!(w_[i] >= 0.0) || !std::isfinite(w_[i]))
            throw Error("distribution weight " + std::to_string(i) + " is negative or not finite");
        s += w_[i];
    }
    if (std::abs(s - 1.0) > sum_tolerance)
        throw Error("distribution sums to " + std::to_string(s) + ", expected 1");
}

Distribution Distribution::rational(std::vector<std::int64_t> numerators, std::int64_t den)
{
    if (den <= 0)
        throw Error("rational distribution needs a positive denominator");
    std::int64_t s = 0;
    std::vector<double> w;
    w.reserve(numerators.size());
    for (auto v : numerators) {
        if (v < 0)
            throw Error("rational distribution has a negative numerator");
        s += v;
        w.push_back(static_cast<double>(v) / static_cast<double>(den));
    }
    if (s != den)
        throw Error("rational numerators sum to " + std::to_string(s) + ", expected " + std::to_string(den));
    Distribution d(std::move(w));
    d.num_ = std::move(numerators);
    d.den_ = den;
    return d;
}

Distribution Distribution::uniform(std::size_t n)
{
    if (n == 0)
        throw Error("uniform distribution over an empty set");
    return rational(std::vector<std::int64_t>(n, 1), static_cast<std::int64_t>(n));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t at)
{
    std::vector<std::int64_t> num(n, 0);
    num.at(at) = 1;
    return rational(std::move(num), 1);
}

Distribution Distribution::normalized(std::vector<double> weights)
{
    double s = 0.0;
    for (auto v : weights) {
        if (!(v >= 0.0))
            throw Error("cannot normalize negative weights");
        s += v;
    }
    if (!(s > 0.0))
        throw Error("cannot normalize zero total weight");
    for (auto & v : weights)
        v /= s;
    return Distribution(std::move(weights));
}

double Distribution::entropy() const noexcept
{
    double h = 0.0;
    for (auto p : w_)
        if (p > 0.0)
            h -= p * std::log2(p);
    return h;
}

bool Distribution::is_uniform(double tol) const noexcept
{
    if (w_.empty())
        return false;
    const double u = 1.0 / static_cast<double>(w_.size());
    return std::all_of(w_.begin(), w_.end(), [&](double p) { return std::abs(p - u) <= tol; });
}

ProbabilisticGraph::ProbabilisticGraph(Graph g, Distribution d) : graph(std::move(g)), dist(std::move(d))
{
    if (graph.size() != dist.size())
        throw Error("distribution length " + std::to_string(dist.size()) + " does not match n="
                    + std::to_string(graph.size()));
}

ProbabilisticGraph ProbabilisticGraph::uniform(Graph g)
{
    auto n = g.size();
    return {std::move(g), Distribution::uniform(n)};
}

// ---------------------------------------------------------------- ChannelSpec

void ChannelSpec::validate() const
{
    if (x_count <= 0 || y_count <= 0)
        throw Error("channel needs positive x_count and y_count");
    std::vector<bool> seen(static_cast<std::size_t>(x_count), false);
    for (auto [x, y] : support) {
        if (x < 0 || x >= x_count || y < 0 || y >= y_count)
            throw Error("support pair (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");
        seen[static_cast<std::size_t>(x)] = true;
    }
    for (int x = 0; x < x_count; ++x)
        if (!seen[static_cast<std::size_t>(x)])
            throw Error("input has no outputs: x=" + std::to_string(x));
    for (const auto & w : weights) {
        if (w.x < 0 || w.x >= x_count || w.y < 0 || w.y >= y_count)
            throw Error("weight entry (" + std::to_string(w.x) + "," + std::to_string(w.y) + ") out of range");
        if (!(w.p >= 0.0))
            throw Error("weight entry (" + std::to_string(w.x) + "," + std::to_string(w.y) + ") is negative");
    }
}

std::vector<std::vector<int>> ChannelSpec::outputs() const
{
    std::vector<std::vector<int>> out(static_cast<std::size_t>(x_count));
    for (auto [x, y] : support)
        out[static_cast<std::size_t>(x)].push_back(y);
    for (auto & row : out) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return out;
}

std::vector<std::uint8_t> ChannelSpec::support_matrix() const
{
    std::vector<std::uint8_t> m(static_cast<std::size_t>(x_count) * static_cast<std::size_t>(y_count), 0);
    for (auto [x, y] : support)
        m[static_cast<std::size_t>(x) * static_cast<std::size_t>(y_count) + static_cast<std::size_t>(y)] = 1;
    return m;
}

ChannelSpec ChannelSpec::identity(int n)
{
    ChannelSpec c{n, n, {}, {}};
    for (int x = 0; x < n; ++x)
        c.support.emplace_back(x, x);
    return c;
}

ChannelSpec ChannelSpec::full(int nx, int ny)
{
    ChannelSpec c{nx, ny, {}, {}};
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            c.support.emplace_back(x, y);
    return c;
}

ChannelSpec ChannelSpec::typewriter(int n)
{
    ChannelSpec c{n, n, {}, {}};
    for (int x = 0; x < n; ++x) {
        c.support.emplace_back(x, x);
        c.support.emplace_back(x, (x + 1) % n);
    }
    return c;
}

std::pair<std::size_t, std::size_t> UnionLayout::locate(std::size_t global) const
{
    auto it = std::upper_bound(offsets.begin(), offsets.end(), global);
    if (it == offsets.begin() || global >= total())
        throw Error("global index " + std::to_string(global) + " outside the union");
    auto block = static_cast<std::size_t>(it - offsets.begin()) - 1;
    return {block, global - offsets[block]};
}

// ---------------------------------------------------------------- constructions

Graph characteristic_graph(const ChannelSpec & channel)
{
    channel.validate();
    Graph g(static_cast<std::size_t>(channel.x_count));
    std::vector<std::vector<int>> inputs_of(static_cast<std::size_t>(channel.y_count));
    for (auto [x, y] : channel.support)
        inputs_of[static_cast<std::size_t>(y)].push_back(x);
    for (const auto & xs : inputs_of)
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j)
                g.add_edge(xs[i], xs[j]);
    return g;
}

namespace {

void check_budget(std::size_t n1, std::size_t n2, std::size_t budget)
{
    if (n1 != 0 && n2 > budget / n1)
        throw BudgetError("product too large: " + std::to_string(n1) + " x " + std::to_string(n2)
                          + " vertices exceeds budget " + std::to_string(budget));
}

} // namespace

Graph and_product(const Graph & g1, const Graph & g2, const ProductOptions & opts)
{
    const auto n1 = g1.size(), n2 = g2.size();
    check_budget(n1, n2, opts.vertex_budget);
    Graph g(n1 * n2);
    // closed neighbourhoods, then (u1,u2) ~ (v1,v2) iff v1 in N[u1] and v2 in N[u2]
    for (std::size_t u1 = 0; u1 < n1; ++u1) {
        Bitset c1 = g1.row(static_cast<int>(u1));
        c1.set(u1);
        for (std::size_t u2 = 0; u2 < n2; ++u2) {
            Bitset c2 = g2.row(static_cast<int>(u2));
            c2.set(u2);
            const auto u = u1 * n2 + u2;
            for (auto v1 = c1.first(); v1 != Bitset::npos; v1 = c1.next(v1 + 1))
                for (auto v2 = c2.first(); v2 != Bitset::npos; v2 = c2.next(v2 + 1)) {
                    const auto v = v1 * n2 + v2;
                    if (v > u)
                        g.add_edge(static_cast<int>(u), static_cast<int>(v));
                }
        }
    }
    return g;
}

Distribution product_distribution(const Distribution & a, const Distribution & b)
{
    if (a.is_rational() && b.is_rational()) {
        const auto da = a.denominator(), db = b.denominator();
        if (da <= (std::int64_t{1} << 31) && db <= (std::int64_t{1} << 31)) {
            std::vector<std::int64_t> num;
            num.reserve(a.size() * b.size());
            for (auto x : a.numerators())
                for (auto y : b.numerators())
                    num.push_back(x * y);
            return Distribution::rational(std::move(num), da * db);
        }
    }
    std::vector<double> w;
    w.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            w.push_back(a[i] * b[j]);
    return Distribution(std::move(w));
}

ProbabilisticGraph and_product(const ProbabilisticGraph & g1, const ProbabilisticGraph & g2,
                               const ProductOptions & opts)
{
    return {and_product(g1.graph, g2.graph, opts), product_distribution(g1.dist, g2.dist)};
}

Graph and_power(const Graph & g, std::size_t n, const ProductOptions & opts)
{
    if (n == 0)
        throw Error("AND power needs n >= 1");
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i)
        check_budget(total, g.size(), opts.vertex_budget), total *= g.size();
    Graph out = g;
    for (std::size_t i = 1; i < n; ++i)
        out = and_product(out, g, opts);
    return out;
}

ProbabilisticGraph and_power(const ProbabilisticGraph & g, std::size_t n, const ProductOptions & opts)
{
    Graph graph = and_power(g.graph, n, opts);
    Distribution d = g.dist;
    for (std::size_t i = 1; i < n; ++i)
        d = product_distribution(d, g.dist);
    return {std::move(graph), std::move(d)};
}

std::pair<Graph, UnionLayout> disjoint_union(std::span<const Graph> parts)
{
    UnionLayout layout;
    std::size_t total = 0;
    for (const auto & p : parts) {
        layout.offsets.push_back(total);
        layout.block_sizes.push_back(p.size());
        total += p.size();
    }
    Graph g(total);
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (auto [u, v] : parts[a].edges())
            g.add_edge(static_cast<int>(layout.offsets[a]) + u, static_cast<int>(layout.offsets[a]) + v);
    return {std::move(g), std::move(layout)};
}

std::pair<ProbabilisticGraph, UnionLayout> disjoint_union(std::span<const ProbabilisticGraph> parts,
                                                          const Distribution & weights)
{
    if (weights.size() != parts.size())
        throw Error("union weights length " + std::to_string(weights.size()) + " does not match "
                    + std::to_string(parts.size()) + " parts");
    std::vector<Graph> graphs;
    graphs.reserve(parts.size());
    for (const auto & p : parts)
        graphs.push_back(p.graph);
    auto [g, layout] = disjoint_union(std::span<const Graph>(graphs));

    bool rational = weights.is_rational();
    for (const auto & p : parts)
        rational = rational && p.dist.is_rational();
    if (rational) {
        // common denominator: weights.den * lcm of part denominators
        std::int64_t l = 1;
        bool ok = true;
        for (const auto & p : parts) {
            l = std::lcm(l, p.dist.denominator());
            if (l > (std::int64_t{1} << 30))
                ok = false;
        }
        if (ok && weights.denominator() <= (std::int64_t{1} << 30)) {
            std::vector<std::int64_t> num;
            for (std::size_t a = 0; a < parts.size(); ++a) {
                const auto scale = l / parts[a].dist.denominator();
                for (auto v : parts[a].dist.numerators())
                    num.push_back(weights.numerators()[a] * v * scale);
            }
            return {ProbabilisticGraph(std::move(g), Distribution::rational(std::move(num), weights.denominator() * l)),
                    std::move(layout)};
        }
    }
    std::vector<double> w;
    w.reserve(g.size());
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t x = 0; x < parts[a].size(); ++x)
            w.push_back(weights[a] * parts[a].dist[x]);
    return {ProbabilisticGraph(std::move(g), Distribution::normalized(std::move(w))), std::move(layout)};
}

Graph complement(const Graph & g)
{
    const auto n = g.size();
    Graph c(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (!g.adjacent(static_cast<int>(u), static_cast<int>(v)))
                c.add_edge(static_cast<int>(u), static_cast<int>(v));
    if (!g.labels().empty())
        c.set_labels(g.labels());
    return c;
}

Graph induced_subgraph(const Graph & g, std::span<const int> keep)
{
    Graph s(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || static_cast<std::size_t>(keep[i]) >= g.size())
            throw Error("induced_subgraph: vertex " + std::to_string(keep[i]) + " out of range");
        for (std::size_t j = i + 1; j < keep.size(); ++j)
            if (g.adjacent(keep[i], keep[j]))
                s.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
    if (!g.labels().empty()) {
        std::vector<std::string> labels;
        for (auto v : keep)
            labels.push_back(g.labels()[static_cast<std::size_t>(v)]);
        s.set_labels(std::move(labels));
    }
    return s;
}

ProbabilisticGraph induced_subgraph(const ProbabilisticGraph & g, std::span<const int> keep, bool renormalize)
{
    if (keep.empty())
        throw Error("induced_subgraph: empty vertex set");
    Graph s = induced_subgraph(g.graph, keep);
    std::vector<double> w;
    double mass = 0.0;
    for (auto v : keep) {
        w.push_back(g.dist[static_cast<std::size_t>(v)]);
        mass += w.back();
    }
    if (!renormalize)
        throw Error("induced_subgraph without renormalization has no probability distribution; use the Graph overload");
    if (!(mass > 0.0))
        throw Error("cannot renormalize: kept vertices have zero probability");
    if (g.dist.is_rational()) {
        std::vector<std::int64_t> num;
        std::int64_t total = 0;
        for (auto v : keep) {
            num.push_back(g.dist.numerators()[static_cast<std::size_t>(v)]);
            total += num.back();
        }
        return {std::move(s), Distribution::rational(std::move(num), total)};
    }
    return {std::move(s), Distribution::normalized(std::move(w))};
}

// ---------------------------------------------------------------- catalog

Graph cycle_graph(int n)
{
    if (n < 3)
        throw Error("cycle needs n >= 3, got " + std::to_string(n));
    Graph g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n);
    return g;
}

Graph complete_graph(int n)
{
    if (n < 1)
        throw Error("complete graph needs n >= 1");
    Graph g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.add_edge(i, j);
    return g;
}

Graph empty_graph(int n)
{
    if (n < 1)
        throw Error("empty graph needs n >= 1");
    return Graph(static_cast<std::size_t>(n));
}

Graph path_graph(int n)
{
    if (n < 1)
        throw Error("path needs n >= 1");
    Graph g(static_cast<std::size_t>(n));
    for (int i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

Graph schlafli_graph()
{
    struct Line {
        char kind; // 'a', 'b' or 'c'
        int i, j;  // a/b use i; c uses the pair i<j
    };
    std::vector<Line> lines;
    std::vector<std::string> labels;
    for (int i = 1; i <= 6; ++i)
        lines.push_back({'a', i, 0}), labels.push_back("a" + std::to_string(i));
    for (int i = 1; i <= 6; ++i)
        lines.push_back({'b', i, 0}), labels.push_back("b" + std::to_string(i));
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            lines.push_back({'c', i, j}), labels.push_back("c" + std::to_string(i) + std::to_string(j));

    auto meet = [](const Line & p, const Line & q) {
        if (p.kind > q.kind)
            return false; // callers order pairs so that p.kind <= q.kind
        if (p.kind == 'a' && q.kind == 'b')
            return p.i != q.i;
        if ((p.kind == 'a' || p.kind == 'b') && q.kind == 'c')
            return p.i == q.i || p.i == q.j;
        if (p.kind == 'c' && q.kind == 'c')
            return p.i != q.i && p.i != q.j && p.j != q.i && p.j != q.j;
        return false; // a-a and b-b pairs are skew
    };

    Graph g(lines.size());
    for (std::size_t u = 0; u < lines.size(); ++u)
        for (std::size_t v = u + 1; v < lines.size(); ++v) {
            const auto & p = lines[u].kind <= lines[v].kind ? lines[u] : lines[v];
            const auto & q = lines[u].kind <= lines[v].kind ? lines[v] : lines[u];
            if (!meet(p, q))
                g.add_edge(static_cast<int>(u), static_cast<int>(v));
        }
    g.set_labels(std::move(labels));
    return g;
}

Graph catalog_get(const std::string & name, std::span<const int> params)
{
    auto need = [&](std::size_t k) {
        if (params.size() != k)
            throw Error("catalog '" + name + "' expects " + std::to_string(k) + " parameter(s), got "
                        + std::to_string(params.size()));
    };
    if (name == "cycle") {
        need(1);
        return cycle_graph(params[0]);
    }
    if (name == "complete") {
        need(1);
        return complete_graph(params[0]);
    }
    if (name == "empty") {
        need(1);
        return empty_graph(params[0]);
    }
    if (name == "path") {
        need(1);
        return path_graph(params[0]);
    }
    if (name == "schlafli") {
        need(0);
        return schlafli_graph();
    }
    throw Error("unknown catalog graph '" + name + "'");
}

bool is_strongly_regular(const Graph & g, int n, int k, int lambda, int mu)
{
    if (g.size() != static_cast<std::size_t>(n))
        return false;
    for (int u = 0; u < n; ++u)
        if (g.degree(u) != static_cast<std::size_t>(k))
            return false;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const auto common = static_cast<int>(g.row(u).intersection_count(g.row(v)));
            if (common != (g.adjacent(u, v) ? lambda : mu))
                return false;
        }
    return true;
}

Graph permute(const Graph & g, std::span<const int> perm)
{
    if (perm.size() != g.size())
        throw Error("permutation length does not match graph size");
    Graph out(g.size());
    for (auto [u, v] : g.edges())
        out.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    return out;
}

ProbabilisticGraph permute(const ProbabilisticGraph & g, std::span<const int> perm)
{
    std::vector<double> w(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        w[static_cast<std::size_t>(perm[v])] = g.dist[v];
    if (g.dist.is_rational()) {
        std::vector<std::int64_t> num(g.size());
        for (std::size_t v = 0; v < g.size(); ++v)
            num[static_cast<std::size_t>(perm[v])] = g.dist.numerators()[v];
        return {permute(g.graph, perm), Distribution::rational(std::move(num), g.dist.denominator())};
    }
    return {permute(g.graph, perm), Distribution(std::move(w))};
}

bool is_independent(const Graph & g, std::span<const int> vertices)
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] == vertices[j] || g.adjacent(vertices[i], vertices[j]))
                return false;
    return true;
}

} // namespace zeroerr
