#include "zeroerr/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace zeroerr {

bool is_valid_coloring(const Graph & g, const Coloring & c)
{
    if (c.color_of.size() != g.size())
        return false;
    for (auto col : c.color_of)
        if (col < 0 || col >= c.color_count)
            return false;
    for (auto [u, v] : g.edges())
        if (c.color_of[static_cast<std::size_t>(u)] == c.color_of[static_cast<std::size_t>(v)])
            return false;
    return true;
}

double coloring_entropy(const ProbabilisticGraph & pg, const Coloring & c)
{
    std::vector<double> mass(static_cast<std::size_t>(c.color_count), 0.0);
    for (std::size_t v = 0; v < pg.size(); ++v)
        mass[static_cast<std::size_t>(c.color_of[v])] += pg.dist[v];
    double h = 0.0;
    for (auto m : mass)
        if (m > 0.0)
            h -= m * std::log2(m);
    return h;
}

// ---------------------------------------------------------------- max clique

namespace {

std::vector<int> descending_degree_order(const Graph & g)
{
    std::vector<int> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    return order;
}

// Rows relabelled so that bit i is the i-th vertex of `order`.
std::vector<Bitset> reordered_rows(const Graph & g, const std::vector<int> & order)
{
    const auto n = g.size();
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < n; ++i)
        pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    std::vector<Bitset> rows(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto & r = g.row(order[i]);
        for (auto w = r.first(); w != Bitset::npos; w = r.next(w + 1))
            rows[i].set(static_cast<std::size_t>(pos[w]));
    }
    return rows;
}

class CliqueSearch {
public:
    CliqueSearch(const std::vector<Bitset> & rows, const SolverBudget & budget)
        : rows_(rows), tracker_(budget)
    {
    }

    void run(std::size_t n)
    {
        Bitset p(n);
        p.set_all();
        expand(p);
    }

    std::vector<int> best;
    bool exhausted() const { return tracker_.exhausted(); }
    std::uint64_t nodes() const { return tracker_.nodes(); }

private:
    void expand(Bitset p)
    {
        if (!tracker_.tick())
            return;
        std::vector<int> order;
        std::vector<int> bound;
        color_sort(p, order, bound);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (current_.size() + static_cast<std::size_t>(bound[i]) <= best.size())
                return;
            const int v = order[i];
            current_.push_back(v);
            Bitset next = p & rows_[static_cast<std::size_t>(v)];
            if (next.none()) {
                if (current_.size() > best.size())
                    best = current_;
            } else {
                expand(std::move(next));
            }
            current_.pop_back();
            p.reset(static_cast<std::size_t>(v));
            if (tracker_.exhausted())
                return;
        }
    }

    // Sequential greedy colouring of p; vertices listed class by class with
    // the running class number as bound.
    void color_sort(const Bitset & p, std::vector<int> & order, std::vector<int> & bound) const
    {
        Bitset uncolored = p;
        int k = 0;
        while (uncolored.any()) {
            ++k;
            Bitset q = uncolored;
            for (auto v = q.first(); v != Bitset::npos; v = q.next(v + 1)) {
                uncolored.reset(v);
                q.subtract(rows_[v]);
                order.push_back(static_cast<int>(v));
                bound.push_back(k);
            }
        }
    }

    const std::vector<Bitset> & rows_;
    BudgetTracker tracker_;
    std::vector<int> current_;
};

} // namespace

SetResult max_clique(const Graph & g, const SolverBudget & budget)
{
    SetResult r;
    const auto n = g.size();
    if (n == 0)
        return r;
    const auto order = descending_degree_order(g);
    const auto rows = reordered_rows(g, order);
    CliqueSearch s(rows, budget);
    s.run(n);
    for (int v : s.best)
        r.witness.push_back(order[static_cast<std::size_t>(v)]);
    std::sort(r.witness.begin(), r.witness.end());
    r.size = r.witness.size();
    r.exact = !s.exhausted();
    r.nodes = s.nodes();
    return r;
}

std::vector<int> greedy_independent_set(const Graph & g, std::span<const int> order)
{
    Bitset blocked(g.size());
    std::vector<int> out;
    for (int v : order) {
        if (blocked.test(static_cast<std::size_t>(v)))
            continue;
        out.push_back(v);
        blocked.set(static_cast<std::size_t>(v));
        blocked |= g.row(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SetResult alpha_exact(const Graph & g, const SolverBudget & budget)
{
    if (g.size() > alpha_vertex_limit) {
        std::vector<int> order(g.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
        SetResult r;
        r.witness = greedy_independent_set(g, order);
        r.size = r.witness.size();
        r.exact = false;
        return r;
    }
    return max_clique(complement(g), budget);
}

SetResult omega_exact(const Graph & g, const SolverBudget & budget) { return max_clique(g, budget); }

// ---------------------------------------------------------------- colouring

namespace {

class DsaturState {
public:
    explicit DsaturState(const Graph & g)
        : g_(g), n_(g.size()), color_(n_, -1), counts_(n_ * (n_ + 1), 0), sat_(n_, 0)
    {
    }

    void assign(int v, int c)
    {
        color_[static_cast<std::size_t>(v)] = c;
        const auto & r = g_.row(v);
        for (auto w = r.first(); w != Bitset::npos; w = r.next(w + 1))
            if (counts_[w * (n_ + 1) + static_cast<std::size_t>(c)]++ == 0)
                ++sat_[w];
    }

    void unassign(int v)
    {
        const int c = color_[static_cast<std::size_t>(v)];
        color_[static_cast<std::size_t>(v)] = -1;
        const auto & r = g_.row(v);
        for (auto w = r.first(); w != Bitset::npos; w = r.next(w + 1))
            if (--counts_[w * (n_ + 1) + static_cast<std::size_t>(c)] == 0)
                --sat_[w];
    }

    bool blocked(int v, int c) const
    {
        return counts_[static_cast<std::size_t>(v) * (n_ + 1) + static_cast<std::size_t>(c)] > 0;
    }

    // Uncoloured vertex of maximum saturation; ties go to the earlier vertex
    // of `rank` (descending static degree).
    int pick(const std::vector<int> & rank) const
    {
        int best = -1;
        for (int v : rank)
            if (color_[static_cast<std::size_t>(v)] < 0
                && (best < 0 || sat_[static_cast<std::size_t>(v)] > sat_[static_cast<std::size_t>(best)]))
                best = v;
        return best;
    }

    const std::vector<int> & colors() const { return color_; }

private:
    const Graph & g_;
    std::size_t n_;
    std::vector<int> color_;
    std::vector<int> counts_;
    std::vector<int> sat_;
};

Coloring finish(std::vector<int> colors)
{
    Coloring c;
    c.color_count = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
    c.color_of = std::move(colors);
    return c;
}

class ColoringSearch {
public:
    ColoringSearch(const Graph & g, const SolverBudget & budget, Coloring initial, int lower)
        : g_(g), state_(g), tracker_(budget), best_(std::move(initial)), lower_(lower),
          rank_(descending_degree_order(g))
    {
    }

    void run(const std::vector<int> & clique)
    {
        for (std::size_t i = 0; i < clique.size(); ++i)
            state_.assign(clique[i], static_cast<int>(i));
        colored_ = clique.size();
        search(static_cast<int>(clique.size()));
    }

    Coloring best() const { return best_; }
    bool exhausted() const { return tracker_.exhausted(); }
    std::uint64_t nodes() const { return tracker_.nodes(); }

private:
    void search(int used)
    {
        if (best_.color_count <= lower_ || !tracker_.tick())
            return;
        if (colored_ == g_.size()) {
            best_ = finish(state_.colors());
            return;
        }
        const int v = state_.pick(rank_);
        for (int c = 0; c <= used && c + 1 < best_.color_count; ++c) {
            if (state_.blocked(v, c))
                continue;
            state_.assign(v, c);
            ++colored_;
            search(std::max(used, c + 1));
            --colored_;
            state_.unassign(v);
            if (best_.color_count <= lower_ || tracker_.exhausted())
                return;
        }
    }

    const Graph & g_;
    DsaturState state_;
    BudgetTracker tracker_;
    Coloring best_;
    int lower_;
    std::vector<int> rank_;
    std::size_t colored_ = 0;
};

} // namespace

Coloring dsatur_coloring(const Graph & g)
{
    const auto n = g.size();
    DsaturState s(g);
    const auto rank = descending_degree_order(g);
    for (std::size_t step = 0; step < n; ++step) {
        const int v = s.pick(rank);
        int c = 0;
        while (s.blocked(v, c))
            ++c;
        s.assign(v, c);
    }
    return finish(s.colors());
}

ColoringResult chromatic_number_exact(const Graph & g, const SolverBudget & budget)
{
    ColoringResult r;
    if (g.size() == 0)
        return r;
    auto greedy = dsatur_coloring(g);
    if (g.size() > chromatic_vertex_limit) {
        r.coloring = std::move(greedy);
        r.count = r.coloring.color_count;
        r.exact = false;
        r.lower_bound = 1;
        return r;
    }
    auto clique = max_clique(g, budget);
    const int lower = static_cast<int>(clique.size);
    ColoringSearch s(g, budget, std::move(greedy), lower);
    if (s.best().color_count > lower)
        s.run(clique.witness);
    r.coloring = s.best();
    r.count = r.coloring.color_count;
    r.lower_bound = lower;
    r.exact = r.count == lower || !s.exhausted();
    if (r.exact)
        r.lower_bound = r.count;
    r.nodes = clique.nodes + s.nodes();
    return r;
}

ColoringResult clique_cover_number(const Graph & g, const SolverBudget & budget)
{
    return chromatic_number_exact(complement(g), budget);
}

// ---------------------------------------------------------------- enumeration

namespace {

class MisEnumerator {
public:
    MisEnumerator(const Graph & g, std::size_t limit) : n_(g.size()), limit_(limit)
    {
        // independent sets of g are cliques of the complement
        for (std::size_t v = 0; v < n_; ++v) {
            Bitset r = g.row(static_cast<int>(v));
            r.set(v);
            r.flip();
            comp_.push_back(std::move(r));
        }
    }

    std::vector<std::vector<int>> run()
    {
        Bitset r(n_), p(n_), x(n_);
        p.set_all();
        visit(r, p, x);
        std::sort(out_.begin(), out_.end());
        return std::move(out_);
    }

private:
    void visit(Bitset & r, Bitset p, Bitset x)
    {
        if (p.none()) {
            if (x.none()) {
                if (out_.size() >= limit_)
                    throw BudgetError("maximal independent set enumeration exceeded "
                                      + std::to_string(limit_) + " sets");
                out_.push_back(r.to_vector());
            }
            return;
        }
        // pivot maximizing |P ∩ N(u)|
        Bitset px = p | x;
        std::size_t pivot = px.first();
        std::size_t best = p.intersection_count(comp_[pivot]);
        for (auto u = px.next(pivot + 1); u != Bitset::npos; u = px.next(u + 1)) {
            const auto c = p.intersection_count(comp_[u]);
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
        Bitset cand = p;
        cand.subtract(comp_[pivot]);
        for (auto v = cand.first(); v != Bitset::npos; v = cand.next(v + 1)) {
            r.set(v);
            visit(r, p & comp_[v], x & comp_[v]);
            r.reset(v);
            p.reset(v);
            x.set(v);
        }
    }

    std::size_t n_;
    std::size_t limit_;
    std::vector<Bitset> comp_;
    std::vector<std::vector<int>> out_;
};

} // namespace

std::vector<std::vector<int>> maximal_independent_sets(const Graph & g, std::size_t limit)
{
    if (g.size() == 0)
        return {};
    MisEnumerator e(g, limit);
    return e.run();
}

// ---------------------------------------------------------------- weighted

namespace {

class WeightedCliqueSearch {
public:
    WeightedCliqueSearch(const std::vector<Bitset> & rows, std::vector<double> w, const SolverBudget & budget)
        : rows_(rows), w_(std::move(w)), tracker_(budget)
    {
    }

    void run(std::size_t n)
    {
        Bitset p(n);
        p.set_all();
        expand(p, 0.0);
    }

    std::vector<int> best;
    double best_weight = -1.0;
    bool exhausted() const { return tracker_.exhausted(); }
    std::uint64_t nodes() const { return tracker_.nodes(); }

private:
    void expand(Bitset p, double weight)
    {
        if (!tracker_.tick())
            return;
        if (p.none()) {
            if (weight > best_weight + 1e-15) {
                best_weight = weight;
                best = current_;
            }
            return;
        }
        // Bound: colour classes of p are independent in the clique graph, so
        // a clique takes at most the heaviest vertex of each class.
        std::vector<int> order;
        std::vector<double> bound;
        Bitset uncolored = p;
        double acc = 0.0;
        while (uncolored.any()) {
            Bitset q = uncolored;
            double heaviest = 0.0;
            std::vector<int> cls;
            for (auto v = q.first(); v != Bitset::npos; v = q.next(v + 1)) {
                uncolored.reset(v);
                q.subtract(rows_[v]);
                cls.push_back(static_cast<int>(v));
                heaviest = std::max(heaviest, w_[v]);
            }
            acc += heaviest;
            for (int v : cls) {
                order.push_back(v);
                bound.push_back(acc);
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            if (weight + bound[i] <= best_weight + 1e-15)
                return;
            const int v = order[i];
            current_.push_back(v);
            expand(p & rows_[static_cast<std::size_t>(v)], weight + w_[static_cast<std::size_t>(v)]);
            current_.pop_back();
            p.reset(static_cast<std::size_t>(v));
            if (tracker_.exhausted())
                return;
        }
    }

    const std::vector<Bitset> & rows_;
    std::vector<double> w_;
    BudgetTracker tracker_;
    std::vector<int> current_;
};

} // namespace

SetResult max_weight_independent_set(const Graph & g, std::span<const double> weights, const SolverBudget & budget)
{
    SetResult r;
    const auto n = g.size();
    if (n == 0)
        return r;
    const Graph h = complement(g);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return weights[static_cast<std::size_t>(a)] > weights[static_cast<std::size_t>(b)];
    });
    const auto rows = reordered_rows(h, order);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = weights[static_cast<std::size_t>(order[i])];
    WeightedCliqueSearch s(rows, std::move(w), budget);
    s.run(n);
    for (int v : s.best)
        r.witness.push_back(order[static_cast<std::size_t>(v)]);
    // a budget-starved search may stop before reaching a maximal set
    if (s.exhausted()) {
        auto greedy = greedy_independent_set(g, order);
        double gw = 0.0, bw = 0.0;
        for (int v : greedy)
            gw += weights[static_cast<std::size_t>(v)];
        for (int v : r.witness)
            bw += weights[static_cast<std::size_t>(v)];
        if (gw > bw || r.witness.empty())
            r.witness = std::move(greedy);
    }
    std::sort(r.witness.begin(), r.witness.end());
    r.size = r.witness.size();
    r.exact = !s.exhausted();
    r.nodes = s.nodes();
    return r;
}

// ---------------------------------------------------------------- entropy colouring

namespace {

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

EntropyColoring exact_entropy_coloring(const ProbabilisticGraph & pg)
{
    const auto n = pg.size();
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<std::uint32_t> nbr(n);
    for (std::size_t v = 0; v < n; ++v)
        for (auto w : pg.graph.row(static_cast<int>(v)).to_vector())
            nbr[v] |= std::uint32_t{1} << w;

    std::vector<std::uint8_t> indep(full + 1, 0);
    std::vector<double> mass(full + 1, 0.0);
    indep[0] = 1;
    for (std::size_t m = 1; m <= full; ++m) {
        const auto low = static_cast<std::size_t>(std::countr_zero(m));
        const auto rest = m & (m - 1);
        mass[m] = mass[rest] + pg.dist[low];
        indep[m] = indep[rest] && !(nbr[low] & rest);
    }

    std::vector<double> best(full + 1, 0.0);
    std::vector<std::uint32_t> choice(full + 1, 0);
    for (std::size_t s = 1; s <= full; ++s) {
        const auto v = static_cast<std::size_t>(std::countr_zero(s));
        const std::uint32_t vbit = std::uint32_t{1} << v;
        const auto free = static_cast<std::uint32_t>(s) & ~vbit & ~nbr[v];
        double b = std::numeric_limits<double>::infinity();
        std::uint32_t arg = vbit;
        // enumerate subsets t of `free`, class = t + v
        for (std::uint32_t t = free;; t = (t - 1) & free) {
            if (indep[t]) {
                const std::uint32_t cls = t | vbit;
                const double val = plogp(mass[cls]) + best[s & ~cls];
                if (val < b) {
                    b = val;
                    arg = cls;
                }
            }
            if (t == 0)
                break;
        }
        best[s] = b;
        choice[s] = arg;
    }

    EntropyColoring r;
    r.coloring.color_of.assign(n, -1);
    int c = 0;
    for (std::size_t s = full; s != 0; s &= ~static_cast<std::size_t>(choice[s]), ++c)
        for (std::size_t v = 0; v < n; ++v)
            if (choice[s] >> v & 1u)
                r.coloring.color_of[v] = c;
    r.coloring.color_count = c;
    r.h_chi = coloring_entropy(pg, r.coloring);
    r.exact = true;
    return r;
}

EntropyColoring heuristic_entropy_coloring(const ProbabilisticGraph & pg, const SolverBudget & budget)
{
    const auto n = pg.size();
    EntropyColoring r;
    r.coloring.color_of.assign(n, -1);
    std::vector<int> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    int c = 0;
    while (!remaining.empty()) {
        const Graph sub = induced_subgraph(pg.graph, remaining);
        std::vector<double> w;
        for (int v : remaining)
            w.push_back(pg.dist[static_cast<std::size_t>(v)]);
        auto set = max_weight_independent_set(sub, w, budget);
        std::vector<bool> take(remaining.size(), false);
        for (int i : set.witness)
            take[static_cast<std::size_t>(i)] = true;
        std::vector<int> next;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (take[i])
                r.coloring.color_of[static_cast<std::size_t>(remaining[i])] = c;
            else
                next.push_back(remaining[i]);
        }
        ++c;
        remaining = std::move(next);
    }
    r.coloring.color_count = c;
    r.h_chi = coloring_entropy(pg, r.coloring);
    r.exact = false;
    return r;
}

} // namespace

EntropyColoring min_entropy_coloring(const ProbabilisticGraph & pg, ColoringMode mode, const SolverBudget & budget)
{
    if (pg.size() == 0)
        return {};
    if (mode == ColoringMode::exact && pg.size() <= entropy_coloring_exact_limit)
        return exact_entropy_coloring(pg);
    return heuristic_entropy_coloring(pg, budget);
}

} // namespace zeroerr
