#pragma once

// Brute-force reference computations used to cross-check the solvers. They
// share no code with the library beyond the Graph container.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "zeroerr/graph.hpp"
#include "zeroerr/perfect.hpp"
#include "zeroerr/rng.hpp"

namespace oracle {

using zeroerr::Graph;

inline Graph random_graph(zeroerr::SplitMix64 & rng, int n, double p)
{
    Graph g(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p)
                g.add_edge(u, v);
    return g;
}

inline std::vector<double> random_dist(zeroerr::SplitMix64 & rng, std::size_t n)
{
    std::vector<double> w(n);
    double s = 0.0;
    for (auto & x : w) {
        x = -std::log(1.0 - rng.uniform());
        s += x;
    }
    for (auto & x : w)
        x /= s;
    return w;
}

inline bool independent_mask(const Graph & g, std::uint64_t m)
{
    for (std::size_t u = 0; u < g.size(); ++u)
        if (m >> u & 1u)
            for (std::size_t v = u + 1; v < g.size(); ++v)
                if ((m >> v & 1u) && g.adjacent(static_cast<int>(u), static_cast<int>(v)))
                    return false;
    return true;
}

/// Largest independent set by exhaustive subset scan (n <= 25).
inline int brute_alpha(const Graph & g)
{
    int best = 0;
    const std::uint64_t full = std::uint64_t{1} << g.size();
    for (std::uint64_t m = 0; m < full; ++m) {
        const int c = std::popcount(m);
        if (c > best && independent_mask(g, m))
            best = c;
    }
    return best;
}

/// Smallest k admitting a proper k-colouring, by trying every assignment
/// (n <= 9).
inline int brute_chi(const Graph & g)
{
    const auto n = g.size();
    if (n == 0)
        return 0;
    for (int k = 1;; ++k) {
        std::vector<int> c(n, 0);
        while (true) {
            bool ok = true;
            for (auto [u, v] : g.edges())
                if (c[static_cast<std::size_t>(u)] == c[static_cast<std::size_t>(v)]) {
                    ok = false;
                    break;
                }
            if (ok)
                return k;
            std::size_t i = 0;
            while (i < n && ++c[i] == k)
                c[i++] = 0;
            if (i == n)
                break;
        }
    }
}

/// Minimum colour-class entropy over all set partitions into independent
/// sets, enumerated as restricted growth strings (n <= 10).
inline double brute_hchi(const Graph & g, const std::vector<double> & p)
{
    const auto n = g.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> block(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int blocks) {
        if (i == n) {
            std::vector<double> mass(static_cast<std::size_t>(blocks), 0.0);
            for (std::size_t v = 0; v < n; ++v)
                mass[static_cast<std::size_t>(block[v])] += p[v];
            double h = 0.0;
            for (double m : mass)
                if (m > 0)
                    h -= m * std::log2(m);
            best = std::min(best, h);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            bool ok = true;
            for (std::size_t u = 0; u < i; ++u)
                if (block[u] == b && g.adjacent(static_cast<int>(u), static_cast<int>(i))) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            block[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
    return best;
}

/// Every inclusion-maximal independent set, from the subset scan (n <= 16).
inline std::vector<std::vector<int>> brute_maximal_independent(const Graph & g)
{
    std::vector<std::vector<int>> out;
    const auto n = g.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (!independent_mask(g, m))
            continue;
        bool maximal = true;
        for (std::size_t v = 0; v < n && maximal; ++v)
            if (!(m >> v & 1u) && independent_mask(g, m | (std::uint64_t{1} << v)))
                maximal = false;
        if (!maximal)
            continue;
        std::vector<int> s;
        for (std::size_t v = 0; v < n; ++v)
            if (m >> v & 1u)
                s.push_back(static_cast<int>(v));
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Random graph that the odd-hole test certifies perfect.
inline Graph random_perfect_graph(zeroerr::SplitMix64 & rng, int n)
{
    while (true) {
        auto g = random_graph(rng, n, 0.2 + 0.6 * rng.uniform());
        if (zeroerr::is_perfect(g).perfect == zeroerr::Decision::yes)
            return g;
    }
}

// I(W;X) for Q(w|x) proportional to r(w)[x in w], computed from the joint.
inline double mutual_information_from_r(const std::vector<std::vector<int>> & sets, const std::vector<double> & r,
                                 const std::vector<double> & p)
{
    const auto n = p.size(), k = sets.size();
    std::vector<std::vector<double>> joint(n, std::vector<double>(k, 0.0));
    for (std::size_t x = 0; x < n; ++x) {
        double z = 0.0;
        for (std::size_t w = 0; w < k; ++w)
            if (std::find(sets[w].begin(), sets[w].end(), static_cast<int>(x)) != sets[w].end())
                z += r[w];
        if (z <= 0.0)
            return std::numeric_limits<double>::infinity();
        for (std::size_t w = 0; w < k; ++w)
            if (std::find(sets[w].begin(), sets[w].end(), static_cast<int>(x)) != sets[w].end())
                joint[x][w] = p[x] * r[w] / z;
    }
    std::vector<double> pw(k, 0.0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t w = 0; w < k; ++w)
            pw[w] += joint[x][w];
    double info = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t w = 0; w < k; ++w)
            if (joint[x][w] > 0.0)
                info += joint[x][w] * std::log2(joint[x][w] / (p[x] * pw[w]));
    return info;
}

// Minimum over all r on the 1/res simplex grid.
inline double grid_korner(const std::vector<std::vector<int>> & sets, const std::vector<double> & p, int res)
{
    const auto k = sets.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> c(k, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == k) {
            c[i] = left;
            std::vector<double> r(k);
            for (std::size_t j = 0; j < k; ++j)
                r[j] = static_cast<double>(c[j]) / res;
            best = std::min(best, mutual_information_from_r(sets, r, p));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            c[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, res);
    return best;
}


} // namespace oracle
