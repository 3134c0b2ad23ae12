#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "zeroerr/typicality.hpp"

using namespace zeroerr;

namespace {

// Exhaustive scan over all k^n sequences with typicality checked on integer
// counts scaled by a common denominator.
std::vector<std::vector<int>> brute_typical(const std::vector<std::int64_t> & num, std::int64_t den, int n,
                                            std::int64_t eps_num, std::int64_t eps_den)
{
    const auto k = num.size();
    std::vector<std::vector<int>> out;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i)
        total *= k;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<int> s(static_cast<std::size_t>(n));
        auto r = idx;
        for (int t = n - 1; t >= 0; --t) {
            s[static_cast<std::size_t>(t)] = static_cast<int>(r % k);
            r /= k;
        }
        std::vector<std::int64_t> c(k, 0);
        for (int x : s)
            ++c[static_cast<std::size_t>(x)];
        bool ok = true;
        for (std::size_t a = 0; a < k; ++a) {
            // |c/n - num/den| <= eps  <=>  |c den - n num| eps_den <= eps_num n den
            const auto lhs = std::abs(c[a] * den - n * num[a]) * eps_den;
            if (lhs > eps_num * n * den)
                ok = false;
        }
        if (ok)
            out.push_back(s);
    }
    return out;
}

} // namespace

TEST_CASE("sequence types")
{
    const std::vector<int> s{0, 1, 1, 2, 1};
    auto t = type_of(s, 3);
    CHECK(t.counts == std::vector<std::int64_t>{1, 3, 1});
    CHECK(t.n == 5);
    CHECK(t.distribution()[1] == doctest::Approx(0.6));
    CHECK(type_distance(t, Distribution::uniform(3)) == doctest::Approx(0.6 - 1.0 / 3.0));
    CHECK(is_typical(t, Distribution({0.2, 0.6, 0.2}), 0.0));
    CHECK_FALSE(is_typical(t, Distribution::uniform(3), 0.2));
    CHECK_THROWS_AS(type_of(s, 2), Error);
    CHECK_THROWS_AS(type_of(std::vector<int>{}, 2), Error);
}

TEST_CASE("typical set examples")
{
    TypicalSet u(Distribution::uniform(2), 2, 0.0);
    auto members = u.enumerate();
    CHECK(members == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(u.size() == doctest::Approx(2.0));
    CHECK(u.probability() == doctest::Approx(0.5));

    CHECK(TypicalSet(Distribution::uniform(2), 2, 0.5).enumerate().size() == 4);

    TypicalSet t(Distribution::rational({2, 1}, 3), 3, 0.01);
    auto m3 = t.enumerate();
    CHECK(m3 == std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    CHECK(t.probability() == doctest::Approx(3.0 * 4.0 / 27.0));

    CHECK(TypicalSet(Distribution::uniform(5), 5, 0.0).size() == doctest::Approx(120.0));
    CHECK(TypicalSet(Distribution::uniform(3), 4, 0.0).enumerate().empty());
    CHECK_THROWS_AS(TypicalSet(Distribution::uniform(2), 0, 0.1), Error);
    CHECK_THROWS_AS(TypicalSet(Distribution::uniform(2), 30, 0.5).enumerate(1000), BudgetError);
}

TEST_CASE("typical set agrees with exhaustive scan")
{
    SplitMix64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t k = 2 + rng.below(3);
        const std::int64_t den = 4 + static_cast<std::int64_t>(rng.below(5));
        std::vector<std::int64_t> num(k, 0);
        for (std::int64_t i = 0; i < den; ++i)
            ++num[rng.below(k)];
        const int n = 1 + static_cast<int>(rng.below(k == 2 ? 9 : 5));
        const std::int64_t eps_num = static_cast<std::int64_t>(rng.below(5));
        const std::int64_t eps_den = 8;
        const auto expect = brute_typical(num, den, n, eps_num, eps_den);

        TypicalSet ts(Distribution::rational(num, den), static_cast<std::size_t>(n),
                      static_cast<double>(eps_num) / eps_den);
        CAPTURE(trial);
        CHECK(ts.enumerate() == expect);
        CHECK(ts.size() == doctest::Approx(static_cast<double>(expect.size())));
        double mass = 0.0;
        for (const auto & s : expect) {
            double p = 1.0;
            for (int x : s)
                p *= static_cast<double>(num[static_cast<std::size_t>(x)]) / den;
            mass += p;
            CHECK(ts.contains(s));
        }
        CHECK(ts.probability() == doctest::Approx(mass).epsilon(1e-9));
        std::set<std::vector<std::int64_t>> types;
        for (const auto & s : expect)
            types.insert(type_of(s, k).counts);
        auto got = ts.types();
        CHECK(std::set<std::vector<std::int64_t>>(got.begin(), got.end()) == types);
        CHECK(std::is_sorted(got.begin(), got.end()));
    }
}

TEST_CASE("typical mass is monotone in eps and reaches one")
{
    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Distribution p(oracle::random_dist(rng, 3));
        double prev = 0.0;
        for (double eps = 0.0; eps <= 1.0 + 1e-12; eps += 0.05) {
            const double m = TypicalSet(p, 7, eps).probability();
            CHECK(m >= prev - 1e-12);
            prev = m;
        }
        CHECK(prev == doctest::Approx(1.0));
    }
}

TEST_CASE("early stop in for_each")
{
    TypicalSet ts(Distribution::uniform(3), 6, 0.2);
    int seen = 0;
    ts.for_each([&](const std::vector<int> &) { return ++seen < 7; });
    CHECK(seen == 7);
}

TEST_CASE("sequence indexing matches the power graph")
{
    for (std::uint64_t i = 0; i < 125; ++i)
        CHECK(sequence_index(sequence_from_index(i, 5, 3), 5) == i);
    CHECK(sequence_index(std::vector<int>{2, 0, 4}, 5) == 54);

    SplitMix64 rng(3);
    auto g = oracle::random_graph(rng, 4, 0.5);
    auto p3 = and_power(g, 3);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = sequence_from_index(rng.below(64), 4, 3);
        auto b = sequence_from_index(rng.below(64), 4, 3);
        bool conf = a != b;
        for (int t = 0; t < 3 && conf; ++t)
            if (a[t] != b[t] && !g.adjacent(a[t], b[t]))
                conf = false;
        CHECK(p3.adjacent(static_cast<int>(sequence_index(a, 4)), static_cast<int>(sequence_index(b, 4))) == conf);
    }
}

TEST_CASE("typical induced subgraph")
{
    auto c5 = ProbabilisticGraph::uniform(cycle_graph(5));
    auto sub = typical_induced_subgraph(c5, 5, 0.0);
    CHECK(sub.pg.size() == 120);
    CHECK(sub.mass == doctest::Approx(120.0 / 3125.0));
    CHECK(sub.pg.dist.is_uniform());

    auto k2 = typical_induced_subgraph(ProbabilisticGraph::uniform(complete_graph(2)), 2, 0.0);
    CHECK(k2.pg.graph == complete_graph(2));
    CHECK(k2.sequences == std::vector<std::vector<int>>{{0, 1}, {1, 0}});

    CHECK_THROWS_AS(typical_induced_subgraph(ProbabilisticGraph::uniform(cycle_graph(3)), 4, 0.0), Error);
    CHECK_THROWS_AS(typical_induced_subgraph(c5, 9, 0.1, ProductOptions{1000}), BudgetError);

    SplitMix64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        const int k = 3 + static_cast<int>(rng.below(2));
        ProbabilisticGraph pg(oracle::random_graph(rng, k, 0.5), Distribution(oracle::random_dist(rng, k)));
        const std::size_t n = 3;
        const double eps = 0.1 + 0.1 * static_cast<double>(rng.below(3));
        TypicalSubgraph ts;
        try {
            ts = typical_induced_subgraph(pg, n, eps);
        } catch (const Error &) {
            CHECK(TypicalSet(pg.dist, n, eps).size() == 0.0);
            continue;
        }
        std::vector<int> keep;
        for (const auto & s : ts.sequences)
            keep.push_back(static_cast<int>(sequence_index(s, pg.size())));
        auto ref = induced_subgraph(and_power(pg, n), keep, true);
        CHECK(ts.pg.graph == ref.graph);
        for (std::size_t i = 0; i < keep.size(); ++i)
            CHECK(ts.pg.dist[i] == doctest::Approx(ref.dist[i]).epsilon(1e-12));
    }
}

TEST_CASE("type split")
{
    const std::vector<int> seq{0, 1, 0, 0, 1, 0, 1, 1};
    auto sp = type_split(seq, 0.5, Distribution::rational({3, 1}, 4), Distribution::rational({1, 3}, 4));
    CHECK(sp.exact);
    CHECK(sp.sub1.size() == 4);
    CHECK(type_of(sp.sub1, 2).counts == std::vector<std::int64_t>{3, 1});
    CHECK(type_of(sp.sub2, 2).counts == std::vector<std::int64_t>{1, 3});
    for (std::size_t i = 0, a = 0, b = 0; i < seq.size(); ++i)
        CHECK(seq[i] == (sp.mask[i] ? sp.sub1[a++] : sp.sub2[b++]));

    auto loose = type_split(seq, 0.3, Distribution::rational({3, 1}, 4), Distribution::uniform(2), 9);
    CHECK_FALSE(loose.exact);
    CHECK(loose.sub1.size() + loose.sub2.size() == seq.size());
    auto again = type_split(seq, 0.3, Distribution::rational({3, 1}, 4), Distribution::uniform(2), 9);
    CHECK(again.mask == loose.mask);

    CHECK_THROWS_AS(type_split(seq, 1.5, Distribution::uniform(2), Distribution::uniform(2)), Error);
}
