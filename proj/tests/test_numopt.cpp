#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>

#include "oracles.hpp"
#include "zeroerr/combinat.hpp"
#include "zeroerr/numopt.hpp"

using namespace zeroerr;


TEST_CASE("Korner entropy of complete and empty graphs")
{
    SplitMix64 rng(4);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + static_cast<int>(rng.below(6));
        Distribution p(oracle::random_dist(rng, static_cast<std::size_t>(n)));
        auto k = korner_entropy({complete_graph(n), p});
        CHECK(k.value == doctest::Approx(p.entropy()).epsilon(1e-9));
        CHECK(k.converged);
        auto e = korner_entropy({empty_graph(n), p});
        CHECK(std::abs(e.value) <= 1e-9);
    }
}

TEST_CASE("Korner entropy of the pentagon against a grid oracle")
{
    auto pg = ProbabilisticGraph::uniform(cycle_graph(5));
    KornerOptions o;
    o.trace = true;
    auto k = korner_entropy(pg, o);
    CHECK(k.converged);
    const double oracle_value = oracle::grid_korner(k.sets, pg.dist.weights(), 64);
    CHECK(std::abs(k.value - oracle_value) <= 2e-3);
    CHECK(k.value >= std::log2(2.5) - 1e-6);
    CHECK(k.lower_bound <= k.value);
    for (std::size_t i = 1; i < k.trace.size(); ++i)
        REQUIRE(k.trace[i] <= k.trace[i - 1] + 1e-15);
    // solution structure: Q supported on sets holding x, rows sum to 1
    for (std::size_t x = 0; x < 5; ++x) {
        double s = 0.0;
        for (const auto & [w, q] : k.q[x]) {
            const auto & set = k.sets[static_cast<std::size_t>(w)];
            CHECK(std::find(set.begin(), set.end(), static_cast<int>(x)) != set.end());
            s += q;
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("Korner entropy against a grid oracle on random small graphs")
{
    SplitMix64 rng(12);
    int checked = 0;
    while (checked < 15) {
        auto g = oracle::random_graph(rng, 4 + static_cast<int>(rng.below(2)), 0.5);
        auto sets = maximal_independent_sets(g);
        if (sets.size() > 4)
            continue;
        Distribution p(oracle::random_dist(rng, g.size()));
        KornerOptions o;
        o.trace = true;
        auto k = korner_entropy({g, p}, o);
        const double grid = oracle::grid_korner(sets, p.weights(), 48);
        CHECK(k.value <= grid + 1e-9);
        CHECK(grid - k.value <= 2e-2);
        for (std::size_t i = 1; i < k.trace.size(); ++i)
            REQUIRE(k.trace[i] <= k.trace[i - 1] + 1e-15);
        ++checked;
    }
}

TEST_CASE("Korner entropy splits over disjoint unions of perfect graphs")
{
    SplitMix64 rng(8);
    for (int t = 0; t < 20; ++t) {
        std::vector<ProbabilisticGraph> parts;
        std::vector<double> hk;
        const int k = 2 + static_cast<int>(rng.below(2));
        for (int a = 0; a < k; ++a) {
            auto g = oracle::random_perfect_graph(rng, 2 + static_cast<int>(rng.below(4)));
            parts.emplace_back(g, Distribution(oracle::random_dist(rng, g.size())));
            hk.push_back(korner_entropy(parts.back()).value);
        }
        Distribution pa(oracle::random_dist(rng, parts.size()));
        auto [u, layout] = disjoint_union(parts, pa);
        double expect = 0.0;
        for (std::size_t a = 0; a < parts.size(); ++a)
            expect += pa[a] * hk[a];
        CHECK(std::abs(korner_entropy(u).value - expect) <= 2e-9);
    }
}

TEST_CASE("relative capacity of perfect graphs")
{
    for (double p : {0.1, 0.5, 0.77})
        CHECK(std::abs(relative_capacity_perfect({complete_graph(2), Distribution({p, 1 - p})})) <= 1e-9);
    Distribution p({0.1, 0.2, 0.3, 0.4});
    CHECK(relative_capacity_perfect({empty_graph(4), p}) == doctest::Approx(p.entropy()));
    CHECK(relative_capacity_perfect(ProbabilisticGraph::uniform(cycle_graph(6))) == doctest::Approx(std::log2(3.0)));
    CHECK_THROWS_AS(relative_capacity_perfect(ProbabilisticGraph::uniform(cycle_graph(5))), Error);
    CHECK_NOTHROW(relative_capacity_perfect(ProbabilisticGraph::uniform(cycle_graph(5)), true));
}

TEST_CASE("capacity-achieving distributions")
{
    auto r = capacity_achieving_distribution(4, perfect_capacity_evaluator(empty_graph(4)));
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r.p.is_uniform(1e-4));

    auto c6 = capacity_achieving_distribution(6, perfect_capacity_evaluator(cycle_graph(6)));
    CHECK(c6.converged);
    CHECK(std::abs(c6.value - std::log2(3.0)) <= 1e-5);

    auto k = capacity_achieving_distribution(5, perfect_capacity_evaluator(complete_graph(5)));
    CHECK(std::abs(k.value) <= 1e-6);

    CHECK_THROWS_AS(perfect_capacity_evaluator(cycle_graph(5)), Error);
    CapacityOptions lb;
    lb.lower_bound_evaluator = true;
    auto c5 = capacity_achieving_distribution(5, korner_lower_evaluator(cycle_graph(5)), lb);
    CHECK(c5.lower_bound_only);
    CHECK(c5.value <= 0.5 * std::log2(5.0) + 1e-6);

    // optimum equals log alpha for random perfect graphs
    SplitMix64 rng(17);
    for (int t = 0; t < 10; ++t) {
        auto g = oracle::random_perfect_graph(rng, 3 + static_cast<int>(rng.below(5)));
        auto res = capacity_achieving_distribution(g.size(), perfect_capacity_evaluator(g));
        CHECK(std::abs(res.value - std::log2(static_cast<double>(alpha_exact(g).size))) <= 1e-5);
    }
}

TEST_CASE("relative capacity is concave on perfect graphs")
{
    SplitMix64 rng(23);
    for (int t = 0; t < 100; ++t) {
        auto g = oracle::random_perfect_graph(rng, 3 + static_cast<int>(rng.below(5)));
        auto p = oracle::random_dist(rng, g.size()), q = oracle::random_dist(rng, g.size());
        std::vector<double> mid(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            mid[i] = 0.5 * (p[i] + q[i]);
        const double cp = relative_capacity_perfect({g, Distribution(p)}, true);
        const double cq = relative_capacity_perfect({g, Distribution(q)}, true);
        const double cm = relative_capacity_perfect({g, Distribution(mid)}, true);
        CHECK(cm >= 0.5 * cp + 0.5 * cq - 2e-9);
    }
}

TEST_CASE("sum-channel weights")
{
    auto [p1, v1] = sum_channel_weights(std::array{1.0, 1.0});
    CHECK(p1[0] == doctest::Approx(0.5));
    CHECK(v1 == doctest::Approx(2.0));
    auto [p2, v2] = sum_channel_weights(std::array{std::log2(3.0), std::log2(7.0)});
    CHECK(p2[0] == doctest::Approx(0.3));
    CHECK(p2[1] == doctest::Approx(0.7));
    CHECK(v2 == doctest::Approx(std::log2(10.0)));
    auto [p3, v3] = sum_channel_weights(std::array{0.0, 0.0, 0.0});
    CHECK(p3.is_uniform(1e-15));
    CHECK(v3 == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("Jacobi eigenvalues match Eigen")
{
    SplitMix64 rng(2);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + rng.below(30);
        Eigen::MatrixXd m(n, n);
        std::vector<double> a(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double v = rng.uniform() * 2 - 1;
                m(i, j) = m(j, i) = v;
                a[i * n + j] = a[j * n + i] = v;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        auto ours = symmetric_eigenvalues(a, n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(ours[i] - es.eigenvalues()[static_cast<Eigen::Index>(i)]) <= 1e-10);
    }
}

TEST_CASE("theta of transitive graphs")
{
    CHECK(std::abs(theta_transitive(cycle_graph(5)) - std::sqrt(5.0)) <= 1e-6);
    CHECK(std::abs(theta_transitive(schlafli_graph()) - 3.0) <= 1e-6);
    CHECK(std::abs(theta_transitive(complement(schlafli_graph())) - 9.0) <= 1e-6);
    CHECK(std::abs(theta_transitive(cycle_graph(6)) - 3.0) <= 1e-6);
    CHECK(theta_transitive(empty_graph(4)) == 4.0);
    CHECK_THROWS_AS(theta_transitive(path_graph(4)), Error);
    Graph prism(6);
    for (int i = 0; i < 3; ++i) {
        prism.add_edge(i, (i + 1) % 3);
        prism.add_edge(3 + i, 3 + (i + 1) % 3);
        prism.add_edge(i, 3 + i);
    }
    CHECK_THROWS_AS(theta_transitive(prism), Error);
    CHECK_NOTHROW(theta_transitive(prism, true));
}

TEST_CASE("finite-field rank and the Haemers bound")
{
    FiniteFieldMatrix ones{2, std::vector<std::vector<int>>(4, std::vector<int>(4, 1))};
    CHECK(haemers_bound(complete_graph(4), ones) == 0.0);
    FiniteFieldMatrix id{2, std::vector<std::vector<int>>(4, std::vector<int>(4, 0))};
    for (int i = 0; i < 4; ++i)
        id.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    CHECK(haemers_bound(empty_graph(4), id) == doctest::Approx(2.0));
    auto cands = default_haemers_candidates(cycle_graph(5));
    CHECK(rank_mod_p(cands[0]) == 5);
    CHECK(haemers_bound(cycle_graph(5), cands[0]) == doctest::Approx(std::log2(5.0)));

    CHECK_THROWS_WITH_AS(haemers_bound(empty_graph(4), ones),
                         "matrix does not fit graph: entry (0,1) is nonzero on a non-edge", Error);
    FiniteFieldMatrix zero_diag = id;
    zero_diag.rows[2][2] = 2;
    CHECK_THROWS_WITH_AS(haemers_bound(empty_graph(4), zero_diag),
                         "matrix does not fit graph: diagonal entry (2,2) is zero mod 2", Error);
    CHECK_THROWS_AS(rank_mod_p({4, id.rows}), Error);

    // rank over GF(3) of a known matrix: rows (1,2,0),(2,1,0),(0,0,1) -> row2 = 2*row1 mod 3
    CHECK(rank_mod_p({3, {{1, 2, 0}, {2, 1, 0}, {0, 0, 1}}}) == 2);
    CHECK(rank_mod_p({5, {{1, 2, 0}, {2, 1, 0}, {0, 0, 1}}}) == 3);

    SplitMix64 rng(19);
    for (int t = 0; t < 40; ++t) {
        auto g = oracle::random_graph(rng, 3 + static_cast<int>(rng.below(10)), rng.uniform());
        const double la = std::log2(static_cast<double>(alpha_exact(g).size));
        for (const auto & b : default_haemers_candidates(g))
            CHECK(haemers_bound(g, b) >= la - 1e-12);
    }
}
