#include <doctest.h>

#include <chrono>
#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "zeroerr/bounds.hpp"
#include "zeroerr/eta.hpp"

using namespace zeroerr;

namespace {

const double half_log5 = 0.5 * std::log2(5.0);

bool registered_tree(const Certificate & c)
{
    if (!is_registered_method(c.method))
        return false;
    for (const auto & s : c.sub)
        if (!registered_tree(s))
            return false;
    return true;
}

void check_sound(const BoundInterval & b)
{
    CHECK(b.lo <= b.hi + 1e-9);
    CHECK(b.lo == doctest::Approx(b.lo_cert.value));
    CHECK(b.hi == doctest::Approx(b.hi_cert.value));
    CHECK(registered_tree(b.lo_cert));
    CHECK(registered_tree(b.hi_cert));
}

void check_nested(const BoundInterval & wide, const BoundInterval & narrow)
{
    CHECK(narrow.lo >= wide.lo - 1e-12);
    CHECK(narrow.hi <= wide.hi + 1e-12);
}

BoundsOptions levels(int n)
{
    BoundsOptions o;
    o.max_n = n;
    return o;
}

} // namespace

TEST_CASE("registry is closed")
{
    CHECK(is_registered_method("power-alpha"));
    CHECK_FALSE(is_registered_method("guess"));
    CHECK(method_registry_version == 1);
}

TEST_CASE("pentagon capacity")
{
    const auto t0 = std::chrono::steady_clock::now();
    auto b = c0_bounds(cycle_graph(5), levels(2));
    const auto dt = std::chrono::steady_clock::now() - t0;
    check_sound(b);
    CHECK(b.lo == doctest::Approx(half_log5).epsilon(1e-12));
    CHECK(b.width() <= 1e-6);
    CHECK(b.lo_cert.method == "power-alpha");
    CHECK(b.lo_cert.n == 2);
    CHECK(b.hi_cert.method == "theta-transitive");
    CHECK(dt < std::chrono::seconds(1));

    auto one = c0_bounds(cycle_graph(5), levels(1));
    CHECK(one.lo == doctest::Approx(1.0));
    check_nested(one, b);
}

TEST_CASE("capacity of complete, empty and perfect products")
{
    for (int n = 1; n <= 6; ++n) {
        auto k = c0_bounds(complete_graph(n));
        CHECK(k.lo == doctest::Approx(0.0));
        CHECK(k.hi == doctest::Approx(0.0));
        auto e = c0_bounds(empty_graph(n));
        CHECK(e.lo == doctest::Approx(std::log2(n)));
        CHECK(e.hi == doctest::Approx(std::log2(n)));
    }
    auto prod = and_product(cycle_graph(6), cycle_graph(8));
    auto b = c0_bounds(prod, levels(1));
    check_sound(b);
    CHECK(b.lo == doctest::Approx(std::log2(12.0)));
    CHECK(b.hi == doctest::Approx(std::log2(12.0)));

    BoundsOptions starved = levels(2);
    starved.product.vertex_budget = 20;
    auto s = c0_bounds(cycle_graph(5), starved);
    check_sound(s);
    CHECK(s.lo == doctest::Approx(1.0));
    CHECK_FALSE(s.lo_cert.flags.empty());
}

TEST_CASE("Witsenhausen rate bounds")
{
    for (int n = 1; n <= 5; ++n) {
        auto k = h0_bounds(complete_graph(n));
        CHECK(k.lo == doctest::Approx(std::log2(n)));
        CHECK(k.hi == doctest::Approx(std::log2(n)));
        auto e = h0_bounds(empty_graph(n));
        CHECK(e.lo == doctest::Approx(0.0));
        CHECK(e.hi == doctest::Approx(0.0));
    }
    auto c5 = h0_bounds(cycle_graph(5), levels(2));
    check_sound(c5);
    CHECK(c5.lo == doctest::Approx(1.0));
    // chi(C5^2) = 5: (i, j) -> i + 2j mod 5 is proper and alpha(C5^2) = 5
    auto sq = and_power(cycle_graph(5), 2);
    for (int u = 0; u < 25; ++u)
        for (int v = 0; v < 25; ++v)
            if (sq.adjacent(u, v))
                CHECK((u / 5 + 2 * (u % 5)) % 5 != (v / 5 + 2 * (v % 5)) % 5);
    CHECK(c5.hi == doctest::Approx(half_log5));
}

TEST_CASE("complementary entropy and relative capacity")
{
    SplitMix64 rng(21);
    for (int n = 2; n <= 5; ++n) {
        Distribution p(oracle::random_dist(rng, static_cast<std::size_t>(n)));
        const double h = p.entropy();
        auto k = hbar_bounds(ProbabilisticGraph(complete_graph(n), p));
        CHECK(k.lo == doctest::Approx(h).epsilon(1e-9));
        CHECK(k.hi == doctest::Approx(h).epsilon(1e-9));
        auto ck = c_rel_bounds(ProbabilisticGraph(complete_graph(n), p));
        CHECK(ck.hi == doctest::Approx(0.0).epsilon(1e-9));
        auto e = hbar_bounds(ProbabilisticGraph(empty_graph(n), p));
        CHECK(e.hi == doctest::Approx(0.0));
        auto ce = c_rel_bounds(ProbabilisticGraph(empty_graph(n), p));
        CHECK(ce.lo == doctest::Approx(h));
        CHECK(ce.hi == doctest::Approx(h));
    }
    auto c5 = ProbabilisticGraph::uniform(cycle_graph(5));
    auto hb = hbar_bounds(c5, levels(2));
    check_sound(hb);
    CHECK(hb.lo == doctest::Approx(half_log5).epsilon(1e-9));
    CHECK(hb.width() <= 1e-6);
    auto cr = c_rel_bounds(c5, levels(2));
    CHECK(cr.lo == doctest::Approx(half_log5).epsilon(1e-9));
    CHECK(cr.width() <= 1e-6);
    CHECK(cr.lo_cert.method == "marton-reflection");
}

TEST_CASE("perfect graphs collapse to single-letter values")
{
    SplitMix64 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(6));
        auto g = oracle::random_perfect_graph(rng, n);
        ProbabilisticGraph pg(g, Distribution(oracle::random_dist(rng, static_cast<std::size_t>(n))));
        auto c0 = c0_bounds(g);
        CHECK(c0.lo == doctest::Approx(std::log2(oracle::brute_alpha(g))));
        CHECK(c0.width() == 0.0);
        auto hb = hbar_bounds(pg);
        check_sound(hb);
        CHECK(hb.width() <= 1e-6);
        const auto k = korner_entropy(pg);
        CHECK(std::abs(0.5 * (hb.lo + hb.hi) - k.value) <= 1e-6);
        auto cr = c_rel_bounds(pg);
        CHECK(std::abs(0.5 * (cr.lo + cr.hi) + k.value - pg.dist.entropy()) <= 1e-6);
        auto h0 = h0_bounds(g);
        CHECK(h0.width() == 0.0);
    }
}

TEST_CASE("soundness, refinement and Marton consistency on random graphs")
{
    SplitMix64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(4));
        auto g = oracle::random_graph(rng, n, 0.5);
        ProbabilisticGraph pg(g, Distribution(oracle::random_dist(rng, static_cast<std::size_t>(n))));
        CAPTURE(trial);
        auto c1 = c0_bounds(g, levels(1)), c2 = c0_bounds(g, levels(2));
        auto h1 = hbar_bounds(pg, levels(1)), h2 = hbar_bounds(pg, levels(2));
        auto r1 = c_rel_bounds(pg, levels(1)), r2 = c_rel_bounds(pg, levels(2));
        auto w1 = h0_bounds(g, levels(1)), w2 = h0_bounds(g, levels(2));
        for (const auto * b : {&c1, &c2, &h1, &h2, &r1, &r2, &w1, &w2})
            check_sound(*b);
        check_nested(c1, c2);
        check_nested(h1, h2);
        check_nested(r1, r2);
        check_nested(w1, w2);
        const double h = pg.dist.entropy();
        CHECK(h2.lo + r2.lo <= h + 1e-9);
        CHECK(h2.hi + r2.hi >= h - 1e-9);
        CHECK(h2.hi <= w2.hi + 1e-9);
        CHECK(r2.hi <= c2.hi + 1e-9);
        // true values: alpha(G) <= 2^{C0}, and Hbar <= H_kappa
        CHECK(c2.hi >= std::log2(oracle::brute_alpha(g)) - 1e-9);
    }
}

TEST_CASE("Marton consistency on disjoint unions")
{
    SplitMix64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<ProbabilisticGraph> parts;
        for (int a = 0; a < 2; ++a) {
            const int n = 2 + static_cast<int>(rng.below(3));
            parts.emplace_back(oracle::random_graph(rng, n, 0.5),
                               Distribution(oracle::random_dist(rng, static_cast<std::size_t>(n))));
        }
        Distribution pa(oracle::random_dist(rng, 2));
        auto [u, layout] = disjoint_union(parts, pa);
        (void)layout;
        auto hb = hbar_bounds(u, levels(1));
        auto cr = c_rel_bounds(u, levels(1));
        double target = pa.entropy();
        for (int a = 0; a < 2; ++a)
            target += pa[static_cast<std::size_t>(a)] * parts[static_cast<std::size_t>(a)].dist.entropy();
        CHECK(target == doctest::Approx(u.dist.entropy()));
        CHECK(hb.lo + cr.lo <= target + 1e-9);
        CHECK(hb.hi + cr.hi >= target - 1e-9);

        auto c0u = c0_bounds(u.graph, levels(1));
        auto c0a = c0_bounds(parts[0].graph, levels(1));
        auto c0b = c0_bounds(parts[1].graph, levels(1));
        CHECK(c0u.lo >= std::log2(std::exp2(c0a.lo) + std::exp2(c0b.lo)) - 1e-9);
    }
}

TEST_CASE("thread count does not change results")
{
    SplitMix64 rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = oracle::random_graph(rng, 5, 0.5);
        BoundsOptions a = levels(3), b = levels(3);
        b.threads = 4;
        auto x = c0_bounds(g, a), y = c0_bounds(g, b);
        CHECK(x.lo == y.lo);
        CHECK(x.hi == y.hi);
        CHECK(x.lo_cert.method == y.lo_cert.method);
        CHECK(x.hi_cert.n == y.hi_cert.n);
    }
}

TEST_CASE("Haemers candidates and user matrices")
{
    auto g = complement(schlafli_graph());
    BoundsOptions o = levels(1);
    auto b = c0_bounds(g, o);
    check_sound(b);
    CHECK(b.lo == doctest::Approx(std::log2(6.0)));
    CHECK(b.hi <= std::log2(9.0) + 1e-6);

    FiniteFieldMatrix bad{2, std::vector<std::vector<int>>(27, std::vector<int>(27, 1))};
    o.haemers_extra.push_back(bad);
    CHECK_THROWS_AS(c0_bounds(g, o), Error);
}

TEST_CASE("typical alpha estimates")
{
    auto k2 = typical_alpha_estimate(ProbabilisticGraph::uniform(complete_graph(2)), 2, 0.0);
    CHECK(k2.value == doctest::Approx(0.0));
    CHECK_FALSE(k2.certified);
    auto n2 = typical_alpha_estimate(ProbabilisticGraph::uniform(empty_graph(2)), 2, 0.0);
    CHECK(n2.value == doctest::Approx(0.5));
    auto c5 = typical_alpha_estimate(ProbabilisticGraph::uniform(cycle_graph(5)), 5, 0.0);
    CHECK(c5.vertices == 120);
    CHECK(c5.exact);
    CHECK(c5.value <= std::log2(5.0) + 1e-9);
    CHECK(c5.value >= 0.0);
    CHECK_THROWS_AS(typical_alpha_estimate(ProbabilisticGraph::uniform(cycle_graph(3)), 2, 0.0), Error);
}

TEST_CASE("eta bounds")
{
    auto k2 = ProbabilisticGraph::uniform(complete_graph(2));
    std::vector<ProbabilisticGraph> two{k2, k2};
    auto b = eta_bounds(two, Distribution::rational({1, 1}, 2));
    check_sound(b);
    CHECK(b.lo == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b.hi == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(eta_product(two, Distribution::rational({2, 2}, 4)).size() == 4);

    std::vector<ProbabilisticGraph> one{ProbabilisticGraph::uniform(cycle_graph(5))};
    auto e1 = eta_bounds(one, Distribution::rational({1}, 1), levels(2));
    auto direct = hbar_bounds(one[0], levels(2));
    CHECK(e1.lo == doctest::Approx(direct.lo));
    CHECK(e1.hi == doctest::Approx(direct.hi));

    SplitMix64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<ProbabilisticGraph> parts;
        for (int a = 0; a < 2; ++a) {
            const int n = 2 + static_cast<int>(rng.below(3));
            parts.emplace_back(oracle::random_perfect_graph(rng, n),
                               Distribution(oracle::random_dist(rng, static_cast<std::size_t>(n))));
        }
        const std::int64_t x = 1 + static_cast<std::int64_t>(rng.below(2));
        Distribution pa = Distribution::rational({x, 3 - x}, 3);
        auto eb = eta_bounds(parts, pa, levels(1));
        check_sound(eb);
        double lin = 0.0;
        for (std::size_t a = 0; a < 2; ++a)
            lin += pa[a] * korner_entropy(parts[a]).value;
        CHECK(eb.width() <= 1e-6);
        CHECK(eb.contains(lin, 1e-6));
    }
    CHECK_THROWS_AS(eta_bounds(two, Distribution({0.5, 0.5})), Error);
    CHECK_THROWS_AS(eta_bounds(two, Distribution::rational({1}, 1)), Error);
}
