#include "zeroerr/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "zeroerr/codec.hpp"
#include "zeroerr/combinat.hpp"
#include "zeroerr/eta.hpp"
#include "zeroerr/numopt.hpp"
#include "zeroerr/parallel.hpp"
#include "zeroerr/perfect.hpp"
#include "zeroerr/symmetry.hpp"
#include "zeroerr/typicality.hpp"

namespace zeroerr {

const char * to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "undecided";
    }
}

ScenarioContext::ScenarioContext(const VerifierConfig & config, std::uint64_t seed)
    : config_(config), rng_(seed), exhaustions_at_start_(budget_exhaustion_count())
{
}

BoundsOptions ScenarioContext::bounds(int max_n) const
{
    BoundsOptions o;
    o.max_n = max_n;
    o.budget = config_.budget;
    o.product = config_.product;
    return o;
}

bool ScenarioContext::budget_hit() const noexcept { return budget_exhaustion_count() != exhaustions_at_start_; }

void ScenarioContext::add(CheckRecord r, bool ok)
{
    r.status = ok ? Status::pass : Status::fail;
    checks.push_back(std::move(r));
}

void ScenarioContext::equal(std::string claim, double measured, double expected, double tol)
{
    add({std::move(claim), "equal", measured, expected, tol}, std::abs(measured - expected) <= tol);
}

void ScenarioContext::at_most(std::string claim, double measured, double limit, double tol)
{
    add({std::move(claim), "at-most", measured, limit, tol}, measured <= limit + tol);
}

void ScenarioContext::at_least(std::string claim, double measured, double limit, double tol)
{
    add({std::move(claim), "at-least", measured, limit, tol}, measured >= limit - tol);
}

void ScenarioContext::holds(std::string claim, bool ok)
{
    add({std::move(claim), "holds", ok ? 1.0 : 0.0, 1.0, 0.0}, ok);
}

void ScenarioContext::note(std::string text) { notes.push_back(std::move(text)); }

namespace {

double lg(double x) { return std::log2(x); }

Graph random_graph(SplitMix64 & rng, int n, double p)
{
    Graph g(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p)
                g.add_edge(u, v);
    return g;
}

// Flat Dirichlet draw, floored away from zero so every vertex carries mass.
Distribution random_dist(SplitMix64 & rng, std::size_t n)
{
    std::vector<double> w(n);
    for (auto & x : w)
        x = 1e-3 - std::log(1.0 - rng.uniform());
    return Distribution::normalized(std::move(w));
}

// Instance generation always uses the default budget so a starved
// configuration cannot stall it; only the measured computations are starved.
Graph random_perfect_graph(SplitMix64 & rng, int n)
{
    for (;;) {
        auto g = random_graph(rng, n, 0.2 + 0.6 * rng.uniform());
        if (is_perfect(g).perfect == Decision::yes)
            return g;
    }
}

int between(SplitMix64 & rng, int lo, int hi) { return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))); }

std::vector<int> random_permutation(SplitMix64 & rng, std::size_t n)
{
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = n; i > 1; --i)
        std::swap(p[i - 1], p[rng.below(i)]);
    return p;
}

// Rational distribution on k points with positive numerators over den >= k.
Distribution random_rational(SplitMix64 & rng, std::size_t k, std::int64_t den)
{
    std::vector<std::int64_t> num(k, 1);
    for (std::int64_t left = den - static_cast<std::int64_t>(k); left > 0; --left)
        ++num[rng.below(k)];
    return Distribution::rational(std::move(num), den);
}

std::size_t alpha(const Graph & g, const ScenarioContext & ctx)
{
    return alpha_exact(g, ctx.config().budget).size;
}

double entropy_of(std::span<const double> w)
{
    double h = 0.0;
    for (double v : w)
        if (v > 0.0)
            h -= v * std::log2(v);
    return h;
}

bool all_registered(const Certificate & c)
{
    if (!is_registered_method(c.method))
        return false;
    return std::all_of(c.sub.begin(), c.sub.end(), all_registered);
}

const std::array<std::pair<int, int>, 7> hole_cells{{{2, 2}, {2, 3}, {3, 4}, {4, 3}, {5, 2}, {4, 1}, {3, 1}}};

} // namespace

namespace checks {

void pentagon_capacity(ScenarioContext & ctx)
{
    const auto g = cycle_graph(5);
    const double target = 0.5 * lg(5.0);
    ctx.equal("alpha(C5^2) = 5", static_cast<double>(alpha(and_power(g, 2, ctx.config().product), ctx)), 5.0, 0.0);
    ctx.equal("theta(C5) = sqrt(5)", theta_transitive(g), std::sqrt(5.0), 1e-6);
    const auto b = c0_bounds(g, ctx.bounds(2));
    ctx.equal("C0(C5) lower end", b.lo, target, 1e-6);
    ctx.equal("C0(C5) upper end", b.hi, target, 1e-6);
    ctx.at_most("C0(C5) interval width", b.width(), 1e-6, 0.0);
}

void pentagon_entropy(ScenarioContext & ctx)
{
    const auto pg = ProbabilisticGraph::uniform(cycle_graph(5));
    const double target = 0.5 * lg(5.0);
    const auto hb = hbar_bounds(pg, ctx.bounds(2));
    ctx.equal("Hbar(C5, uniform) lower end", hb.lo, target, 1e-6);
    ctx.equal("Hbar(C5, uniform) upper end", hb.hi, target, 1e-6);
    const auto k = korner_entropy(pg);
    ctx.at_least("H_kappa(C5, uniform) >= log(5/2)", k.value, lg(2.5), 1e-6);
    ctx.at_least("H_kappa(C5, uniform) >= Hbar upper end", k.value, hb.hi, 1e-6);
    const auto cr = c_rel_bounds(pg, ctx.bounds(2));
    ctx.equal("C(C5, uniform) = log 5 - Hbar", cr.lo, lg(5.0) - hb.hi, 1e-9);
}

void perfect_cycle_product(ScenarioContext & ctx)
{
    const auto c6 = cycle_graph(6), c8 = cycle_graph(8);
    const auto a6 = alpha(c6, ctx), a8 = alpha(c8, ctx);
    ctx.equal("alpha(C6) = 3", static_cast<double>(a6), 3.0, 0.0);
    ctx.equal("alpha(C8) = 4", static_cast<double>(a8), 4.0, 0.0);
    const auto prod = and_product(c6, c8, ctx.config().product);
    const auto ap = alpha(prod, ctx);
    ctx.equal("alpha(C6 x C8) = 12", static_cast<double>(ap), 12.0, 0.0);
    ctx.equal("alpha(C6 x C8) = alpha(C6) alpha(C8)", static_cast<double>(ap), static_cast<double>(a6 * a8), 0.0);
    const std::array parts{c6, c8};
    const auto [u, layout] = disjoint_union(std::span<const Graph>(parts));
    const auto au = alpha(u, ctx);
    ctx.equal("alpha(C6 + C8) = 7", static_cast<double>(au), 7.0, 0.0);
    ctx.equal("alpha(C6 + C8) = alpha(C6) + alpha(C8)", static_cast<double>(au), static_cast<double>(a6 + a8), 0.0);

    const auto bp = c0_bounds(prod, ctx.bounds(1));
    ctx.equal("C0(C6 x C8) lower end = log 12", bp.lo, lg(12.0), 1e-6);
    ctx.equal("C0(C6 x C8) upper end = log 12", bp.hi, lg(12.0), 1e-6);
    const auto bu = c0_bounds(u, ctx.bounds(1));
    ctx.equal("C0(C6 + C8) = log(2^C0(C6) + 2^C0(C8)) = log 7", bu.lo, lg(7.0), 1e-6);
    ctx.at_most("C0(C6 + C8) interval width", bu.width(), 1e-6, 0.0);
}

void imperfect_cycle_product(ScenarioContext & ctx)
{
    const auto c6 = cycle_graph(6), c8 = cycle_graph(8);
    PerfectOptions po;
    po.budget = ctx.config().budget;
    po.max_vertices = 48;
    ctx.holds("C6 is perfect", is_perfect(c6, po).perfect == Decision::yes);
    ctx.holds("C8 is perfect", is_perfect(c8, po).perfect == Decision::yes);
    const auto prod = and_product(c6, c8, ctx.config().product);
    std::vector<int> hole;
    for (auto [i, j] : hole_cells)
        hole.push_back(j * 8 + i);
    ctx.holds("the seven listed product vertices induce C7", is_induced_cycle(prod, hole));
    const auto sub = induced_subgraph(prod, hole);
    ctx.holds("induced subgraph is isomorphic to C7",
              find_isomorphism(sub, cycle_graph(7)).decision == Decision::yes);
    const auto r = is_perfect(prod, po);
    ctx.holds("C6 x C8 is not perfect", r.perfect == Decision::no);
    if (r.perfect == Decision::no) {
        const auto host = r.in_complement ? complement(prod) : prod;
        ctx.holds("odd-hole witness is an induced odd cycle",
                  r.witness.size() >= 5 && r.witness.size() % 2 == 1 && is_induced_cycle(host, r.witness));
    }
}

void schlafli_strict(ScenarioContext & ctx)
{
    const auto s = schlafli_graph();
    const auto sb = complement(s);
    ctx.holds("Schlafli graph is SRG(27,16,10,8)", is_strongly_regular(s, 27, 16, 10, 8));
    const auto as = alpha(s, ctx), asb = alpha(sb, ctx);
    ctx.equal("alpha(S) = 3", static_cast<double>(as), 3.0, 0.0);
    ctx.equal("alpha(complement S) = 6", static_cast<double>(asb), 6.0, 0.0);
    const auto prod = and_product(s, sb, ctx.config().product);
    std::vector<int> diag;
    for (int v = 0; v < 27; ++v)
        diag.push_back(v * 27 + v);
    ctx.holds("diagonal {(v, v)} is independent in S x complement S", is_independent(prod, diag));
    ctx.at_least("alpha(S x complement S) lower witness exceeds alpha(S) alpha(complement S)",
                 static_cast<double>(diag.size()), static_cast<double>(as * asb) + 1.0, 0.0);
    ctx.equal("theta(S) = 3", theta_transitive(s), 3.0, 1e-6);
    ctx.equal("theta(complement S) = 9", theta_transitive(sb), 9.0, 1e-6);
    // A + I of the complement has rank 7 over GF(2), so the built-in fitting
    // matrices already carry the capacity-level strict inequality.
    double best = lg(27.0);
    for (const auto & m : default_haemers_candidates(sb))
        best = std::min(best, haemers_bound(sb, m));
    ctx.equal("best built-in fitting-matrix bound on C0(complement S) = log 7", best, lg(7.0), 1e-9);
    const auto cs = c0_bounds(s, ctx.bounds(1));
    const auto csb = c0_bounds(sb, ctx.bounds(1));
    ctx.equal("C0(S) upper end = log 3", cs.hi, lg(3.0), 1e-6);
    ctx.at_most("C0(complement S) upper end <= log 7", csb.hi, lg(7.0), 1e-9);
    const auto crel = c_rel_bounds(ProbabilisticGraph::uniform(sb), ctx.bounds(1));
    ctx.at_most("C(complement S, uniform) upper end <= log 7", crel.hi, lg(7.0), 1e-9);
    ctx.at_least("log 27 - C0(S) upper end - C0(complement S) upper end (strict gap)",
                 lg(27.0) - cs.hi - csb.hi, 1e-6, 0.0);
    ctx.note("C0(S x complement S) >= log 27 > log 21 >= C0(S) + C0(complement S)");
}

void korner_extremes(ScenarioContext & ctx, int count)
{
    double worst_complete = 0.0, worst_empty = 0.0;
    for (int t = 0; t < count; ++t) {
        const int n = between(ctx.rng(), 2, 7);
        const auto p = random_dist(ctx.rng(), static_cast<std::size_t>(n));
        worst_complete = std::max(worst_complete, std::abs(korner_entropy({complete_graph(n), p}).value - p.entropy()));
        worst_empty = std::max(worst_empty, std::abs(korner_entropy({empty_graph(n), p}).value));
    }
    ctx.equal("max |H_kappa(K_n, P) - H(P)|", worst_complete, 0.0, 1e-6);
    ctx.equal("max |H_kappa(N_n, P)|", worst_empty, 0.0, 1e-9);
}

void perfect_collapse(ScenarioContext & ctx, int count, int max_vertices)
{
    double width = 0.0, mid = 0.0, c0_dev = 0.0, marton = 0.0;
    for (int t = 0; t < count; ++t) {
        const int n = between(ctx.rng(), 2, max_vertices);
        const auto g = random_perfect_graph(ctx.rng(), n);
        const ProbabilisticGraph pg(g, random_dist(ctx.rng(), g.size()));
        const auto hb = hbar_bounds(pg, ctx.bounds(1));
        const auto k = korner_entropy(pg);
        width = std::max(width, hb.width());
        mid = std::max(mid, std::abs(0.5 * (hb.lo + hb.hi) - k.value));
        const auto c0 = c0_bounds(g, ctx.bounds(1));
        const double la = lg(static_cast<double>(alpha(g, ctx)));
        c0_dev = std::max({c0_dev, std::abs(c0.lo - la), std::abs(c0.hi - la)});
        const auto cr = c_rel_bounds(pg, ctx.bounds(1));
        marton = std::max(marton, std::abs(k.value + 0.5 * (cr.lo + cr.hi) - pg.dist.entropy()));
    }
    ctx.at_most("max Hbar interval width on perfect graphs", width, 1e-6, 0.0);
    ctx.equal("max |Hbar midpoint - H_kappa|", mid, 0.0, 1e-6);
    ctx.equal("max |C0 - log alpha| at both ends", c0_dev, 0.0, 1e-9);
    ctx.equal("max |H_kappa + C - H(P)|", marton, 0.0, 1e-6);
}

void product_marginals(ScenarioContext & ctx, int count)
{
    double worst = 0.0, worst_alpha = 0.0;
    int found = 0;
    while (found < count) {
        const auto g1 = random_perfect_graph(ctx.rng(), between(ctx.rng(), 2, 4));
        const auto g2 = random_perfect_graph(ctx.rng(), between(ctx.rng(), 2, 4));
        const auto prod = and_product(g1, g2, ctx.config().product);
        if (is_perfect(prod).perfect != Decision::yes)
            continue;
        ++found;
        const auto best = capacity_achieving_distribution(prod.size(), perfect_capacity_evaluator(prod));
        std::vector<double> m1(g1.size(), 0.0), m2(g2.size(), 0.0);
        for (std::size_t u = 0; u < g1.size(); ++u)
            for (std::size_t v = 0; v < g2.size(); ++v) {
                m1[u] += best.p[u * g2.size() + v];
                m2[v] += best.p[u * g2.size() + v];
            }
        const auto pm = product_distribution(Distribution::normalized(m1), Distribution::normalized(m2));
        const double at_product = relative_capacity_perfect({prod, pm}, true);
        worst = std::max(worst, std::abs(best.value - at_product));
        worst_alpha = std::max(worst_alpha, std::abs(best.value - lg(static_cast<double>(alpha(prod, ctx)))));
    }
    ctx.equal("max |max_P C(G x G', P) - C(G x G', P1 x P2)|", worst, 0.0, 2e-4);
    ctx.equal("max |max_P C(G x G', P) - log alpha(G x G')|", worst_alpha, 0.0, 2e-4);
}

namespace {

// Second-order gap between the true maximum of H(q) + <q, c>, c in [0, 1]^k,
// and the best point of the simplex grid with step 1/res: the Hessian is
// diag(-1 / (q ln 2)) with q >= 1 / (2k - 1), and the nearest grid point is
// at squared distance at most h^2 / 2 (k = 2) or 2 h^2 / 3 (k = 3).
double grid_gap_bound(std::size_t k, int res)
{
    const double h = 1.0 / res;
    const double q_min = 1.0 / (2.0 * static_cast<double>(k) - 1.0);
    const double dist2 = k == 2 ? h * h / 2.0 : 2.0 * h * h / 3.0;
    return 0.5 * dist2 / (q_min * std::log(2.0));
}

} // namespace

void sum_channel_weights_grid(ScenarioContext & ctx, int count)
{
    const int res = 1000;
    for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
        double worst_grid = 0.0, worst_closed = 0.0, min_mass = 1.0;
        bool below = true;
        for (int t = 0; t < count; ++t) {
            std::vector<double> c(k);
            for (auto & v : c)
                v = ctx.rng().uniform();
            const auto [p, value] = sum_channel_weights(c);
            auto objective = [&](const std::vector<double> & q) {
                double v = entropy_of(q);
                for (std::size_t a = 0; a < k; ++a)
                    v += q[a] * c[a];
                return v;
            };
            double grid = -1e300;
            std::vector<double> q(k);
            if (k == 2) {
                for (int i = 0; i <= res; ++i) {
                    q = {static_cast<double>(i) / res, static_cast<double>(res - i) / res};
                    grid = std::max(grid, objective(q));
                }
            } else {
                for (int i = 0; i <= res; ++i)
                    for (int j = 0; i + j <= res; ++j) {
                        q = {static_cast<double>(i) / res, static_cast<double>(j) / res,
                             static_cast<double>(res - i - j) / res};
                        grid = std::max(grid, objective(q));
                    }
            }
            double closed = 0.0;
            for (double v : c)
                closed += std::exp2(v);
            below = below && grid <= value + 1e-12;
            worst_grid = std::max(worst_grid, std::abs(value - grid));
            worst_closed = std::max(worst_closed, std::abs(value - lg(closed)));
            for (std::size_t a = 0; a < k; ++a)
                min_mass = std::min(min_mass, p[a]);
        }
        const auto tag = " (|A| = " + std::to_string(k) + ")";
        // two parts: the grid gap bound is below 1e-6; three parts: it is not
        const double tol = k == 2 ? 1e-6 : grid_gap_bound(k, res);
        ctx.equal("max |sum-channel optimum - 1e-3 grid maximum|" + tag, worst_grid, 0.0, tol);
        ctx.holds("grid maximum never exceeds the optimum" + tag, below);
        ctx.equal("max |sum-channel optimum - log sum 2^c|" + tag, worst_closed, 0.0, 1e-9);
        ctx.holds("optimal weights have full support" + tag, min_mass > 0.0);
    }
}

void union_distributivity(ScenarioContext & ctx, int count)
{
    int mismatches = 0;
    for (int t = 0; t < count; ++t) {
        auto family = [&](std::size_t k) {
            std::vector<ProbabilisticGraph> parts;
            for (std::size_t a = 0; a < k; ++a) {
                const int n = between(ctx.rng(), 1, 3);
                parts.emplace_back(random_graph(ctx.rng(), n, ctx.rng().uniform()),
                                   random_dist(ctx.rng(), static_cast<std::size_t>(n)));
            }
            return parts;
        };
        const auto fa = family(static_cast<std::size_t>(between(ctx.rng(), 1, 3)));
        const auto fb = family(static_cast<std::size_t>(between(ctx.rng(), 1, 3)));
        const auto pa = random_dist(ctx.rng(), fa.size()), pb = random_dist(ctx.rng(), fb.size());
        const auto [ua, la] = disjoint_union(std::span<const ProbabilisticGraph>(fa), pa);
        const auto [ub, lb] = disjoint_union(std::span<const ProbabilisticGraph>(fb), pb);
        const auto lhs = and_product(ua, ub, ctx.config().product);

        std::vector<ProbabilisticGraph> cross;
        std::vector<double> w;
        for (std::size_t a = 0; a < fa.size(); ++a)
            for (std::size_t b = 0; b < fb.size(); ++b) {
                cross.push_back(and_product(fa[a], fb[b], ctx.config().product));
                w.push_back(pa[a] * pb[b]);
            }
        const auto [rhs, lr] = disjoint_union(std::span<const ProbabilisticGraph>(cross), Distribution::normalized(w));

        // (a, i) x (b, j) sits at block (a, b), position i * |G_b| + j
        std::vector<int> perm(lhs.size());
        for (std::size_t gl = 0; gl < ua.size(); ++gl)
            for (std::size_t gr = 0; gr < ub.size(); ++gr) {
                const auto [a, i] = la.locate(gl);
                const auto [b, j] = lb.locate(gr);
                const auto block = a * fb.size() + b;
                perm[gl * ub.size() + gr] = static_cast<int>(lr.global(block, i * fb[b].size() + j));
            }
        const auto mapped = permute(lhs, perm);
        bool same = mapped.graph == rhs.graph;
        for (std::size_t v = 0; v < rhs.size() && same; ++v)
            same = std::abs(mapped.dist[v] - rhs.dist[v]) <= 1e-12;
        mismatches += same ? 0 : 1;
    }
    ctx.equal("families where product of unions differs from union of products", mismatches, 0.0, 0.0);
}

void union_of_isomorphic(ScenarioContext & ctx, int count)
{
    double worst = 0.0;
    for (int t = 0; t < count; ++t) {
        const int n = between(ctx.rng(), 2, 8);
        const ProbabilisticGraph base(random_graph(ctx.rng(), n, ctx.rng().uniform()),
                                      random_dist(ctx.rng(), static_cast<std::size_t>(n)));
        std::vector<ProbabilisticGraph> copies;
        for (int c = 0; c < 2; ++c)
            copies.push_back(permute(base, random_permutation(ctx.rng(), base.size())));
        const auto [u, layout] = disjoint_union(std::span<const ProbabilisticGraph>(copies), random_dist(ctx.rng(), 2));
        const auto hu = min_entropy_coloring(u, ColoringMode::exact, ctx.config().budget);
        const auto hg = min_entropy_coloring(base, ColoringMode::exact, ctx.config().budget);
        worst = std::max(worst, std::abs(hu.h_chi - hg.h_chi));
    }
    ctx.equal("max |H_chi(union of isomorphic copies) - H_chi(copy)|", worst, 0.0, 1e-9);
}

void induced_sandwich(ScenarioContext & ctx, int count)
{
    double lower_slack = 1e300, upper_slack = 1e300;
    for (int t = 0; t < count; ++t) {
        const int n = between(ctx.rng(), 2, 10);
        const ProbabilisticGraph pg(random_graph(ctx.rng(), n, ctx.rng().uniform()),
                                    random_dist(ctx.rng(), static_cast<std::size_t>(n)));
        std::vector<int> keep;
        while (keep.empty())
            for (int v = 0; v < n; ++v)
                if (ctx.rng().uniform() < 0.6)
                    keep.push_back(v);
        double mass = 0.0;
        for (int v : keep)
            mass += pg.dist[static_cast<std::size_t>(v)];
        const auto sub = induced_subgraph(pg, keep, true);
        const double h = min_entropy_coloring(pg, ColoringMode::exact, ctx.config().budget).h_chi;
        const double hs = min_entropy_coloring(sub, ColoringMode::exact, ctx.config().budget).h_chi;
        lower_slack = std::min(lower_slack, hs - (h - 1.0 - (1.0 - mass) * lg(static_cast<double>(n))));
        upper_slack = std::min(upper_slack, h / mass - hs);
    }
    ctx.at_least("min slack of H_chi(G) - 1 - (1 - P(S)) log|X| <= H_chi(G[S])", lower_slack, 0.0);
    ctx.at_least("min slack of H_chi(G[S]) <= H_chi(G) / P(S)", upper_slack, 0.0);
}

void type_splitting(ScenarioContext & ctx, int count)
{
    int inexact = 0, wrong = 0;
    for (int t = 0; t < count; ++t) {
        const auto k = static_cast<std::size_t>(between(ctx.rng(), 2, 4));
        const int m1 = between(ctx.rng(), 1, 12), m2 = between(ctx.rng(), 1, 12);
        std::vector<std::int64_t> c1(k, 0), c2(k, 0);
        for (int i = 0; i < m1; ++i)
            ++c1[ctx.rng().below(k)];
        for (int i = 0; i < m2; ++i)
            ++c2[ctx.rng().below(k)];
        std::vector<int> seq;
        for (std::size_t a = 0; a < k; ++a)
            seq.insert(seq.end(), static_cast<std::size_t>(c1[a] + c2[a]), static_cast<int>(a));
        const auto order = random_permutation(ctx.rng(), seq.size());
        std::vector<int> shuffled(seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i)
            shuffled[static_cast<std::size_t>(order[i])] = seq[i];
        const double beta = static_cast<double>(m1) / (m1 + m2);
        const auto split = type_split(shuffled, beta, Distribution::rational(c1, m1), Distribution::rational(c2, m2));
        inexact += split.exact ? 0 : 1;
        if (type_of(split.sub1, k).counts != c1 || type_of(split.sub2, k).counts != c2)
            ++wrong;
    }
    ctx.equal("integral instances not split exactly", inexact, 0.0, 0.0);
    ctx.equal("exact splits with the wrong sub-types", wrong, 0.0, 0.0);
}

void union_capacity(ScenarioContext & ctx, int count)
{
    int additive = 0, collapse = 0;
    double worst = 0.0;
    for (int t = 0; t < count; ++t) {
        const auto a = random_graph(ctx.rng(), between(ctx.rng(), 1, 7), ctx.rng().uniform());
        const auto b = random_graph(ctx.rng(), between(ctx.rng(), 1, 7), ctx.rng().uniform());
        const std::array parts{a, b};
        const auto [u, layout] = disjoint_union(std::span<const Graph>(parts));
        additive += alpha(u, ctx) == alpha(a, ctx) + alpha(b, ctx) ? 0 : 1;

        const auto pa = random_perfect_graph(ctx.rng(), between(ctx.rng(), 1, 6));
        const auto pb = random_perfect_graph(ctx.rng(), between(ctx.rng(), 1, 6));
        const std::array pparts{pa, pb};
        const auto [pu, pl] = disjoint_union(std::span<const Graph>(pparts));
        const auto bu = c0_bounds(pu, ctx.bounds(1));
        const std::array c{lg(static_cast<double>(alpha(pa, ctx))), lg(static_cast<double>(alpha(pb, ctx)))};
        const double expect = sum_channel_weights(c).second;
        collapse += bu.width() <= 1e-9 ? 0 : 1;
        worst = std::max(worst, std::abs(bu.lo - expect));
    }
    ctx.equal("unions where alpha is not additive", additive, 0.0, 0.0);
    ctx.equal("perfect unions without a single-letter C0", collapse, 0.0, 0.0);
    ctx.equal("max |C0(G + G') - log(2^C0(G) + 2^C0(G'))| on perfect pairs", worst, 0.0, 1e-9);
}

void eta_families(ScenarioContext & ctx, int count)
{
    double width = 0.0;
    int outside = 0;
    for (int t = 0; t < count; ++t) {
        std::vector<ProbabilisticGraph> parts;
        for (int a = 0; a < 2; ++a) {
            const auto g = random_perfect_graph(ctx.rng(), between(ctx.rng(), 2, 4));
            parts.emplace_back(g, random_dist(ctx.rng(), g.size()));
        }
        const auto pa = random_rational(ctx.rng(), 2, between(ctx.rng(), 2, 3));
        const auto b = eta_bounds(parts, pa, ctx.bounds(1));
        double expect = 0.0;
        for (std::size_t a = 0; a < parts.size(); ++a)
            expect += pa[a] * korner_entropy(parts[a]).value;
        width = std::max(width, b.width());
        outside += b.contains(expect, 1e-6) ? 0 : 1;
    }
    ctx.at_most("max eta interval width on perfect families", width, 1e-6, 0.0);
    ctx.equal("perfect families whose eta interval misses sum P_A H_kappa", outside, 0.0, 0.0);

    // pentagon mixed with a perfect part: s/2 log 5 + (1 - s) H_kappa
    const std::vector<ProbabilisticGraph> mixed{ProbabilisticGraph::uniform(cycle_graph(5)),
                                                ProbabilisticGraph::uniform(complete_graph(2))};
    const auto half = Distribution::rational({1, 1}, 2);
    const auto b = eta_bounds(mixed, half, ctx.bounds(1));
    const double value = 0.5 * 0.5 * lg(5.0) + 0.5 * korner_entropy(mixed[1]).value;
    ctx.at_most("eta(C5, K2) lower end <= s/2 log 5 + (1 - s) H_kappa(K2)", b.lo, value, 1e-6);
    ctx.at_least("eta(C5, K2) upper end >= s/2 log 5 + (1 - s) H_kappa(K2)", b.hi, value, 1e-6);
}

void subfamily_closure(ScenarioContext & ctx, int count)
{
    int family_pass = 0, sub_fail = 0;
    for (int t = 0; t < count; ++t) {
        std::vector<ProbabilisticGraph> parts;
        for (int a = 0; a < 3; ++a) {
            const auto g = random_perfect_graph(ctx.rng(), between(ctx.rng(), 2, 3));
            parts.emplace_back(g, random_dist(ctx.rng(), g.size()));
        }
        auto linearizes = [&](const std::vector<ProbabilisticGraph> & fam, const Distribution & w) {
            const auto b = eta_bounds(fam, w, ctx.bounds(1));
            double expect = 0.0;
            for (std::size_t a = 0; a < fam.size(); ++a)
                expect += w[a] * korner_entropy(fam[a]).value;
            return b.width() <= 1e-6 && b.contains(expect, 1e-6);
        };
        if (!linearizes(parts, Distribution::rational({1, 1, 1}, 3)))
            continue;
        ++family_pass;
        for (std::size_t skip = 0; skip < 3; ++skip) {
            std::vector<ProbabilisticGraph> sub;
            for (std::size_t a = 0; a < 3; ++a)
                if (a != skip)
                    sub.push_back(parts[a]);
            if (!linearizes(sub, Distribution::rational({1, 1}, 2)))
                ++sub_fail;
        }
    }
    ctx.at_least("families passing the linearization check", family_pass, 1.0, 0.0);
    ctx.equal("two-element subfamilies failing it", sub_fail, 0.0, 0.0);
}

void witsenhausen_rate(ScenarioContext & ctx)
{
    const auto k4 = h0_bounds(complete_graph(4), ctx.bounds(1));
    ctx.equal("H0(K4) = 2", k4.lo, 2.0, 1e-9);
    ctx.at_most("H0(K4) interval width", k4.width(), 1e-9, 0.0);
    const auto n3 = h0_bounds(empty_graph(3), ctx.bounds(1));
    ctx.equal("H0(N3) = 0", n3.hi, 0.0, 1e-9);
    const auto c5 = h0_bounds(cycle_graph(5), ctx.bounds(2));
    ctx.equal("H0(C5) lower end = log omega = 1", c5.lo, 1.0, 1e-9);
    ctx.equal("H0(C5) upper end = 1/2 log chi(C5^2) = 1/2 log 5", c5.hi, 0.5 * lg(5.0), 1e-9);
    double worst = -1e300;
    for (int t = 0; t < 5; ++t) {
        const ProbabilisticGraph pg(cycle_graph(5), random_dist(ctx.rng(), 5));
        worst = std::max(worst, hbar_bounds(pg, ctx.bounds(1)).hi - c5.hi);
    }
    ctx.at_most("max Hbar(C5, P) upper end - H0(C5) upper end", worst, 0.0);
}

void typical_estimate(ScenarioContext & ctx)
{
    const auto pg = ProbabilisticGraph::uniform(cycle_graph(5));
    const auto e = typical_alpha_estimate(pg, 2, 0.3, ctx.bounds(1));
    ctx.holds("typical alpha estimate is marked uncertified", !e.certified);
    ctx.at_most("typical alpha estimate <= (1/2) log alpha(C5^2)", e.value, 0.5 * lg(5.0));
}

void bound_soundness(ScenarioContext & ctx, int random_count)
{
    std::vector<std::pair<std::string, Graph>> corpus{
        {"C4", cycle_graph(4)},    {"C5", cycle_graph(5)},        {"C6", cycle_graph(6)},
        {"C7", cycle_graph(7)},    {"K1", complete_graph(1)},     {"K3", complete_graph(3)},
        {"K4", complete_graph(4)}, {"N2", empty_graph(2)},        {"N3", empty_graph(3)},
        {"P3", path_graph(3)},     {"P4", path_graph(4)},         {"P5", path_graph(5)},
        {"co-C7", complement(cycle_graph(7))},
    };
    for (int t = 0; t < random_count; ++t) {
        const int n = between(ctx.rng(), 3, 6);
        corpus.emplace_back("random-" + std::to_string(t), random_graph(ctx.rng(), n, ctx.rng().uniform()));
    }

    int inverted = 0, unnested = 0, marton = 0, unregistered = 0, capacity = 0, rate = 0;
    std::vector<std::string> bad;
    for (const auto & [name, g] : corpus) {
        std::vector<BoundInterval> all;
        const auto c1 = c0_bounds(g, ctx.bounds(1)), c2 = c0_bounds(g, ctx.bounds(2));
        const auto h1 = h0_bounds(g, ctx.bounds(1)), h2 = h0_bounds(g, ctx.bounds(2));
        all.insert(all.end(), {c1, c2, h1, h2});
        auto nested = [](const BoundInterval & coarse, const BoundInterval & fine) {
            return fine.lo >= coarse.lo - 1e-9 && fine.hi <= coarse.hi + 1e-9;
        };
        int before = unnested;
        unnested += nested(c1, c2) ? 0 : 1;
        unnested += nested(h1, h2) ? 0 : 1;
        for (const auto & p : {Distribution::uniform(g.size()), random_dist(ctx.rng(), g.size())}) {
            const ProbabilisticGraph pg(g, p);
            const auto b1 = hbar_bounds(pg, ctx.bounds(1)), b2 = hbar_bounds(pg, ctx.bounds(2));
            const auto cr = c_rel_bounds(pg, ctx.bounds(2));
            all.insert(all.end(), {b1, b2, cr});
            unnested += nested(b1, b2) ? 0 : 1;
            const double h = p.entropy();
            const bool reflected = std::abs(cr.lo - std::max(0.0, h - b2.hi)) <= 1e-9
                                   && std::abs(cr.hi - std::max(cr.lo, h - b2.lo)) <= 1e-9;
            marton += reflected ? 0 : 1;
            capacity += cr.lo <= c2.hi + 1e-9 ? 0 : 1;
            rate += b2.hi <= h2.hi + 1e-9 ? 0 : 1;
        }
        for (const auto & b : all) {
            inverted += b.lo <= b.hi + 1e-9 ? 0 : 1;
            unregistered += all_registered(b.lo_cert) && all_registered(b.hi_cert) ? 0 : 1;
        }
        if (unnested != before)
            bad.push_back(name);
    }
    ctx.equal("intervals with lo > hi", inverted, 0.0, 0.0);
    ctx.equal("intervals not nested from max_n = 1 to 2", unnested, 0.0, 0.0);
    ctx.equal("relative-capacity intervals off the entropy reflection", marton, 0.0, 0.0);
    ctx.equal("C(G, P) lower end above C0(G) upper end", capacity, 0.0, 0.0);
    ctx.equal("Hbar(G, P) upper end above H0(G) upper end", rate, 0.0, 0.0);
    ctx.equal("certificates naming unregistered methods", unregistered, 0.0, 0.0);
    ctx.note("corpus size " + std::to_string(corpus.size()));
    for (const auto & b : bad)
        ctx.note("nesting violated on " + b);
}

void codec_side_information(ScenarioContext & ctx, std::size_t trials)
{
    CodecOptions o;
    o.budget = ctx.config().budget;
    o.product = ctx.config().product;
    const auto code = build_si_code(ChannelSpec::typewriter(5), Distribution::uniform(5), 2, 0.3, o);
    const auto rep = simulate_si(code, trials, ctx.rng()());
    ctx.equal("side-information decoding errors", static_cast<double>(rep.errors), 0.0, 0.0);
    const double n = static_cast<double>(code.n);
    const double budget = (1.0 + (1.0 - code.typical_mass) * code.escape_length
                           + code.typical_mass * lg(static_cast<double>(code.coloring.color_count)))
                          / n;
    ctx.at_most("empirical side-information rate <= flag + escape + log chi budget + 1/n", rep.rate(), budget + 1.0 / n);
    ctx.at_most("expected side-information rate <= budget with Huffman slack", code.expected_rate(),
                code.rate_budget());
}

void codec_partial_side_information(ScenarioContext & ctx, std::size_t trials)
{
    ChannelSpec ch;
    ch.x_count = 2;
    ch.y_count = 3;
    ch.support = {{0, 0}, {0, 1}, {1, 0}, {1, 2}};
    const std::vector<int> g{0, 1, 1};
    const std::size_t n = 6;
    CodecOptions o;
    o.budget = ctx.config().budget;
    o.product = ctx.config().product;
    const auto code = build_partial_si_code(ch, Distribution::uniform(2), g, n, 1.0, o);
    const auto rep = simulate_partial_si(code, trials, ctx.rng()());
    ctx.equal("partial side-information decoding errors", static_cast<double>(rep.errors), 0.0, 0.0);
    double target = 0.0;
    for (std::size_t a = 0; a < code.a_count; ++a)
        if (code.p_a[a] > 0.0)
            target += code.p_a[a] * hbar_bounds({code.part_graph[a], code.part_source[a]}, ctx.bounds(1)).hi;
    const double slack = 2.0 * static_cast<double>(code.a_count) / n + 1.0 / n;
    ctx.at_most("empirical partial side-information rate <= sum P_A Hbar_a + finite-n slack", rep.rate(),
                target + slack);
}

void codec_channel(ScenarioContext & ctx, std::size_t trials)
{
    CodecOptions o;
    o.budget = ctx.config().budget;
    o.product = ctx.config().product;
    const auto ch = ChannelSpec::typewriter(5);
    const auto book = build_channel_code(ch, 2, CodeTarget::exact, o);
    ctx.equal("pentagon channel code size", static_cast<double>(book.codewords.size()), 5.0, 0.0);
    ctx.holds("codebook pairwise non-confusable", is_zero_error_codebook(characteristic_graph(ch), book));
    const auto c0 = c0_bounds(characteristic_graph(ch), ctx.bounds(2));
    ctx.equal("codebook rate = C0 lower certificate at n = 2", book.rate(), c0.lo, 1e-9);
    const auto rep = channel_roundtrip(book, ch, trials, ctx.rng()());
    ctx.equal("channel decoding errors", static_cast<double>(rep.errors), 0.0, 0.0);
}

void codec_sum_channel(ScenarioContext & ctx, std::size_t trials)
{
    CodecOptions o;
    o.budget = ctx.config().budget;
    o.product = ctx.config().product;
    const auto one = ChannelSpec::identity(1);
    const auto unit = build_channel_code(one, 1, CodeTarget::exact, o);
    const auto index_only = build_sum_channel_code({one, one}, {unit, unit}, {2, 2});
    ctx.equal("index-only sum code rate = (1/4) log 6", index_only.rate(), 0.25 * lg(6.0), 1e-12);

    const auto i3 = ChannelSpec::identity(3), i7 = ChannelSpec::identity(7);
    const std::array cap{lg(3.0), lg(7.0)};
    const auto [weights, limit] = sum_channel_weights(cap);
    const auto comp = composition_for(weights, 10);
    ctx.holds("composition from the optimal weights is (3, 7)", comp == std::vector<std::size_t>{3, 7});
    const auto books = std::vector<Codebook>{build_channel_code(i3, 1, CodeTarget::exact, o),
                                             build_channel_code(i7, 1, CodeTarget::exact, o)};
    const auto code = build_sum_channel_code({i3, i7}, books, comp);
    // C(10, 3) 3^3 7^7
    const BigInt direct = BigInt(120) * 27 * 823543;
    ctx.holds("sum code message count equals the direct count", code.messages == direct);
    ctx.at_most("sum code rate <= log(3 + 7)", code.rate(), limit);

    const auto t5 = ChannelSpec::typewriter(5);
    const auto noisy = build_sum_channel_code({t5, i3}, {build_channel_code(t5, 2, CodeTarget::exact, o), books[0]},
                                              composition_for(Distribution::rational({1, 1}, 2), 4));
    const auto rep = simulate_sum_channel(noisy, trials, ctx.rng()());
    ctx.equal("sum-channel decoding errors", static_cast<double>(rep.errors), 0.0, 0.0);
}

void shifted_codebooks(ScenarioContext & ctx)
{
    const auto s = schlafli_graph();
    const auto sb = complement(s);
    const auto letters = and_product(s, sb, ctx.config().product);
    Codebook diag;
    diag.n = 1;
    diag.independence_checked = true;
    for (int v = 0; v < 27; ++v)
        diag.codewords.push_back({v * 27 + v});
    ShiftedOptions so;
    so.x1_count = 27;
    so.x2_count = 27;
    const auto sh = shifted_codebook(diag, so);
    bool all = true;
    for (const auto & c : sh.shifts)
        all = all && is_zero_error_codebook(letters, c);
    ctx.holds("shifts of the 27-word diagonal book stay independent", all);

    const auto c5 = cycle_graph(5);
    const auto pent = and_product(c5, complement(c5), ctx.config().product);
    Codebook sq;
    sq.n = 2;
    sq.independence_checked = true;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            sq.codewords.push_back({a * 5 + a, b * 5 + b});
    ShiftedOptions po;
    po.x1_count = 5;
    po.x2_count = 5;
    const auto sp = shifted_codebook(sq, po);
    all = true;
    for (const auto & c : sp.shifts)
        all = all && is_zero_error_codebook(pent, c);
    ctx.holds("shifts of the correlated pentagon book stay independent", all);
    ctx.holds("filtered concatenation is non-empty", !sp.empty);
    ctx.holds("filtered concatenation is independent", is_zero_error_codebook(pent, sp.book));
    const auto target = Distribution::uniform(25);
    double worst = 0.0;
    for (const auto & w : sp.book.codewords)
        worst = std::max(worst, type_distance(type_of(w, 25), target));
    ctx.at_most("max codeword type distance to the marginal product", worst, sp.eps);
}

} // namespace checks

namespace {

std::uint64_t fnv1a(const std::string & s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool selected(const Scenario & s, const VerifierConfig & c)
{
    if (!c.ids.empty() && std::find(c.ids.begin(), c.ids.end(), s.id) == c.ids.end())
        return false;
    if (c.tags.empty())
        return true;
    for (const auto & t : c.tags)
        if (std::find(s.tags.begin(), s.tags.end(), t) != s.tags.end())
            return true;
    return false;
}

} // namespace

const std::vector<Scenario> & scenario_registry()
{
    using namespace checks;
    static const std::vector<Scenario> registry{
        {"pentagon", "C0(C5) pinned to 1/2 log 5 by alpha(C5^2) and theta", {"capacity", "theta", "cycle"},
         pentagon_capacity},
        {"pentagon-entropy", "Hbar(C5, uniform) collapses by vertex transitivity; H_kappa stays above",
         {"entropy", "cycle", "transitive"}, pentagon_entropy},
        {"C6xC8", "alpha and C0 linearize over C6 x C8 and C6 + C8, yet seven product vertices induce C7",
         {"perfect", "capacity", "product", "union", "linearization"},
         [](ScenarioContext & c) {
             perfect_cycle_product(c);
             imperfect_cycle_product(c);
         }},
        {"schlafli-strict", "alpha(S x complement S) >= 27 > 18; capacities certified strict by theta and a rank-7 fitting matrix",
         {"schlafli", "capacity", "theta", "product", "supermultiplicativity"}, schlafli_strict},
        {"korner-extremes", "H_kappa equals H(P) on complete and 0 on empty graphs", {"entropy", "korner"},
         [](ScenarioContext & c) { korner_extremes(c, 20); }},
        {"perfect-collapse", "single-letter Hbar, C0 and the entropy identity on random perfect graphs",
         {"perfect", "entropy", "capacity", "korner"}, [](ScenarioContext & c) { perfect_collapse(c, 25, 8); }},
        {"product-marginals", "capacity of a perfect product is reached at the product of marginals",
         {"perfect", "capacity", "product", "optimizer"}, [](ScenarioContext & c) { product_marginals(c, 4); }},
        {"sum-channel-weights", "optimal time-sharing weights against a grid search", {"union", "optimizer"},
         [](ScenarioContext & c) { sum_channel_weights_grid(c, 10); }},
        {"union-distributivity", "product of unions equals union of products", {"union", "product", "identity"},
         [](ScenarioContext & c) { union_distributivity(c, 20); }},
        {"union-isomorphic", "chromatic entropy of a union of isomorphic copies", {"union", "entropy", "identity"},
         [](ScenarioContext & c) { union_of_isomorphic(c, 15); }},
        {"induced-sandwich", "chromatic entropy of an induced subgraph stays in its sandwich",
         {"entropy", "identity"}, [](ScenarioContext & c) { induced_sandwich(c, 40); }},
        {"type-splitting", "integral types split exactly", {"typicality", "identity"},
         [](ScenarioContext & c) { type_splitting(c, 40); }},
        {"union-capacity", "one-shot alpha additivity and the perfect-union capacity formula",
         {"union", "capacity", "perfect"}, [](ScenarioContext & c) { union_capacity(c, 15); }},
        {"eta-families", "eta of perfect families is the weighted Korner sum; pentagon mixture stays inside",
         {"union", "entropy", "perfect", "linearization"}, [](ScenarioContext & c) { eta_families(c, 6); }},
        {"subfamily-closure", "linearizing families have linearizing subfamilies",
         {"union", "perfect", "linearization"}, [](ScenarioContext & c) { subfamily_closure(c, 3); }},
        {"witsenhausen-rate", "H0 examples and Hbar <= H0", {"entropy", "rate"}, witsenhausen_rate},
        {"typical-estimate", "typical-set alpha estimate is uncertified and below C0", {"typicality", "capacity"},
         typical_estimate},
        {"bound-soundness", "ordered, nested, reflected bound intervals over the corpus", {"bounds", "soundness"},
         [](ScenarioContext & c) { bound_soundness(c, 8); }},
        {"codec-side-information", "side-information code on the pentagon typewriter", {"codec", "entropy"},
         [](ScenarioContext & c) { codec_side_information(c, 20000); }},
        {"codec-partial-side-information", "partial side information on a complete and an empty part",
         {"codec", "entropy", "union"}, [](ScenarioContext & c) { codec_partial_side_information(c, 20000); }},
        {"codec-channel", "five-word pentagon channel code", {"codec", "capacity"},
         [](ScenarioContext & c) { codec_channel(c, 20000); }},
        {"codec-sum-channel", "time sharing across channels with disjoint outputs", {"codec", "union", "capacity"},
         [](ScenarioContext & c) { codec_sum_channel(c, 5000); }},
        {"shifted-codebook", "cyclic first-component shifts keep codebooks zero-error", {"codec", "product"},
         shifted_codebooks},
    };
    return registry;
}

ScenarioReport run_scenario(const Scenario & s, const VerifierConfig & config)
{
    ScenarioReport r;
    r.id = s.id;
    r.description = s.description;
    r.tags = s.tags;
    ScenarioContext ctx(config, derive_seed(config.seed, fnv1a(s.id)));
    bool starved = false;
    try {
        s.run(ctx);
    } catch (const BudgetError & e) {
        r.error = e.what();
        starved = true;
    } catch (const std::exception & e) {
        r.error = e.what();
    }
    starved = starved || ctx.budget_hit();
    r.checks = std::move(ctx.checks);
    r.notes = std::move(ctx.notes);

    bool failed = false;
    for (auto & c : r.checks)
        if (c.status == Status::fail) {
            if (starved)
                c.status = Status::undecided;
            else
                failed = true;
        }
    if (!r.error.empty() && !starved)
        failed = true;
    bool undecided = starved && (!r.error.empty() || std::any_of(r.checks.begin(), r.checks.end(), [](const auto & c) {
                                     return c.status == Status::undecided;
                                 }));
    r.status = failed ? Status::fail : undecided ? Status::undecided : Status::pass;
    if (starved)
        r.notes.push_back("solver budget exhausted during this scenario");
    return r;
}

SuiteReport full_suite(const VerifierConfig & config)
{
    std::vector<const Scenario *> chosen;
    for (const auto & s : scenario_registry())
        if (selected(s, config))
            chosen.push_back(&s);
    SuiteReport out;
    out.seed = config.seed;
    out.scenarios.resize(chosen.size());
    parallel_for(chosen.size(), config.threads,
                 [&](std::size_t i) { out.scenarios[i] = run_scenario(*chosen[i], config); });
    for (const auto & r : out.scenarios) {
        switch (r.status) {
        case Status::pass: ++out.passed; break;
        case Status::fail: ++out.failed; break;
        default: ++out.undecided; break;
        }
    }
    return out;
}

Json to_json(const SuiteReport & r)
{
    Json j;
    j["version"] = suite_report_version;
    j["seed"] = r.seed;
    Json list = Json::array();
    for (const auto & s : r.scenarios) {
        Json e;
        e["id"] = s.id;
        e["description"] = s.description;
        e["tags"] = s.tags;
        e["status"] = to_string(s.status);
        Json cs = Json::array();
        for (const auto & c : s.checks) {
            Json cj;
            cj["claim"] = c.claim;
            cj["relation"] = c.relation;
            cj["measured"] = round9(c.measured);
            cj["expected"] = round9(c.expected);
            cj["tolerance"] = round9(c.tolerance);
            cj["status"] = to_string(c.status);
            cs.push_back(std::move(cj));
        }
        e["checks"] = std::move(cs);
        e["notes"] = s.notes;
        if (!s.error.empty())
            e["error"] = s.error;
        list.push_back(std::move(e));
    }
    j["scenarios"] = std::move(list);
    j["summary"] = {{"passed", r.passed}, {"failed", r.failed}, {"undecided", r.undecided}};
    return j;
}

namespace {

std::string csv_field(const std::string & s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string to_csv(const SuiteReport & r)
{
    std::ostringstream os;
    os << "# zeroerr verify csv v" << suite_report_version << "\n";
    os << "scenario,claim,relation,measured,expected,tolerance,status\n";
    for (const auto & s : r.scenarios) {
        if (s.checks.empty())
            os << csv_field(s.id) << "," << csv_field(s.error) << ",,,,," << to_string(s.status) << "\n";
        for (const auto & c : s.checks)
            os << csv_field(s.id) << "," << csv_field(c.claim) << "," << c.relation << "," << format9(c.measured)
               << "," << format9(c.expected) << "," << format9(c.tolerance) << "," << to_string(c.status) << "\n";
    }
    return os.str();
}

} // namespace zeroerr
