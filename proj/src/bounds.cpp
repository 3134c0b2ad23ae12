#include "zeroerr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "zeroerr/parallel.hpp"
#include "zeroerr/perfect.hpp"
#include "zeroerr/symmetry.hpp"
#include "zeroerr/typicality.hpp"

namespace zeroerr {

const std::vector<std::string> & method_registry()
{
    static const std::vector<std::string> names{
        "zero",
        "trivial-log-n",
        "trivial-entropy",
        "power-alpha",
        "power-clique-cover",
        "power-chromatic",
        "power-chromatic-entropy",
        "clique-lower",
        "haemers-rank",
        "theta-transitive",
        "perfect-single-letter",
        "korner-upper",
        "korner-lower-perfect",
        "vertex-transitive-uniform",
        "marton-capacity",
        "marton-reflection",
        "product-scaling",
        "perfect-family-linearization",
    };
    return names;
}

bool is_registered_method(const std::string & name)
{
    const auto & r = method_registry();
    return std::find(r.begin(), r.end(), name) != r.end();
}

namespace {

double lg(double x) { return std::log2(x); }

Certificate cert(std::string method, int n, double value, std::vector<std::string> flags = {},
                 std::vector<Certificate> sub = {})
{
    return Certificate{std::move(method), n, std::move(flags), value, std::move(sub)};
}

// Candidates are offered in a fixed order; only a strict improvement replaces
// the current endpoint, so ties resolve to the earliest method.
void offer_lo(BoundInterval & b, Certificate c)
{
    if (c.value > b.lo) {
        b.lo = c.value;
        b.lo_cert = std::move(c);
    }
}

void offer_hi(BoundInterval & b, Certificate c)
{
    if (c.value < b.hi) {
        b.hi = c.value;
        b.hi_cert = std::move(c);
    }
}

BoundInterval start(std::string quantity, Certificate lo, Certificate hi)
{
    BoundInterval b;
    b.quantity = std::move(quantity);
    b.lo = lo.value;
    b.hi = hi.value;
    b.lo_cert = std::move(lo);
    b.hi_cert = std::move(hi);
    return b;
}

void require_nonempty(const Graph & g)
{
    if (g.size() == 0)
        throw Error("bounds need a graph with at least one vertex");
}

// Perfectness as used by the single-letter shortcuts.
std::optional<std::string> perfect_flag(const Graph & g, const BoundsOptions & opts)
{
    if (opts.assume_perfect)
        return "assumed-perfect";
    PerfectOptions po;
    po.budget = opts.budget;
    if (is_perfect(g, po).perfect == Decision::yes)
        return "verified-perfect";
    return std::nullopt;
}

std::vector<std::string> solver_flags(bool exact, const char * when_inexact)
{
    if (exact)
        return {};
    return {when_inexact};
}

// Builds G^n for n = 1..max_n in parallel and hands each level to `solve`.
template <class Result, class Solve>
std::vector<std::optional<Result>> over_levels(const Graph & g, const BoundsOptions & opts, Solve solve,
                                               std::vector<std::string> & skipped)
{
    const auto levels = static_cast<std::size_t>(std::max(1, opts.max_n));
    std::vector<std::optional<Result>> out(levels);
    std::vector<std::string> why(levels);
    parallel_for(levels, opts.threads, [&](std::size_t i) {
        try {
            const auto power = and_power(g, i + 1, opts.product);
            out[i] = solve(power, static_cast<int>(i + 1));
        } catch (const BudgetError & e) {
            why[i] = "level " + std::to_string(i + 1) + " skipped: " + e.what();
        }
    });
    for (const auto & w : why)
        if (!w.empty())
            skipped.push_back(w);
    return out;
}

void attach_skips(BoundInterval & b, const std::vector<std::string> & skipped)
{
    if (skipped.empty())
        return;
    for (auto * c : {&b.lo_cert, &b.hi_cert})
        c->flags.push_back("budget-skipped-levels");
}

} // namespace

BoundInterval c0_bounds(const Graph & g, const BoundsOptions & opts)
{
    require_nonempty(g);
    const double n_vertices = static_cast<double>(g.size());
    auto b = start("C0", cert("zero", 0, 0.0), cert("trivial-log-n", 1, lg(n_vertices)));

    if (auto pf = perfect_flag(g, opts)) {
        const auto a = alpha_exact(g, opts.budget);
        if (a.exact) {
            auto alpha_cert = cert("power-alpha", 1, lg(static_cast<double>(a.size)));
            auto c = cert("perfect-single-letter", 1, lg(static_cast<double>(a.size)), {*pf}, {alpha_cert});
            b.lo = b.hi = c.value;
            b.lo_cert = c;
            b.hi_cert = std::move(c);
            return b;
        }
    }

    struct Level {
        SetResult alpha;
        ColoringResult cover;
    };
    std::vector<std::string> skipped;
    auto levels = over_levels<Level>(
        g, opts,
        [&](const Graph & power, int) {
            return Level{alpha_exact(power, opts.budget), clique_cover_number(power, opts.budget)};
        },
        skipped);

    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!levels[i])
            continue;
        const int n = static_cast<int>(i + 1);
        const auto & lv = *levels[i];
        offer_lo(b, cert("power-alpha", n, lg(static_cast<double>(lv.alpha.size)) / n,
                         solver_flags(lv.alpha.exact, "lower-bound-only")));
        offer_hi(b, cert("power-clique-cover", n, lg(static_cast<double>(lv.cover.count)) / n,
                         solver_flags(lv.cover.exact, "upper-bound-only")));
    }

    std::vector<FiniteFieldMatrix> candidates;
    if (opts.use_default_haemers)
        candidates = default_haemers_candidates(g);
    candidates.insert(candidates.end(), opts.haemers_extra.begin(), opts.haemers_extra.end());
    for (const auto & m : candidates) {
        auto c = cert("haemers-rank", 1, haemers_bound(g, m), {"GF(" + std::to_string(m.p) + ")"});
        offer_hi(b, std::move(c));
    }

    if (g.regular_degree()) {
        try {
            const double theta = theta_transitive(g, opts.assume_transitive);
            offer_hi(b, cert("theta-transitive", 1, lg(theta),
                             opts.assume_transitive ? std::vector<std::string>{"assumed-transitive"}
                                                    : std::vector<std::string>{}));
        } catch (const Error &) {
            // transitivity not established; theta is not certified here
        }
    }

    attach_skips(b, skipped);
    return b;
}

BoundInterval h0_bounds(const Graph & g, const BoundsOptions & opts)
{
    require_nonempty(g);
    auto b = start("H0", cert("zero", 0, 0.0), cert("trivial-log-n", 1, lg(static_cast<double>(g.size()))));

    const auto w = omega_exact(g, opts.budget);
    if (auto pf = perfect_flag(g, opts); pf && w.exact) {
        auto omega_cert = cert("clique-lower", 1, lg(static_cast<double>(w.size)));
        auto c = cert("perfect-single-letter", 1, lg(static_cast<double>(w.size)), {*pf}, {omega_cert});
        b.lo = b.hi = c.value;
        b.lo_cert = c;
        b.hi_cert = std::move(c);
        return b;
    }
    // a clique K of G gives chi(G^n) >= |K|^n
    offer_lo(b, cert("clique-lower", 1, lg(static_cast<double>(w.size)), solver_flags(w.exact, "lower-bound-only")));

    std::vector<std::string> skipped;
    auto levels = over_levels<ColoringResult>(
        g, opts, [&](const Graph & power, int) { return chromatic_number_exact(power, opts.budget); }, skipped);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!levels[i])
            continue;
        const int n = static_cast<int>(i + 1);
        offer_hi(b, cert("power-chromatic", n, lg(static_cast<double>(levels[i]->count)) / n,
                         solver_flags(levels[i]->exact, "upper-bound-only")));
    }
    attach_skips(b, skipped);
    return b;
}

BoundInterval hbar_bounds(const ProbabilisticGraph & pg, const BoundsOptions & opts)
{
    require_nonempty(pg.graph);
    const double h = pg.dist.entropy();
    auto b = start("Hbar", cert("zero", 0, 0.0), cert("trivial-entropy", 1, h));

    if (auto pf = perfect_flag(pg.graph, opts)) {
        try {
            const auto k = korner_entropy(pg, opts.korner);
            std::vector<std::string> flags{*pf};
            if (!k.converged)
                flags.push_back("not-converged");
            b.lo = std::max(0.0, k.lower_bound);
            b.lo_cert = cert("korner-lower-perfect", 1, b.lo, flags);
            offer_hi(b, cert("korner-upper", 1, k.value, flags));
            return b;
        } catch (const BudgetError &) {
            // too many maximal independent sets; use the general pipeline
        }
    }

    std::vector<std::string> skipped;
    const auto levels = static_cast<std::size_t>(std::max(1, opts.max_n));
    std::vector<std::optional<EntropyColoring>> hchi(levels);
    std::vector<std::string> why(levels);
    parallel_for(levels, opts.threads, [&](std::size_t i) {
        try {
            const auto power = and_power(pg, i + 1, opts.product);
            hchi[i] = min_entropy_coloring(power, ColoringMode::exact, opts.budget);
        } catch (const BudgetError & e) {
            why[i] = "level " + std::to_string(i + 1) + " skipped: " + e.what();
        }
    });
    for (const auto & w : why)
        if (!w.empty())
            skipped.push_back(w);
    for (std::size_t i = 0; i < levels; ++i) {
        if (!hchi[i])
            continue;
        const int n = static_cast<int>(i + 1);
        offer_hi(b, cert("power-chromatic-entropy", n, hchi[i]->h_chi / n,
                         solver_flags(hchi[i]->exact, "heuristic-coloring")));
    }

    try {
        const auto k = korner_entropy(pg, opts.korner);
        offer_hi(b, cert("korner-upper", 1, k.value, solver_flags(k.converged, "not-converged")));
    } catch (const BudgetError &) {
        skipped.push_back("korner entropy skipped: too many maximal independent sets");
    }

    const auto c0 = c0_bounds(pg.graph, opts);
    offer_lo(b, cert("marton-capacity", 0, std::max(0.0, h - c0.hi), {}, {c0.hi_cert}));

    if (pg.dist.is_uniform()) {
        const bool vt = opts.assume_transitive || is_vertex_transitive(pg.graph) == Decision::yes;
        if (vt) {
            std::vector<std::string> flags;
            if (opts.assume_transitive)
                flags.push_back("assumed-transitive");
            offer_hi(b, cert("vertex-transitive-uniform", 0, std::max(0.0, h - c0.lo), flags, {c0.lo_cert}));
        }
    }
    attach_skips(b, skipped);
    return b;
}

BoundInterval c_rel_bounds(const ProbabilisticGraph & pg, const BoundsOptions & opts)
{
    const auto hb = hbar_bounds(pg, opts);
    const double h = pg.dist.entropy();
    BoundInterval b;
    b.quantity = "C";
    b.lo = std::max(0.0, h - hb.hi);
    b.hi = std::max(b.lo, h - hb.lo);
    b.lo_cert = cert("marton-reflection", 0, b.lo, {}, {hb.hi_cert});
    b.hi_cert = cert("marton-reflection", 0, b.hi, {}, {hb.lo_cert});
    return b;
}

Estimate typical_alpha_estimate(const ProbabilisticGraph & pg, int n, double eps, const BoundsOptions & opts)
{
    if (n < 1)
        throw Error("typical_alpha_estimate needs n >= 1");
    const auto sub = typical_induced_subgraph(pg, static_cast<std::size_t>(n), eps, opts.product);
    const auto a = alpha_exact(sub.pg.graph, opts.budget);
    Estimate e;
    e.quantity = "C-estimate";
    e.n = n;
    e.eps = eps;
    e.vertices = sub.pg.size();
    e.alpha = a.size;
    e.exact = a.exact;
    e.value = lg(static_cast<double>(a.size)) / n;
    return e;
}

} // namespace zeroerr
