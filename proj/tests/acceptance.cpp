// Runs the twelve acceptance criteria at their stated sample sizes and
// tolerances. One line per criterion; exit status 1 if any line is FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zeroerr/verifier.hpp"

using namespace zeroerr;

namespace {

struct Criterion {
    int number;
    std::string name;
    double time_limit_s; // 0: none
    std::function<void(ScenarioContext &)> run;
};

void korner_solver(ScenarioContext & ctx)
{
    checks::korner_extremes(ctx, 50);
    const auto pg = ProbabilisticGraph::uniform(cycle_graph(5));
    const auto k = korner_entropy(pg);
    const auto sets = oracle::brute_maximal_independent(pg.graph);
    ctx.equal("H_kappa(C5, U) against the 1/64 grid oracle", k.value,
              oracle::grid_korner(sets, pg.dist.weights(), 64), 2e-3);
    ctx.at_least("H_kappa(C5, U) >= log(5/2)", k.value, std::log2(2.5), 1e-6);
}

void codec_guarantee(ScenarioContext & ctx)
{
    const std::size_t trials = 100'000;
    checks::codec_side_information(ctx, trials);
    checks::codec_partial_side_information(ctx, trials);
    checks::codec_channel(ctx, trials);
    checks::codec_sum_channel(ctx, trials);
}

void determinism(ScenarioContext & ctx)
{
    VerifierConfig one;
    VerifierConfig eight;
    eight.threads = 8;
    const auto a = full_suite(one);
    const auto b = full_suite(eight);
    ctx.holds("full_suite JSON is byte-identical at 1 and 8 threads", dump(to_json(a)) == dump(to_json(b)));
    ctx.equal("scenarios failing in the 1-thread run", static_cast<double>(a.failed), 0.0, 0.0);
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "pentagon capacity", 1.0, checks::pentagon_capacity},
        {2, "perfect-product linearization", 10.0, checks::perfect_cycle_product},
        {3, "odd hole in C6 x C8", 0.0, checks::imperfect_cycle_product},
        {4, "Schlafli strict supermultiplicativity", 60.0, checks::schlafli_strict},
        {5, "Korner solver", 0.0, korner_solver},
        {6, "perfect single-letter collapse", 0.0, [](ScenarioContext & c) { checks::perfect_collapse(c, 100, 10); }},
        {7, "product of marginals", 0.0, [](ScenarioContext & c) { checks::product_marginals(c, 30); }},
        {8, "sum-channel weights", 0.0, [](ScenarioContext & c) { checks::sum_channel_weights_grid(c, 100); }},
        {9, "union and type identities", 0.0,
         [](ScenarioContext & c) {
             checks::union_distributivity(c, 50);
             checks::union_of_isomorphic(c, 50);
             checks::induced_sandwich(c, 200);
             checks::type_splitting(c, 100);
         }},
        {10, "codec zero-error guarantee", 0.0, codec_guarantee},
        {11, "bound-pipeline soundness", 0.0, [](ScenarioContext & c) { checks::bound_soundness(c, 40); }},
        {12, "determinism across thread counts", 0.0, determinism},
    };

    const VerifierConfig config;
    int failed = 0;
    for (const auto & c : criteria) {
        Scenario s{"criterion-" + std::to_string(c.number), c.name, {"acceptance"}, c.run};
        const auto start = std::chrono::steady_clock::now();
        const auto r = run_scenario(s, config);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit_s <= 0.0 || secs < c.time_limit_s;
        const bool ok = r.status == Status::pass && in_time;
        failed += ok ? 0 : 1;
        std::printf("criterion %2d %-40s %s  (%zu checks, %.2f s", c.number, c.name.c_str(), ok ? "PASS" : "FAIL",
                    r.checks.size(), secs);
        if (c.time_limit_s > 0.0)
            std::printf(", limit %.0f s", c.time_limit_s);
        std::printf(")\n");
        for (const auto & k : r.checks)
            if (k.status != Status::pass)
                std::printf("    %s: %s measured %s, expected %s, tol %s\n", to_string(k.status), k.claim.c_str(),
                            format9(k.measured).c_str(), format9(k.expected).c_str(), format9(k.tolerance).c_str());
        if (!r.error.empty())
            std::printf("    error: %s\n", r.error.c_str());
        if (r.status == Status::undecided)
            std::printf("    undecided: a solver budget ran out\n");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
