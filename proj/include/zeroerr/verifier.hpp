#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zeroerr/bounds.hpp"
#include "zeroerr/io.hpp"
#include "zeroerr/rng.hpp"

namespace zeroerr {

inline constexpr int suite_report_version = 1;

struct VerifierConfig {
    SolverBudget budget{};
    ProductOptions product{};
    std::uint64_t seed = 20240229;
    /// Scenarios run concurrently; each scenario is single-threaded.
    std::size_t threads = 1;
    /// Run only scenarios carrying at least one of these tags (empty: all).
    std::vector<std::string> tags;
    /// Run only these scenario ids (empty: all).
    std::vector<std::string> ids;
};

enum class Status { pass, fail, undecided };
const char * to_string(Status s);

struct CheckRecord {
    std::string claim;
    /// "equal", "at-most", "at-least" or "holds".
    std::string relation;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Status status = Status::pass;
};

/// Collects checks for one scenario. A failed check becomes undecided when
/// any solver budget ran out while the scenario was running.
class ScenarioContext {
public:
    ScenarioContext(const VerifierConfig & config, std::uint64_t seed);

    const VerifierConfig & config() const noexcept { return config_; }
    SplitMix64 & rng() noexcept { return rng_; }
    BoundsOptions bounds(int max_n) const;

    void equal(std::string claim, double measured, double expected, double tol);
    void at_most(std::string claim, double measured, double limit, double tol = 1e-9);
    void at_least(std::string claim, double measured, double limit, double tol = 1e-9);
    void holds(std::string claim, bool ok);
    /// Informational line, never affects the status.
    void note(std::string text);

    bool budget_hit() const noexcept;

    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;

private:
    void add(CheckRecord r, bool ok);

    const VerifierConfig & config_;
    SplitMix64 rng_;
    std::uint64_t exhaustions_at_start_;
};

struct Scenario {
    std::string id;
    std::string description;
    std::vector<std::string> tags;
    std::function<void(ScenarioContext &)> run;
};

struct ScenarioReport {
    std::string id;
    std::string description;
    std::vector<std::string> tags;
    Status status = Status::pass;
    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;
    /// Set when the scenario threw.
    std::string error;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<ScenarioReport> scenarios;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t undecided = 0;
};

const std::vector<Scenario> & scenario_registry();

/// Never throws for scenario failures: a BudgetError makes the report
/// undecided, any other exception makes it fail with `error` set.
ScenarioReport run_scenario(const Scenario & s, const VerifierConfig & config);

/// Registry order is kept whatever the thread count.
SuiteReport full_suite(const VerifierConfig & config);

Json to_json(const SuiteReport & r);
/// One row per check: scenario, claim, measured, expected, tolerance, status.
std::string to_csv(const SuiteReport & r);

/// The checks behind the registered scenarios, with instance counts exposed
/// so the acceptance run can use larger samples than the default suite.
namespace checks {

void pentagon_capacity(ScenarioContext & ctx);
void pentagon_entropy(ScenarioContext & ctx);
void perfect_cycle_product(ScenarioContext & ctx);
void imperfect_cycle_product(ScenarioContext & ctx);
void schlafli_strict(ScenarioContext & ctx);
void korner_extremes(ScenarioContext & ctx, int count);
void perfect_collapse(ScenarioContext & ctx, int count, int max_vertices);
void product_marginals(ScenarioContext & ctx, int count);
void sum_channel_weights_grid(ScenarioContext & ctx, int count);
void union_distributivity(ScenarioContext & ctx, int count);
void union_of_isomorphic(ScenarioContext & ctx, int count);
void induced_sandwich(ScenarioContext & ctx, int count);
void type_splitting(ScenarioContext & ctx, int count);
void union_capacity(ScenarioContext & ctx, int count);
void eta_families(ScenarioContext & ctx, int count);
void subfamily_closure(ScenarioContext & ctx, int count);
void witsenhausen_rate(ScenarioContext & ctx);
void typical_estimate(ScenarioContext & ctx);
void bound_soundness(ScenarioContext & ctx, int random_count);
void codec_side_information(ScenarioContext & ctx, std::size_t trials);
void codec_partial_side_information(ScenarioContext & ctx, std::size_t trials);
void codec_channel(ScenarioContext & ctx, std::size_t trials);
void codec_sum_channel(ScenarioContext & ctx, std::size_t trials);
void shifted_codebooks(ScenarioContext & ctx);

} // namespace checks

} // namespace zeroerr
