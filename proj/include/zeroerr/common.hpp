#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zeroerr {

/// Budget exhaustions seen on the calling thread: BudgetErrors constructed
/// plus trackers that ran dry. Lets a caller tell an inconclusive run from a
/// conclusive one without threading flags through every result.
inline std::uint64_t & budget_exhaustion_count() noexcept
{
    thread_local std::uint64_t count = 0;
    return count;
}

/// Malformed input or violated precondition.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured size or work budget was exceeded before an answer existed.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string & what) : Error(what) { ++budget_exhaustion_count(); }
};

/// Three-valued outcome for searches that can run out of budget.
enum class Decision { no, yes, undecided };

inline const char * to_string(Decision d)
{
    switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    default: return "undecided";
    }
}

/// Work limits shared by the exact solvers. A zero time limit means none.
struct SolverBudget {
    std::uint64_t node_limit = 10'000'000;
    std::chrono::milliseconds time_limit{0};
};

/// Counts search nodes against a SolverBudget. The clock is consulted every
/// 4096 nodes.
class BudgetTracker {
public:
    explicit BudgetTracker(const SolverBudget & budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    /// Records one node; returns false once the budget is exhausted.
    bool tick()
    {
        if (exhausted_)
            return false;
        ++nodes_;
        if (nodes_ > budget_.node_limit
            || (budget_.time_limit.count() > 0 && (nodes_ & 4095) == 0
                && std::chrono::steady_clock::now() - start_ > budget_.time_limit)) {
            exhausted_ = true;
            ++budget_exhaustion_count();
            return false;
        }
        return true;
    }

    bool exhausted() const noexcept { return exhausted_; }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    SolverBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

/// Default cap on the number of vertices of any constructed product graph.
inline constexpr std::size_t default_vertex_budget = std::size_t{1} << 16;

} // namespace zeroerr
