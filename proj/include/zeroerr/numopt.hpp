#pragma once

#include <functional>
#include <vector>

#include "zeroerr/graph.hpp"

namespace zeroerr {

struct KornerOptions {
    /// Stop once the certified duality gap is below tol bits.
    double tol = 1e-9;
    std::size_t max_iterations = 100'000;
    std::size_t mis_limit = 1'000'000;
    /// Record the objective after every iteration.
    bool trace = false;
    /// Initial marginal over the maximal independent sets (optional).
    std::vector<double> warm_start;
};

/// Minimizer of I(W;X) over X in W, W ranging over maximal independent sets.
struct KornerSolution {
    /// I(W;X) at the final iterate: an upper bound on H_kappa.
    double value = 0.0;
    /// Certified lower bound on H_kappa from convex duality.
    double lower_bound = 0.0;
    std::vector<std::vector<int>> sets;
    /// Marginal r(w) over `sets`.
    std::vector<double> r;
    /// Q(.|x) as (set index, probability) over the sets holding x.
    std::vector<std::vector<std::pair<int, double>>> q;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

/// Alternating minimization on the marginal r: Q(w|x) proportional to
/// r(w)[x in w], then r = sum_x P(x) Q(.|x), with squared extrapolation.
KornerSolution korner_entropy(const ProbabilisticGraph & pg, const KornerOptions & opts = {});

/// H(P) - H_kappa(G, P), the relative capacity of a perfect graph. Throws
/// unless the graph is certified perfect or `assume_perfect` is set.
double relative_capacity_perfect(const ProbabilisticGraph & pg, bool assume_perfect = false,
                                 const KornerOptions & opts = {});

struct CapacityEvaluation {
    double value = 0.0;
    std::vector<double> supergradient;
};

using CapacityEvaluator = std::function<CapacityEvaluation(const Distribution &)>;

/// Exact relative capacity H(P) - H_kappa for perfect graphs with the
/// envelope supergradient -log P(x) - 1/ln 2 + log Z_x(r*).
CapacityEvaluator perfect_capacity_evaluator(const Graph & g, const KornerOptions & opts = {});
/// Same formula on an arbitrary graph: a lower bound on C(G, P).
CapacityEvaluator korner_lower_evaluator(const Graph & g, const KornerOptions & opts = {});

struct CapacityOptions {
    double tol = 1e-5;
    std::size_t max_iterations = 5'000;
    /// The evaluator only bounds C(G, P) from below.
    bool lower_bound_evaluator = false;
};

struct CapacityResult {
    Distribution p;
    double value = 0.0;
    /// max_x g_x - <g, P>: bounds the suboptimality for a concave objective.
    double gap = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Set for lower-bound evaluators: value is a lower bound on C0.
    bool lower_bound_only = false;
};

/// Exponentiated-gradient ascent on the simplex with backtracking.
CapacityResult capacity_achieving_distribution(std::size_t n, const CapacityEvaluator & eval,
                                               const CapacityOptions & opts = {});

/// P*(a) = 2^{c_a} / sum 2^{c_a'}, value log2 sum 2^{c_a}.
std::pair<Distribution, double> sum_channel_weights(std::span<const double> c0_values);

/// Eigenvalues of a dense symmetric matrix (row-major n*n), ascending.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

/// Lovasz theta of a regular edge- and vertex-transitive graph via
/// n(-lambda_min)/(d - lambda_min). Throws unless regular and either
/// `assume_transitive` or both transitivities are verified.
double theta_transitive(const Graph & g, bool assume_transitive = false);

struct FiniteFieldMatrix {
    int p = 2;
    std::vector<std::vector<int>> rows;
};

bool is_prime(int p);
std::size_t rank_mod_p(const FiniteFieldMatrix & m);
/// log2 rank of a fitting matrix; throws naming the first entry that does not
/// fit g (zero diagonal or nonzero off an edge).
double haemers_bound(const Graph & g, const FiniteFieldMatrix & b);
/// A + I over GF(2) and GF(3).
std::vector<FiniteFieldMatrix> default_haemers_candidates(const Graph & g);

} // namespace zeroerr
