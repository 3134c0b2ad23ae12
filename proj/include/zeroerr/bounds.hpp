#pragma once

#include <string>
#include <vector>

#include "zeroerr/combinat.hpp"
#include "zeroerr/graph.hpp"
#include "zeroerr/numopt.hpp"

namespace zeroerr {

/// One step of a bound derivation. `method` always names an entry of the
/// method registry; `n` is the product level used, 0 when not applicable.
struct Certificate {
    std::string method;
    int n = 0;
    std::vector<std::string> flags;
    double value = 0.0;
    std::vector<Certificate> sub;
};

/// Certified [lo, hi] in bits.
struct BoundInterval {
    std::string quantity;
    double lo = 0.0;
    double hi = 0.0;
    Certificate lo_cert;
    Certificate hi_cert;

    double width() const noexcept { return hi - lo; }
    bool contains(double v, double tol = 1e-9) const noexcept { return v >= lo - tol && v <= hi + tol; }
};

inline constexpr int method_registry_version = 1;

/// Closed list of sound derivation steps, in registry order.
const std::vector<std::string> & method_registry();
bool is_registered_method(const std::string & name);

struct BoundsOptions {
    int max_n = 2;
    SolverBudget budget{};
    ProductOptions product{};
    KornerOptions korner{};
    /// User fitting matrices tried alongside the defaults.
    std::vector<FiniteFieldMatrix> haemers_extra;
    bool use_default_haemers = true;
    /// Skip the odd-hole search and treat the graph as perfect.
    bool assume_perfect = false;
    /// Skip the automorphism search and treat the graph as vertex- and
    /// edge-transitive.
    bool assume_transitive = false;
    /// Workers for independent product levels.
    std::size_t threads = 1;
};

/// Zero-error capacity: lo from (1/n) log alpha(G^n), hi from clique covers
/// of G^n, Haemers ranks and theta. Perfect graphs collapse to log alpha(G).
BoundInterval c0_bounds(const Graph & g, const BoundsOptions & opts = {});

/// Witsenhausen rate: lo = log omega(G), hi from (1/n) log chi(G^n).
BoundInterval h0_bounds(const Graph & g, const BoundsOptions & opts = {});

/// Complementary graph entropy: hi from (1/n) H_chi(G^n, P^n) and the Korner
/// entropy, lo = H(P) - C0.hi. Perfect graphs collapse to H_kappa.
BoundInterval hbar_bounds(const ProbabilisticGraph & pg, const BoundsOptions & opts = {});

/// Relative capacity C(G, P) = H(P) - Hbar(G, P).
BoundInterval c_rel_bounds(const ProbabilisticGraph & pg, const BoundsOptions & opts = {});

/// (1/n) log alpha of the typical induced subgraph. Not a certified bound on
/// C(G, P) in either direction.
struct Estimate {
    std::string quantity;
    double value = 0.0;
    bool certified = false;
    int n = 0;
    double eps = 0.0;
    std::size_t vertices = 0;
    std::size_t alpha = 0;
    bool exact = true;
};

Estimate typical_alpha_estimate(const ProbabilisticGraph & pg, int n, double eps, const BoundsOptions & opts = {});

} // namespace zeroerr
