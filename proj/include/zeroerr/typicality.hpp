#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "zeroerr/graph.hpp"

namespace zeroerr {

struct SequenceType {
    std::vector<std::int64_t> counts;
    std::size_t n = 0;

    std::vector<double> distribution() const;
};

/// Throws on n = 0 or a symbol outside [0, alphabet).
SequenceType type_of(std::span<const int> seq, std::size_t alphabet);

/// max_a |T(a) - P(a)|.
double type_distance(const SequenceType & t, const Distribution & p);

/// Infinity-norm typicality, compared as |count - n P(a)| <= n eps + 1e-9 so
/// that boundary types are not lost to rounding.
bool is_typical(const SequenceType & t, const Distribution & p, double eps);

/// Sequences of length n whose type is within eps of P in infinity norm.
class TypicalSet {
public:
    static constexpr std::uint64_t eager_limit = std::uint64_t{1} << 24;

    TypicalSet(Distribution base, std::size_t n, double eps);

    const Distribution & base() const noexcept { return base_; }
    std::size_t length() const noexcept { return n_; }
    double eps() const noexcept { return eps_; }

    bool contains(std::span<const int> seq) const;
    /// Number of members, summed over typical types.
    double size() const;
    /// P^n of the set, summed over typical types.
    double probability() const;
    /// Typical types as count vectors, in lexicographic order.
    std::vector<std::vector<std::int64_t>> types() const;

    /// Visits members in lexicographic order; stop by returning false.
    void for_each(const std::function<bool(const std::vector<int> &)> & visit) const;
    /// Eager enumeration; throws BudgetError beyond `limit` members.
    std::vector<std::vector<int>> enumerate(std::uint64_t limit = eager_limit) const;

private:
    Distribution base_;
    std::size_t n_;
    double eps_;
    std::vector<std::int64_t> lo_, hi_; // admissible count range per symbol
};

/// Lexicographic index sum_t x_t |X|^{n-1-t}: the vertex of the sequence in
/// and_power.
std::uint64_t sequence_index(std::span<const int> seq, std::size_t alphabet);
std::vector<int> sequence_from_index(std::uint64_t index, std::size_t alphabet, std::size_t n);

struct TypicalSubgraph {
    /// Power graph induced on the members, distribution renormalized.
    ProbabilisticGraph pg;
    std::vector<std::vector<int>> sequences;
    /// Mass P^n of the typical set before renormalization.
    double mass = 0.0;
};

/// Throws Error on an empty typical set and BudgetError past the vertex
/// budget of the full power.
TypicalSubgraph typical_induced_subgraph(const ProbabilisticGraph & pg, std::size_t n, double eps,
                                         const ProductOptions & opts = {});

struct TypeSplit {
    /// mask[t] = 1 when position t goes to the first subsequence.
    std::vector<std::uint8_t> mask;
    std::vector<int> sub1;
    std::vector<int> sub2;
    bool exact = true;
};

/// Splits seq into subsequences of types P1 and P2 with the first of length
/// beta n. Exact when every beta n P1(a) is an integer that fits inside the
/// type of seq; otherwise assigns each position independently with
/// probability beta P1(a) / T(a) and clears `exact`.
TypeSplit type_split(std::span<const int> seq, double beta, const Distribution & p1, const Distribution & p2,
                     std::uint64_t seed = 0);

} // namespace zeroerr
