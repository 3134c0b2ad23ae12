#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zeroerr/bitstream.hpp"
#include "zeroerr/combinat.hpp"
#include "zeroerr/graph.hpp"

namespace zeroerr {

using BigInt = boost::multiprecision::cpp_int;

struct CodecOptions {
    ProductOptions product{};
    SolverBudget budget{};
    /// Workers for simulations; results do not depend on it.
    std::size_t threads = 1;
};

/// Outcome counts of a batch of simulated transmissions.
struct SimulationReport {
    std::size_t trials = 0;
    std::size_t errors = 0;
    std::size_t ambiguities = 0;
    std::size_t escapes = 0;
    std::uint64_t bits = 0;
    /// Letters per trial, for the rate.
    std::size_t block = 0;

    double rate() const noexcept
    {
        return trials == 0 || block == 0 ? 0.0
                                         : static_cast<double>(bits) / static_cast<double>(trials * block);
    }
};

/// Variable-length zero-error code with decoder side information. A typical
/// block is sent as flag 0 plus the Huffman codeword of its colour in the
/// typical power graph; any other block as flag 1 plus its raw index.
struct SiCode {
    std::size_t n = 0;
    double eps = 0.0;
    std::size_t x_count = 0;
    std::size_t y_count = 0;
    /// Row-major x_count * y_count support indicator.
    std::vector<std::uint8_t> support;
    Distribution source;
    Graph graph;
    std::vector<std::vector<int>> typical;
    /// sequence_index of a member -> its row in `typical`.
    std::unordered_map<std::uint64_t, int> member;
    /// Colouring of the typical induced subgraph.
    Coloring coloring;
    /// The colour count equals the chromatic number.
    bool coloring_exact = false;
    std::vector<std::vector<int>> by_color;
    /// Colour distribution under P^n renormalized to the typical set.
    std::vector<double> color_weights;
    PrefixCode color_code;
    unsigned escape_length = 0;
    double typical_mass = 0.0;

    double color_entropy() const;
    /// Exact expected bits per letter.
    double expected_rate() const;
    /// (1 + P(atypical) escape + P(typical) (H(colour) + 1)) / n.
    double rate_budget() const;
};

SiCode build_si_code(const ChannelSpec & channel, const Distribution & p, std::size_t n, double eps,
                     const CodecOptions & opts = {});

void si_encode(const SiCode & code, std::span<const int> x, BitWriter & out);
/// Throws Error when the candidate set is not a singleton.
std::vector<int> si_decode(const SiCode & code, std::span<const int> y, BitReader & in);

struct SiRoundTrip {
    std::vector<int> decoded;
    std::size_t bits = 0;
    bool escaped = false;
};

SiRoundTrip si_roundtrip(const SiCode & code, std::span<const int> x, std::span<const int> y);

/// x ~ P^n, y drawn uniformly from the support row of each x_t.
SimulationReport simulate_si(const SiCode & code, std::size_t trials, std::uint64_t seed, std::size_t threads = 1);

/// The encoder sees a_t = g(y_t); positions are grouped by a and each group is
/// coded with an SiCode for the channel restricted to outputs with g(y) = a.
struct PartialSiCode {
    std::size_t n = 0;
    double eps = 0.0;
    std::size_t x_count = 0;
    std::size_t y_count = 0;
    std::size_t a_count = 0;
    std::vector<int> g_map;
    Distribution source;
    /// P(y|x), from the channel weights or uniform on the support.
    std::vector<std::vector<double>> conditional;
    std::vector<double> p_a;
    /// P_{X|A=a}; uniform placeholder when P_A(a) = 0.
    std::vector<Distribution> part_source;
    std::vector<Graph> part_graph;
    /// sub[a][m]: code for groups of length m (m = 0 unused).
    std::vector<std::vector<SiCode>> sub;
};

PartialSiCode build_partial_si_code(const ChannelSpec & channel, const Distribution & p, std::span<const int> g_map,
                                    std::size_t n, double eps, const CodecOptions & opts = {});

void partial_si_encode(const PartialSiCode & code, std::span<const int> x, std::span<const int> y, BitWriter & out);
std::vector<int> partial_si_decode(const PartialSiCode & code, std::span<const int> y, BitReader & in);

/// x ~ P^n, y ~ P(y|x) letterwise.
SimulationReport simulate_partial_si(const PartialSiCode & code, std::size_t trials, std::uint64_t seed,
                                     std::size_t threads = 1);

struct Codebook {
    std::size_t n = 0;
    std::vector<std::vector<int>> codewords;
    /// Codewords verified pairwise non-confusable.
    bool independence_checked = false;
    /// The codebook is a maximum independent set of G^n.
    bool exact = false;

    double rate() const;
};

enum class CodeTarget { exact, greedy };

Codebook build_channel_code(const ChannelSpec & channel, std::size_t n, CodeTarget target = CodeTarget::exact,
                            const CodecOptions & opts = {});

/// Pairwise check under the coordinate-wise confusability of `letters`.
bool is_zero_error_codebook(const Graph & letters, const Codebook & book);

/// Sends random codewords with support-uniform outputs and decodes by unique
/// compatibility. Refuses unchecked books unless `allow_unchecked` is set.
SimulationReport channel_roundtrip(const Codebook & book, const ChannelSpec & channel, std::size_t trials,
                                   std::uint64_t seed, std::size_t threads = 1, bool allow_unchecked = false);

/// Time sharing over channels with disjoint output alphabets. A message is
/// the lexicographic rank of the slot pattern plus mixed-radix codeword
/// indices, one digit per slot.
struct SumChannelCode {
    std::vector<ChannelSpec> channels;
    std::vector<Codebook> books;
    /// Slots per channel; a slot is one codeword of that channel's book.
    std::vector<std::size_t> composition;
    std::size_t slots = 0;
    /// Letters per block.
    std::size_t n = 0;
    std::vector<int> x_offset;
    std::vector<int> y_offset;
    BigInt patterns;
    BigInt messages;

    double rate() const;
};

SumChannelCode build_sum_channel_code(std::vector<ChannelSpec> channels, std::vector<Codebook> books,
                                      std::vector<std::size_t> composition);

/// Global input symbols (x_offset[a] + x) for message in [0, messages).
std::vector<int> sum_encode(const SumChannelCode & code, const BigInt & message);
BigInt sum_decode(const SumChannelCode & code, std::span<const int> y);

SimulationReport simulate_sum_channel(const SumChannelCode & code, std::size_t trials, std::uint64_t seed,
                                      std::size_t threads = 1);

/// Largest-remainder rounding of slots * P_A.
std::vector<std::size_t> composition_for(const Distribution & p_a, std::size_t slots);

/// Codebook over the pair alphabet X x X' (symbol x * x2_count + x').
struct ShiftedOptions {
    std::size_t x1_count = 0;
    std::size_t x2_count = 0;
    /// Target marginals; empty means the codebook's mean marginal types.
    std::vector<double> reference1;
    std::vector<double> reference2;
    /// Negative: n^{-1/4} + |Q1 x Q2 - reference|_inf.
    double eps = -1.0;
    /// Cap on |C|^n concatenations enumerated before filtering.
    std::size_t limit = std::size_t{1} << 20;
};

struct ShiftedCodebook {
    /// shifts[t]: first components rotated left by t.
    std::vector<Codebook> shifts;
    /// Typical concatenations c_0 c_1 ... c_{n-1} with c_t in shifts[t].
    Codebook book;
    double eps = 0.0;
    std::vector<double> q1;
    std::vector<double> q2;
    std::size_t candidates = 0;
    /// Nothing survived the filter; retry with a larger n.
    bool empty = false;
};

ShiftedCodebook shifted_codebook(const Codebook & book, const ShiftedOptions & opts);

} // namespace zeroerr
