#include "zeroerr/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zeroerr/parallel.hpp"
#include "zeroerr/rng.hpp"
#include "zeroerr/typicality.hpp"

namespace zeroerr {

namespace {

double entropy_of(std::span<const double> w)
{
    double h = 0.0;
    for (double v : w)
        if (v > 0.0)
            h -= v * std::log2(v);
    return h;
}

std::vector<double> cumulative(std::span<const double> w)
{
    std::vector<double> c(w.size());
    std::partial_sum(w.begin(), w.end(), c.begin());
    return c;
}

int draw(const std::vector<double> & cdf, SplitMix64 & rng)
{
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1));
}

// Splits `trials` into fixed chunks so the per-chunk sums, folded in order,
// do not depend on the worker count.
template <class Trial>
SimulationReport run_trials(std::size_t trials, std::size_t threads, std::size_t block, Trial trial)
{
    const std::size_t chunks = std::min<std::size_t>(trials, 256);
    std::vector<SimulationReport> part(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t lo = trials * c / chunks, hi = trials * (c + 1) / chunks;
        for (std::size_t i = lo; i < hi; ++i)
            trial(i, part[c]);
    });
    SimulationReport total;
    total.trials = trials;
    total.block = block;
    for (const auto & r : part) {
        total.errors += r.errors;
        total.ambiguities += r.ambiguities;
        total.escapes += r.escapes;
        total.bits += r.bits;
    }
    return total;
}

bool supported(const std::vector<std::uint8_t> & support, std::size_t y_count, int x, int y)
{
    return support[static_cast<std::size_t>(x) * y_count + static_cast<std::size_t>(y)] != 0;
}

Graph confusability(std::size_t x_count, std::size_t y_count, const std::vector<std::uint8_t> & support)
{
    Graph g(x_count);
    for (std::size_t u = 0; u < x_count; ++u)
        for (std::size_t v = u + 1; v < x_count; ++v)
            for (std::size_t y = 0; y < y_count; ++y)
                if (support[u * y_count + y] && support[v * y_count + y]) {
                    g.add_edge(static_cast<int>(u), static_cast<int>(v));
                    break;
                }
    return g;
}

// Smallest L with 2^L >= x_count^n.
unsigned escape_bits(std::size_t x_count, std::size_t n)
{
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= x_count;
        if (total > (static_cast<unsigned __int128>(1) << 63))
            throw Error("block too long: " + std::to_string(x_count) + "^" + std::to_string(n)
                        + " sequences do not fit a 64-bit escape index");
    }
    unsigned bits = 0;
    while ((static_cast<unsigned __int128>(1) << bits) < total)
        ++bits;
    return bits;
}

SiCode make_si_code(std::size_t x_count, std::size_t y_count, std::vector<std::uint8_t> support,
                    const Distribution & p, std::size_t n, double eps, const CodecOptions & opts, bool allow_empty)
{
    if (n == 0)
        throw Error("block length must be positive");
    if (p.size() != x_count)
        throw Error("source distribution has " + std::to_string(p.size()) + " entries for "
                    + std::to_string(x_count) + " inputs");
    SiCode code;
    code.n = n;
    code.eps = eps;
    code.x_count = x_count;
    code.y_count = y_count;
    code.support = std::move(support);
    code.source = p;
    code.graph = confusability(x_count, y_count, code.support);
    code.escape_length = escape_bits(x_count, n);

    TypicalSet ts(p, n, eps);
    if (ts.size() > static_cast<double>(opts.product.vertex_budget))
        throw BudgetError("product too large: typical set exceeds the vertex budget "
                          + std::to_string(opts.product.vertex_budget));
    code.typical = ts.enumerate(opts.product.vertex_budget);
    if (code.typical.empty()) {
        if (!allow_empty)
            throw Error("typical set is empty for n=" + std::to_string(n) + ", eps=" + std::to_string(eps));
        return code;
    }

    const auto m = code.typical.size();
    Graph sub(m);
    for (std::size_t u = 0; u < m; ++u) {
        code.member.emplace(sequence_index(code.typical[u], x_count), static_cast<int>(u));
        for (std::size_t v = u + 1; v < m; ++v) {
            bool confusable = true;
            for (std::size_t t = 0; t < n && confusable; ++t) {
                const int a = code.typical[u][t], b = code.typical[v][t];
                confusable = a == b || code.graph.adjacent(a, b);
            }
            if (confusable)
                sub.add_edge(static_cast<int>(u), static_cast<int>(v));
        }
    }
    if (m <= chromatic_vertex_limit) {
        auto r = chromatic_number_exact(sub, opts.budget);
        code.coloring = std::move(r.coloring);
        code.coloring_exact = r.exact;
    } else {
        code.coloring = dsatur_coloring(sub);
    }

    code.by_color.assign(static_cast<std::size_t>(code.coloring.color_count), {});
    code.color_weights.assign(static_cast<std::size_t>(code.coloring.color_count), 0.0);
    for (std::size_t u = 0; u < m; ++u) {
        double w = 1.0;
        for (int x : code.typical[u])
            w *= p[static_cast<std::size_t>(x)];
        const auto c = static_cast<std::size_t>(code.coloring.color_of[u]);
        code.by_color[c].push_back(static_cast<int>(u));
        code.color_weights[c] += w;
        code.typical_mass += w;
    }
    if (code.typical_mass > 0.0)
        for (auto & w : code.color_weights)
            w /= code.typical_mass;
    code.color_code = huffman_code(code.color_weights);
    return code;
}

void check_symbols(std::span<const int> s, std::size_t alphabet, const char * what)
{
    for (std::size_t t = 0; t < s.size(); ++t)
        if (s[t] < 0 || static_cast<std::size_t>(s[t]) >= alphabet)
            throw Error(std::string(what) + " symbol " + std::to_string(s[t]) + " at position " + std::to_string(t)
                        + " out of range");
}

double big_log2(const BigInt & v)
{
    if (v <= 0)
        throw Error("log of a non-positive integer");
    const auto msb = boost::multiprecision::msb(v);
    if (msb < 1000)
        return std::log2(v.convert_to<double>());
    const BigInt top = v >> (msb - 60);
    return std::log2(top.convert_to<double>()) + static_cast<double>(msb - 60);
}

BigInt multinomial(std::span<const std::size_t> counts)
{
    BigInt r = 1;
    std::size_t total = 0;
    for (auto c : counts)
        for (std::size_t i = 1; i <= c; ++i) {
            ++total;
            r *= total;
            r /= i;
        }
    return r;
}

BigInt random_below(const BigInt & bound, SplitMix64 & rng)
{
    const auto bits = boost::multiprecision::msb(bound) + 1;
    for (;;) {
        BigInt v = 0;
        for (std::size_t got = 0; got < bits; got += 64)
            v = (v << 64) | BigInt(rng());
        v >>= (bits + 63) / 64 * 64 - bits;
        if (v < bound)
            return v;
    }
}

// Sole codeword compatible with the outputs, or -1 / -2 for none / several.
int unique_compatible(const Codebook & book, const std::vector<std::uint8_t> & support, std::size_t y_count,
                      std::span<const int> y)
{
    int found = -1;
    for (std::size_t i = 0; i < book.codewords.size(); ++i) {
        const auto & c = book.codewords[i];
        bool ok = true;
        for (std::size_t t = 0; t < y.size() && ok; ++t)
            ok = supported(support, y_count, c[t], y[t]);
        if (!ok)
            continue;
        if (found >= 0)
            return -2;
        found = static_cast<int>(i);
    }
    return found;
}

} // namespace

double SiCode::color_entropy() const { return entropy_of(color_weights); }

double SiCode::expected_rate() const
{
    const double typical_bits = typical.empty() ? 0.0 : color_code.expected_length(color_weights);
    return (1.0 + (1.0 - typical_mass) * escape_length + typical_mass * typical_bits) / static_cast<double>(n);
}

double SiCode::rate_budget() const
{
    const double typical_bits = typical.empty() ? 0.0 : color_entropy() + 1.0;
    return (1.0 + (1.0 - typical_mass) * escape_length + typical_mass * typical_bits) / static_cast<double>(n);
}

SiCode build_si_code(const ChannelSpec & channel, const Distribution & p, std::size_t n, double eps,
                     const CodecOptions & opts)
{
    channel.validate();
    return make_si_code(static_cast<std::size_t>(channel.x_count), static_cast<std::size_t>(channel.y_count),
                        channel.support_matrix(), p, n, eps, opts, false);
}

void si_encode(const SiCode & code, std::span<const int> x, BitWriter & out)
{
    if (x.size() != code.n)
        throw Error("si_encode: block has length " + std::to_string(x.size()) + ", code expects "
                    + std::to_string(code.n));
    check_symbols(x, code.x_count, "input");
    const auto idx = sequence_index(x, code.x_count);
    const auto it = code.member.find(idx);
    if (it != code.member.end()) {
        out.put(false);
        code.color_code.encode(static_cast<std::size_t>(code.coloring.color_of[static_cast<std::size_t>(it->second)]),
                               out);
    } else {
        out.put(true);
        out.put_bits(idx, code.escape_length);
    }
}

std::vector<int> si_decode(const SiCode & code, std::span<const int> y, BitReader & in)
{
    if (y.size() != code.n)
        throw Error("si_decode: side information has length " + std::to_string(y.size()));
    check_symbols(y, code.y_count, "output");
    if (in.get()) {
        const auto idx = in.get_bits(code.escape_length);
        return sequence_from_index(idx, code.x_count, code.n);
    }
    const auto color = code.color_code.decode(in);
    int found = -1;
    for (int row : code.by_color[color]) {
        const auto & s = code.typical[static_cast<std::size_t>(row)];
        bool ok = true;
        for (std::size_t t = 0; t < code.n && ok; ++t)
            ok = supported(code.support, code.y_count, s[t], y[t]);
        if (!ok)
            continue;
        if (found >= 0)
            throw Error("si_decode: colour " + std::to_string(color) + " leaves several candidates");
        found = row;
    }
    if (found < 0)
        throw Error("si_decode: no typical sequence of colour " + std::to_string(color) + " fits the outputs");
    return code.typical[static_cast<std::size_t>(found)];
}

SiRoundTrip si_roundtrip(const SiCode & code, std::span<const int> x, std::span<const int> y)
{
    BitWriter w;
    si_encode(code, x, w);
    BitReader r(w);
    SiRoundTrip out;
    out.escaped = (w.bytes()[0] & 0x80u) != 0;
    out.decoded = si_decode(code, y, r);
    out.bits = w.size();
    return out;
}

SimulationReport simulate_si(const SiCode & code, std::size_t trials, std::uint64_t seed, std::size_t threads)
{
    const auto cdf = cumulative(code.source.weights());
    std::vector<std::vector<int>> rows(code.x_count);
    for (std::size_t x = 0; x < code.x_count; ++x)
        for (std::size_t y = 0; y < code.y_count; ++y)
            if (code.support[x * code.y_count + y])
                rows[x].push_back(static_cast<int>(y));
    return run_trials(trials, threads, code.n, [&](std::size_t i, SimulationReport & rep) {
        SplitMix64 rng(derive_seed(seed, i));
        std::vector<int> x(code.n), y(code.n);
        for (std::size_t t = 0; t < code.n; ++t) {
            x[t] = draw(cdf, rng);
            const auto & row = rows[static_cast<std::size_t>(x[t])];
            y[t] = row[rng.below(row.size())];
        }
        try {
            const auto rt = si_roundtrip(code, x, y);
            rep.bits += rt.bits;
            rep.escapes += rt.escaped ? 1 : 0;
            if (rt.decoded != x)
                ++rep.errors;
        } catch (const Error &) {
            ++rep.ambiguities;
            ++rep.errors;
        }
    });
}

PartialSiCode build_partial_si_code(const ChannelSpec & channel, const Distribution & p, std::span<const int> g_map,
                                    std::size_t n, double eps, const CodecOptions & opts)
{
    channel.validate();
    PartialSiCode code;
    code.n = n;
    code.eps = eps;
    code.x_count = static_cast<std::size_t>(channel.x_count);
    code.y_count = static_cast<std::size_t>(channel.y_count);
    if (p.size() != code.x_count)
        throw Error("source distribution does not match the channel inputs");
    if (g_map.size() != code.y_count)
        throw Error("g_map has " + std::to_string(g_map.size()) + " entries for " + std::to_string(code.y_count)
                    + " outputs");
    for (std::size_t y = 0; y < g_map.size(); ++y)
        if (g_map[y] < 0)
            throw Error("g_map entry for y=" + std::to_string(y) + " is negative");
    code.g_map.assign(g_map.begin(), g_map.end());
    code.a_count = static_cast<std::size_t>(*std::max_element(g_map.begin(), g_map.end())) + 1;
    code.source = p;

    const auto support = channel.support_matrix();
    code.conditional.assign(code.x_count, std::vector<double>(code.y_count, 0.0));
    if (!channel.weights.empty()) {
        for (const auto & w : channel.weights) {
            if (w.x < 0 || w.x >= channel.x_count || w.y < 0 || w.y >= channel.y_count)
                throw Error("channel weight (" + std::to_string(w.x) + "," + std::to_string(w.y) + ") out of range");
            if (!supported(support, code.y_count, w.x, w.y))
                throw Error("channel weight (" + std::to_string(w.x) + "," + std::to_string(w.y)
                            + ") lies outside the support");
            code.conditional[static_cast<std::size_t>(w.x)][static_cast<std::size_t>(w.y)] = w.p;
        }
    } else {
        for (std::size_t x = 0; x < code.x_count; ++x)
            for (std::size_t y = 0; y < code.y_count; ++y)
                code.conditional[x][y] = support[x * code.y_count + y];
    }
    for (std::size_t x = 0; x < code.x_count; ++x) {
        const double s = std::accumulate(code.conditional[x].begin(), code.conditional[x].end(), 0.0);
        if (!(s > 0.0))
            throw Error("channel weights for x=" + std::to_string(x) + " sum to zero");
        for (auto & v : code.conditional[x])
            v /= s;
    }

    code.p_a.assign(code.a_count, 0.0);
    std::vector<std::vector<double>> joint_a(code.a_count, std::vector<double>(code.x_count, 0.0));
    for (std::size_t x = 0; x < code.x_count; ++x)
        for (std::size_t y = 0; y < code.y_count; ++y) {
            const double j = p[x] * code.conditional[x][y];
            const auto a = static_cast<std::size_t>(g_map[y]);
            joint_a[a][x] += j;
            code.p_a[a] += j;
        }

    code.sub.resize(code.a_count);
    for (std::size_t a = 0; a < code.a_count; ++a) {
        std::vector<std::uint8_t> sa(support.size(), 0);
        for (std::size_t x = 0; x < code.x_count; ++x)
            for (std::size_t y = 0; y < code.y_count; ++y)
                sa[x * code.y_count + y] = support[x * code.y_count + y] && g_map[y] == static_cast<int>(a);
        code.part_graph.push_back(confusability(code.x_count, code.y_count, sa));
        if (code.p_a[a] > 0.0) {
            code.part_source.push_back(Distribution::normalized(joint_a[a]));
        } else {
            code.part_source.push_back(Distribution::uniform(code.x_count));
            continue;
        }
        code.sub[a].resize(n + 1);
        for (std::size_t m = 1; m <= n; ++m)
            code.sub[a][m] = make_si_code(code.x_count, code.y_count, sa, code.part_source[a], m, eps, opts, true);
    }
    return code;
}

namespace {

std::vector<std::vector<std::size_t>> group_positions(const PartialSiCode & code, std::span<const int> y)
{
    std::vector<std::vector<std::size_t>> pos(code.a_count);
    for (std::size_t t = 0; t < y.size(); ++t)
        pos[static_cast<std::size_t>(code.g_map[static_cast<std::size_t>(y[t])])].push_back(t);
    return pos;
}

} // namespace

void partial_si_encode(const PartialSiCode & code, std::span<const int> x, std::span<const int> y, BitWriter & out)
{
    if (x.size() != code.n || y.size() != code.n)
        throw Error("partial_si_encode: block length mismatch");
    check_symbols(x, code.x_count, "input");
    check_symbols(y, code.y_count, "output");
    const auto pos = group_positions(code, y);
    for (std::size_t a = 0; a < code.a_count; ++a) {
        if (pos[a].empty())
            continue;
        if (code.sub[a].empty())
            throw Error("output group " + std::to_string(a) + " has zero probability under the source");
        std::vector<int> xs;
        for (auto t : pos[a])
            xs.push_back(x[t]);
        si_encode(code.sub[a][pos[a].size()], xs, out);
    }
}

std::vector<int> partial_si_decode(const PartialSiCode & code, std::span<const int> y, BitReader & in)
{
    if (y.size() != code.n)
        throw Error("partial_si_decode: block length mismatch");
    check_symbols(y, code.y_count, "output");
    const auto pos = group_positions(code, y);
    std::vector<int> x(code.n, 0);
    for (std::size_t a = 0; a < code.a_count; ++a) {
        if (pos[a].empty())
            continue;
        if (code.sub[a].empty())
            throw Error("output group " + std::to_string(a) + " has zero probability under the source");
        std::vector<int> ys;
        for (auto t : pos[a])
            ys.push_back(y[t]);
        const auto xs = si_decode(code.sub[a][pos[a].size()], ys, in);
        for (std::size_t i = 0; i < xs.size(); ++i)
            x[pos[a][i]] = xs[i];
    }
    return x;
}

SimulationReport simulate_partial_si(const PartialSiCode & code, std::size_t trials, std::uint64_t seed,
                                     std::size_t threads)
{
    const auto cdf = cumulative(code.source.weights());
    std::vector<std::vector<double>> ycdf;
    for (const auto & row : code.conditional)
        ycdf.push_back(cumulative(row));
    return run_trials(trials, threads, code.n, [&](std::size_t i, SimulationReport & rep) {
        SplitMix64 rng(derive_seed(seed, i));
        std::vector<int> x(code.n), y(code.n);
        for (std::size_t t = 0; t < code.n; ++t) {
            x[t] = draw(cdf, rng);
            y[t] = draw(ycdf[static_cast<std::size_t>(x[t])], rng);
        }
        try {
            BitWriter w;
            partial_si_encode(code, x, y, w);
            BitReader r(w);
            const auto d = partial_si_decode(code, y, r);
            rep.bits += w.size();
            if (d != x || !r.done())
                ++rep.errors;
        } catch (const Error &) {
            ++rep.ambiguities;
            ++rep.errors;
        }
    });
}

double Codebook::rate() const
{
    if (codewords.empty() || n == 0)
        return 0.0;
    return std::log2(static_cast<double>(codewords.size())) / static_cast<double>(n);
}

bool is_zero_error_codebook(const Graph & letters, const Codebook & book)
{
    for (std::size_t i = 0; i < book.codewords.size(); ++i)
        for (std::size_t j = i + 1; j < book.codewords.size(); ++j) {
            const auto & a = book.codewords[i];
            const auto & b = book.codewords[j];
            if (a.size() != b.size())
                return false;
            bool confusable = true;
            for (std::size_t t = 0; t < a.size() && confusable; ++t)
                confusable = a[t] == b[t] || letters.adjacent(a[t], b[t]);
            if (confusable)
                return false;
        }
    return true;
}

Codebook build_channel_code(const ChannelSpec & channel, std::size_t n, CodeTarget target, const CodecOptions & opts)
{
    if (n == 0)
        throw Error("block length must be positive");
    const auto g = characteristic_graph(channel);
    const auto power = and_power(g, n, opts.product);
    Codebook book;
    book.n = n;
    std::vector<int> set;
    if (target == CodeTarget::exact) {
        auto r = alpha_exact(power, opts.budget);
        set = std::move(r.witness);
        book.exact = r.exact;
    } else {
        std::vector<int> order(power.size());
        std::iota(order.begin(), order.end(), 0);
        set = greedy_independent_set(power, order);
    }
    for (int v : set)
        book.codewords.push_back(
            sequence_from_index(static_cast<std::uint64_t>(v), static_cast<std::size_t>(channel.x_count), n));
    book.independence_checked = is_zero_error_codebook(g, book);
    if (!book.independence_checked)
        throw Error("internal: channel codebook is not independent");
    return book;
}

SimulationReport channel_roundtrip(const Codebook & book, const ChannelSpec & channel, std::size_t trials,
                                   std::uint64_t seed, std::size_t threads, bool allow_unchecked)
{
    channel.validate();
    if (!book.independence_checked && !allow_unchecked)
        throw Error("codebook has not been checked for independence");
    if (book.codewords.empty())
        throw Error("codebook is empty");
    const auto support = channel.support_matrix();
    const auto rows = channel.outputs();
    const auto y_count = static_cast<std::size_t>(channel.y_count);
    for (const auto & c : book.codewords) {
        if (c.size() != book.n)
            throw Error("codeword length differs from the block length");
        check_symbols(c, static_cast<std::size_t>(channel.x_count), "codeword");
    }
    return run_trials(trials, threads, book.n, [&](std::size_t i, SimulationReport & rep) {
        SplitMix64 rng(derive_seed(seed, i));
        const auto sent = rng.below(book.codewords.size());
        const auto & c = book.codewords[sent];
        std::vector<int> y(book.n);
        for (std::size_t t = 0; t < book.n; ++t) {
            const auto & row = rows[static_cast<std::size_t>(c[t])];
            y[t] = row[rng.below(row.size())];
        }
        const int got = unique_compatible(book, support, y_count, y);
        if (got == -2) {
            ++rep.ambiguities;
            ++rep.errors;
        } else if (got != static_cast<int>(sent)) {
            ++rep.errors;
        }
    });
}

double SumChannelCode::rate() const { return n == 0 ? 0.0 : big_log2(messages) / static_cast<double>(n); }

SumChannelCode build_sum_channel_code(std::vector<ChannelSpec> channels, std::vector<Codebook> books,
                                      std::vector<std::size_t> composition)
{
    if (channels.empty())
        throw Error("sum channel needs at least one channel");
    if (books.size() != channels.size() || composition.size() != channels.size())
        throw Error("sum channel needs one codebook and one composition entry per channel");
    SumChannelCode code;
    int xo = 0, yo = 0;
    for (std::size_t a = 0; a < channels.size(); ++a) {
        channels[a].validate();
        const auto & b = books[a];
        if (!b.independence_checked)
            throw Error("codebook " + std::to_string(a) + " has not been checked for independence");
        if (b.codewords.empty() || b.n == 0)
            throw Error("codebook " + std::to_string(a) + " is empty");
        for (const auto & c : b.codewords) {
            if (c.size() != b.n)
                throw Error("codebook " + std::to_string(a) + " has a codeword of the wrong length");
            check_symbols(c, static_cast<std::size_t>(channels[a].x_count), "codeword");
        }
        code.x_offset.push_back(xo);
        code.y_offset.push_back(yo);
        xo += channels[a].x_count;
        yo += channels[a].y_count;
        code.slots += composition[a];
        code.n += composition[a] * b.n;
    }
    if (code.slots == 0)
        throw Error("sum channel composition is all zero");
    code.patterns = multinomial(composition);
    code.messages = code.patterns;
    for (std::size_t a = 0; a < channels.size(); ++a)
        for (std::size_t i = 0; i < composition[a]; ++i)
            code.messages *= books[a].codewords.size();
    code.channels = std::move(channels);
    code.books = std::move(books);
    code.composition = std::move(composition);
    return code;
}

std::vector<int> sum_encode(const SumChannelCode & code, const BigInt & message)
{
    if (message < 0 || message >= code.messages)
        throw Error("message out of range");
    BigInt rank = message % code.patterns;
    BigInt rest = message / code.patterns;

    auto left = code.composition;
    std::vector<std::size_t> pattern;
    for (std::size_t j = 0; j < code.slots; ++j) {
        for (std::size_t c = 0; c < left.size(); ++c) {
            if (left[c] == 0)
                continue;
            --left[c];
            const auto here = multinomial(left);
            if (rank < here) {
                pattern.push_back(c);
                break;
            }
            rank -= here;
            ++left[c];
        }
    }

    std::vector<int> x;
    x.reserve(code.n);
    for (auto a : pattern) {
        const auto & book = code.books[a];
        const BigInt size = book.codewords.size();
        const auto digit = static_cast<std::size_t>(rest % size);
        rest /= size;
        for (int s : book.codewords[digit])
            x.push_back(code.x_offset[a] + s);
    }
    return x;
}

BigInt sum_decode(const SumChannelCode & code, std::span<const int> y)
{
    if (y.size() != code.n)
        throw Error("sum_decode: block length mismatch");
    const int y_total = code.y_offset.back() + code.channels.back().y_count;
    std::vector<std::size_t> pattern, digits;
    std::size_t pos = 0;
    while (pos < y.size()) {
        if (y[pos] < 0 || y[pos] >= y_total)
            throw Error("sum_decode: output symbol out of range");
        const auto a = static_cast<std::size_t>(std::upper_bound(code.y_offset.begin(), code.y_offset.end(), y[pos])
                                                - code.y_offset.begin() - 1);
        const auto & book = code.books[a];
        if (pos + book.n > y.size())
            throw Error("sum_decode: truncated slot");
        std::vector<int> local(book.n);
        for (std::size_t t = 0; t < book.n; ++t) {
            local[t] = y[pos + t] - code.y_offset[a];
            if (local[t] < 0 || local[t] >= code.channels[a].y_count)
                throw Error("sum_decode: slot mixes output alphabets");
        }
        const int got = unique_compatible(book, code.channels[a].support_matrix(),
                                          static_cast<std::size_t>(code.channels[a].y_count), local);
        if (got < 0)
            throw Error("sum_decode: no unique codeword fits slot " + std::to_string(pattern.size()));
        pattern.push_back(a);
        digits.push_back(static_cast<std::size_t>(got));
        pos += book.n;
    }

    auto left = code.composition;
    BigInt rank = 0;
    for (auto chosen : pattern) {
        if (left[chosen] == 0)
            throw Error("sum_decode: slot pattern does not match the composition");
        for (std::size_t c = 0; c < chosen; ++c) {
            if (left[c] == 0)
                continue;
            --left[c];
            rank += multinomial(left);
            ++left[c];
        }
        --left[chosen];
    }
    BigInt rest = 0;
    for (std::size_t j = pattern.size(); j-- > 0;)
        rest = rest * code.books[pattern[j]].codewords.size() + digits[j];
    return rank + code.patterns * rest;
}

SimulationReport simulate_sum_channel(const SumChannelCode & code, std::size_t trials, std::uint64_t seed,
                                      std::size_t threads)
{
    std::vector<std::vector<std::vector<int>>> rows;
    for (const auto & c : code.channels)
        rows.push_back(c.outputs());
    return run_trials(trials, threads, code.n, [&](std::size_t i, SimulationReport & rep) {
        SplitMix64 rng(derive_seed(seed, i));
        const auto message = random_below(code.messages, rng);
        try {
            const auto x = sum_encode(code, message);
            std::vector<int> y(x.size());
            for (std::size_t t = 0; t < x.size(); ++t) {
                const auto a = static_cast<std::size_t>(
                    std::upper_bound(code.x_offset.begin(), code.x_offset.end(), x[t]) - code.x_offset.begin() - 1);
                const auto & row = rows[a][static_cast<std::size_t>(x[t] - code.x_offset[a])];
                y[t] = code.y_offset[a] + row[rng.below(row.size())];
            }
            if (sum_decode(code, y) != message)
                ++rep.errors;
        } catch (const Error &) {
            ++rep.ambiguities;
            ++rep.errors;
        }
    });
}

std::vector<std::size_t> composition_for(const Distribution & p_a, std::size_t slots)
{
    std::vector<std::size_t> c(p_a.size());
    std::vector<std::pair<double, std::size_t>> frac;
    std::size_t used = 0;
    for (std::size_t a = 0; a < p_a.size(); ++a) {
        const double exact = p_a[a] * static_cast<double>(slots);
        c[a] = static_cast<std::size_t>(std::floor(exact + 1e-9));
        used += c[a];
        frac.emplace_back(-(exact - static_cast<double>(c[a])), a);
    }
    std::sort(frac.begin(), frac.end());
    for (std::size_t i = 0; used < slots && i < frac.size(); ++i, ++used)
        ++c[frac[i].second];
    return c;
}

ShiftedCodebook shifted_codebook(const Codebook & book, const ShiftedOptions & opts)
{
    const auto n = book.n;
    const auto k1 = opts.x1_count, k2 = opts.x2_count;
    if (n == 0 || book.codewords.empty())
        throw Error("shifted_codebook needs a non-empty codebook");
    if (k1 == 0 || k2 == 0)
        throw Error("shifted_codebook needs both factor alphabet sizes");
    if (!book.independence_checked)
        throw Error("codebook has not been checked for independence");
    for (const auto & c : book.codewords) {
        if (c.size() != n)
            throw Error("codeword length differs from the block length");
        check_symbols(c, k1 * k2, "codeword");
    }

    ShiftedCodebook out;
    out.q1.assign(k1, 0.0);
    out.q2.assign(k2, 0.0);
    const double unit = 1.0 / static_cast<double>(n * book.codewords.size());
    for (const auto & c : book.codewords)
        for (int s : c) {
            out.q1[static_cast<std::size_t>(s) / k2] += unit;
            out.q2[static_cast<std::size_t>(s) % k2] += unit;
        }
    const auto ref1 = opts.reference1.empty() ? out.q1 : opts.reference1;
    const auto ref2 = opts.reference2.empty() ? out.q2 : opts.reference2;
    if (ref1.size() != k1 || ref2.size() != k2)
        throw Error("reference marginals do not match the factor alphabets");

    std::vector<double> target(k1 * k2);
    double drift = 0.0;
    for (std::size_t a = 0; a < k1; ++a)
        for (std::size_t b = 0; b < k2; ++b) {
            target[a * k2 + b] = ref1[a] * ref2[b];
            drift = std::max(drift, std::abs(out.q1[a] * out.q2[b] - target[a * k2 + b]));
        }
    out.eps = opts.eps >= 0.0 ? opts.eps : drift + std::pow(static_cast<double>(n), -0.25);

    for (std::size_t t = 0; t < n; ++t) {
        Codebook s;
        s.n = n;
        s.independence_checked = book.independence_checked;
        for (const auto & c : book.codewords) {
            std::vector<int> w(n);
            for (std::size_t i = 0; i < n; ++i) {
                const auto first = static_cast<std::size_t>(c[(i + t) % n]) / k2;
                const auto second = static_cast<std::size_t>(c[i]) % k2;
                w[i] = static_cast<int>(first * k2 + second);
            }
            s.codewords.push_back(std::move(w));
        }
        out.shifts.push_back(std::move(s));
    }

    double combos = 1.0;
    for (std::size_t t = 0; t < n; ++t)
        combos *= static_cast<double>(book.codewords.size());
    if (combos > static_cast<double>(opts.limit))
        throw BudgetError("shifted codebook: " + std::to_string(book.codewords.size()) + "^" + std::to_string(n)
                          + " concatenations exceed the limit " + std::to_string(opts.limit));
    out.candidates = static_cast<std::size_t>(combos);

    const auto ref = Distribution::normalized(target);
    out.book.n = n * n;
    out.book.independence_checked = book.independence_checked;
    std::vector<std::size_t> digit(n, 0);
    const auto size = book.codewords.size();
    for (std::size_t c = 0; c < out.candidates; ++c) {
        std::vector<int> word;
        word.reserve(n * n);
        for (std::size_t t = 0; t < n; ++t) {
            const auto & part = out.shifts[t].codewords[digit[t]];
            word.insert(word.end(), part.begin(), part.end());
        }
        if (is_typical(type_of(word, k1 * k2), ref, out.eps))
            out.book.codewords.push_back(std::move(word));
        for (std::size_t t = n; t-- > 0;) {
            if (++digit[t] < size)
                break;
            digit[t] = 0;
        }
    }
    out.empty = out.book.codewords.empty();
    return out;
}

} // namespace zeroerr
