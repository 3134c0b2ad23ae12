#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "zeroerr/codec.hpp"
#include "zeroerr/typicality.hpp"

using namespace zeroerr;

namespace {

double entropy(const std::vector<double> & w)
{
    double h = 0.0;
    for (double v : w)
        if (v > 0.0)
            h -= v * std::log2(v);
    return h;
}

// Minimum expected length over all length vectors (1..max_len) meeting Kraft.
double best_prefix_length(const std::vector<double> & w, int max_len)
{
    const auto k = w.size();
    std::vector<int> len(k, 1);
    double best = 1e300;
    for (;;) {
        double kraft = 0.0, e = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            kraft += std::ldexp(1.0, -len[i]);
            e += w[i] * len[i];
        }
        if (kraft <= 1.0 + 1e-12)
            best = std::min(best, e);
        std::size_t i = 0;
        while (i < k && ++len[i] > max_len)
            len[i++] = 1;
        if (i == k)
            return best;
    }
}

ChannelSpec pair_channel()
{
    // outputs of x are {0, 1 + x}: y = 0 confuses both inputs, y > 0 names x
    ChannelSpec c;
    c.x_count = 2;
    c.y_count = 3;
    c.support = {{0, 0}, {0, 1}, {1, 0}, {1, 2}};
    return c;
}

} // namespace

TEST_CASE("bit stream round trip")
{
    BitWriter w;
    w.put(true);
    w.put_bits(0b1011, 4);
    w.put_string("0110");
    w.put_bits(0xdeadbeefULL, 32);
    CHECK(w.size() == 41);
    BitReader r(w);
    CHECK(r.get());
    CHECK(r.get_bits(4) == 0b1011);
    CHECK(r.get_bits(4) == 0b0110);
    CHECK(r.get_bits(32) == 0xdeadbeefULL);
    CHECK(r.done());
    CHECK_THROWS_AS(r.get(), Error);
}

TEST_CASE("huffman codes are optimal prefix codes")
{
    SplitMix64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto k = 2 + rng.below(4);
        const auto w = oracle::random_dist(rng, k);
        const auto code = huffman_code(w);
        CHECK(is_prefix_free(code.codewords()));
        CHECK(code.kraft_sum() == doctest::Approx(1.0));
        const double e = code.expected_length(w);
        CHECK(e == doctest::Approx(best_prefix_length(w, static_cast<int>(k))));
        CHECK(e >= entropy(w) - 1e-12);
        CHECK(e < entropy(w) + 1.0);
    }
    const std::vector<double> one{1.0};
    CHECK(huffman_code(one).codewords() == std::vector<std::string>{"0"});
}

TEST_CASE("concatenated prefix codewords parse back")
{
    const std::vector<double> w{0.4, 0.3, 0.2, 0.1};
    const auto code = huffman_code(w);
    SplitMix64 rng(3);
    std::vector<std::size_t> msg(200);
    BitWriter out;
    for (auto & s : msg) {
        s = rng.below(4);
        code.encode(s, out);
    }
    BitReader in(out);
    for (auto s : msg)
        CHECK(code.decode(in) == s);
    CHECK(in.done());
}

TEST_CASE("side-information code on a complete graph is a Huffman code of the source")
{
    const auto p = Distribution({0.5, 0.25, 0.125, 0.125});
    const auto code = build_si_code(ChannelSpec::full(4, 1), p, 1, 1.0);
    CHECK(code.typical.size() == 4);
    CHECK(code.coloring.color_count == 4);
    CHECK(code.typical_mass == doctest::Approx(1.0));
    const double h = p.entropy();
    const double len = code.color_code.expected_length(code.color_weights);
    CHECK(len >= h - 1e-12);
    CHECK(len < h + 1.0);
    CHECK(code.expected_rate() == doctest::Approx(1.0 + len));
    for (int x = 0; x < 4; ++x) {
        const std::vector<int> xs{x}, ys{0};
        CHECK(si_roundtrip(code, xs, ys).decoded == xs);
    }
}

TEST_CASE("identity channel needs a single colour")
{
    const auto code = build_si_code(ChannelSpec::identity(3), Distribution::uniform(3), 3, 0.5);
    CHECK(code.coloring.color_count == 1);
    const auto rep = simulate_si(code, 500, 1);
    CHECK(rep.errors == 0);
}

TEST_CASE("typewriter code decodes every compatible pair")
{
    const auto ch = ChannelSpec::typewriter(5);
    const auto code = build_si_code(ch, Distribution::uniform(5), 2, 0.3);
    const auto rows = ch.outputs();
    std::size_t pairs = 0;
    for (const auto & x : code.typical)
        for (int y0 : rows[static_cast<std::size_t>(x[0])])
            for (int y1 : rows[static_cast<std::size_t>(x[1])]) {
                const std::vector<int> y{y0, y1};
                CHECK(si_roundtrip(code, x, y).decoded == x);
                ++pairs;
            }
    CHECK(pairs == code.typical.size() * 4);
    CHECK(code.expected_rate() <= code.rate_budget() + 1e-12);

    const auto rep = simulate_si(code, 3000, 7);
    CHECK(rep.errors == 0);
    CHECK(rep.rate() <= code.rate_budget() + 0.05);
}

TEST_CASE("atypical blocks take the escape path")
{
    const auto p = Distribution({0.5, 0.5});
    const auto code = build_si_code(ChannelSpec::full(2, 1), p, 4, 0.0);
    const std::vector<int> x{1, 1, 1, 1}, y{0, 0, 0, 0};
    const auto rt = si_roundtrip(code, x, y);
    CHECK(rt.escaped);
    CHECK(rt.decoded == x);
    CHECK(rt.bits == 1 + code.escape_length);
    CHECK(code.escape_length == 4);
    const std::vector<int> typical{0, 1, 1, 0};
    CHECK_FALSE(si_roundtrip(code, typical, y).escaped);
}

TEST_CASE("simulation does not depend on the worker count")
{
    const auto code = build_si_code(ChannelSpec::typewriter(5), Distribution({0.3, 0.2, 0.2, 0.2, 0.1}), 2, 0.35);
    const auto a = simulate_si(code, 1500, 99, 1);
    const auto b = simulate_si(code, 1500, 99, 4);
    CHECK(a.bits == b.bits);
    CHECK(a.escapes == b.escapes);
    CHECK(a.errors == b.errors);
}

TEST_CASE("partial side information with one group matches the full code")
{
    const auto ch = ChannelSpec::typewriter(5);
    const auto p = Distribution::uniform(5);
    const std::vector<int> g(5, 0);
    const auto partial = build_partial_si_code(ch, p, g, 2, 0.3);
    const auto full = build_si_code(ch, p, 2, 0.3);
    CHECK(partial.a_count == 1);
    CHECK(partial.p_a[0] == doctest::Approx(1.0));
    CHECK(partial.sub[0][2].expected_rate() == doctest::Approx(full.expected_rate()));
    CHECK(simulate_partial_si(partial, 1000, 5).errors == 0);
}

TEST_CASE("partial side information on a complete and an empty part")
{
    const auto ch = pair_channel();
    const std::vector<int> g{0, 1, 1};
    const std::size_t n = 6;
    const auto code = build_partial_si_code(ch, Distribution::uniform(2), g, n, 1.0);
    CHECK(code.p_a[0] == doctest::Approx(0.5));
    CHECK(code.p_a[1] == doctest::Approx(0.5));
    CHECK(code.part_graph[0].adjacent(0, 1));
    CHECK_FALSE(code.part_graph[1].adjacent(0, 1));
    const auto rep = simulate_partial_si(code, 4000, 17, 2);
    CHECK(rep.errors == 0);
    // hbar is 1 bit on the complete part and 0 on the empty part
    const double bound = 0.5 * 1.0 + 0.5 * 0.0 + 2.0 * 2 / n + 1.0 / n;
    CHECK(rep.rate() <= bound);
}

TEST_CASE("partial side information validates the output grouping")
{
    const std::vector<int> short_g{0, 1};
    CHECK_THROWS_AS(build_partial_si_code(pair_channel(), Distribution::uniform(2), short_g, 2, 0.5), Error);
    const std::vector<int> negative{0, -1, 1};
    CHECK_THROWS_AS(build_partial_si_code(pair_channel(), Distribution::uniform(2), negative, 2, 0.5), Error);
}

TEST_CASE("channel codes from independent sets")
{
    const auto c5 = build_channel_code(ChannelSpec::typewriter(5), 2);
    CHECK(c5.codewords.size() == 5);
    CHECK(c5.exact);
    CHECK(c5.rate() == doctest::Approx(0.5 * std::log2(5.0)));
    CHECK(channel_roundtrip(c5, ChannelSpec::typewriter(5), 2000, 3).errors == 0);

    CHECK(build_channel_code(ChannelSpec::full(4, 2), 2).codewords.size() == 1);
    CHECK(build_channel_code(ChannelSpec::identity(3), 1).codewords.size() == 3);
    CHECK(build_channel_code(ChannelSpec::identity(3), 2).codewords.size() == 9);

    const auto greedy = build_channel_code(ChannelSpec::typewriter(5), 2, CodeTarget::greedy);
    CHECK(greedy.independence_checked);
    CHECK(greedy.codewords.size() <= 5);
}

TEST_CASE("a confusable codebook is refused or reported ambiguous")
{
    const auto ch = ChannelSpec::typewriter(5);
    auto book = build_channel_code(ch, 1);
    CHECK(book.codewords.size() == 2);
    book.codewords.push_back({(book.codewords[0][0] + 1) % 5});
    const auto g = characteristic_graph(ch);
    CHECK_FALSE(is_zero_error_codebook(g, book));
    book.independence_checked = false;
    CHECK_THROWS_AS(channel_roundtrip(book, ch, 10, 1), Error);
    const auto rep = channel_roundtrip(book, ch, 500, 1, 1, true);
    CHECK(rep.ambiguities > 0);
}

TEST_CASE("sum channel over one-letter channels counts slot patterns")
{
    const auto one = ChannelSpec::identity(1);
    const auto book = build_channel_code(one, 1);
    const auto code = build_sum_channel_code({one, one}, {book, book}, {2, 2});
    CHECK(code.messages == 6);
    CHECK(code.n == 4);
    CHECK(code.rate() == doctest::Approx(std::log2(6.0) / 4));
    std::set<std::vector<int>> seen;
    for (int m = 0; m < 6; ++m) {
        const auto x = sum_encode(code, m);
        seen.insert(x);
        CHECK(sum_decode(code, x) == m);
    }
    CHECK(seen.size() == 6);
    CHECK_THROWS_AS(sum_encode(code, 6), Error);
}

TEST_CASE("sum channel message count matches a direct enumeration")
{
    const auto a = ChannelSpec::identity(2), b = ChannelSpec::identity(3);
    const auto code =
        build_sum_channel_code({a, b}, {build_channel_code(a, 1), build_channel_code(b, 1)}, {2, 2});
    // length-4 words over 5 letters with exactly two from the first channel
    int direct = 0;
    for (int w = 0; w < 625; ++w) {
        int first = 0;
        for (int r = w, t = 0; t < 4; ++t, r /= 5)
            first += r % 5 < 2 ? 1 : 0;
        direct += first == 2 ? 1 : 0;
    }
    CHECK(code.messages == direct);
    std::set<std::vector<int>> seen;
    for (int m = 0; m < direct; ++m) {
        const auto x = sum_encode(code, m);
        seen.insert(x);
        CHECK(sum_decode(code, x) == m);
    }
    CHECK(static_cast<int>(seen.size()) == direct);

    // summed over compositions the count is the full 10^10 for sizes 3 and 7
    const auto c3 = ChannelSpec::identity(3), c7 = ChannelSpec::identity(7);
    const std::vector<Codebook> books{build_channel_code(c3, 1), build_channel_code(c7, 1)};
    BigInt total = 0;
    for (std::size_t k = 0; k <= 10; ++k)
        total += build_sum_channel_code({c3, c7}, books, {k, 10 - k}).messages;
    CHECK(total == BigInt(10'000'000'000LL));
}

TEST_CASE("sum channel over noisy channels")
{
    const auto t5 = ChannelSpec::typewriter(5);
    const auto id2 = ChannelSpec::identity(2);
    const auto code = build_sum_channel_code({t5, id2}, {build_channel_code(t5, 2), build_channel_code(id2, 1)},
                                             composition_for(Distribution({0.5, 0.5}), 6));
    CHECK(code.composition == std::vector<std::size_t>{3, 3});
    const auto a = simulate_sum_channel(code, 400, 8, 1);
    const auto b = simulate_sum_channel(code, 400, 8, 3);
    CHECK(a.errors == 0);
    CHECK(b.errors == 0);
}

TEST_CASE("composition rounding")
{
    CHECK(composition_for(Distribution({0.3, 0.7}), 10) == std::vector<std::size_t>{3, 7});
    CHECK(composition_for(Distribution::uniform(3), 10) == std::vector<std::size_t>{4, 3, 3});
    CHECK(composition_for(Distribution({0.25, 0.75}), 2) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("shifted codebook of a single word")
{
    Codebook book;
    book.n = 3;
    book.codewords = {{1, 2, 3}};
    book.independence_checked = true;
    ShiftedOptions o;
    o.x1_count = 2;
    o.x2_count = 2;
    const auto s = shifted_codebook(book, o);
    CHECK(s.candidates == 1);
    CHECK(s.shifts.size() == 3);
    // symbols (0,1) (1,0) (1,1); shift 1 rotates the first components to 1 1 0
    CHECK(s.shifts[1].codewords[0] == std::vector<int>{3, 2, 1});
}

TEST_CASE("shifts of the diagonal code stay zero-error on a graph times its complement")
{
    const auto s = cycle_graph(5);
    const auto letters = and_product(s, complement(s));
    Codebook book;
    book.n = 2;
    book.independence_checked = true;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            book.codewords.push_back({a * 5 + a, b * 5 + b});
    REQUIRE(is_zero_error_codebook(letters, book));

    ShiftedOptions o;
    o.x1_count = 5;
    o.x2_count = 5;
    const auto sh = shifted_codebook(book, o);
    for (const auto & c : sh.shifts)
        CHECK(is_zero_error_codebook(letters, c));
    CHECK(sh.candidates == 625);
    CHECK_FALSE(sh.empty);
    CHECK(is_zero_error_codebook(letters, sh.book));

    std::vector<double> ref(25, 1.0 / 25);
    const auto target = Distribution(ref);
    for (const auto & w : sh.book.codewords)
        CHECK(is_typical(type_of(w, 25), target, sh.eps));
}

TEST_CASE("shifted codebook respects its enumeration limit")
{
    Codebook book;
    book.n = 4;
    book.independence_checked = true;
    for (int a = 0; a < 40; ++a)
        book.codewords.push_back({a % 4, (a / 4) % 4, a % 3, 0});
    ShiftedOptions o;
    o.x1_count = 2;
    o.x2_count = 2;
    o.limit = 1000;
    CHECK_THROWS_AS(shifted_codebook(book, o), BudgetError);
}
