#include "zeroerr/bitstream.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "zeroerr/common.hpp"

namespace zeroerr {

void BitWriter::put(bool bit)
{
    if (bits_ % 8 == 0)
        bytes_.push_back(0);
    if (bit)
        bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
    ++bits_;
}

void BitWriter::put_bits(std::uint64_t value, unsigned count)
{
    for (unsigned i = count; i-- > 0;)
        put((value >> i) & 1u);
}

void BitWriter::put_string(const std::string & bits)
{
    for (char c : bits)
        put(c == '1');
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t bits) : bytes_(bytes), bits_(bits)
{
    if (bits > bytes.size() * 8)
        throw Error("bit count exceeds the byte buffer");
}

bool BitReader::get()
{
    if (pos_ >= bits_)
        throw Error("read past the end of the bit stream");
    const bool bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
}

std::uint64_t BitReader::get_bits(unsigned count)
{
    std::uint64_t v = 0;
    for (unsigned i = 0; i < count; ++i)
        v = (v << 1) | static_cast<std::uint64_t>(get());
    return v;
}

PrefixCode::PrefixCode(std::vector<std::string> codewords) : words_(std::move(codewords))
{
    if (!is_prefix_free(words_))
        throw Error("codewords are not prefix-free");
    trie_.emplace_back();
    for (std::size_t s = 0; s < words_.size(); ++s) {
        int node = 0;
        for (char c : words_[s]) {
            const int b = c == '1';
            if (trie_[static_cast<std::size_t>(node)].child[b] < 0) {
                trie_[static_cast<std::size_t>(node)].child[b] = static_cast<int>(trie_.size());
                trie_.emplace_back();
            }
            node = trie_[static_cast<std::size_t>(node)].child[b];
        }
        trie_[static_cast<std::size_t>(node)].symbol = static_cast<int>(s);
    }
}

void PrefixCode::encode(std::size_t symbol, BitWriter & out) const
{
    if (symbol >= words_.size())
        throw Error("symbol " + std::to_string(symbol) + " has no codeword");
    out.put_string(words_[symbol]);
}

std::size_t PrefixCode::decode(BitReader & in) const
{
    if (trie_.empty())
        throw Error("empty prefix code");
    int node = 0;
    while (trie_[static_cast<std::size_t>(node)].symbol < 0) {
        const int next = trie_[static_cast<std::size_t>(node)].child[in.get() ? 1 : 0];
        if (next < 0)
            throw Error("bit pattern matches no codeword");
        node = next;
    }
    return static_cast<std::size_t>(trie_[static_cast<std::size_t>(node)].symbol);
}

double PrefixCode::expected_length(std::span<const double> weights) const
{
    double e = 0.0;
    for (std::size_t s = 0; s < words_.size() && s < weights.size(); ++s)
        e += weights[s] * static_cast<double>(words_[s].size());
    return e;
}

double PrefixCode::kraft_sum() const
{
    double k = 0.0;
    for (const auto & w : words_)
        k += std::ldexp(1.0, -static_cast<int>(w.size()));
    return k;
}

bool is_prefix_free(const std::vector<std::string> & words)
{
    auto sorted = words;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].empty() && sorted.size() > 1)
            return false;
        if (i + 1 < sorted.size() && sorted[i + 1].compare(0, sorted[i].size(), sorted[i]) == 0)
            return false;
    }
    return true;
}

PrefixCode huffman_code(std::span<const double> weights)
{
    const auto k = weights.size();
    if (k == 0)
        throw Error("huffman_code needs at least one symbol");
    if (k == 1)
        return PrefixCode({"0"});

    struct Item {
        double w;
        std::size_t order; // smallest symbol in the subtree
        int node;
    };
    auto later = [](const Item & a, const Item & b) {
        if (a.w != b.w)
            return a.w > b.w;
        return a.order > b.order;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(later)> heap(later);
    std::vector<std::pair<int, int>> kids; // internal nodes, indices offset by k
    for (std::size_t s = 0; s < k; ++s)
        heap.push({weights[s], s, static_cast<int>(s)});
    while (heap.size() > 1) {
        const auto a = heap.top();
        heap.pop();
        const auto b = heap.top();
        heap.pop();
        kids.emplace_back(a.node, b.node);
        heap.push({a.w + b.w, std::min(a.order, b.order), static_cast<int>(k + kids.size() - 1)});
    }
    std::vector<std::string> words(k);
    std::vector<std::pair<int, std::string>> stack{{heap.top().node, ""}};
    while (!stack.empty()) {
        auto [node, prefix] = std::move(stack.back());
        stack.pop_back();
        if (node < static_cast<int>(k)) {
            words[static_cast<std::size_t>(node)] = prefix;
            continue;
        }
        const auto & [l, r] = kids[static_cast<std::size_t>(node) - k];
        stack.emplace_back(r, prefix + "1");
        stack.emplace_back(l, prefix + "0");
    }
    return PrefixCode(std::move(words));
}

} // namespace zeroerr
