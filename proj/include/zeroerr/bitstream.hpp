#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace zeroerr {

/// Big-endian bit packing: the first bit written is the top bit of byte 0.
class BitWriter {
public:
    void put(bool bit);
    /// Writes the low `count` bits of value, most significant first.
    void put_bits(std::uint64_t value, unsigned count);
    void put_string(const std::string & bits);

    const std::vector<std::uint8_t> & bytes() const noexcept { return bytes_; }
    std::size_t size() const noexcept { return bits_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

class BitReader {
public:
    BitReader(std::span<const std::uint8_t> bytes, std::size_t bits);
    explicit BitReader(const BitWriter & w) : BitReader(w.bytes(), w.size()) {}

    /// Throws Error past the end of the stream.
    bool get();
    std::uint64_t get_bits(unsigned count);

    std::size_t position() const noexcept { return pos_; }
    bool done() const noexcept { return pos_ >= bits_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t bits_;
    std::size_t pos_ = 0;
};

/// Binary prefix code with codewords as '0'/'1' strings.
class PrefixCode {
public:
    PrefixCode() = default;
    explicit PrefixCode(std::vector<std::string> codewords);

    const std::vector<std::string> & codewords() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }

    void encode(std::size_t symbol, BitWriter & out) const;
    /// Throws Error on a bit pattern that matches no codeword.
    std::size_t decode(BitReader & in) const;

    double expected_length(std::span<const double> weights) const;
    double kraft_sum() const;

private:
    struct Node {
        int child[2] = {-1, -1};
        int symbol = -1;
    };
    std::vector<std::string> words_;
    std::vector<Node> trie_;
};

bool is_prefix_free(const std::vector<std::string> & words);

/// Huffman code. Ties break towards the lower symbol index so the code is a
/// deterministic function of the weights. A single symbol gets the codeword
/// "0".
PrefixCode huffman_code(std::span<const double> weights);

} // namespace zeroerr
