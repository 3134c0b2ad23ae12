#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace zeroerr {

/// Fixed-size bit set backed by 64-bit words. Used for adjacency rows and
/// candidate sets in the combinatorial solvers.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t nbits) : words_((nbits + 63) / 64, 0), nbits_(nbits) {}

    std::size_t size() const noexcept { return nbits_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    std::uint64_t word(std::size_t i) const noexcept { return words_[i]; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void set(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }

    void set_all() noexcept
    {
        for (auto & w : words_)
            w = ~std::uint64_t{0};
        trim();
    }
    void clear() noexcept
    {
        for (auto & w : words_)
            w = 0;
    }

    std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const noexcept
    {
        for (auto w : words_)
            if (w)
                return true;
        return false;
    }
    bool none() const noexcept { return !any(); }

    std::size_t first() const noexcept { return next(0); }

    /// First set bit at position >= from, or npos.
    std::size_t next(std::size_t from) const noexcept
    {
        if (from >= nbits_)
            return npos;
        std::size_t wi = from >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w)
                return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi >= words_.size())
                return npos;
            w = words_[wi];
        }
    }

    Bitset & operator&=(const Bitset & o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
        return *this;
    }
    Bitset & operator|=(const Bitset & o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }
    /// this &= ~o
    Bitset & subtract(const Bitset & o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~o.words_[i];
        return *this;
    }
    Bitset & flip() noexcept
    {
        for (auto & w : words_)
            w = ~w;
        trim();
        return *this;
    }

    bool intersects(const Bitset & o) const noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i])
                return true;
        return false;
    }

    std::size_t intersection_count(const Bitset & o) const noexcept
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }

    std::vector<int> to_vector() const
    {
        std::vector<int> out;
        out.reserve(count());
        for (auto i = first(); i != npos; i = next(i + 1))
            out.push_back(static_cast<int>(i));
        return out;
    }

    friend Bitset operator&(Bitset a, const Bitset & b) noexcept { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset & b) noexcept { return a |= b; }
    friend bool operator==(const Bitset & a, const Bitset & b) noexcept
    {
        return a.nbits_ == b.nbits_ && a.words_ == b.words_;
    }

private:
    void trim() noexcept
    {
        if (nbits_ & 63)
            words_.back() &= (std::uint64_t{1} << (nbits_ & 63)) - 1;
    }

    std::vector<std::uint64_t> words_;
    std::size_t nbits_ = 0;
};

} // namespace zeroerr
