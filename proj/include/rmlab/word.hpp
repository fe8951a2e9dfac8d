#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmlab {

// Bit sequence of length 2^m, indexed by points z of F2^m in lexicographic
// order: index i has binary expansion z1...zm with z1 the most significant
// bit.  Bits are packed 64 per machine word, index 0 in the low bit of
// block 0.
class Word {
public:
    Word() = default;

    explicit Word(std::size_t length) : len_(length), blocks_((length + 63) / 64, 0) {
        if (length == 0 || !std::has_single_bit(length))
            throw std::invalid_argument("Word length must be a power of two, got " +
                                        std::to_string(length));
    }

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const { return (blocks_[i >> 6] >> (i & 63)) & 1; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            blocks_[i >> 6] |= mask;
        else
            blocks_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { blocks_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::uint64_t b : blocks_) w += std::popcount(b);
        return w;
    }

    bool all_zero() const {
        for (std::uint64_t b : blocks_)
            if (b) return false;
        return true;
    }

    Word& operator^=(const Word& other) {
        require_same_length(other);
        for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] ^= other.blocks_[i];
        return *this;
    }

    friend Word operator^(Word a, const Word& b) {
        a ^= b;
        return a;
    }

    friend bool operator==(const Word&, const Word&) = default;

    static std::size_t distance(const Word& a, const Word& b) {
        a.require_same_length(b);
        std::size_t d = 0;
        for (std::size_t i = 0; i < a.blocks_.size(); ++i)
            d += std::popcount(a.blocks_[i] ^ b.blocks_[i]);
        return d;
    }

    // Order under the integer reading of the bit string, lowest index most
    // significant: a < b iff at the first differing index a has bit 0.
    static bool lex_less(const Word& a, const Word& b) {
        a.require_same_length(b);
        for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
            const std::uint64_t diff = a.blocks_[i] ^ b.blocks_[i];
            if (diff) {
                const int bit = std::countr_zero(diff);
                return ((a.blocks_[i] >> bit) & 1) == 0;
            }
        }
        return false;
    }

    const std::vector<std::uint64_t>& blocks() const { return blocks_; }
    std::vector<std::uint64_t>& blocks() { return blocks_; }

    // Clears any bits at positions >= size() in the last block.
    void mask_tail() {
        if (len_ & 63) blocks_.back() &= (std::uint64_t{1} << (len_ & 63)) - 1;
    }

    std::string to_ascii() const {
        std::string s(len_, '0');
        for (std::size_t i = 0; i < len_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    // Hex form: the first (most significant) nibble of the string covers the
    // lowest indices; within a nibble, the lowest index is the high bit.
    // Words shorter than four bits pad the single nibble with trailing zeros.
    std::string to_hex() const {
        static const char digits[] = "0123456789abcdef";
        const std::size_t nibbles = (len_ + 3) / 4;
        std::string s(nibbles, '0');
        for (std::size_t n = 0; n < nibbles; ++n) {
            unsigned v = 0;
            for (std::size_t t = 0; t < 4; ++t) {
                const std::size_t i = 4 * n + t;
                if (i < len_ && get(i)) v |= 8u >> t;
            }
            s[n] = digits[v];
        }
        return s;
    }

    static Word from_ascii(std::string_view s) {
        Word w(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                w.set(i, true);
            else if (s[i] != '0')
                throw std::invalid_argument("malformed word string: expected 0/1, got '" +
                                            std::string(1, s[i]) + "'");
        }
        return w;
    }

    static Word from_hex(std::string_view s, std::size_t length) {
        Word w(length);
        if (s.size() != (length + 3) / 4)
            throw std::invalid_argument("hex word has " + std::to_string(s.size()) +
                                        " digits, expected " + std::to_string((length + 3) / 4));
        for (std::size_t n = 0; n < s.size(); ++n) {
            const unsigned v = hex_digit(s[n]);
            for (std::size_t t = 0; t < 4; ++t) {
                const std::size_t i = 4 * n + t;
                const bool bit = (v >> (3 - t)) & 1;
                if (i < length)
                    w.set(i, bit);
                else if (bit)
                    throw std::invalid_argument("hex word has nonzero padding bits");
            }
        }
        return w;
    }

    // Accepts both serializations: a 0x-prefixed or non-binary string is read
    // as hex, a pure 0/1 string of full length as ASCII bits.
    static Word parse(std::string_view s, std::size_t expected_length) {
        if (s.substr(0, 2) == "0x" || s.substr(0, 2) == "0X")
            return from_hex(s.substr(2), expected_length);
        const bool binary_chars = s.find_first_not_of("01") == std::string_view::npos;
        if (binary_chars && s.size() == expected_length) return from_ascii(s);
        return from_hex(s, expected_length);
    }

private:
    static unsigned hex_digit(char c) {
        if (c >= '0' && c <= '9') return unsigned(c - '0');
        if (c >= 'a' && c <= 'f') return unsigned(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return unsigned(c - 'A' + 10);
        throw std::invalid_argument("malformed hex digit '" + std::string(1, c) + "'");
    }

    void require_same_length(const Word& other) const {
        if (len_ != other.len_)
            throw std::invalid_argument("word length mismatch: " + std::to_string(len_) +
                                        " vs " + std::to_string(other.len_));
    }

    std::size_t len_ = 0;
    std::vector<std::uint64_t> blocks_;
};

}  // namespace rmlab
