#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmlab/word.hpp"

namespace rmlab {

// The pair (m, r) identifying RM(m,r).  m is capped at 20, so blocklengths
// stay at or below 2^20.
struct CodeParams {
    int m = 1;
    int r = 0;

    CodeParams() = default;
    CodeParams(int m_, int r_) : m(m_), r(r_) {
        if (m < 1 || m > 20)
            throw std::invalid_argument("CodeParams: m must be in [1,20], got " + std::to_string(m));
        if (r < 0 || r > m)
            throw std::invalid_argument("CodeParams: r must be in [0,m], got r=" + std::to_string(r) +
                                        " with m=" + std::to_string(m));
    }

    std::size_t blocklength() const { return std::size_t{1} << m; }

    friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

// Message coefficients, one per monomial prod_{j in S} x_j with |S| <= r,
// ordered by ascending degree, then lexicographically on the sorted variable
// subset S.
using MessageVector = std::vector<std::uint8_t>;

inline std::uint64_t dimension(const CodeParams& params) {
    std::uint64_t sum = 0, c = 1;
    for (int i = 0; i <= params.r; ++i) {
        if (i > 0) c = c * std::uint64_t(params.m - i + 1) / std::uint64_t(i);
        sum += c;
    }
    return sum;
}

inline std::uint64_t min_distance(const CodeParams& params) {
    return std::uint64_t{1} << (params.m - params.r);
}

// The monomial prod_{j in S} x_j is encoded as a point mask: variable x_j
// reads bit (m-j) of the point index, matching the z1-most-significant
// convention.  Masks come out in MessageVector order.
inline std::vector<std::uint32_t> monomial_masks(const CodeParams& params) {
    std::vector<std::uint32_t> masks;
    masks.reserve(dimension(params));
    std::vector<int> subset;
    for (int d = 0; d <= params.r; ++d) {
        // Subsets {j1 < ... < jd} of [m] in lexicographic order.
        subset.resize(d);
        for (int i = 0; i < d; ++i) subset[i] = i + 1;
        while (true) {
            std::uint32_t mask = 0;
            for (int j : subset) mask |= std::uint32_t{1} << (params.m - j);
            masks.push_back(mask);
            int i = d - 1;
            while (i >= 0 && subset[i] == params.m - (d - 1 - i)) --i;
            if (i < 0) break;
            ++subset[i];
            for (int t = i + 1; t < d; ++t) subset[t] = subset[t - 1] + 1;
        }
    }
    return masks;
}

// Evaluation vector of one monomial: bit at point z is 1 iff every variable
// in the mask is 1 in z, i.e. (z & mask) == mask.  Built block-wise: within
// a 64-point block only the low 6 index bits vary.
inline Word monomial_row(std::uint32_t mask, int m) {
    Word row(std::size_t{1} << m);
    auto& blocks = row.blocks();
    const std::uint32_t low = mask & 63u;
    const std::uint32_t high = mask & ~63u;
    std::uint64_t pattern = 0;
    for (std::uint64_t t = 0; t < 64 && t < row.size(); ++t)
        if ((t & low) == low) pattern |= std::uint64_t{1} << t;
    if (row.size() < 64) {
        // Single partial block; high part of the mask must be zero to match.
        blocks[0] = (high == 0) ? pattern : 0;
        row.mask_tail();
        return row;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::uint64_t base = std::uint64_t(b) << 6;
        blocks[b] = ((base & high) == high) ? pattern : 0;
    }
    return row;
}

// One row per monomial, in MessageVector order.
inline std::vector<Word> generator_rows(const CodeParams& params) {
    std::vector<Word> rows;
    const auto masks = monomial_masks(params);
    rows.reserve(masks.size());
    for (std::uint32_t mask : masks) rows.push_back(monomial_row(mask, params.m));
    return rows;
}

inline Word encode(const MessageVector& msg, const CodeParams& params) {
    const auto masks = monomial_masks(params);
    if (msg.size() != masks.size())
        throw std::invalid_argument("encode: message has " + std::to_string(msg.size()) +
                                    " coefficients, dimension is " + std::to_string(masks.size()));
    Word out(params.blocklength());
    for (std::size_t i = 0; i < masks.size(); ++i)
        if (msg[i] & 1) out ^= monomial_row(masks[i], params.m);
    return out;
}

// Row space over GF(2), kept in echelon form.  Rows are bit-packed Words;
// the pivot of a row is its lowest set index.
class Gf2RowSpan {
public:
    // Returns true if the row was independent of the span so far.
    bool add_row(Word row) {
        reduce(row);
        if (row.all_zero()) return false;
        const std::size_t pivot = lowest_set(row);
        // Back-substitute so the new pivot column is clear in older rows.
        for (auto& r : rows_)
            if (r.get(pivot)) r ^= row;
        rows_.push_back(std::move(row));
        pivots_.push_back(pivot);
        return true;
    }

    bool contains(Word w) const {
        reduce(w);
        return w.all_zero();
    }

    std::size_t rank() const { return rows_.size(); }

private:
    static std::size_t lowest_set(const Word& w) {
        const auto& blocks = w.blocks();
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (blocks[b]) return (b << 6) + std::size_t(std::countr_zero(blocks[b]));
        return w.size();
    }

    void reduce(Word& w) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (w.get(pivots_[i])) w ^= rows_[i];
    }

    std::vector<Word> rows_;
    std::vector<std::size_t> pivots_;
};

// True iff the word lies in the row space of the RM(m,r) generator.
inline bool is_codeword(const Word& word, const CodeParams& params) {
    if (word.size() != params.blocklength())
        throw std::invalid_argument("is_codeword: word length " + std::to_string(word.size()) +
                                    " does not match blocklength " +
                                    std::to_string(params.blocklength()));
    if (params.r == params.m) return true;
    Gf2RowSpan span;
    for (const Word& row : generator_rows(params)) span.add_row(row);
    return span.contains(word);
}

}  // namespace rmlab
