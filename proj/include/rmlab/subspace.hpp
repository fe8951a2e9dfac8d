#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmlab/word.hpp"

namespace rmlab {

using uint128 = unsigned __int128;

inline std::string uint128_to_string(uint128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

// Number of k-dimensional subspaces of F2^m, computed exactly via the
// q-Pascal recurrence [m k] = [m-1 k-1] + 2^k [m-1 k].  Values for m <= 20
// fit in 128 bits.
inline uint128 gaussian_binomial(int m, int k) {
    if (m < 0 || m > 20)
        throw std::invalid_argument("gaussian_binomial: m must be in [0,20], got " + std::to_string(m));
    if (k < 0 || k > m)
        throw std::invalid_argument("gaussian_binomial: need 0 <= k <= m, got k=" + std::to_string(k) +
                                    ", m=" + std::to_string(m));
    std::vector<uint128> row(std::size_t(k) + 1, 0);
    row[0] = 1;
    for (int mm = 1; mm <= m; ++mm)
        for (int kk = std::min(mm, k); kk >= 1; --kk)
            row[kk] = row[kk - 1] + (uint128(1) << kk) * row[kk];
    return row[k];
}

// A k-dimensional subspace of F2^m.  Vectors are m-bit integers with
// coordinate z1 in the most significant bit.  The basis is held in reduced
// row echelon form (pivot = highest set bit, rows ordered by descending
// pivot, pivot columns clear in all other rows), which is unique per
// subspace, so equality of bases is equality of subspaces.
class Subspace {
public:
    Subspace(int ambient_m, std::vector<std::uint32_t> rref_basis)
        : m_(ambient_m), basis_(std::move(rref_basis)) {
        if (m_ < 1 || basis_.empty() || basis_.size() > std::size_t(m_))
            throw std::invalid_argument("Subspace: need 1 <= k <= m");
        int prev_pivot = m_;
        for (const std::uint32_t row : basis_) {
            if (row == 0 || row >= (std::uint32_t{1} << m_))
                throw std::invalid_argument("Subspace: basis vector outside F2^m");
            const int pivot = pivot_bit(row);
            if (pivot >= prev_pivot)
                throw std::invalid_argument("Subspace: basis rows must have descending pivots");
            prev_pivot = pivot;
            for (const std::uint32_t other : basis_)
                if (other != row && (other >> pivot) & 1)
                    throw std::invalid_argument("Subspace: basis is not in reduced echelon form");
        }
    }

    // Canonicalizes an arbitrary independent spanning set.
    static Subspace from_vectors(int ambient_m, std::vector<std::uint32_t> vectors) {
        std::vector<std::uint32_t> rows;  // kept sorted by descending pivot
        for (std::uint32_t v : vectors) {
            for (std::uint32_t r : rows) v = std::min(v, v ^ r);
            if (v == 0)
                throw std::invalid_argument("Subspace::from_vectors: vectors are dependent");
            rows.insert(std::upper_bound(rows.begin(), rows.end(), v, std::greater<>()), v);
        }
        // Back-substitution to reach RREF, then order by descending pivot.
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows.size(); ++j)
                if (j != i && (rows[j] >> pivot_bit(rows[i])) & 1) rows[j] ^= rows[i];
        std::sort(rows.begin(), rows.end(), std::greater<>());
        return Subspace(ambient_m, std::move(rows));
    }

    int ambient_m() const { return m_; }
    int dim() const { return int(basis_.size()); }
    const std::vector<std::uint32_t>& basis() const { return basis_; }

    bool contains(std::uint32_t v) const {
        for (std::uint32_t r : basis_) v = std::min(v, v ^ r);
        return v == 0;
    }

    // All 2^k member vectors, the zero vector first.
    std::vector<std::uint32_t> elements() const {
        std::vector<std::uint32_t> out(std::size_t{1} << basis_.size(), 0);
        for (std::size_t i = 1; i < out.size(); ++i)
            out[i] = out[i & (i - 1)] ^ basis_[std::size_t(std::countr_zero(i))];
        return out;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.m_ == b.m_ && a.basis_ == b.basis_;
    }

private:
    static int pivot_bit(std::uint32_t v) { return 31 - std::countl_zero(v); }

    int m_;
    std::vector<std::uint32_t> basis_;
};

// All k-dimensional subspaces of F2^m, each exactly once, sorted by the
// canonical basis read as a tuple of integers.  Generation walks echelon
// profiles: pick pivot coordinates, then fill the free entries, which yields
// each RREF matrix once by construction.
inline std::vector<Subspace> enumerate_subspaces(int m, int k) {
    if (m < 1 || m > 20)
        throw std::invalid_argument("enumerate_subspaces: m must be in [1,20], got " + std::to_string(m));
    if (k < 1 || k > m)
        throw std::invalid_argument("enumerate_subspaces: need 1 <= k <= m, got k=" + std::to_string(k));
    std::vector<Subspace> out;
    // Pivot bit positions p[0] > p[1] > ... > p[k-1] (row i pivots at p[i]).
    std::vector<int> pivots(k);
    std::vector<std::uint32_t> rows(k);
    // Iterate over descending k-tuples of bit positions in [0, m).
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = k - 1 - i;  // lowest combination, descending order
    while (true) {
        pivots = comb;
        // Free positions of row i: bits below p[i] that are not pivots.
        std::vector<std::vector<int>> free_bits(k);
        int total_free = 0;
        for (int i = 0; i < k; ++i) {
            for (int b = pivots[i] - 1; b >= 0; --b)
                if (std::find(pivots.begin(), pivots.end(), b) == pivots.end())
                    free_bits[i].push_back(b);
            total_free += int(free_bits[i].size());
        }
        for (std::uint64_t assign = 0; assign < (std::uint64_t{1} << total_free); ++assign) {
            std::uint64_t a = assign;
            for (int i = 0; i < k; ++i) {
                std::uint32_t row = std::uint32_t{1} << pivots[i];
                for (int b : free_bits[i]) {
                    if (a & 1) row |= std::uint32_t{1} << b;
                    a >>= 1;
                }
                rows[i] = row;
            }
            out.emplace_back(m, rows);
        }
        // Next descending combination.
        int i = 0;
        while (i < k && comb[i] == m - 1 - i) ++i;
        if (i == k) break;
        ++comb[i];
        for (int t = i - 1; t >= 0; --t) comb[t] = comb[t + 1] + 1;
    }
    std::sort(out.begin(), out.end(),
              [](const Subspace& a, const Subspace& b) { return a.basis() < b.basis(); });
    return out;
}

// Fixed bijection from cosets of a subspace B to points of F2^(m-k).
// The complement basis is chosen by greedily appending standard basis
// vectors e1,...,em independent of the span so far; the coset index of z is
// the complement-basis component of z in the combined basis, read with the
// e-order coefficient first (most significant).  The map is linear, so it
// is available as per-unit-vector columns for incremental evaluation.
class CosetIndexMap {
public:
    explicit CosetIndexMap(Subspace s) : subspace_(std::move(s)) {
        const int m = subspace_.ambient_m();
        const int k = subspace_.dim();
        // Echelon basis with coefficient tracking over the combined basis.
        // Entries are kept sorted by descending pivot so a single reduction
        // pass is complete.
        struct Entry {
            std::uint32_t vec;
            std::uint64_t coeff;
        };
        std::vector<Entry> echelon;
        auto reduce = [&echelon](std::uint32_t& v, std::uint64_t& c) {
            for (const Entry& e : echelon)
                if ((v ^ e.vec) < v) {
                    v ^= e.vec;
                    c ^= e.coeff;
                }
        };
        auto insert = [&echelon, &reduce](std::uint32_t v, std::uint64_t c) {
            reduce(v, c);
            if (v == 0) return false;
            const auto pos = std::upper_bound(
                echelon.begin(), echelon.end(), v,
                [](std::uint32_t value, const Entry& e) { return value > e.vec; });
            echelon.insert(pos, {v, c});
            return true;
        };
        std::size_t index = 0;
        for (std::uint32_t b : subspace_.basis()) insert(b, std::uint64_t{1} << index++);
        for (int j = 1; j <= m && int(complement_basis_.size()) < m - k; ++j) {
            const std::uint32_t e = std::uint32_t{1} << (m - j);
            if (insert(e, std::uint64_t{1} << index)) {
                complement_basis_.push_back(e);
                ++index;
            }
        }
        // Column of the quotient map for each ambient bit position.
        columns_.assign(m, 0);
        for (int bit = 0; bit < m; ++bit) {
            std::uint32_t v = std::uint32_t{1} << bit;
            std::uint64_t c = 0;
            reduce(v, c);
            // v == 0 always: the combined basis spans F2^m.
            std::uint32_t idx = 0;
            for (int j = 0; j < m - k; ++j)
                if ((c >> (k + j)) & 1) idx |= std::uint32_t{1} << (m - k - 1 - j);
            columns_[bit] = idx;
        }
        // Prefix deltas for the z -> z+1 walk: incrementing z flips the low
        // t+1 bits where t = countr_zero(z+1).
        increment_delta_.assign(m, 0);
        std::uint32_t acc = 0;
        for (int t = 0; t < m; ++t) {
            acc ^= columns_[t];
            increment_delta_[t] = acc;
        }
    }

    const Subspace& subspace() const { return subspace_; }
    const std::vector<std::uint32_t>& complement_basis() const { return complement_basis_; }
    int ambient_m() const { return subspace_.ambient_m(); }
    int k() const { return subspace_.dim(); }
    std::size_t coset_count() const { return std::size_t{1} << (ambient_m() - k()); }

    std::uint32_t index_of(std::uint32_t z) const {
        std::uint32_t idx = 0;
        while (z) {
            idx ^= columns_[std::countr_zero(z)];
            z &= z - 1;
        }
        return idx;
    }

    std::uint32_t increment_delta(int trailing_zeros) const { return increment_delta_[trailing_zeros]; }

private:
    Subspace subspace_;
    std::vector<std::uint32_t> complement_basis_;
    std::vector<std::uint32_t> columns_;
    std::vector<std::uint32_t> increment_delta_;
};

inline CosetIndexMap coset_index_map(const Subspace& s) { return CosetIndexMap(s); }

// Projection onto the cosets: output bit at coset index t is the XOR of y
// over the 2^k points of that coset.  Single pass over the 2^m points, with
// the coset index updated incrementally.
inline Word project(const Word& y, const CosetIndexMap& map) {
    const std::size_t n = std::size_t{1} << map.ambient_m();
    if (y.size() != n)
        throw std::invalid_argument("project: word length " + std::to_string(y.size()) +
                                    " does not match ambient 2^" + std::to_string(map.ambient_m()));
    Word out(map.coset_count());
    std::uint32_t idx = map.index_of(0);
    for (std::size_t z = 0; z < n; ++z) {
        if (y.get(z)) out.flip(idx);
        if (z + 1 < n) idx ^= map.increment_delta(std::countr_zero(std::uint64_t(z) + 1));
    }
    return out;
}

}  // namespace rmlab
