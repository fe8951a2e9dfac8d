#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmlab/code.hpp"
#include "rmlab/word.hpp"

namespace rmlab {

// A word mapped to the +-1 domain via a -> (-1)^a.
struct PmWord {
    std::vector<std::int32_t> values;

    std::size_t size() const { return values.size(); }
};

inline PmWord to_pm(const Word& w) {
    PmWord out;
    out.values.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out.values[i] = w.get(i) ? -1 : 1;
    return out;
}

inline Word from_pm(const PmWord& p) {
    Word out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out.set(i, p.values[i] < 0);
    return out;
}

// In-place Walsh-Hadamard butterfly: v[s] <- sum_x v[x] * (-1)^(x . s).
// Exact integer arithmetic, O(n log n) additions.
inline void walsh_hadamard_transform(std::vector<std::int32_t>& v) {
    const std::size_t n = v.size();
    if (n == 0 || !std::has_single_bit(n))
        throw std::invalid_argument("walsh_hadamard_transform: length must be a power of two, got " +
                                    std::to_string(n));
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t i = 0; i < n; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int32_t a = v[j];
                const std::int32_t b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
}

// All unnormalized Fourier coefficients of a +-1 word: output[s] is
// 2^m' * <y, chi_s>, an integer in [-2^m', 2^m'].
inline std::vector<std::int32_t> hadamard_spectrum(const PmWord& y) {
    std::vector<std::int32_t> spectrum = y.values;
    walsh_hadamard_transform(spectrum);
    return spectrum;
}

// The codeword sigma * chi_s of RM(m',1); (s=0, sigma=+1) is all-zeros.
// tied is set when the correlation maximum is achieved by more than one
// (s, sigma) candidate.
struct FirstOrderEstimate {
    std::uint32_t s = 0;
    int sigma = 1;
    bool tied = false;
};

// ML decoding of a first-order RM word: maximize sigma * spectrum[s].
// Ties are broken deterministically: larger |spectrum| is the objective,
// then sigma=+1 is preferred over sigma=-1, then the smallest s.
inline FirstOrderEstimate ml_decode_first_order(const Word& y) {
    if (y.size() < 2)
        throw std::invalid_argument("ml_decode_first_order: need length >= 2, got " +
                                    std::to_string(y.size()));
    const std::vector<std::int32_t> spectrum = hadamard_spectrum(to_pm(y));
    std::int32_t best_abs = -1;
    std::size_t hits = 0;
    FirstOrderEstimate est;
    for (std::size_t s = 0; s < spectrum.size(); ++s) {
        const std::int32_t val = spectrum[s];
        const std::int32_t abs = val < 0 ? -val : val;
        if (abs > best_abs) {
            best_abs = abs;
            hits = 1;
            est.s = std::uint32_t(s);
            est.sigma = val >= 0 ? 1 : -1;
        } else if (abs == best_abs) {
            ++hits;
            if (val > 0 && est.sigma < 0) {
                // sigma=+1 beats sigma=-1 at equal magnitude; among equal
                // (abs, sigma) the earlier (smaller) s already won.
                est.s = std::uint32_t(s);
                est.sigma = 1;
            }
        }
    }
    est.tied = hits > 1 || best_abs == 0;
    return est;
}

inline Word estimate_to_word(const FirstOrderEstimate& e, int m_prime) {
    Word out(std::size_t{1} << m_prime);
    for (std::size_t x = 0; x < out.size(); ++x) {
        const bool chi_negative = std::popcount(std::uint32_t(x) & e.s) & 1;
        out.set(x, chi_negative != (e.sigma < 0));
    }
    return out;
}

// Exhaustive ML oracle: the codeword of RM(m,r) nearest to y, walking all
// 2^dim codewords in Gray-code order.  Ties go to the smallest codeword
// under the integer reading of its bit string.
inline Word brute_force_ml(const Word& y, const CodeParams& params) {
    const std::uint64_t dim = dimension(params);
    if (dim > 24)
        throw std::invalid_argument("brute_force_ml: dimension " + std::to_string(dim) +
                                    " exceeds the enumeration budget of 24");
    if (y.size() != params.blocklength())
        throw std::invalid_argument("brute_force_ml: word length " + std::to_string(y.size()) +
                                    " does not match blocklength " +
                                    std::to_string(params.blocklength()));
    const std::vector<Word> rows = generator_rows(params);
    Word current(params.blocklength());
    Word best = current;
    std::size_t best_dist = Word::distance(y, current);
    for (std::uint64_t u = 1; u < (std::uint64_t{1} << dim); ++u) {
        current ^= rows[std::size_t(std::countr_zero(u))];
        const std::size_t dist = Word::distance(y, current);
        if (dist < best_dist || (dist == best_dist && Word::lex_less(current, best))) {
            best_dist = dist;
            best = current;
        }
    }
    return best;
}

}  // namespace rmlab
