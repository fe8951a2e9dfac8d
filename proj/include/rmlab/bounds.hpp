#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rmlab/subspace.hpp"

namespace rmlab {

// Log-base-2 carrier for the closed-form error bounds.  A bound with
// log2_value >= 0 says nothing (probability bounds above 1), which is the
// normal situation at desk-scale blocklengths.
struct LogBound {
    double log2_value = 0.0;
    bool vacuous = true;
};

inline LogBound make_log_bound(double log2_value) { return {log2_value, log2_value >= 0.0}; }

namespace detail {

inline void require_open_unit_half(double p, const char* what) {
    if (!(p > 0.0) || !(p < 0.5))
        throw std::invalid_argument(std::string(what) + " must lie strictly in (0, 0.5), got " +
                                    std::to_string(p));
}

inline void require_open_unit(double v, const char* what) {
    if (!(v > 0.0) || !(v < 1.0))
        throw std::invalid_argument(std::string(what) + " must lie strictly in (0, 1), got " +
                                    std::to_string(v));
}

// (1-2p)^(2^j) by repeated squaring.
inline double bias_power(double p, int j) {
    double t = 1.0 - 2.0 * p;
    for (int i = 0; i < j; ++i) t *= t;
    return t;
}

}  // namespace detail

// eta(alpha) = (1 - 4 alpha (1-alpha)) / 2, the squared-bias quantity whose
// value at p-bar bounds the admissible epsilon.
inline double eta(double alpha) {
    detail::require_open_unit_half(alpha, "eta: alpha");
    return 0.5 * (1.0 - 4.0 * alpha * (1.0 - alpha));
}

// Noise level after j nested projections: p^(j) = (1 - (1-2p)^(2^j)) / 2.
inline double p_level(double p, int j) {
    if (j < 0) throw std::invalid_argument("p_level: j must be >= 0");
    return 0.5 * (1.0 - detail::bias_power(p, j));
}

// p-bar = p^(r-2), the noise level at the second-order leaves.
inline double p_bar(double p, int r) {
    if (r < 2) throw std::invalid_argument("p_bar: r must be >= 2, got " + std::to_string(r));
    return p_level(p, r - 2);
}

// eta-bar(p) = (1-2p)/2; satisfies eta(p) = eta_bar(p_level(p,1)).
inline double eta_bar(double p) {
    detail::require_open_unit_half(p, "eta_bar: p");
    return 0.5 * (1.0 - 2.0 * p);
}

// p-hat = (1 - (1 - 2 p^(r-k-1))^(2^k - 1)) / 2, the level of the dependent
// parity sums seen by the aggregation step with k-dimensional subspaces.
inline double p_hat(double p, int r, int k) {
    if (r - k - 1 < 0)
        throw std::invalid_argument("p_hat: need r - k - 1 >= 0, got r=" + std::to_string(r) +
                                    ", k=" + std::to_string(k));
    const double q = p_level(p, r - k - 1);
    return 0.5 * (1.0 - std::pow(1.0 - 2.0 * q, double((1 << k) - 1)));
}

namespace detail {

inline void require_epsilon_window(double epsilon, double edge, const char* theorem) {
    if (!(epsilon > 0.0) || !(epsilon < edge))
        throw std::invalid_argument(std::string(theorem) +
                                    ": epsilon outside the validity window (0, " +
                                    std::to_string(edge) + "), got " + std::to_string(epsilon));
}

// ln((1-q)/q) evaluated as log1p((1-2q)/q) to keep accuracy near q = 0.5.
inline double log_odds(double q) { return std::log1p((1.0 - 2.0 * q) / q); }

}  // namespace detail

// log2 of 32 N^(r+1) exp(-2^(-r-1) N eps^2) with N = 2^m.  The power of N
// never materializes: everything stays in the exponent.
inline LogBound bound_thm1(int m, int r, double p, double epsilon) {
    if (r < 2) throw std::invalid_argument("bound_thm1: r must be >= 2");
    detail::require_open_unit_half(p, "bound_thm1: p");
    detail::require_epsilon_window(epsilon, eta(p_bar(p, r)), "bound_thm1");
    const double exponent = std::ldexp(epsilon * epsilon, m - r - 1) * std::numbers::log2e;
    return make_log_bound(5.0 + double(r + 1) * m - exponent);
}

// log2 of 64 N^3 n_{k,m}^((r-1)/k) exp(-ln((1-q)/q) 2^(-r-1-k) N eps^2)
// with q = p^(r-k-1).  The Gaussian binomial is taken exactly and logged.
inline LogBound bound_thm2(int m, int r, int k, double p, double epsilon) {
    if (r < 2) throw std::invalid_argument("bound_thm2: r must be >= 2");
    if (k < 1) throw std::invalid_argument("bound_thm2: k must be >= 1");
    if ((r - 1) % k != 0)
        throw std::invalid_argument("bound_thm2: k must divide r-1, got r=" + std::to_string(r) +
                                    ", k=" + std::to_string(k));
    detail::require_open_unit_half(p, "bound_thm2: p");
    detail::require_epsilon_window(epsilon, eta(p_bar(p, r)), "bound_thm2");
    const uint128 n_km = gaussian_binomial(m, k);
    const long double n_ld = (long double)(std::uint64_t)(n_km >> 64) * 18446744073709551616.0L +
                             (long double)(std::uint64_t)n_km;
    const double log2_n = double(std::log2l(n_ld));
    const double q = p_level(p, r - k - 1);
    const double exponent =
        detail::log_odds(q) * std::ldexp(epsilon * epsilon, m - r - 1 - k) * std::numbers::log2e;
    return make_log_bound(6.0 + 3.0 * m + (double(r - 1) / k) * log2_n - exponent);
}

// log2 of 256 N^2 exp(-N eps^2 / 8), the two-iteration refinement for
// second-order codes; valid for eps < eta(p).
inline LogBound bound_two_iter(int m, double p, double epsilon) {
    detail::require_open_unit_half(p, "bound_two_iter: p");
    detail::require_epsilon_window(epsilon, eta(p), "bound_two_iter");
    const double exponent = std::ldexp(epsilon * epsilon, m - 3) * std::numbers::log2e;
    return make_log_bound(8.0 + 2.0 * m - exponent);
}

// gamma_m = (8 (5 + m (r+1+beta)) / (d log2 e))^(1/2^r) with d = 2^(m-r):
// the decoding-radius convergence rate for fixed order r.
inline double gamma_radius(int m, int r, double beta) {
    if (r < 2) throw std::invalid_argument("gamma_radius: r must be >= 2");
    detail::require_open_unit(beta, "gamma_radius: beta");
    const double d = std::ldexp(1.0, m - r);
    const double base = 8.0 * (5.0 + double(m) * (r + 1 + beta)) / (d * std::numbers::log2e);
    return std::pow(base, std::ldexp(1.0, -r));
}

// Number of errors correctable with high probability: N/2 (1 - gamma_m - delta).
inline double correctable_errors(int m, int r, double beta, double delta) {
    detail::require_open_unit(delta, "correctable_errors: delta");
    return std::ldexp(1.0, m - 1) * (1.0 - gamma_radius(m, r, beta) - delta);
}

// c(p) = log 2 / log(1/(1-2p)): orders up to log2(c-bar m) with c-bar < c(p)
// give vanishing error probability.
inline double rate_threshold_c(double p) {
    detail::require_open_unit_half(p, "rate_threshold_c: p");
    return std::numbers::ln2 / -std::log1p(-2.0 * p);
}

// rho_m(r, delta) = m(r+1) - (delta log2(e)/8) 2^(m-r) (1-2p)^(2^r) + 5,
// the log2 error exponent behind the r <= log2(c-bar m) regime.  Evaluated
// with the power kept in the exponent so large m stays finite.
inline double rho_exponent(int m, int r, double delta, double p) {
    if (r < 2) throw std::invalid_argument("rho_exponent: r must be >= 2");
    detail::require_open_unit(delta, "rho_exponent: delta");
    detail::require_open_unit_half(p, "rho_exponent: p");
    const double log_term = double(m - r) * std::numbers::ln2 +
                            std::ldexp(1.0, r) * std::log(1.0 - 2.0 * p);
    return double(m) * (r + 1) - delta * std::numbers::log2e / 8.0 * std::exp(log_term) + 5.0;
}

// rho-bar_m(r, delta), the k = r-1 analogue:
// (m-r+2)(r-1) - (delta log2(e)/16) ln((1-p)/p) 2^m (1-2p)^(2^(r+1)) + 3m + 6.
inline double rho_bar_exponent(int m, int r, double delta, double p) {
    if (r < 2) throw std::invalid_argument("rho_bar_exponent: r must be >= 2");
    detail::require_open_unit(delta, "rho_bar_exponent: delta");
    detail::require_open_unit_half(p, "rho_bar_exponent: p");
    const double log_term = double(m) * std::numbers::ln2 +
                            std::ldexp(1.0, r + 1) * std::log(1.0 - 2.0 * p);
    return double(m - r + 2) * (r - 1) -
           delta * std::numbers::log2e / 16.0 * detail::log_odds(p) * std::exp(log_term) +
           3.0 * m + 6.0;
}

}  // namespace rmlab
