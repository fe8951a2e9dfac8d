#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rmlab/bounds.hpp"
#include "rmlab/code.hpp"
#include "rmlab/rng.hpp"
#include "rmlab/rpa.hpp"
#include "rmlab/subspace.hpp"
#include "rmlab/word.hpp"

namespace rmlab {

struct TrialConfig {
    CodeParams code;
    int k = 1;
    double p = 0.0;
    int max_iter = 0;  // 0 means the RpaConfig default (m)
    std::uint64_t num_trials = 1;
    std::uint64_t master_seed = 0;
};

struct TrialResult {
    std::uint64_t trials = 0;
    std::uint64_t block_errors = 0;
    double p_err_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double converged_fraction = 0.0;
    double mean_iterations = 0.0;
    std::string rng_id;
};

// Substream lanes: lane 0 carries channel noise, lane 1 message bits (used
// by the random-codeword test variant), lane 2 projection-noise samples.
enum class StreamLane : std::uint64_t { noise = 0, message = 1, projection = 2 };

inline CounterStream trial_stream(std::uint64_t master_seed, std::uint64_t trial, StreamLane lane) {
    return CounterStream(master_seed, trial, std::uint64_t(lane));
}

// Each bit flipped independently with probability p; deterministic given the
// stream state.  p = 0 and p = 1 are allowed for tests.
inline Word bsc_transmit(const Word& c, double p, CounterStream& stream) {
    if (!(p >= 0.0) || !(p <= 1.0))
        throw std::invalid_argument("bsc_transmit: p must lie in [0,1], got " + std::to_string(p));
    Word out = c;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (stream.bernoulli(p)) out.flip(i);
    return out;
}

// 95% Wilson score interval.  At zero successes the lower edge is exactly 0
// (and symmetrically at n successes), while the other edge stays nonzero.
inline std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t n) {
    constexpr double z = 1.959963984540054;
    if (n == 0) return {0.0, 1.0};
    const double phat = double(successes) / double(n);
    const double z2n = z * z / double(n);
    const double denom = 1.0 + z2n;
    const double center = (phat + z2n / 2.0) / denom;
    const double half = z / denom * std::sqrt(phat * (1.0 - phat) / double(n) + z2n / (4.0 * double(n)));
    const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = successes == n ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

// Monte Carlo block-error estimation for RPA decoding of the all-zeros
// codeword.  Per-trial randomness comes from (master_seed, trial_index)
// substreams, and the per-worker tallies are integer sums merged in worker
// order, so the result is identical under any worker count.
inline TrialResult run_trials(const TrialConfig& cfg, unsigned workers = 1) {
    if (cfg.num_trials < 1) throw std::invalid_argument("run_trials: num_trials must be >= 1");
    if (!(cfg.p >= 0.0) || !(cfg.p < 0.5))
        throw std::invalid_argument("run_trials: p must lie in [0, 0.5), got " + std::to_string(cfg.p));
    const RpaConfig rpa_cfg(cfg.code, cfg.k, cfg.max_iter);
    if (workers == 0) workers = 1;

    // Warm the shared projection families before fanning out.
    {
        CodeParams c = cfg.code;
        while (c.r > 1) {
            projection_family(c.m, cfg.k);
            c = CodeParams(c.m - cfg.k, c.r - cfg.k);
        }
    }

    struct Tally {
        std::uint64_t errors = 0;
        std::uint64_t converged = 0;
        std::uint64_t iterations = 0;
    };
    std::vector<Tally> tallies(workers);
    const Word zero(cfg.code.blocklength());

    auto work = [&](unsigned w) {
        Tally& tally = tallies[w];
        for (std::uint64_t t = w; t < cfg.num_trials; t += workers) {
            CounterStream noise = trial_stream(cfg.master_seed, t, StreamLane::noise);
            const Word received = bsc_transmit(zero, cfg.p, noise);
            const DecodeOutcome outcome = rpa_decode(received, rpa_cfg);
            if (!outcome.estimate.all_zero()) ++tally.errors;
            if (outcome.converged) ++tally.converged;
            tally.iterations += std::uint64_t(outcome.iterations_used);
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    Tally total;
    for (const Tally& t : tallies) {
        total.errors += t.errors;
        total.converged += t.converged;
        total.iterations += t.iterations;
    }

    TrialResult result;
    result.trials = cfg.num_trials;
    result.block_errors = total.errors;
    result.p_err_hat = double(total.errors) / double(cfg.num_trials);
    const auto ci = wilson_interval(total.errors, cfg.num_trials);
    result.ci_low = ci.first;
    result.ci_high = ci.second;
    result.converged_fraction = double(total.converged) / double(cfg.num_trials);
    result.mean_iterations = double(total.iterations) / double(cfg.num_trials);
    result.rng_id = CounterStream::kGeneratorId;
    return result;
}

struct ProjectionNoiseReport {
    double empirical = 0.0;
    double expected = 0.0;
    double z_score = 0.0;
};

// Draws Ber(p) noise words of length 2^m, applies j nested projections along
// a fixed subspace chain (the span of the k lowest coordinates at each
// level), and compares the fraction of ones against p^(j*k).
inline ProjectionNoiseReport projection_noise_test(int m, int k, int j, double p,
                                                   std::uint64_t samples,
                                                   std::uint64_t master_seed) {
    if (j < 1 || j * k > m - 1)
        throw std::invalid_argument("projection_noise_test: need 1 <= j and j*k <= m-1");
    if (samples < 1) throw std::invalid_argument("projection_noise_test: samples must be >= 1");

    std::vector<CosetIndexMap> chain;
    for (int level = 0; level < j; ++level) {
        std::vector<std::uint32_t> basis;
        for (int b = 0; b < k; ++b) basis.push_back(std::uint32_t{1} << b);
        chain.emplace_back(Subspace::from_vectors(m - level * k, basis));
    }

    const Word zero(std::size_t{1} << m);
    std::uint64_t ones = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        CounterStream stream = trial_stream(master_seed, s, StreamLane::projection);
        Word w = bsc_transmit(zero, p, stream);
        for (const CosetIndexMap& map : chain) w = project(w, map);
        ones += w.weight();
    }

    const std::size_t projected_len = std::size_t{1} << (m - j * k);
    const double total_bits = double(samples) * double(projected_len);
    ProjectionNoiseReport report;
    report.empirical = double(ones) / total_bits;
    report.expected = p_level(p, j * k);
    const double sigma = std::sqrt(report.expected * (1.0 - report.expected) / total_bits);
    report.z_score = sigma > 0.0 ? (report.empirical - report.expected) / sigma : 0.0;
    return report;
}

}  // namespace rmlab
