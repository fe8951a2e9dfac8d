#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rmlab/code.hpp"
#include "rmlab/hadamard.hpp"
#include "rmlab/subspace.hpp"
#include "rmlab/word.hpp"

namespace rmlab {

struct RpaConfig {
    CodeParams params;
    int k = 1;
    int max_iter = 1;

    // max_iter defaults to m.
    explicit RpaConfig(CodeParams p, int k_ = 1, int max_iter_ = 0)
        : params(p), k(k_), max_iter(max_iter_ > 0 ? max_iter_ : p.m) {
        if (k < 1)
            throw std::invalid_argument("RpaConfig: k must be >= 1, got " + std::to_string(k));
        if (params.r > 1 && (params.r - 1) % k != 0)
            throw std::invalid_argument("RpaConfig: k must divide r-1 so recursion reaches first-order codes (r=" +
                                        std::to_string(params.r) + ", k=" + std::to_string(k) + ")");
    }
};

// One node of the projection-aggregation tree.  A node of order >= 2 records,
// per iteration, the number of bits flipped by aggregation and one child per
// subspace; first-order and order-zero leaves record the Hamming distance
// between their input and their decoded estimate as the flip count.
struct TraceNode {
    struct Iteration {
        std::uint64_t flip_count = 0;
        std::vector<TraceNode> children;
    };

    int level = 0;
    CodeParams code;
    std::vector<Iteration> per_iteration;
};

struct DecodeOutcome {
    Word estimate;
    bool converged = false;
    int iterations_used = 0;
    // Number of first-order ML calls whose correlation maximum was tied.
    int first_order_ties = 0;
    std::optional<TraceNode> trace;
};

// All coset index maps for the k-dimensional subspaces of F2^m, in the
// deterministic enumeration order.  Every node at the same tree level uses
// the same family, so families are built once and shared read-only.
struct ProjectionFamily {
    int m = 0;
    int k = 0;
    std::vector<CosetIndexMap> maps;
};

inline const ProjectionFamily& projection_family(int m, int k) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<ProjectionFamily>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{m, k}];
    if (!slot) {
        auto family = std::make_unique<ProjectionFamily>();
        family->m = m;
        family->k = k;
        for (Subspace& s : enumerate_subspaces(m, k)) family->maps.emplace_back(std::move(s));
        slot = std::move(family);
    }
    return *slot;
}

// The aggregation subroutine: phi(x) counts the subspaces whose raw
// projection of y disagrees with the decoded projection on the coset of x;
// bit x is flipped iff phi(x) > n/2 (strictly; no flip at an exact half).
inline Word aggregate(const Word& y, const std::vector<Word>& decoded_projections,
                      const std::vector<CosetIndexMap>& maps) {
    const std::size_t n = maps.size();
    if (n == 0 || decoded_projections.size() != n)
        throw std::invalid_argument("aggregate: need one decoded projection per coset map");
    std::vector<std::uint32_t> phi(y.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const CosetIndexMap& map = maps[i];
        if (y.size() != (std::size_t{1} << map.ambient_m()) ||
            decoded_projections[i].size() != map.coset_count())
            throw std::invalid_argument("aggregate: inconsistent word/projection lengths");
        const Word diff = project(y, map) ^ decoded_projections[i];
        std::uint32_t idx = map.index_of(0);
        for (std::size_t z = 0; z < y.size(); ++z) {
            phi[z] += diff.get(idx);
            if (z + 1 < y.size())
                idx ^= map.increment_delta(std::countr_zero(std::uint64_t(z) + 1));
        }
    }
    Word out = y;
    for (std::size_t z = 0; z < y.size(); ++z)
        if (2 * std::uint64_t(phi[z]) > n) out.flip(z);
    return out;
}

namespace detail {

struct RpaResult {
    Word word;
    bool converged = false;
    int iterations = 0;
};

inline RpaResult rpa_recurse(const Word& y, const CodeParams& code, int k, int max_iter,
                             int level, int& tie_count, TraceNode* trace) {
    if (trace) {
        trace->level = level;
        trace->code = code;
    }
    if (code.r == 0) {
        // Repetition code: majority vote, ties to 0.
        Word est(y.size());
        if (2 * y.weight() > y.size()) {
            for (std::size_t i = 0; i < y.size(); ++i) est.set(i, true);
        }
        if (trace) trace->per_iteration.push_back({Word::distance(y, est), {}});
        return {std::move(est), true, 1};
    }
    if (code.r == 1) {
        const FirstOrderEstimate fo = ml_decode_first_order(y);
        if (fo.tied) ++tie_count;
        Word est = estimate_to_word(fo, code.m);
        if (trace) trace->per_iteration.push_back({Word::distance(y, est), {}});
        return {std::move(est), true, 1};
    }

    const ProjectionFamily& family = projection_family(code.m, k);
    const CodeParams child_code(code.m - k, code.r - k);
    Word current = y;
    for (int iter = 1; iter <= max_iter; ++iter) {
        TraceNode::Iteration* iter_trace = nullptr;
        if (trace) {
            trace->per_iteration.emplace_back();
            iter_trace = &trace->per_iteration.back();
        }
        std::vector<Word> decoded;
        decoded.reserve(family.maps.size());
        for (const CosetIndexMap& map : family.maps) {
            Word proj = project(current, map);
            if (code.r - k == 1) {
                const FirstOrderEstimate fo = ml_decode_first_order(proj);
                if (fo.tied) ++tie_count;
                Word est = estimate_to_word(fo, child_code.m);
                if (iter_trace) {
                    TraceNode leaf;
                    leaf.level = level + 1;
                    leaf.code = child_code;
                    leaf.per_iteration.push_back({Word::distance(proj, est), {}});
                    iter_trace->children.push_back(std::move(leaf));
                }
                decoded.push_back(std::move(est));
            } else {
                TraceNode* child_trace = nullptr;
                if (iter_trace) {
                    iter_trace->children.emplace_back();
                    child_trace = &iter_trace->children.back();
                }
                RpaResult sub = rpa_recurse(proj, child_code, k, max_iter, level + 1,
                                            tie_count, child_trace);
                decoded.push_back(std::move(sub.word));
            }
        }
        Word next = aggregate(current, decoded, family.maps);
        const std::uint64_t flips = Word::distance(current, next);
        if (iter_trace) iter_trace->flip_count = flips;
        if (flips == 0) return {std::move(current), true, iter};
        current = std::move(next);
    }
    return {std::move(current), false, max_iter};
}

}  // namespace detail

// Algorithm: up to max_iter rounds of project / decode projections
// (recursively for r-k > 1, by first-order ML for r-k = 1) / aggregate,
// stopping early at a fixed point.  r = 1 is a single ML call and r = 0 a
// majority vote.  For r >= 2 the returned word is the fixed point or the
// last iterate, which need not be a codeword when converged is false.
inline DecodeOutcome rpa_decode(const Word& y, const RpaConfig& cfg, bool with_trace = false) {
    if (y.size() != cfg.params.blocklength())
        throw std::invalid_argument("rpa_decode: word length " + std::to_string(y.size()) +
                                    " does not match blocklength " +
                                    std::to_string(cfg.params.blocklength()));
    DecodeOutcome outcome;
    TraceNode root;
    int ties = 0;
    detail::RpaResult res = detail::rpa_recurse(y, cfg.params, cfg.k, cfg.max_iter, 0, ties,
                                                with_trace ? &root : nullptr);
    outcome.estimate = std::move(res.word);
    outcome.converged = res.converged;
    outcome.iterations_used = res.iterations;
    outcome.first_order_ties = ties;
    if (with_trace) outcome.trace = std::move(root);
    return outcome;
}

struct OracleCheck {
    DecodeOutcome rpa;
    Word ml;
    bool agree = false;
};

inline OracleCheck decode_with_oracle_check(const Word& y, const RpaConfig& cfg) {
    OracleCheck check;
    check.rpa = rpa_decode(y, cfg);
    check.ml = brute_force_ml(y, cfg.params);
    check.agree = check.rpa.estimate == check.ml;
    return check;
}

}  // namespace rmlab
