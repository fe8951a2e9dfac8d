// Command-line front end: encode, decode, decode-fo, subspaces, bounds and
// simulate subcommands over the rmlab library.  All randomized subcommands
// take an explicit --seed; reals print with 12 significant digits.

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmlab/rmlab.hpp"

namespace {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> parse_real_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": malformed list entry '" + item + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
    std::vector<int> out;
    for (double v : parse_real_list(csv, what)) out.push_back(int(v));
    return out;
}

rmlab::MessageVector parse_message(const std::string& s) {
    rmlab::MessageVector msg;
    msg.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("malformed message string: expected 0/1, got '" +
                                        std::string(1, c) + "'");
        msg.push_back(c == '1');
    }
    return msg;
}

void print_trace(const rmlab::TraceNode& node, int parent_iter, std::ostream& os) {
    os << std::string(std::size_t(node.level) * 2, ' ') << "node level=" << node.level;
    if (parent_iter > 0) os << " iter=" << parent_iter;
    os << " code=RM(" << node.code.m << "," << node.code.r << ") flips=[";
    for (std::size_t i = 0; i < node.per_iteration.size(); ++i)
        os << (i ? "," : "") << node.per_iteration[i].flip_count;
    os << "]\n";
    for (std::size_t i = 0; i < node.per_iteration.size(); ++i)
        for (const rmlab::TraceNode& child : node.per_iteration[i].children)
            print_trace(child, int(i) + 1, os);
}

const char* kSimulateCsvHeader =
    "m,r,k,p,max_iter,trials,seed,rng,block_errors,p_err_hat,ci_low,ci_high,"
    "converged_fraction,mean_iterations";

std::string simulate_csv_row(const rmlab::TrialConfig& cfg, int max_iter_used,
                             const rmlab::TrialResult& res) {
    std::ostringstream os;
    os << cfg.code.m << ',' << cfg.code.r << ',' << cfg.k << ',' << fmt_real(cfg.p) << ','
       << max_iter_used << ',' << res.trials << ',' << cfg.master_seed << ',' << res.rng_id << ','
       << res.block_errors << ',' << fmt_real(res.p_err_hat) << ',' << fmt_real(res.ci_low) << ','
       << fmt_real(res.ci_high) << ',' << fmt_real(res.converged_fraction) << ','
       << fmt_real(res.mean_iterations);
    return os.str();
}

const char* kBoundsSweepCsvHeader =
    "m,r,k,p,epsilon,log2_thm1,log2_thm2,gamma,rho,rho_bar,thm1_vacuous,thm2_vacuous,window_ok";

int run_encode(int m, int r, const std::string& msg_str) {
    const rmlab::CodeParams params(m, r);
    const rmlab::Word cw = rmlab::encode(parse_message(msg_str), params);
    std::cout << cw.to_ascii() << "\n";
    return 0;
}

int run_decode(int m, int r, int k, int max_iter, const std::string& word_str, bool trace) {
    const rmlab::CodeParams params(m, r);
    const rmlab::RpaConfig cfg(params, k, max_iter);
    const rmlab::Word y = rmlab::Word::parse(word_str, params.blocklength());
    const rmlab::DecodeOutcome outcome = rmlab::rpa_decode(y, cfg, trace);
    std::cout << "estimate " << outcome.estimate.to_ascii() << "\n"
              << "converged " << (outcome.converged ? 1 : 0) << "\n"
              << "iterations " << outcome.iterations_used << "\n"
              << "first_order_ties " << outcome.first_order_ties << "\n";
    if (outcome.trace) print_trace(*outcome.trace, 0, std::cout);
    return 0;
}

int run_decode_fo(const std::string& word_str, int m_prime) {
    if (m_prime == 0) {
        // Infer the length from a plain 0/1 word.
        const std::size_t n = word_str.size();
        if (word_str.find_first_not_of("01") != std::string::npos || n < 2 ||
            (n & (n - 1)) != 0)
            throw std::invalid_argument(
                "decode-fo: pass --m, or a 0/1 word whose length is a power of two");
        while ((std::size_t{1} << m_prime) < n) ++m_prime;
    }
    const std::size_t len = std::size_t{1} << m_prime;
    const rmlab::Word y = rmlab::Word::parse(word_str, len);
    const rmlab::FirstOrderEstimate est = rmlab::ml_decode_first_order(y);
    char s_hex[32];
    std::snprintf(s_hex, sizeof s_hex, "0x%x", est.s);
    std::cout << "s " << s_hex << "\n"
              << "sigma " << (est.sigma > 0 ? "+1" : "-1") << "\n"
              << "word " << rmlab::estimate_to_word(est, m_prime).to_ascii() << "\n";
    return 0;
}

int run_subspaces(int m, int k, bool count_only) {
    if (count_only) {
        std::cout << rmlab::uint128_to_string(rmlab::gaussian_binomial(m, k)) << "\n";
        return 0;
    }
    for (const rmlab::Subspace& s : rmlab::enumerate_subspaces(m, k)) {
        bool first = true;
        for (std::uint32_t v : s.basis()) {
            char hex[32];
            std::snprintf(hex, sizeof hex, "0x%x", v);
            std::cout << (first ? "" : " ") << hex;
            first = false;
        }
        std::cout << "\n";
    }
    return 0;
}

int run_bounds_single(int m, int r, int k, double p, double epsilon, double delta, double beta,
                      const std::string& format) {
    using namespace rmlab;
    const double eta_p = eta(p);
    const double pbar = p_bar(p, r);
    const double window = eta(pbar);
    const double phat = p_hat(p, r, k);
    const LogBound thm1 = bound_thm1(m, r, p, epsilon);
    const LogBound thm2 = bound_thm2(m, r, k, p, epsilon);
    const LogBound two_iter = bound_two_iter(m, p, epsilon);
    const double gamma = gamma_radius(m, r, beta);
    const double correctable = correctable_errors(m, r, beta, delta);
    const double c = rate_threshold_c(p);
    const double rho = rho_exponent(m, r, delta, p);
    const double rho_bar = rho_bar_exponent(m, r, delta, p);
    const std::string n_km = uint128_to_string(gaussian_binomial(m, k));

    if (format == "json") {
        nlohmann::json j{{"m", m},
                         {"r", r},
                         {"k", k},
                         {"p", p},
                         {"epsilon", epsilon},
                         {"delta", delta},
                         {"beta", beta},
                         {"eta_p", eta_p},
                         {"p_bar", pbar},
                         {"eta_p_bar", window},
                         {"p_hat", phat},
                         {"gaussian_binomial", n_km},
                         {"log2_thm1", thm1.log2_value},
                         {"thm1_vacuous", thm1.vacuous},
                         {"log2_thm2", thm2.log2_value},
                         {"thm2_vacuous", thm2.vacuous},
                         {"log2_two_iter", two_iter.log2_value},
                         {"two_iter_vacuous", two_iter.vacuous},
                         {"gamma", gamma},
                         {"correctable_errors", correctable},
                         {"c", c},
                         {"rho", rho},
                         {"rho_bar", rho_bar}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "eta_p " << fmt_real(eta_p) << "\n"
              << "p_bar " << fmt_real(pbar) << "\n"
              << "eta_p_bar " << fmt_real(window) << "\n"
              << "p_hat " << fmt_real(phat) << "\n"
              << "gaussian_binomial " << n_km << "\n"
              << "log2_thm1 " << fmt_real(thm1.log2_value) << "\n"
              << "thm1_vacuous " << (thm1.vacuous ? 1 : 0) << "\n"
              << "log2_thm2 " << fmt_real(thm2.log2_value) << "\n"
              << "thm2_vacuous " << (thm2.vacuous ? 1 : 0) << "\n"
              << "log2_two_iter " << fmt_real(two_iter.log2_value) << "\n"
              << "two_iter_vacuous " << (two_iter.vacuous ? 1 : 0) << "\n"
              << "gamma " << fmt_real(gamma) << "\n"
              << "correctable_errors " << fmt_real(correctable) << "\n"
              << "c " << fmt_real(c) << "\n"
              << "rho " << fmt_real(rho) << "\n"
              << "rho_bar " << fmt_real(rho_bar) << "\n";
    return 0;
}

int run_bounds_sweep(const std::vector<int>& ms, const std::vector<int>& rs, int k,
                     const std::vector<double>& ps, const std::vector<double>& epsilons,
                     double delta, double beta) {
    using namespace rmlab;
    std::cout << kBoundsSweepCsvHeader << "\n";
    for (int m : ms)
        for (int r : rs)
            for (double p : ps)
                for (double epsilon : epsilons) {
                    const double gamma = gamma_radius(m, r, beta);
                    const double rho = rho_exponent(m, r, delta, p);
                    const double rho_bar = rho_bar_exponent(m, r, delta, p);
                    const bool window_ok = epsilon > 0.0 && epsilon < eta(p_bar(p, r));
                    std::string t1 = "nan", t2 = "nan", v1 = "nan", v2 = "nan";
                    if (window_ok) {
                        const LogBound thm1 = bound_thm1(m, r, p, epsilon);
                        t1 = fmt_real(thm1.log2_value);
                        v1 = thm1.vacuous ? "1" : "0";
                        if ((r - 1) % k == 0) {
                            const LogBound thm2 = bound_thm2(m, r, k, p, epsilon);
                            t2 = fmt_real(thm2.log2_value);
                            v2 = thm2.vacuous ? "1" : "0";
                        }
                    }
                    std::cout << m << ',' << r << ',' << k << ',' << fmt_real(p) << ','
                              << fmt_real(epsilon) << ',' << t1 << ',' << t2 << ','
                              << fmt_real(gamma) << ',' << fmt_real(rho) << ','
                              << fmt_real(rho_bar) << ',' << v1 << ',' << v2 << ','
                              << (window_ok ? 1 : 0) << "\n";
                }
    return 0;
}

int run_simulate_one(const rmlab::TrialConfig& cfg, unsigned workers, const std::string& format,
                     bool with_header) {
    const rmlab::RpaConfig rpa_cfg(cfg.code, cfg.k, cfg.max_iter);  // resolves the default cap
    const rmlab::TrialResult res = rmlab::run_trials(cfg, workers);
    if (format == "json") {
        nlohmann::json j{{"config",
                          {{"m", cfg.code.m},
                           {"r", cfg.code.r},
                           {"k", cfg.k},
                           {"p", cfg.p},
                           {"max_iter", rpa_cfg.max_iter},
                           {"trials", cfg.num_trials},
                           {"seed", cfg.master_seed}}},
                         {"result",
                          {{"rng", res.rng_id},
                           {"trials", res.trials},
                           {"block_errors", res.block_errors},
                           {"p_err_hat", res.p_err_hat},
                           {"ci_low", res.ci_low},
                           {"ci_high", res.ci_high},
                           {"converged_fraction", res.converged_fraction},
                           {"mean_iterations", res.mean_iterations}}}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (with_header) std::cout << kSimulateCsvHeader << "\n";
    std::cout << simulate_csv_row(cfg, rpa_cfg.max_iter, res) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reed-Muller RPA decoding laboratory"};
    app.require_subcommand(1);

    // encode
    int enc_m = 0, enc_r = 0;
    std::string enc_msg;
    auto* enc = app.add_subcommand("encode", "Encode a message into RM(m,r)");
    enc->add_option("--m", enc_m, "number of variables")->required();
    enc->add_option("--r", enc_r, "order")->required();
    enc->add_option("--msg", enc_msg, "message bits, degree-ascending monomial order")->required();

    // decode
    int dec_m = 0, dec_r = 0, dec_k = 1, dec_max_iter = 0;
    bool dec_trace = false;
    std::string dec_word;
    auto* dec = app.add_subcommand("decode", "RPA-decode a received word");
    dec->add_option("word", dec_word, "received word (0/1 ASCII or hex)")->required();
    dec->add_option("--m", dec_m, "number of variables")->required();
    dec->add_option("--r", dec_r, "order")->required();
    dec->add_option("--k", dec_k, "projection subspace dimension");
    dec->add_option("--max-iter", dec_max_iter, "iteration cap (default m)");
    dec->add_flag("--trace", dec_trace, "emit the projection-aggregation tree");

    // decode-fo
    std::string fo_word;
    int fo_m = 0;
    auto* fo = app.add_subcommand("decode-fo", "ML-decode a first-order RM word");
    fo->add_option("word", fo_word, "received word (0/1 ASCII or hex)")->required();
    fo->add_option("--m", fo_m, "number of variables of RM(m,1); inferred from 0/1 input");

    // subspaces
    int sub_m = 0, sub_k = 0;
    bool sub_count = false;
    auto* sub = app.add_subcommand("subspaces", "Enumerate k-dimensional subspaces of F2^m");
    sub->add_option("m", sub_m, "ambient dimension")->required();
    sub->add_option("k", sub_k, "subspace dimension")->required();
    sub->add_flag("--count", sub_count, "print only the Gaussian binomial count");

    // bounds (+ sweep)
    int b_m = 0, b_r = 0, b_k = 1;
    double b_p = 0.0, b_eps = 0.0, b_delta = 0.5, b_beta = 0.5;
    std::string b_format = "text";
    std::string b_m_list, b_r_list, b_p_list, b_eps_list;
    auto* bounds = app.add_subcommand("bounds", "Evaluate the closed-form error bounds");
    bounds->add_option("--m", b_m, "number of variables");
    bounds->add_option("--r", b_r, "order");
    bounds->add_option("--k", b_k, "projection subspace dimension");
    bounds->add_option("--p", b_p, "BSC crossover probability");
    bounds->add_option("--epsilon", b_eps, "concentration slack");
    bounds->add_option("--delta", b_delta, "exponent parameter delta");
    bounds->add_option("--beta", b_beta, "radius parameter beta");
    bounds->add_option("--format", b_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    auto* bounds_sweep = bounds->add_subcommand("sweep", "CSV over a parameter grid");
    bounds_sweep->fallthrough();
    bounds_sweep->add_option("--m-list", b_m_list, "comma-separated m values")->required();
    bounds_sweep->add_option("--r-list", b_r_list, "comma-separated r values")->required();
    bounds_sweep->add_option("--p-list", b_p_list, "comma-separated p values")->required();
    bounds_sweep->add_option("--epsilon-list", b_eps_list, "comma-separated epsilon values")
        ->required();

    // simulate (+ sweep)
    int s_m = 0, s_r = 0, s_k = 1, s_max_iter = 0;
    double s_p = 0.0;
    std::uint64_t s_trials = 0, s_seed = 0;
    unsigned s_workers = 1;
    std::string s_format = "csv", s_p_list;
    bool s_seed_given = false;
    auto* simc = app.add_subcommand("simulate", "Monte Carlo block-error estimation");
    simc->add_option("--m", s_m, "number of variables")->required();
    simc->add_option("--r", s_r, "order")->required();
    simc->add_option("--k", s_k, "projection subspace dimension");
    simc->add_option("--p", s_p, "BSC crossover probability");
    simc->add_option("--trials", s_trials, "number of Monte Carlo trials")->required();
    auto* seed_opt = simc->add_option("--seed", s_seed, "master seed (required)");
    simc->add_option("--max-iter", s_max_iter, "iteration cap (default m)");
    simc->add_option("--workers", s_workers, "worker threads");
    simc->add_option("--format", s_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    auto* sim_sweep = simc->add_subcommand("sweep", "CSV rows over a list of p values");
    sim_sweep->fallthrough();
    sim_sweep->add_option("--p-list", s_p_list, "comma-separated p values")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enc) return run_encode(enc_m, enc_r, enc_msg);
        if (*dec) return run_decode(dec_m, dec_r, dec_k, dec_max_iter, dec_word, dec_trace);
        if (*fo) return run_decode_fo(fo_word, fo_m);
        if (*sub) return run_subspaces(sub_m, sub_k, sub_count);
        if (*bounds) {
            if (*bounds_sweep)
                return run_bounds_sweep(parse_int_list(b_m_list, "--m-list"),
                                        parse_int_list(b_r_list, "--r-list"), b_k,
                                        parse_real_list(b_p_list, "--p-list"),
                                        parse_real_list(b_eps_list, "--epsilon-list"), b_delta,
                                        b_beta);
            if (bounds->count("--m") == 0 || bounds->count("--r") == 0 ||
                bounds->count("--p") == 0 || bounds->count("--epsilon") == 0)
                throw std::invalid_argument("bounds: --m, --r, --p and --epsilon are required");
            return run_bounds_single(b_m, b_r, b_k, b_p, b_eps, b_delta, b_beta, b_format);
        }
        if (*simc) {
            s_seed_given = seed_opt->count() > 0;
            if (!s_seed_given)
                throw std::invalid_argument("simulate: --seed is required (reproducibility contract)");
            rmlab::TrialConfig cfg;
            cfg.code = rmlab::CodeParams(s_m, s_r);
            cfg.k = s_k;
            cfg.max_iter = s_max_iter;
            cfg.num_trials = s_trials;
            cfg.master_seed = s_seed;
            if (*sim_sweep) {
                std::cout << kSimulateCsvHeader << "\n";
                for (double p : parse_real_list(s_p_list, "--p-list")) {
                    cfg.p = p;
                    const rmlab::RpaConfig rpa_cfg(cfg.code, cfg.k, cfg.max_iter);
                    const rmlab::TrialResult res = rmlab::run_trials(cfg, s_workers);
                    std::cout << simulate_csv_row(cfg, rpa_cfg.max_iter, res) << "\n";
                }
                return 0;
            }
            if (simc->count("--p") == 0)
                throw std::invalid_argument("simulate: --p is required");
            cfg.p = s_p;
            return run_simulate_one(cfg, s_workers, s_format, true);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
