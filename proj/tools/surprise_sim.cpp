// surprise_sim: election-surprise simulator CLI.
//
//   simulate      one Monte Carlo trial from a config file
//   sweep         full parameter sweep, plot-ready CSV out
//   theory        analytic thresholds / expectations / bounds for one point
//   ingest-check  validate region vote + coordinate files
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "surprise/harness.hpp"
#include "surprise/parallel.hpp"
#include "surprise/theory.hpp"

namespace {

using namespace surprise;

int run_simulate(const std::string& config_path, std::uint64_t seed, int workers) {
    const auto cfg = config::Parsed::from_file(config_path);
    const auto base = harness::base_from_config(cfg);
    const auto setup = harness::resolve_setup(base.source, base.net, base.media, seed);

    const auto point = harness::point_seed(seed, setup.block, setup.media);
    const auto result = harness::run_trial(setup, harness::trial_seed(point, 0), workers);

    const auto& e = setup.electorate;
    const MediaPrior prior = build_prior(setup.media, e);
    std::cout << "n=" << e.size() << " n1=" << e.n1() << " n2=" << e.n2()
              << " margin=" << e.margin()
              << " winner=" << (e.winner() == Candidate::A1 ? "a1" : "a2") << "\n";
    std::cout << "prior alpha=" << prior.alpha << " beta=" << prior.beta << "\n";
    std::cout << std::fixed << std::setprecision(6);
    std::cout << "majority_surprised_fraction=" << result.majority_fraction << "\n";
    std::cout << "minority_surprised_fraction=" << result.minority_fraction << "\n";
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path, int workers) {
    const auto cfg = config::Parsed::from_file(config_path);
    const auto spec = harness::sweep_from_config(cfg);
    for (const auto& key : cfg.unused_keys())
        std::cerr << "warning: unused config key '" << key << "'\n";
    const auto result = harness::run_sweep(spec, workers);
    if (out_path == "-") {
        harness::emit_csv(result, std::cout);
    } else {
        harness::emit_csv(result, std::filesystem::path(out_path));
        std::cerr << "wrote " << result.rows.size() << " rows to " << out_path << "\n";
    }
    return 0;
}

void print_verdict(const theory::RegimeParams& rp, const theory::TheoryVerdict& v) {
    std::ostream& out = std::cout;
    out << std::left;
    out << std::setw(26) << "n" << rp.n << "\n";
    out << std::setw(26) << "epsilon" << rp.epsilon << "\n";
    out << std::setw(26) << "p / q" << rp.p << " / " << rp.q << "\n";
    out << std::setw(26) << "media regime" << to_string(rp.media.regime);
    if (rp.media.regime == MediaRegime::Influential) out << " (c=" << rp.media.c << ")";
    if (rp.media.regime == MediaRegime::Uninfluential)
        out << " (a=" << rp.media.a << ", gamma=" << rp.media.gamma << ")";
    out << "\n";
    out << std::setw(26) << "media delta" << rp.media.delta << "\n";
    out << std::setw(26) << "majority threshold (p>)" << v.majority_threshold << "\n";
    out << std::setw(26) << "minority threshold (p>)" << v.minority_threshold << "\n";
    if (v.all_unsurprised_range.empty()) {
        out << std::setw(26) << "all-unsurprised p range" << "(empty)\n";
    } else {
        out << std::setw(26) << "all-unsurprised p range" << "(" << v.all_unsurprised_range.lo
            << ", " << v.all_unsurprised_range.hi << ")\n";
    }
    out << std::setw(26) << "E[X] majority" << v.expectation_majority << "\n";
    out << std::setw(26) << "E[X] minority" << v.expectation_minority << "\n";
    out << std::setw(26) << "deviation scale" << v.critical_scale << "\n";
    out << std::setw(26) << "majority verdict" << theory::to_string(v.majority) << "\n";
    out << std::setw(26) << "minority verdict" << theory::to_string(v.minority) << "\n";
    out << std::setw(26) << "per-voter bound" << v.per_voter_bound << "\n";
    out << std::setw(26) << "union bound majority" << v.union_bound_majority << "\n";
    out << std::setw(26) << "union bound minority" << v.union_bound_minority << " (tight "
        << v.union_bound_minority_tight << ")\n";
}

void print_verdict_csv(const theory::RegimeParams& rp, const theory::TheoryVerdict& v) {
    std::cout << "n,epsilon,p,q,regime,weight,gamma,delta,majority_threshold,minority_threshold,"
                 "range_lo,range_hi,expectation_majority,expectation_minority,critical_scale,"
                 "per_voter_bound,union_majority,union_minority,union_minority_tight,"
                 "verdict_majority,verdict_minority\n";
    const double weight = rp.media.regime == MediaRegime::Influential ? rp.media.c : rp.media.a;
    const double gamma = rp.media.regime == MediaRegime::Uninfluential ? rp.media.gamma : 0.0;
    std::cout << rp.n << ',' << rp.epsilon << ',' << rp.p << ',' << rp.q << ','
              << to_string(rp.media.regime) << ',' << weight << ',' << gamma << ','
              << rp.media.delta << ',' << v.majority_threshold << ',' << v.minority_threshold
              << ',' << v.all_unsurprised_range.lo << ',' << v.all_unsurprised_range.hi << ','
              << v.expectation_majority << ',' << v.expectation_minority << ','
              << v.critical_scale << ',' << v.per_voter_bound << ',' << v.union_bound_majority
              << ',' << v.union_bound_minority << ',' << v.union_bound_minority_tight << ','
              << theory::to_string(v.majority) << ',' << theory::to_string(v.minority) << "\n";
}

int run_ingest_check(const std::string& votes, const std::string& coords,
                     std::optional<std::int64_t> sample_size, std::uint64_t seed) {
    const auto records = ingest::load_regions(votes, coords);
    std::int64_t a1 = 0, a2 = 0;
    for (const auto& r : records) {
        a1 += r.votes_a1;
        a2 += r.votes_a2;
    }
    std::cout << "regions=" << records.size() << " ballots=" << (a1 + a2) << " votes_a1=" << a1
              << " votes_a2=" << a2 << " share_a1=" << std::fixed << std::setprecision(6)
              << double(a1) / double(a1 + a2) << "\n";
    if (sample_size) {
        const auto sample = ingest::sample_voters(records, *sample_size, seed);
        const auto& e = sample.electorate;
        std::cout << "sample k=" << *sample_size << " seed=" << seed << " n1=" << e.n1()
                  << " n2=" << e.n2() << " margin=" << e.margin()
                  << " winner=" << (e.winner() == Candidate::A1 ? "a1" : "a2") << "\n";
    }
    std::cout << "OK\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-candidate election surprise simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path = "-";
    std::uint64_t seed = 0;
    int workers = 0;  // 0 = SURPRISE_SIM_THREADS or hardware

    auto* simulate = app.add_subcommand("simulate", "run a single trial");
    simulate->add_option("--config", config_path, "config file")->required();
    simulate->add_option("--seed", seed, "master seed (default 0)");
    simulate->add_option("--workers", workers, "worker threads");

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--out", out_path, "output CSV path, - for stdout");
    sweep->add_option("--workers", workers, "worker threads");

    auto* theory_cmd = app.add_subcommand("theory", "analytic verdict for a parameter point");
    std::int64_t n1 = 0, n2 = 0, n = 0;
    double epsilon = 0.0, p = 0.0, q = 0.0, delta = 0.0;
    std::optional<double> c, a;
    double gamma = 0.5;
    bool as_csv = false;
    theory_cmd->add_option("--n1", n1, "majority-class count");
    theory_cmd->add_option("--n2", n2, "minority-class count");
    theory_cmd->add_option("--n", n, "total voters (with --epsilon)");
    theory_cmd->add_option("--epsilon", epsilon, "margin (with --n)");
    theory_cmd->add_option("--p", p, "intra-class probability")->required();
    theory_cmd->add_option("--q", q, "inter-class probability")->required();
    theory_cmd->add_option("--c", c, "influential global weight");
    theory_cmd->add_option("--a", a, "uninfluential global weight");
    theory_cmd->add_option("--gamma", gamma, "influence exponent (with --a)");
    theory_cmd->add_option("--delta", delta, "media bias toward the loser");
    theory_cmd->add_flag("--csv", as_csv, "emit the CSV row only");

    auto* ingest_cmd = app.add_subcommand("ingest-check", "validate region data files");
    std::string votes, coords;
    std::optional<std::int64_t> sample_size;
    ingest_cmd->add_option("--votes", votes, "votes CSV")->required();
    ingest_cmd->add_option("--coords", coords, "coordinates CSV")->required();
    ingest_cmd->add_option("--sample-size", sample_size, "draw a sample of this size");
    ingest_cmd->add_option("--seed", seed, "sample seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_simulate(config_path, seed, workers);
        if (sweep->parsed()) return run_sweep_cmd(config_path, out_path, workers);
        if (theory_cmd->parsed()) {
            if (n1 == 0 && n2 == 0) {
                if (n == 0) throw std::invalid_argument("theory: give --n1/--n2 or --n/--epsilon");
                n1 = std::llround(double(n) * (0.5 + epsilon));
                n2 = n - n1;
            }
            MediaSpec media;
            if (c && a) throw std::invalid_argument("theory: give --c or --a, not both");
            if (c) {
                media.regime = MediaRegime::Influential;
                media.c = *c;
            } else if (a) {
                media.regime = MediaRegime::Uninfluential;
                media.a = *a;
                media.gamma = gamma;
            }
            media.delta = delta;
            const auto rp = theory::RegimeParams::from(Electorate::with_counts(n1, n2),
                                                       BlockProbs::make(p, q, true), media);
            const auto verdict = theory::classify_regime(rp);
            if (as_csv) print_verdict_csv(rp, verdict);
            else print_verdict(rp, verdict);
            return 0;
        }
        if (ingest_cmd->parsed()) return run_ingest_check(votes, coords, sample_size, seed);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
