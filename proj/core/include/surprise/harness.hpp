#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "surprise/config.hpp"
#include "surprise/electorate.hpp"
#include "surprise/geo.hpp"
#include "surprise/ingest.hpp"
#include "surprise/media.hpp"
#include "surprise/netgen.hpp"

namespace surprise::harness {

enum class NetBackend : std::uint8_t { Auto, Homogeneous, Edgewise };

std::string to_string(NetBackend b);
NetBackend backend_from_string(const std::string& name);

struct NetConfig {
    double p = 0.0;
    double q = 0.0;
    NetBackend backend = NetBackend::Auto;
    bool geo_enabled = false;
    double geo_weight = 0.1;
};

struct SyntheticSource {
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
};

struct IngestSource {
    std::filesystem::path votes;
    std::filesystem::path coords;
    std::int64_t sample_size = 0;
    bool swap_options = false;
};

using ElectorateSource = std::variant<SyntheticSource, IngestSource>;

/// Fully resolved inputs of one Monte Carlo trial.
struct TrialSetup {
    Electorate electorate;
    std::optional<GeoKernel> geo;
    BlockProbs block;
    NetBackend backend = NetBackend::Auto;
    MediaSpec media;
};

/// Builds a TrialSetup: synthetic counts directly, or an ingest sample drawn
/// once with sample_seed(master_seed). The geo kernel requires an ingest
/// source, since only sampled voters carry positions.
TrialSetup resolve_setup(const ElectorateSource& source, const NetConfig& net,
                         const MediaSpec& media, std::uint64_t master_seed);

struct TrialResult {
    double majority_fraction = 0.0;
    double minority_fraction = 0.0;
};

/// One end-to-end sample: neighbour counts -> prior -> election evaluation.
TrialResult run_trial(const TrialSetup& setup, std::uint64_t trial_seed, int workers = 1);

// Seed schedule: master -> sample, master x resolved params -> grid point,
// point x index -> trial, trial x voter -> substream. Points are keyed on
// parameter values, so reshaping a grid never perturbs existing points.
std::uint64_t sample_seed(std::uint64_t master_seed);
std::uint64_t point_seed(std::uint64_t master_seed, const BlockProbs& block,
                         const MediaSpec& media);
std::uint64_t trial_seed(std::uint64_t point_seed, int trial_index);

/// Per-series overrides of the base parameters.
struct SweepSeries {
    std::optional<double> delta;
    std::optional<double> p;
    std::optional<double> q;
    std::optional<double> gamma;
    std::string label;  // defaults to the overrides, e.g. "delta=-0.1 p=0.3"
};

struct SweepSpec {
    ElectorateSource source;
    NetConfig net;
    MediaSpec media;
    std::string axis;           // c | a | delta | p | q | gamma
    std::vector<double> grid;   // nonempty
    std::vector<SweepSeries> series;  // empty means a single base series
    int trials = 20;
    std::uint64_t master_seed = 0;
};

struct SweepRow {
    std::string series;
    std::string axis_name;
    double axis_value = 0.0;
    double maj_frac = 0.0;
    double maj_se = 0.0;
    double min_frac = 0.0;
    double min_se = 0.0;
    int trials = 0;
    std::string theory_majority;
    std::string theory_minority;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // ordered by (series, axis value ascending)
};

/// Runs trials for every (series, axis value) grid point concurrently.
/// Results are a pure function of the spec; the worker count only changes
/// wall time. A failing trial aborts the sweep naming the point.
SweepResult run_sweep(const SweepSpec& spec, int workers = 0);

/// Plot-ready CSV: header plus one row per grid point, fractions and
/// standard errors with six decimal digits, locale-independent.
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

/// Base (electorate + net + media) sections shared by simulate and sweep.
struct BaseConfig {
    ElectorateSource source;
    NetConfig net;
    MediaSpec media;
};

BaseConfig base_from_config(const config::Parsed& cfg);
SweepSpec sweep_from_config(const config::Parsed& cfg);

}  // namespace surprise::harness
