#include "surprise/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "surprise/parallel.hpp"
#include "surprise/perception.hpp"
#include "surprise/rng.hpp"
#include "surprise/stats.hpp"
#include "surprise/theory.hpp"

namespace surprise::harness {

std::string to_string(NetBackend b) {
    switch (b) {
        case NetBackend::Auto: return "auto";
        case NetBackend::Homogeneous: return "homogeneous";
        case NetBackend::Edgewise: return "edgewise";
    }
    return "?";
}

NetBackend backend_from_string(const std::string& name) {
    if (name == "auto") return NetBackend::Auto;
    if (name == "homogeneous") return NetBackend::Homogeneous;
    if (name == "edgewise") return NetBackend::Edgewise;
    throw std::invalid_argument("net: unknown backend '" + name +
                                "' (expected auto|homogeneous|edgewise)");
}

namespace {

constexpr std::uint64_t kSampleTag = 0x71a4b03652f8c1d9ULL;
constexpr std::uint64_t kPointTag = 0x2ce1a2b7f95d3804ULL;

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_fixed6(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
    return std::string(buf, ptr);
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t master_seed) {
    return rng::derive(master_seed, kSampleTag);
}

std::uint64_t point_seed(std::uint64_t master_seed, const BlockProbs& block,
                         const MediaSpec& media) {
    std::uint64_t key = rng::derive(master_seed, kPointTag);
    key = rng::derive(key, std::uint64_t(media.regime));
    key = rng::derive_value(key, media.c);
    key = rng::derive_value(key, media.a);
    key = rng::derive_value(key, media.gamma);
    key = rng::derive_value(key, media.delta);
    key = rng::derive_value(key, block.p);
    key = rng::derive_value(key, block.q);
    return key;
}

std::uint64_t trial_seed(std::uint64_t point_seed, int trial_index) {
    return rng::derive(point_seed, std::uint64_t(trial_index));
}

TrialSetup resolve_setup(const ElectorateSource& source, const NetConfig& net,
                         const MediaSpec& media, std::uint64_t master_seed) {
    BlockProbs block = BlockProbs::make(net.p, net.q);

    if (const auto* synthetic = std::get_if<SyntheticSource>(&source)) {
        if (net.geo_enabled)
            throw std::invalid_argument(
                "harness: the geo kernel needs voter positions; use an ingest source");
        return TrialSetup{Electorate::with_counts(synthetic->n1, synthetic->n2), std::nullopt,
                          block, net.backend, media};
    }

    const auto& src = std::get<IngestSource>(source);
    auto records = ingest::load_regions(src.votes, src.coords);
    if (src.swap_options) ingest::swap_options(records);
    auto sample = ingest::sample_voters(records, src.sample_size, sample_seed(master_seed));

    std::optional<GeoKernel> geo;
    if (net.geo_enabled) geo = sample.kernel(net.geo_weight);
    return TrialSetup{sample.electorate, std::move(geo), block, net.backend, media};
}

TrialResult run_trial(const TrialSetup& setup, std::uint64_t trial_seed, int workers) {
    NetBackend backend = setup.backend;
    if (backend == NetBackend::Auto)
        backend = setup.geo ? NetBackend::Edgewise : NetBackend::Homogeneous;
    if (backend == NetBackend::Homogeneous && setup.geo)
        throw std::invalid_argument("harness: homogeneous backend cannot honour a geo kernel");

    const NeighborCounts counts =
        backend == NetBackend::Homogeneous
            ? sample_counts_homogeneous(setup.electorate, setup.block, trial_seed)
            : sample_counts_edgewise(setup.electorate, setup.block,
                                     setup.geo ? &*setup.geo : nullptr, trial_seed, workers);

    const MediaPrior prior = build_prior(setup.media, setup.electorate);
    const ElectionStats stats = evaluate_election(setup.electorate, counts, prior);
    return TrialResult{stats.majority_fraction, stats.minority_fraction};
}

namespace {

enum class Axis { C, A, Delta, P, Q, Gamma };

Axis axis_from_string(const std::string& name) {
    if (name == "c") return Axis::C;
    if (name == "a") return Axis::A;
    if (name == "delta") return Axis::Delta;
    if (name == "p") return Axis::P;
    if (name == "q") return Axis::Q;
    if (name == "gamma") return Axis::Gamma;
    throw std::invalid_argument("sweep: unknown axis '" + name +
                                "' (expected c|a|delta|p|q|gamma)");
}

struct PointParams {
    BlockProbs block;
    MediaSpec media;
};

PointParams resolve_point(const SweepSpec& spec, const SweepSeries& series, Axis axis,
                          double axis_value) {
    double p = series.p.value_or(spec.net.p);
    double q = series.q.value_or(spec.net.q);
    MediaSpec media = spec.media;
    if (series.delta) media.delta = *series.delta;
    if (series.gamma) media.gamma = *series.gamma;

    switch (axis) {
        case Axis::C: media.c = axis_value; break;
        case Axis::A: media.a = axis_value; break;
        case Axis::Delta: media.delta = axis_value; break;
        case Axis::P: p = axis_value; break;
        case Axis::Q: q = axis_value; break;
        case Axis::Gamma: media.gamma = axis_value; break;
    }
    return PointParams{BlockProbs::make(p, q), media};
}

std::string default_label(const SweepSeries& series) {
    std::ostringstream out;
    const char* sep = "";
    if (series.delta) { out << sep << "delta=" << format_double(*series.delta); sep = " "; }
    if (series.p) { out << sep << "p=" << format_double(*series.p); sep = " "; }
    if (series.q) { out << sep << "q=" << format_double(*series.q); sep = " "; }
    if (series.gamma) { out << sep << "gamma=" << format_double(*series.gamma); sep = " "; }
    const std::string text = out.str();
    return text.empty() ? "base" : text;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int workers) {
    if (spec.grid.empty()) throw std::invalid_argument("sweep: empty axis grid");
    if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be at least 1");
    const Axis axis = axis_from_string(spec.axis);
    if (axis == Axis::C && spec.media.regime != MediaRegime::Influential)
        throw std::invalid_argument("sweep: axis 'c' needs media.regime = influential");
    if ((axis == Axis::A || axis == Axis::Gamma) &&
        spec.media.regime != MediaRegime::Uninfluential)
        throw std::invalid_argument("sweep: axis '" + spec.axis +
                                    "' needs media.regime = uninfluential");
    if (axis == Axis::Delta && spec.media.regime == MediaRegime::Absent)
        throw std::invalid_argument("sweep: axis 'delta' has no effect with absent media");

    std::vector<SweepSeries> series = spec.series;
    if (series.empty()) series.push_back(SweepSeries{});
    for (auto& s : series) {
        if (s.label.empty()) s.label = default_label(s);
        if (s.label.find(',') != std::string::npos)
            throw std::invalid_argument("sweep: series label '" + s.label +
                                        "' must not contain commas");
    }

    const TrialSetup base = resolve_setup(spec.source, spec.net, spec.media, spec.master_seed);

    // Axis values ascending within each series; ties keep config order.
    std::vector<size_t> grid_order(spec.grid.size());
    std::iota(grid_order.begin(), grid_order.end(), size_t(0));
    std::stable_sort(grid_order.begin(), grid_order.end(),
                     [&](size_t a, size_t b) { return spec.grid[a] < spec.grid[b]; });

    struct Point {
        size_t series_index;
        double axis_value;
        PointParams params;
        std::uint64_t seed;
    };
    std::vector<Point> points;
    points.reserve(series.size() * spec.grid.size());
    for (size_t s = 0; s < series.size(); ++s) {
        for (size_t g : grid_order) {
            const double value = spec.grid[g];
            PointParams params = resolve_point(spec, series[s], axis, value);
            const std::uint64_t seed = point_seed(spec.master_seed, params.block, params.media);
            points.push_back(Point{s, value, std::move(params), seed});
        }
    }

    // Flat (point, trial) task grid; every task owns one result slot, so the
    // schedule cannot influence the output.
    const std::int64_t task_count = std::int64_t(points.size()) * spec.trials;
    std::vector<TrialResult> results(static_cast<size_t>(task_count));
    parallel_for(task_count, workers, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t task = begin; task < end; ++task) {
            const auto& point = points[size_t(task / spec.trials)];
            const int trial = int(task % spec.trials);
            TrialSetup setup = base;
            setup.block = point.params.block;
            setup.media = point.params.media;
            try {
                results[size_t(task)] = run_trial(setup, trial_seed(point.seed, trial), 1);
            } catch (const std::exception& err) {
                std::ostringstream msg;
                msg << "sweep: series '" << series[point.series_index].label << "' "
                    << spec.axis << "=" << format_double(point.axis_value) << " trial " << trial
                    << ": " << err.what();
                throw std::runtime_error(msg.str());
            }
        }
    });

    SweepResult result;
    result.rows.reserve(points.size());
    std::vector<double> maj(size_t(spec.trials)), min(size_t(spec.trials));
    for (size_t idx = 0; idx < points.size(); ++idx) {
        const Point& point = points[idx];
        for (int t = 0; t < spec.trials; ++t) {
            const TrialResult& r = results[idx * size_t(spec.trials) + size_t(t)];
            maj[size_t(t)] = r.majority_fraction;
            min[size_t(t)] = r.minority_fraction;
        }
        const auto verdict = theory::classify_regime(
            theory::RegimeParams::from(base.electorate, point.params.block, point.params.media));
        result.rows.push_back(SweepRow{
            series[point.series_index].label,
            spec.axis,
            point.axis_value,
            stats::mean(maj),
            stats::standard_error(maj),
            stats::mean(min),
            stats::standard_error(min),
            spec.trials,
            theory::to_string(verdict.majority),
            theory::to_string(verdict.minority),
        });
    }
    return result;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    out << "series,axis_name,axis_value,maj_frac,maj_se,min_frac,min_se,trials,"
           "theory_majority,theory_minority\n";
    for (const auto& row : result.rows) {
        out << row.series << ',' << row.axis_name << ',' << format_double(row.axis_value) << ','
            << format_fixed6(row.maj_frac) << ',' << format_fixed6(row.maj_se) << ','
            << format_fixed6(row.min_frac) << ',' << format_fixed6(row.min_se) << ','
            << row.trials << ',' << row.theory_majority << ',' << row.theory_minority << '\n';
    }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("sweep: cannot write " + path.string());
    emit_csv(result, out);
    out.flush();
    if (!out) throw std::runtime_error("sweep: write failed for " + path.string());
}

BaseConfig base_from_config(const config::Parsed& cfg) {
    BaseConfig base;

    const bool synthetic = cfg.has("electorate.n1") || cfg.has("electorate.n2");
    const bool ingested = cfg.has("ingest.votes") || cfg.has("ingest.coords");
    if (synthetic == ingested)
        throw std::runtime_error(
            "config: specify exactly one electorate source, [electorate] counts or [ingest] files");
    if (synthetic) {
        base.source = SyntheticSource{cfg.require_count("electorate.n1"),
                                      cfg.require_count("electorate.n2")};
    } else {
        IngestSource src;
        src.votes = cfg.require_string("ingest.votes");
        src.coords = cfg.require_string("ingest.coords");
        src.sample_size = cfg.require_count("ingest.sample_size");
        src.swap_options = cfg.get_bool("ingest.swap_options", false);
        base.source = std::move(src);
    }

    base.net.p = cfg.require_double("net.p");
    base.net.q = cfg.require_double("net.q");
    base.net.backend = backend_from_string(cfg.get_string("net.backend", "auto"));
    base.net.geo_enabled = cfg.get_bool("net.geo.enabled", false);
    base.net.geo_weight = cfg.get_double("net.geo.weight", 0.1);

    base.media.regime = media_regime_from_string(cfg.get_string("media.regime", "absent"));
    base.media.c = cfg.get_double("media.c", 0.0);
    base.media.a = cfg.get_double("media.a", 0.0);
    base.media.gamma = cfg.get_double("media.gamma", 0.5);
    base.media.delta = cfg.get_double("media.delta", 0.0);
    return base;
}

SweepSpec sweep_from_config(const config::Parsed& cfg) {
    const BaseConfig base = base_from_config(cfg);
    SweepSpec spec;
    spec.source = base.source;
    spec.net = base.net;
    spec.media = base.media;
    spec.axis = cfg.require_string("sweep.axis");
    spec.grid = cfg.require_grid("sweep.grid");
    spec.trials = cfg.has("sweep.trials") ? int(cfg.require_count("sweep.trials")) : 20;
    spec.master_seed = std::uint64_t(cfg.require_count("sweep.master_seed"));

    for (const auto& table : cfg.tables("series")) {
        SweepSeries s;
        if (table.has("delta")) s.delta = table.require_double("delta");
        if (table.has("p")) s.p = table.require_double("p");
        if (table.has("q")) s.q = table.require_double("q");
        if (table.has("gamma")) s.gamma = table.require_double("gamma");
        s.label = table.get_string("label", "");
        spec.series.push_back(std::move(s));
    }
    return spec;
}

}  // namespace surprise::harness
