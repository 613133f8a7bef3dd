#include "surprise/netgen.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "surprise/parallel.hpp"
#include "surprise/rng.hpp"

namespace surprise {

BlockProbs BlockProbs::make(double p, double q, bool allow_inverted) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("netgen: connection probabilities must lie in [0,1]");
    if (p < q && !allow_inverted)
        throw std::invalid_argument(
            "netgen: p < q breaks the filter-bubble assumption (set the override to probe it)");
    return BlockProbs{p, q};
}

std::pair<std::int32_t, std::int32_t> sample_voter_homogeneous(const Electorate& e,
                                                               const BlockProbs& bp,
                                                               std::uint64_t seed,
                                                               std::int64_t voter) {
    rng::Stream stream(rng::derive(seed, std::uint64_t(voter)));
    const Candidate cls = e.voter_class(voter);
    const auto same = rng::binomial(stream, e.class_size(cls) - 1, bp.p);
    const auto other = rng::binomial(stream, e.class_size(opposite(cls)), bp.q);
    return {std::int32_t(same), std::int32_t(other)};
}

NeighborCounts sample_counts_homogeneous(const Electorate& e, const BlockProbs& bp,
                                         std::uint64_t seed) {
    const std::int64_t n = e.size();
    NeighborCounts counts;
    counts.same.resize(size_t(n));
    counts.other.resize(size_t(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const auto [same, other] = sample_voter_homogeneous(e, bp, seed, i);
        counts.same[size_t(i)] = same;
        counts.other[size_t(i)] = other;
    }
    return counts;
}

namespace {

// Pair probabilities depend on j only through (class(j), position(j)); voters
// are folded to a compact code so the hot loop is one table lookup per pair.
struct EdgewiseLayout {
    std::vector<std::uint16_t> code;   // 2 * position_index + (class == A2)
    std::vector<std::uint32_t> place;  // voter -> position index
    std::vector<LatLon> points;        // distinct positions
    std::vector<double> factors;       // points x points kernel factors (may be empty)
    bool has_matrix = false;

    std::size_t distinct() const { return points.size(); }
};

constexpr std::size_t kMaxCachedPositions = 2048;

EdgewiseLayout build_layout(const Electorate& e, const GeoKernel* geo) {
    const std::int64_t n = e.size();
    EdgewiseLayout layout;
    layout.code.resize(size_t(n));
    layout.place.assign(size_t(n), 0);

    if (geo != nullptr) {
        if (std::int64_t(geo->positions.size()) != n)
            throw std::invalid_argument("netgen: kernel active but positions do not cover all voters");
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint32_t> index;
        for (std::int64_t i = 0; i < n; ++i) {
            const LatLon pos = geo->positions[size_t(i)];
            const auto key = std::make_pair(std::bit_cast<std::uint64_t>(pos.lat),
                                            std::bit_cast<std::uint64_t>(pos.lon));
            auto [it, inserted] = index.try_emplace(key, std::uint32_t(layout.points.size()));
            if (inserted) layout.points.push_back(pos);
            layout.place[size_t(i)] = it->second;
        }
        if (layout.distinct() <= kMaxCachedPositions) {
            const std::size_t m = layout.distinct();
            layout.factors.resize(m * m);
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b)
                    layout.factors[a * m + b] =
                        kernel_factor(geo->weight, haversine_km(layout.points[a], layout.points[b]));
            layout.has_matrix = true;
        }
    } else {
        layout.points.push_back(LatLon{});
    }

    for (std::int64_t i = 0; i < n; ++i)
        layout.code[size_t(i)] = std::uint16_t(2 * layout.place[size_t(i)] +
                                               (e.voter_class(i) == Candidate::A2 ? 1 : 0));
    return layout;
}

// Edge probabilities from `voter` to each (position, class) code.
void fill_row(const Electorate& e, const BlockProbs& bp, const GeoKernel* geo,
              const EdgewiseLayout& layout, std::int64_t voter, std::vector<double>& row) {
    const std::size_t m = layout.distinct();
    const Candidate cls = e.voter_class(voter);
    const double to_a1 = bp.between(cls, Candidate::A1);
    const double to_a2 = bp.between(cls, Candidate::A2);
    row.resize(2 * m);
    const std::uint32_t self = layout.place[size_t(voter)];
    for (std::size_t u = 0; u < m; ++u) {
        double factor = 1.0;
        if (geo != nullptr) {
            factor = layout.has_matrix
                         ? layout.factors[self * m + u]
                         : kernel_factor(geo->weight,
                                         haversine_km(layout.points[self], layout.points[u]));
        }
        row[2 * u] = factor * to_a1;
        row[2 * u + 1] = factor * to_a2;
    }
}

std::pair<std::int32_t, std::int32_t> sample_edgewise_row(const Electorate& e,
                                                          const EdgewiseLayout& layout,
                                                          const std::vector<double>& row,
                                                          std::uint64_t seed, std::int64_t voter) {
    rng::Stream stream(rng::derive(seed, std::uint64_t(voter)));
    const std::uint16_t* codes = layout.code.data();
    const double* probs = row.data();
    const std::int64_t n = e.size();
    std::int64_t hits[2] = {0, 0};

    auto scan = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t j = begin; j < end; ++j) {
            const std::uint16_t cj = codes[j];
            if (stream.uniform01() < probs[cj]) ++hits[cj & 1];
        }
    };
    scan(0, voter);
    scan(voter + 1, n);

    const std::int64_t own = e.voter_class(voter) == Candidate::A2 ? 1 : 0;
    return {std::int32_t(hits[own]), std::int32_t(hits[1 - own])};
}

}  // namespace

NeighborCounts sample_counts_edgewise(const Electorate& e, const BlockProbs& bp,
                                      const GeoKernel* geo, std::uint64_t seed, int workers) {
    const std::int64_t n = e.size();
    const EdgewiseLayout layout = build_layout(e, geo);

    NeighborCounts counts;
    counts.same.resize(size_t(n));
    counts.other.resize(size_t(n));

    parallel_for(n, workers, [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> row;
        for (std::int64_t i = begin; i < end; ++i) {
            fill_row(e, bp, geo, layout, i, row);
            const auto [same, other] = sample_edgewise_row(e, layout, row, seed, i);
            counts.same[size_t(i)] = same;
            counts.other[size_t(i)] = other;
        }
    });
    return counts;
}

std::pair<std::int32_t, std::int32_t> sample_voter_edgewise(const Electorate& e,
                                                            const BlockProbs& bp,
                                                            const GeoKernel* geo,
                                                            std::uint64_t seed,
                                                            std::int64_t voter) {
    const EdgewiseLayout layout = build_layout(e, geo);
    std::vector<double> row;
    fill_row(e, bp, geo, layout, voter, row);
    return sample_edgewise_row(e, layout, row, seed, voter);
}

}  // namespace surprise
