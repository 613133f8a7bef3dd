#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "surprise/electorate.hpp"
#include "surprise/geo.hpp"

namespace surprise::ingest {

/// One region's two-option tallies joined with its coordinates.
struct RegionRecord {
    std::string region_id;
    std::int64_t votes_a1 = 0;
    std::int64_t votes_a2 = 0;
    LatLon position;
};

/// Loads and joins the two CSVs:
///   votes header  `region_id,votes_a1,votes_a2`
///   coords header `region_id,lat,lon`
/// Every region in the votes file must have coordinates; duplicates and
/// malformed rows are hard errors naming the offender and line.
std::vector<RegionRecord> load_regions(const std::filesystem::path& votes_path,
                                       const std::filesystem::path& coords_path);

/// Swaps which vote column plays candidate A1 (option-to-candidate mapping
/// is configuration, not data).
void swap_options(std::vector<RegionRecord>& records);

std::int64_t total_ballots(const std::vector<RegionRecord>& records);

/// A sub-election drawn from pooled ballots: class sizes are the realized
/// option counts and every voter sits at their source region's coordinates.
struct SampledElectorate {
    Electorate electorate;
    std::vector<LatLon> positions;          // per voter, canonical voter order
    std::vector<std::int32_t> source_region;  // per voter -> index into region_ids
    std::vector<std::string> region_ids;

    GeoKernel kernel(double weight) const { return GeoKernel{weight, positions}; }
};

/// Draws k ballots without replacement from the pooled region x option cells
/// (multivariate hypergeometric, cell-wise; individual ballots are never
/// materialised).
SampledElectorate sample_voters(const std::vector<RegionRecord>& records, std::int64_t k,
                                std::uint64_t seed);

}  // namespace surprise::ingest
