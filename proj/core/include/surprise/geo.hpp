#pragma once

#include <cstdint>
#include <vector>

namespace surprise {

inline constexpr double kEarthRadiusKm = 6371.0;

struct LatLon {
    double lat = 0.0;  // degrees, [-90, 90]
    double lon = 0.0;  // degrees, [-180, 180]
};

bool valid_coordinates(const LatLon& p);

/// Great-circle (haversine) distance in kilometres.
double haversine_km(const LatLon& a, const LatLon& b, double radius_km = kEarthRadiusKm);

/// Distance-decay factor exp(-weight * distance); 1 at zero distance.
double kernel_factor(double weight, double distance_km);

/// Geographic connection kernel: every voter sits at a position and the
/// pairwise edge probability picks up a factor exp(-weight * distance).
struct GeoKernel {
    double weight = 0.1;             // per kilometre
    std::vector<LatLon> positions;   // one entry per voter

    double pair_factor(std::int64_t i, std::int64_t j) const {
        return kernel_factor(weight, haversine_km(positions[i], positions[j]));
    }
};

}  // namespace surprise
