#include "surprise/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace surprise {

bool valid_coordinates(const LatLon& p) {
    return std::isfinite(p.lat) && std::isfinite(p.lon) && std::abs(p.lat) <= 90.0 &&
           std::abs(p.lon) <= 180.0;
}

double haversine_km(const LatLon& a, const LatLon& b, double radius_km) {
    // canonical argument order makes d(a,b) and d(b,a) bit-identical
    const LatLon* lo = &a;
    const LatLon* hi = &b;
    if (std::pair{b.lat, b.lon} < std::pair{a.lat, a.lon}) std::swap(lo, hi);

    constexpr double deg = std::numbers::pi / 180.0;
    const double dlat = (hi->lat - lo->lat) * deg;
    const double dlon = (hi->lon - lo->lon) * deg;
    const double s_lat = std::sin(dlat / 2.0);
    const double s_lon = std::sin(dlon / 2.0);
    double h = s_lat * s_lat + s_lon * s_lon * std::cos(lo->lat * deg) * std::cos(hi->lat * deg);
    h = std::clamp(h, 0.0, 1.0);  // guard rounding at antipodes
    return 2.0 * radius_km * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

double kernel_factor(double weight, double distance_km) {
    return std::exp(-weight * distance_km);
}

}  // namespace surprise
