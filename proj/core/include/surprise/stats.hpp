#pragma once

#include <span>

namespace surprise::stats {

double mean(std::span<const double> xs);

/// Sample standard deviation (ddof = 1); 0 for fewer than two samples.
double sample_sd(std::span<const double> xs);

/// Standard error of the mean; 0 for fewer than two samples.
double standard_error(std::span<const double> xs);

/// Spearman rank correlation with average ranks over ties; NaN when either
/// side is constant.
double spearman_rho(std::span<const double> x, std::span<const double> y);

}  // namespace surprise::stats
