#pragma once

#include <cstdint>
#include <string>

#include "surprise/electorate.hpp"

namespace surprise {

/// How the prior mass t = alpha + beta scales with the electorate size:
/// influential media carries t = c*n, uninfluential t = a*n^gamma, and
/// absent media is the uniform prior.
enum class MediaRegime : std::uint8_t { Influential, Uninfluential, Absent };

std::string to_string(MediaRegime r);
MediaRegime media_regime_from_string(const std::string& name);

struct MediaSpec {
    MediaRegime regime = MediaRegime::Absent;
    double c = 0.0;        // influential global weight
    double a = 0.0;        // uninfluential global weight
    double gamma = 0.5;    // influence exponent, uninfluential only, in (0,1)
    double delta = 0.0;    // bias toward the losing candidate

    /// Prior mass t for an electorate of n voters.
    double influence_mass(std::int64_t n) const;
};

/// Beta(alpha, beta) media prior. alpha/(alpha+beta) = 1/2 + (eps - delta),
/// so the prior mean is the true split shifted by the bias.
struct MediaPrior {
    double alpha = 1.0;
    double beta = 1.0;
};

/// Builds the prior for a spec and electorate.
///
/// Zero influence mass (c = 0 or a = 0) means no media at all and maps to the
/// uniform prior, like the absent regime. Otherwise alpha = t(1/2+(eps-delta))
/// and beta = t(1/2-(eps-delta)); values below 1 are rejected (the posterior
/// mode would sit on the boundary) with a diagnostic naming the smallest
/// valid t. A delta outside [-(1/2-eps), 1/2+eps] is rejected.
MediaPrior build_prior(const MediaSpec& spec, const Electorate& e);

}  // namespace surprise
