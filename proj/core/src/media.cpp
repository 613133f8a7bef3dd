#include "surprise/media.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace surprise {

std::string to_string(MediaRegime r) {
    switch (r) {
        case MediaRegime::Influential: return "influential";
        case MediaRegime::Uninfluential: return "uninfluential";
        case MediaRegime::Absent: return "absent";
    }
    return "?";
}

MediaRegime media_regime_from_string(const std::string& name) {
    if (name == "influential") return MediaRegime::Influential;
    if (name == "uninfluential") return MediaRegime::Uninfluential;
    if (name == "absent") return MediaRegime::Absent;
    throw std::invalid_argument("media: unknown regime '" + name +
                                "' (expected influential|uninfluential|absent)");
}

double MediaSpec::influence_mass(std::int64_t n) const {
    switch (regime) {
        case MediaRegime::Influential: return c * double(n);
        case MediaRegime::Uninfluential: return a * std::pow(double(n), gamma);
        case MediaRegime::Absent: return 2.0;
    }
    return 2.0;
}

MediaPrior build_prior(const MediaSpec& spec, const Electorate& e) {
    if (spec.regime == MediaRegime::Absent) return MediaPrior{1.0, 1.0};

    const double eps = e.margin();

    if (spec.regime == MediaRegime::Influential && spec.c < 0.0)
        throw std::invalid_argument("media: global weight c must be nonnegative");
    if (spec.regime == MediaRegime::Uninfluential) {
        if (spec.a < 0.0) throw std::invalid_argument("media: global weight a must be nonnegative");
        if (!(spec.gamma > 0.0 && spec.gamma < 1.0))
            throw std::invalid_argument("media: gamma must lie in (0,1)");
    }

    const double delta_lo = -(0.5 - eps);
    const double delta_hi = 0.5 + eps;
    if (!(spec.delta >= delta_lo && spec.delta <= delta_hi)) {
        std::ostringstream msg;
        msg << "media: delta " << spec.delta << " outside [" << delta_lo << ", " << delta_hi
            << "] for margin " << eps;
        throw std::invalid_argument(msg.str());
    }

    const double t = spec.influence_mass(e.size());
    if (t == 0.0) return MediaPrior{1.0, 1.0};  // zero influence: no media

    const double shift = eps - spec.delta;  // prior mean is 1/2 + shift
    const double alpha = t * (0.5 + shift);
    const double beta = t * (0.5 - shift);
    if (alpha < 1.0 || beta < 1.0) {
        std::ostringstream msg;
        msg << "media: prior (alpha=" << alpha << ", beta=" << beta
            << ") needs alpha,beta >= 1 for an interior posterior mode; ";
        const double smaller = std::min(0.5 + shift, 0.5 - shift);
        if (smaller <= 0.0) {
            msg << "no influence mass t can satisfy it at delta=" << spec.delta
                << " (one Beta parameter is zero)";
        } else {
            msg << "smallest valid influence mass is t >= " << 1.0 / smaller << " (got t=" << t
                << ")";
        }
        throw std::invalid_argument(msg.str());
    }
    return MediaPrior{alpha, beta};
}

}  // namespace surprise
