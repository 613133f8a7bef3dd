#include "surprise/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace surprise::theory {

std::string to_string(ClassOutcome o) {
    switch (o) {
        case ClassOutcome::UnsurprisedWhp: return "unsurprised-whp";
        case ClassOutcome::SurprisedWhp: return "surprised-whp";
        case ClassOutcome::NearCritical: return "near-critical";
    }
    return "?";
}

RegimeParams RegimeParams::from(const Electorate& e, const BlockProbs& bp,
                                const MediaSpec& media) {
    RegimeParams rp;
    rp.n = e.size();
    // The theorems are stated for the winner's class holding n(1/2 + eps)
    // voters; an inverted sample is handled by relabelling, so eps >= 0.
    rp.epsilon = std::abs(e.margin());
    rp.p = bp.p;
    rp.q = bp.q;
    rp.media = media;
    return rp;
}

double RegimeParams::effective_weight() const {
    switch (media.regime) {
        case MediaRegime::Influential: return media.c;
        case MediaRegime::Uninfluential: return media.a * std::pow(double(n), media.gamma - 1.0);
        case MediaRegime::Absent: return 0.0;
    }
    return 0.0;
}

namespace {

// alpha - beta of the realized prior: 2 t (eps - delta), zero for absent or
// zero-mass media (both collapse to the uniform prior).
double prior_difference(const RegimeParams& rp) {
    if (rp.media.regime == MediaRegime::Absent) return 0.0;
    const double t = rp.media.influence_mass(rp.n);
    if (t == 0.0) return 0.0;
    return 2.0 * t * (rp.epsilon - rp.media.delta);
}

}  // namespace

double majority_threshold(const RegimeParams& rp) {
    const double w = rp.effective_weight();
    return (rp.q * (1.0 - 2.0 * rp.epsilon) - 4.0 * w * (rp.epsilon - rp.media.delta)) /
           (1.0 + 2.0 * rp.epsilon);
}

double minority_threshold(const RegimeParams& rp) {
    const double w = rp.effective_weight();
    return (rp.q * (1.0 + 2.0 * rp.epsilon) + 4.0 * w * (rp.epsilon - rp.media.delta)) /
           (1.0 - 2.0 * rp.epsilon);
}

Interval corollary_range(const RegimeParams& rp) {
    return Interval{majority_threshold(rp), minority_threshold(rp)};
}

double exact_expectation(const RegimeParams& rp, VoterSide side) {
    const double n = double(rp.n);
    const double n_major = std::round(n * (0.5 + rp.epsilon));
    const double n_minor = n - n_major;
    const double shift = prior_difference(rp);
    if (side == VoterSide::Majority) {
        // X_i = N_opposite - N_own - (shift + 1) for a majority voter
        return n_minor * rp.q - (n_major - 1.0) * rp.p - (shift + 1.0);
    }
    // X_i = N_own - N_opposite - (shift - 1) for a minority voter
    return (n_minor - 1.0) * rp.p - n_major * rp.q - (shift - 1.0);
}

double critical_scale(std::int64_t n) { return std::pow(double(n - 1), 0.75); }

ProbabilityBounds probability_bounds(const RegimeParams& rp) {
    if (rp.n < 2) throw std::invalid_argument("theory: probability bounds need n >= 2");
    const double b = std::exp(-2.0 * std::sqrt(double(rp.n - 1)));
    const double n = double(rp.n);
    return ProbabilityBounds{
        b,
        1.0 - (0.5 + rp.epsilon) * n * b,
        1.0 - (0.5 - rp.epsilon) * n * b,
        1.0 - n * b,
    };
}

TheoryVerdict classify_regime(const RegimeParams& rp) {
    TheoryVerdict v;
    v.majority_threshold = majority_threshold(rp);
    v.minority_threshold = minority_threshold(rp);
    v.all_unsurprised_range = corollary_range(rp);
    v.expectation_majority = exact_expectation(rp, VoterSide::Majority);
    v.expectation_minority = exact_expectation(rp, VoterSide::Minority);
    v.critical_scale = critical_scale(rp.n);

    // X_i >= 0 means the voter predicts the loser, for either class: a
    // positive expectation leans surprised, and the high-probability label
    // applies only when the mean clears the concentration scale.
    const auto outcome = [&](double expectation) {
        if (std::abs(expectation) < v.critical_scale) return ClassOutcome::NearCritical;
        return expectation > 0.0 ? ClassOutcome::SurprisedWhp : ClassOutcome::UnsurprisedWhp;
    };
    v.majority = outcome(v.expectation_majority);
    v.minority = outcome(v.expectation_minority);

    const ProbabilityBounds bounds = probability_bounds(rp);
    v.per_voter_bound = bounds.per_voter;
    const double nb = double(rp.n) * bounds.per_voter;

    const bool majority_leans_surprised = v.expectation_majority > 0.0;
    v.union_bound_majority = majority_leans_surprised
                                 ? 1.0 - (1.0 + 2.0 * rp.epsilon) * nb
                                 : bounds.majority_all_correct;

    const bool minority_leans_surprised = v.expectation_minority > 0.0;
    if (minority_leans_surprised) {
        v.union_bound_minority = 1.0 - (1.0 + 2.0 * rp.epsilon) * nb;   // printed constant
        v.union_bound_minority_tight = 1.0 - (1.0 - 2.0 * rp.epsilon) * nb;  // class-size constant
    } else {
        v.union_bound_minority = bounds.minority_all_correct;
        v.union_bound_minority_tight = bounds.minority_all_correct;
    }
    return v;
}

}  // namespace surprise::theory
