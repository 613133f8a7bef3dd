#pragma once

#include <cstdint>
#include <string>

#include "surprise/electorate.hpp"
#include "surprise/media.hpp"
#include "surprise/netgen.hpp"

namespace surprise::theory {

/// Parameter point the analytic results are evaluated at.
struct RegimeParams {
    std::int64_t n = 0;
    double epsilon = 0.0;
    double p = 0.0;
    double q = 0.0;
    MediaSpec media;

    static RegimeParams from(const Electorate& e, const BlockProbs& bp, const MediaSpec& media);

    /// Effective per-voter media weight: the coefficient multiplying (eps -
    /// delta) in the thresholds. Equals c when influential, a * n^(gamma-1)
    /// when uninfluential, and 0 for absent media.
    double effective_weight() const;
};

enum class ClassOutcome : std::uint8_t { UnsurprisedWhp, SurprisedWhp, NearCritical };

std::string to_string(ClassOutcome o);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(lo < hi); }
    bool contains(double x) const { return lo < x && x < hi; }
};

enum class VoterSide : std::uint8_t { Majority, Minority };

/// Critical intra-class probability for the majority class:
/// (q(1-2e) - 4w(e-d)) / (1+2e). Above it majority voters predict the winner
/// with high probability at large n.
double majority_threshold(const RegimeParams& rp);

/// Critical intra-class probability for the minority class:
/// (q(1+2e) + 4w(e-d)) / (1-2e). Above it minority voters are surprised with
/// high probability at large n.
double minority_threshold(const RegimeParams& rp);

/// Open interval of p where everyone is unsurprised w.h.p.; empty when the
/// bias toward the loser outweighs the margin strongly enough.
Interval corollary_range(const RegimeParams& rp);

/// Exact finite-n expectation of the per-voter decision statistic
/// X_i = N_other - N_same -+ (prior shift +- 1); its sign decides the class's
/// high-probability outcome, including the O(1) self-exclusion correction.
double exact_expectation(const RegimeParams& rp, VoterSide side);

struct ProbabilityBounds {
    double per_voter = 0.0;            // exp(-2 sqrt(n-1))
    double majority_all_correct = 0.0; // 1 - (1/2+eps) n B
    double minority_all_correct = 0.0; // 1 - (1/2-eps) n B
    double everyone_correct = 0.0;     // 1 - n B
};

ProbabilityBounds probability_bounds(const RegimeParams& rp);

/// Deviation scale t = (n-1)^{3/4} used by the concentration argument; an
/// expectation inside it means the asymptotic guarantee is not invoked.
double critical_scale(std::int64_t n);

struct TheoryVerdict {
    double majority_threshold = 0.0;
    double minority_threshold = 0.0;
    ClassOutcome majority = ClassOutcome::NearCritical;
    ClassOutcome minority = ClassOutcome::NearCritical;
    Interval all_unsurprised_range;       // empty() when no such p exists
    double expectation_majority = 0.0;
    double expectation_minority = 0.0;
    double critical_scale = 0.0;
    double per_voter_bound = 0.0;
    /// Union bound matching each class's leaning outcome, with the printed
    /// constants; the minority surprised case also gets the tighter
    /// class-size coefficient since the printed one is conservative.
    double union_bound_majority = 0.0;
    double union_bound_minority = 0.0;
    double union_bound_minority_tight = 0.0;
};

TheoryVerdict classify_regime(const RegimeParams& rp);

}  // namespace surprise::theory
