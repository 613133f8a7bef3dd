#pragma once

#include <cstdint>
#include <vector>

#include "surprise/electorate.hpp"
#include "surprise/media.hpp"
#include "surprise/netgen.hpp"

namespace surprise {

/// Posterior-mode estimate of the probability that a random voter prefers A1,
/// for a voter of class `cls` observing n1_obs supporters of A1 and n2_obs of
/// A2. The voter counts their own preference alongside the observations:
///
///   (alpha + n1_obs + [cls == A1] - 1) / (alpha + beta + n1_obs + n2_obs - 1)
double map_estimate(const MediaPrior& prior, Candidate cls, std::int64_t n1_obs,
                    std::int64_t n2_obs);

/// Predicted winner: A1 iff the estimate exceeds 1/2, ties to A2.
Candidate predict(const MediaPrior& prior, Candidate cls, std::int64_t n1_obs,
                  std::int64_t n2_obs);

/// Same predicate rearranged to a single comparison,
///   A1 iff alpha + 2*[cls == A1] - beta > n2_obs + 1 - n1_obs,
/// used as the production path and cross-checked against predict.
Candidate predict_linear(const MediaPrior& prior, Candidate cls, std::int64_t n1_obs,
                         std::int64_t n2_obs);

struct Prediction {
    double q1_hat = 0.0;
    Candidate z = Candidate::A2;
    bool surprised = false;
};

struct ElectionStats {
    std::vector<Prediction> predictions;   // per voter
    std::int64_t majority_surprised = 0;   // voters in the majority class
    std::int64_t minority_surprised = 0;
    double majority_fraction = 0.0;        // surprised / class size (0 for an empty class)
    double minority_fraction = 0.0;
};

/// Evaluates every voter's prediction against the electorate's true winner
/// and aggregates surprised fractions per class.
ElectionStats evaluate_election(const Electorate& e, const NeighborCounts& counts,
                                const MediaPrior& prior);

}  // namespace surprise
