#include "surprise/perception.hpp"

#include <stdexcept>

namespace surprise {

double map_estimate(const MediaPrior& prior, Candidate cls, std::int64_t n1_obs,
                    std::int64_t n2_obs) {
    if (n1_obs < 0 || n2_obs < 0) throw std::invalid_argument("perception: negative counts");
    const double self = cls == Candidate::A1 ? 1.0 : 0.0;
    const double numerator = prior.alpha + double(n1_obs) + self - 1.0;
    const double denominator = prior.alpha + prior.beta + double(n1_obs + n2_obs) - 1.0;
    return numerator / denominator;
}

Candidate predict(const MediaPrior& prior, Candidate cls, std::int64_t n1_obs,
                  std::int64_t n2_obs) {
    return map_estimate(prior, cls, n1_obs, n2_obs) > 0.5 ? Candidate::A1 : Candidate::A2;
}

Candidate predict_linear(const MediaPrior& prior, Candidate cls, std::int64_t n1_obs,
                         std::int64_t n2_obs) {
    const double self_boost = cls == Candidate::A1 ? 2.0 : 0.0;
    const double lhs = prior.alpha + self_boost - prior.beta;
    const double rhs = double(n2_obs + 1 - n1_obs);
    return lhs > rhs ? Candidate::A1 : Candidate::A2;
}

ElectionStats evaluate_election(const Electorate& e, const NeighborCounts& counts,
                                const MediaPrior& prior) {
    const std::int64_t n = e.size();
    if (counts.size() != n)
        throw std::invalid_argument("perception: counts were generated for a different electorate");

    const Candidate winner = e.winner();
    const Candidate majority = e.majority_class();

    ElectionStats stats;
    stats.predictions.resize(size_t(n));
    std::int64_t surprised_in[2] = {0, 0};  // indexed by class parity: A1 = 0, A2 = 1

    for (std::int64_t i = 0; i < n; ++i) {
        const Candidate cls = e.voter_class(i);
        const std::int64_t n1_obs = counts.observed_a1(e, i);
        const std::int64_t n2_obs = counts.observed_a2(e, i);

        Prediction& pred = stats.predictions[size_t(i)];
        pred.q1_hat = map_estimate(prior, cls, n1_obs, n2_obs);
        pred.z = predict_linear(prior, cls, n1_obs, n2_obs);
        pred.surprised = pred.z != winner;
        if (pred.surprised) ++surprised_in[cls == Candidate::A2 ? 1 : 0];
    }

    const std::int64_t in_majority = surprised_in[majority == Candidate::A2 ? 1 : 0];
    const std::int64_t in_minority = surprised_in[majority == Candidate::A2 ? 0 : 1];
    stats.majority_surprised = in_majority;
    stats.minority_surprised = in_minority;
    const std::int64_t majority_size = e.class_size(majority);
    const std::int64_t minority_size = e.class_size(opposite(majority));
    stats.majority_fraction = majority_size > 0 ? double(in_majority) / double(majority_size) : 0.0;
    stats.minority_fraction = minority_size > 0 ? double(in_minority) / double(minority_size) : 0.0;
    return stats;
}

}  // namespace surprise
