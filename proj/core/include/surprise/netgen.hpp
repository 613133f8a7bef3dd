#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "surprise/electorate.hpp"
#include "surprise/geo.hpp"

namespace surprise {

/// Block connection probabilities of the directed two-class graph:
/// p within a class, q across classes. The filter-bubble assumption p >= q
/// is enforced unless explicitly overridden for counterexample runs.
struct BlockProbs {
    double p = 0.0;
    double q = 0.0;

    static BlockProbs make(double p, double q, bool allow_inverted = false);

    double between(Candidate from, Candidate to) const { return from == to ? p : q; }
};

/// Per-voter tallies of observed neighbour classes. Only counts are kept;
/// the edge set itself is never materialised.
struct NeighborCounts {
    std::vector<std::int32_t> same;   // observed voters of the observer's own class
    std::vector<std::int32_t> other;  // observed voters of the opposite class

    std::int64_t size() const { return std::int64_t(same.size()); }

    /// N_{i,1}: observed supporters of A1.
    std::int64_t observed_a1(const Electorate& e, std::int64_t voter) const {
        return e.voter_class(voter) == Candidate::A1 ? same[size_t(voter)] : other[size_t(voter)];
    }
    /// N_{i,2}: observed supporters of A2.
    std::int64_t observed_a2(const Electorate& e, std::int64_t voter) const {
        return e.voter_class(voter) == Candidate::A2 ? same[size_t(voter)] : other[size_t(voter)];
    }
};

/// Fast homogeneous backend: with no geographic kernel every out-edge of a
/// voter is an independent Bernoulli with a class-pair probability, so the
/// per-voter class counts are two binomial draws. O(n) time and memory.
NeighborCounts sample_counts_homogeneous(const Electorate& e, const BlockProbs& bp,
                                         std::uint64_t seed);

/// Exact per-edge backend: every ordered pair (i, j), i != j, gets a directed
/// edge independently with probability p_class * p_dist (p_dist = 1 without a
/// kernel). O(n^2) time, O(n) memory. `workers` parallelises over voters
/// without changing the result (0 = default budget).
NeighborCounts sample_counts_edgewise(const Electorate& e, const BlockProbs& bp,
                                      const GeoKernel* geo, std::uint64_t seed, int workers = 1);

/// Single-voter variants, bit-identical to the corresponding entry of the
/// full result: voter substreams are derived by counter, not draw order.
std::pair<std::int32_t, std::int32_t> sample_voter_homogeneous(const Electorate& e,
                                                               const BlockProbs& bp,
                                                               std::uint64_t seed,
                                                               std::int64_t voter);
std::pair<std::int32_t, std::int32_t> sample_voter_edgewise(const Electorate& e,
                                                            const BlockProbs& bp,
                                                            const GeoKernel* geo,
                                                            std::uint64_t seed,
                                                            std::int64_t voter);

}  // namespace surprise
