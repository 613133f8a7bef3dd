#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "surprise/perception.hpp"
#include "surprise/rng.hpp"

using namespace surprise;

TEST_CASE("map estimate boundary and hand-worked values") {
    // uniform prior, minority voter, nobody observed: (1+0+0-1)/(1+1+0-1) = 0
    CHECK(map_estimate({1, 1}, Candidate::A2, 0, 0) == 0.0);
    // (52+30+1-1)/(52+48+50-1) = 82/149
    CHECK(map_estimate({52, 48}, Candidate::A1, 30, 20) ==
          doctest::Approx(82.0 / 149.0).epsilon(1e-15));
    CHECK(82.0 / 149.0 == doctest::Approx(0.55034).epsilon(1e-4));
}

TEST_CASE("symmetric prior with equal counts keeps the minority below one half") {
    for (double alpha : {1.0, 2.0, 10.0, 1000.0}) {
        for (std::int64_t k : {0, 1, 5, 50}) {
            const double est = map_estimate({alpha, alpha}, Candidate::A2, k, k);
            CHECK(est < 0.5);
            CHECK(est >= 0.0);
        }
    }
}

TEST_CASE("estimate stays within [0,1] for valid priors") {
    rng::Stream s(404);
    for (int i = 0; i < 5000; ++i) {
        const double alpha = 1.0 + s.uniform01() * 1000.0;
        const double beta = 1.0 + s.uniform01() * 1000.0;
        const auto n1 = std::int64_t(s() % 200);
        const auto n2 = std::int64_t(s() % 200);
        const Candidate cls = (s() & 1) ? Candidate::A1 : Candidate::A2;
        const double est = map_estimate({alpha, beta}, cls, n1, n2);
        CHECK(est >= 0.0);
        CHECK(est <= 1.0);
    }
}

TEST_CASE("predict follows the strict one-half rule, ties to A2") {
    CHECK(predict({52, 48}, Candidate::A1, 30, 20) == Candidate::A1);
    CHECK(predict({7, 7}, Candidate::A2, 12, 12) == Candidate::A2);
    // exact one half: alpha=beta=2, minority, one A1 neighbour -> 2/4
    CHECK(map_estimate({2, 2}, Candidate::A2, 1, 0) == 0.5);
    CHECK(predict({2, 2}, Candidate::A2, 1, 0) == Candidate::A2);
}

TEST_CASE("linear rule hand-worked cases") {
    // majority, alpha=beta, 5 vs 3 observed: 2 > -1 -> A1
    CHECK(predict_linear({10, 10}, Candidate::A1, 5, 3) == Candidate::A1);
    // minority, alpha=beta, equal counts: 0 > 1 is false -> A2
    CHECK(predict_linear({10, 10}, Candidate::A2, 4, 4) == Candidate::A2);
    // boundary equality goes to A2: minority, alpha=beta=1, no neighbours:
    // lhs = 0, rhs = 1 - 0 ... pick lhs == rhs: alpha-beta = 1 - n1 + n2 with
    // minority n1=1, n2=0 -> rhs = 0, lhs = 0
    CHECK(predict_linear({1, 1}, Candidate::A2, 1, 0) == Candidate::A2);
}

TEST_CASE("the two prediction routes agree on a broad grid") {
    for (double total : {2.0, 10.0, 100.0, 10000.0}) {
        for (double offset : {-0.1, -0.02, 0.0, 0.02, 0.1}) {
            const MediaPrior prior{total * (0.5 - offset), total * (0.5 + offset)};
            for (const Candidate cls : {Candidate::A1, Candidate::A2}) {
                for (std::int64_t n1 = 0; n1 <= 40; ++n1) {
                    for (std::int64_t n2 = 0; n2 <= 40; ++n2) {
                        const auto a = predict(prior, cls, n1, n2);
                        const auto b = predict_linear(prior, cls, n1, n2);
                        REQUIRE(a == b);
                    }
                }
            }
        }
    }
}

TEST_CASE("more same-class evidence never flips a prediction away from it") {
    const MediaPrior prior{37.5, 40.25};
    for (const Candidate cls : {Candidate::A1, Candidate::A2}) {
        for (std::int64_t n2 = 0; n2 <= 30; ++n2) {
            Candidate previous = predict(prior, cls, 0, n2);
            for (std::int64_t n1 = 1; n1 <= 60; ++n1) {
                const Candidate now = predict(prior, cls, n1, n2);
                if (previous == Candidate::A1) CHECK(now == Candidate::A1);
                previous = now;
            }
        }
    }
}

TEST_CASE("raising the bias toward the loser never flips a surprised voter back") {
    // alpha - beta falls in delta, the observation side is fixed
    const double t = 1000.0, eps = 0.02;
    for (std::int64_t n1 : {0, 5, 20}) {
        for (std::int64_t n2 : {0, 7, 19}) {
            bool locked_a2 = false;
            for (double delta = -0.3; delta <= 0.3; delta += 0.01) {
                const MediaPrior prior{t * (0.5 + eps - delta), t * (0.5 - eps + delta)};
                const Candidate z = predict(prior, Candidate::A2, n1, n2);
                if (locked_a2) CHECK(z == Candidate::A2);
                if (z == Candidate::A2) locked_a2 = true;
            }
        }
    }
}

namespace {

NeighborCounts fixed_counts(const Electorate& e, std::int32_t same, std::int32_t other) {
    NeighborCounts counts;
    counts.same.assign(size_t(e.size()), same);
    counts.other.assign(size_t(e.size()), other);
    return counts;
}

}  // namespace

TEST_CASE("everyone predicting the winner leaves both fractions at zero") {
    const auto e = Electorate::with_counts(60, 40);
    // strong A1 prior: everyone predicts A1 = the winner
    const auto stats = evaluate_election(e, fixed_counts(e, 0, 0), {200, 10});
    CHECK(stats.majority_fraction == 0.0);
    CHECK(stats.minority_fraction == 0.0);
    CHECK(stats.majority_surprised == 0);
    CHECK(stats.minority_surprised == 0);
}

TEST_CASE("a prior larger than any possible count difference silences surprise") {
    const auto e = Electorate::with_counts(600, 400);
    // alpha - beta = 2000 > n: the linear rule's rhs can never reach it
    const MediaPrior prior{2100, 100};
    const auto counts = sample_counts_homogeneous(e, BlockProbs::make(0.5, 0.4), 99);
    const auto stats = evaluate_election(e, counts, prior);
    CHECK(stats.majority_fraction == 0.0);
    CHECK(stats.minority_fraction == 0.0);
}

TEST_CASE("two isolated voters under a tie: the A1 voter is the surprised one") {
    const auto e = Electorate::with_counts(1, 1);
    const auto stats = evaluate_election(e, fixed_counts(e, 0, 0), {1, 1});
    // A1 voter estimates 1 -> predicts A1; A2 voter estimates 0 -> predicts A2;
    // the tie-break makes A2 the winner, so only the A1 voter is surprised.
    CHECK(stats.predictions[0].q1_hat == 1.0);
    CHECK(stats.predictions[0].z == Candidate::A1);
    CHECK(stats.predictions[1].q1_hat == 0.0);
    CHECK(stats.predictions[1].z == Candidate::A2);
    CHECK(stats.majority_fraction == 1.0);
    CHECK(stats.minority_fraction == 0.0);
}

TEST_CASE("per-voter records stay consistent with the fractions") {
    const auto e = Electorate::with_counts(50, 30);
    const auto counts = sample_counts_homogeneous(e, BlockProbs::make(0.4, 0.2), 7);
    const auto stats = evaluate_election(e, counts, {3, 2});
    std::int64_t maj = 0, min = 0;
    for (std::int64_t i = 0; i < e.size(); ++i) {
        const auto& pred = stats.predictions[size_t(i)];
        CHECK((pred.z == Candidate::A1) == (pred.q1_hat > 0.5));
        CHECK(pred.surprised == (pred.z != e.winner()));
        if (pred.surprised) (e.voter_class(i) == e.majority_class() ? maj : min) += 1;
    }
    CHECK(stats.majority_surprised == maj);
    CHECK(stats.minority_surprised == min);
}

TEST_CASE("counts from a different electorate are rejected") {
    const auto e = Electorate::with_counts(5, 5);
    const auto f = Electorate::with_counts(6, 5);
    const auto counts = sample_counts_homogeneous(e, BlockProbs::make(0.5, 0.5), 1);
    CHECK_THROWS(evaluate_election(f, counts, {1, 1}));
}
