#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "surprise/netgen.hpp"
#include "surprise/rng.hpp"
#include "surprise/stats.hpp"
#include "surprise/theory.hpp"

using namespace surprise;
using namespace surprise::theory;

namespace {

RegimeParams influential_point(std::int64_t n1, std::int64_t n2, double p, double q, double c,
                               double delta) {
    MediaSpec media;
    media.regime = MediaRegime::Influential;
    media.c = c;
    media.delta = delta;
    return RegimeParams::from(Electorate::with_counts(n1, n2),
                              BlockProbs::make(p, q, true), media);
}

RegimeParams uninfluential_point(std::int64_t n1, std::int64_t n2, double p, double q, double a,
                                 double gamma, double delta) {
    MediaSpec media;
    media.regime = MediaRegime::Uninfluential;
    media.a = a;
    media.gamma = gamma;
    media.delta = delta;
    return RegimeParams::from(Electorate::with_counts(n1, n2),
                              BlockProbs::make(p, q, true), media);
}

}  // namespace

TEST_CASE("majority threshold hand arithmetic") {
    auto rp = influential_point(5200, 4800, 0.2, 0.2, 0.0, 0.0);
    CHECK(majority_threshold(rp) == doctest::Approx(0.192 / 1.04).epsilon(1e-12));
    CHECK(0.192 / 1.04 == doctest::Approx(0.184615).epsilon(1e-5));

    rp = influential_point(5200, 4800, 0.2, 0.2, 0.01, 0.0);
    CHECK(majority_threshold(rp) == doctest::Approx(0.1912 / 1.04).epsilon(1e-12));
    CHECK(0.1912 / 1.04 == doctest::Approx(0.183846).epsilon(1e-5));

    // bias equal to the margin removes the media term for any c
    const auto at_c0 = influential_point(5200, 4800, 0.3, 0.2, 0.0, 0.02);
    const auto at_c9 = influential_point(5200, 4800, 0.3, 0.2, 9.0, 0.02);
    CHECK(majority_threshold(at_c0) == doctest::Approx(majority_threshold(at_c9)).epsilon(1e-14));
    CHECK(majority_threshold(at_c0) == doctest::Approx(0.2 * 0.96 / 1.04).epsilon(1e-12));
}

TEST_CASE("minority threshold hand arithmetic") {
    auto rp = influential_point(5200, 4800, 0.2, 0.2, 0.0, 0.0);
    CHECK(minority_threshold(rp) == doctest::Approx(0.208 / 0.96).epsilon(1e-12));
    CHECK(0.208 / 0.96 == doctest::Approx(0.216667).epsilon(1e-5));

    rp = influential_point(5200, 4800, 0.2, 0.2, 0.01, 0.0);
    CHECK(minority_threshold(rp) == doctest::Approx(0.2175).epsilon(1e-10));

    const auto biased = influential_point(5200, 4800, 0.3, 0.2, 4.2, 0.02);
    CHECK(minority_threshold(biased) == doctest::Approx(0.2 * 1.04 / 0.96).epsilon(1e-12));
}

TEST_CASE("corollary range examples") {
    // delta=0, c=0.5, q=0.18: (0.127692, 0.236667), contains p = 0.2
    auto range = corollary_range(influential_point(5200, 4800, 0.2, 0.18, 0.5, 0.0));
    CHECK(!range.empty());
    CHECK(range.lo == doctest::Approx((0.1728 - 0.04) / 1.04).epsilon(1e-12));
    CHECK(range.hi == doctest::Approx((0.1872 + 0.04) / 0.96).epsilon(1e-12));
    CHECK(range.contains(0.2));

    // bias beyond the margin with a strong media empties the range
    range = corollary_range(influential_point(5200, 4800, 0.2, 0.18, 0.5, 0.1));
    CHECK(range.empty());

    // c = 0 keeps it nonempty for any positive q, independent of delta
    for (double delta : {-0.3, 0.0, 0.3}) {
        range = corollary_range(influential_point(5200, 4800, 0.2, 0.18, 0.0, delta));
        CHECK(!range.empty());
        CHECK(range.lo == doctest::Approx(0.18 * 0.96 / 1.04));
        CHECK(range.hi == doctest::Approx(0.18 * 1.04 / 0.96));
    }
}

TEST_CASE("exact expectation: majority reference value") {
    const auto rp = influential_point(5200, 4800, 0.2, 0.18, 0.5, 0.0);
    CHECK(exact_expectation(rp, VoterSide::Majority) == doctest::Approx(-376.8).epsilon(1e-10));
    CHECK(exact_expectation(rp, VoterSide::Minority) == doctest::Approx(-175.2).epsilon(1e-10));
}

TEST_CASE("exact expectation: symmetric point leaves only the self-exclusion term") {
    for (double p : {0.1, 0.5, 0.9}) {
        const auto rp = influential_point(700, 700, p, p, 0.7, 0.0);  // eps = 0, delta = 0
        CHECK(exact_expectation(rp, VoterSide::Majority) == doctest::Approx(-(1.0 - p)).epsilon(1e-9));
    }
}

TEST_CASE("exact expectation matches a Monte Carlo mean at n=2000") {
    const auto e = Electorate::with_counts(1040, 960);  // eps = 0.02
    const auto bp = BlockProbs::make(0.3, 0.25);
    MediaSpec media;
    media.regime = MediaRegime::Influential;
    media.c = 0.4;
    media.delta = -0.05;
    const auto rp = RegimeParams::from(e, bp, media);
    const double shift = 2.0 * 0.4 * 2000.0 * (0.02 + 0.05);

    std::vector<double> xs;
    for (int rep = 0; rep < 3; ++rep) {
        const auto counts = sample_counts_homogeneous(e, bp, 7000 + std::uint64_t(rep));
        for (std::int64_t i = e.n1(); i < e.size(); ++i)
            xs.push_back(double(counts.same[size_t(i)]) - double(counts.other[size_t(i)]) -
                         (shift - 1.0));
    }
    const double expect = exact_expectation(rp, VoterSide::Minority);
    const double se = stats::standard_error(xs);
    CHECK(std::abs(stats::mean(xs) - expect) < 3.0 * se);
}

TEST_CASE("probability bounds") {
    auto rp = influential_point(5201, 4800, 0.3, 0.2, 0.1, 0.0);  // n = 10001
    auto bounds = probability_bounds(rp);
    CHECK(bounds.per_voter == doctest::Approx(std::exp(-200.0)).epsilon(1e-12));
    CHECK(std::exp(-200.0) == doctest::Approx(1.3839e-87).epsilon(1e-3));
    CHECK(bounds.everyone_correct == doctest::Approx(1.0 - 10001.0 * std::exp(-200.0)));

    rp = influential_point(1, 1, 0.3, 0.2, 0.1, 0.0);  // n = 2
    CHECK(probability_bounds(rp).per_voter == doctest::Approx(std::exp(-2.0)));

    double previous = 1.0;
    for (std::int64_t half : {2, 5, 10, 100, 1000}) {
        const auto point = influential_point(half, half, 0.3, 0.2, 0.1, 0.0);
        const double b = probability_bounds(point).per_voter;
        CHECK(b < previous);
        previous = b;
    }
}

TEST_CASE("classification at the strongly surprised reference point") {
    // p = 0.3 far above the minority threshold ~ 0.1092
    const auto rp = influential_point(5200, 4800, 0.3, 0.1, 0.01, 0.0);
    CHECK(minority_threshold(rp) == doctest::Approx(0.10917).epsilon(1e-4));
    const auto verdict = classify_regime(rp);
    CHECK(verdict.majority == ClassOutcome::UnsurprisedWhp);
    CHECK(verdict.expectation_majority == doctest::Approx(-1084.7).epsilon(1e-8));
    // the minority expectation (916.7) sits inside the deviation scale
    // (9999^{3/4} ~ 999.93), so the asymptotic label is withheld at this n
    CHECK(verdict.expectation_minority == doctest::Approx(916.7).epsilon(1e-8));
    CHECK(verdict.critical_scale == doctest::Approx(std::pow(9999.0, 0.75)).epsilon(1e-12));
    CHECK(verdict.minority == ClassOutcome::NearCritical);

    // at n = 20000 the same parameters clear the scale
    const auto bigger = influential_point(10400, 9600, 0.3, 0.1, 0.01, 0.0);
    const auto v2 = classify_regime(bigger);
    CHECK(v2.majority == ClassOutcome::UnsurprisedWhp);
    CHECK(v2.minority == ClassOutcome::SurprisedWhp);
}

TEST_CASE("classification in the corollary regime needs n large enough for the scale") {
    const auto rp = influential_point(52'000'000, 48'000'000, 0.2, 0.18, 0.5, 0.0);
    const auto verdict = classify_regime(rp);
    CHECK(verdict.majority == ClassOutcome::UnsurprisedWhp);
    CHECK(verdict.minority == ClassOutcome::UnsurprisedWhp);
    CHECK(!verdict.all_unsurprised_range.empty());
    CHECK(verdict.all_unsurprised_range.contains(0.2));
    CHECK(verdict.all_unsurprised_range.lo == doctest::Approx(majority_threshold(rp)));
    CHECK(verdict.all_unsurprised_range.hi == doctest::Approx(minority_threshold(rp)));
}

TEST_CASE("uninfluential media at large n reduces to the no-media outcome") {
    for (double a : {0.5, 2.0}) {
        for (double delta : {-0.3, 0.0, 0.3}) {
            const auto rp = uninfluential_point(5'200'000'000, 4'800'000'000, 0.15, 0.1, a, 0.5,
                                                delta);
            const auto verdict = classify_regime(rp);
            CHECK(verdict.majority == ClassOutcome::UnsurprisedWhp);
            CHECK(verdict.minority == ClassOutcome::SurprisedWhp);
        }
    }
    // effective weight decays like n^(gamma-1)
    const auto small = uninfluential_point(520, 480, 0.15, 0.1, 2.0, 0.5, 0.0);
    const auto large = uninfluential_point(52000, 48000, 0.15, 0.1, 2.0, 0.5, 0.0);
    CHECK(large.effective_weight() < small.effective_weight());
    CHECK(large.effective_weight() == doctest::Approx(2.0 * std::pow(100000.0, -0.5)));
}

TEST_CASE("expectation sign agrees with the threshold side outside an O(1/n) band") {
    rng::Stream s(5150);
    int checked = 0;
    for (int draw = 0; draw < 3000; ++draw) {
        const std::int64_t n = 2'000'000;
        const auto n1 = std::int64_t(1'000'000 + 1 + (s() % 400000));
        const auto e = Electorate::with_counts(n1, n - n1);
        const double q = 0.05 + 0.4 * s.uniform01();
        const double p = q + 0.5 * s.uniform01();
        if (p > 1.0) continue;
        MediaSpec media;
        media.regime = MediaRegime::Influential;
        media.c = s.uniform01();
        media.delta = (s.uniform01() - 0.5) * 0.4;
        const auto rp = RegimeParams::from(e, BlockProbs::make(p, q), media);

        const double band = 3.0 / double(n);
        const double e_maj = exact_expectation(rp, VoterSide::Majority);
        const double thr_maj = majority_threshold(rp);
        if (std::abs(p - thr_maj) > band) {
            CHECK((e_maj < 0) == (p > thr_maj));
            ++checked;
        }
        const double e_min = exact_expectation(rp, VoterSide::Minority);
        const double thr_min = minority_threshold(rp);
        if (std::abs(p - thr_min) > band) {
            CHECK((e_min > 0) == (p > thr_min));
            ++checked;
        }
    }
    CHECK(checked > 5000);  // the band is narrow; almost every draw is conclusive
}

TEST_CASE("union bound constants follow the predicted branch") {
    // minority surprised lean: printed constant (1+2e) and tighter (1-2e)
    const auto rp = influential_point(10400, 9600, 0.3, 0.1, 0.01, 0.0);
    const auto verdict = classify_regime(rp);
    const double nb = 20000.0 * verdict.per_voter_bound;
    CHECK(verdict.union_bound_majority == doctest::Approx(1.0 - 0.52 * nb));
    CHECK(verdict.union_bound_minority == doctest::Approx(1.0 - 1.04 * nb));
    CHECK(verdict.union_bound_minority_tight == doctest::Approx(1.0 - 0.96 * nb));
    CHECK(verdict.union_bound_minority_tight >= verdict.union_bound_minority);
}

TEST_CASE("empirical per-voter surprise stays under the bound in the whp regime") {
    // majority class at the strongly unsurprised point; 50 full trials
    const auto e = Electorate::with_counts(5200, 4800);
    const auto bp = BlockProbs::make(0.3, 0.1);
    MediaSpec media;
    media.regime = MediaRegime::Influential;
    media.c = 0.01;
    const auto verdict = classify_regime(RegimeParams::from(e, bp, media));
    REQUIRE(verdict.majority == ClassOutcome::UnsurprisedWhp);

    std::int64_t surprised = 0, observed = 0;
    const double shift = 2.0 * 0.01 * 10000.0 * 0.02;
    for (int trial = 0; trial < 50; ++trial) {
        const auto counts = sample_counts_homogeneous(e, bp, 42000 + std::uint64_t(trial));
        for (std::int64_t i = 0; i < e.n1(); ++i) {
            const double x =
                double(counts.other[size_t(i)]) - double(counts.same[size_t(i)]) - (shift + 1.0);
            if (x >= 0.0) ++surprised;
            ++observed;
        }
    }
    const double frequency = double(surprised) / double(observed);
    const double se = std::sqrt(std::max(frequency * (1.0 - frequency), 0.0) / double(observed));
    CHECK(frequency <= verdict.per_voter_bound + 3.0 * se);
}
