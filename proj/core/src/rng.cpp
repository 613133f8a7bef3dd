#include "surprise/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace surprise::rng {

std::int64_t binomial(Stream& stream, std::int64_t trials, double prob) {
    if (trials < 0) throw std::invalid_argument("binomial: negative trial count");
    if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("binomial: probability outside [0,1]");
    if (trials == 0 || prob <= 0.0) return 0;
    if (prob >= 1.0) return trials;
    std::binomial_distribution<std::int64_t> dist(trials, prob);
    return dist(stream);
}

namespace {

// log C(n, k); inputs validated by the caller.
double log_choose(std::int64_t n, std::int64_t k) {
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

}  // namespace

std::int64_t hypergeometric(Stream& stream, std::int64_t total, std::int64_t marked,
                            std::int64_t draws) {
    if (total < 0 || marked < 0 || draws < 0 || marked > total || draws > total)
        throw std::invalid_argument("hypergeometric: inconsistent parameters");
    if (draws == 0 || marked == 0) return 0;
    if (marked == total) return draws;
    if (draws == total) return marked;

    const std::int64_t lo = std::max<std::int64_t>(0, draws + marked - total);
    const std::int64_t hi = std::min(draws, marked);
    if (lo == hi) return lo;

    // Inverse transform enumerated outward from the mode; each pmf step is a
    // constant-time ratio update, so a draw costs a few standard deviations
    // of walking rather than a pass over the whole support.
    const std::int64_t mode = std::clamp(
        std::int64_t((double(draws) + 1.0) * (double(marked) + 1.0) / (double(total) + 2.0)),
        lo, hi);
    const double pmf_mode = std::exp(log_choose(marked, mode) +
                                     log_choose(total - marked, draws - mode) -
                                     log_choose(total, draws));

    const double u = stream.uniform01();
    double cumulative = pmf_mode;
    if (u <= cumulative) return mode;

    std::int64_t k_up = mode, k_down = mode;
    double p_up = pmf_mode, p_down = pmf_mode;
    const double other = double(total - marked);

    while (k_up < hi || k_down > lo) {
        if (k_up < hi) {
            // P(k+1)/P(k)
            p_up *= double(marked - k_up) * double(draws - k_up) /
                    (double(k_up + 1) * (other - double(draws) + double(k_up) + 1.0));
            ++k_up;
            cumulative += p_up;
            if (u <= cumulative) return k_up;
        }
        if (k_down > lo) {
            // P(k-1)/P(k)
            p_down *= double(k_down) * (other - double(draws) + double(k_down)) /
                      (double(marked - k_down + 1) * double(draws - k_down + 1));
            --k_down;
            cumulative += p_down;
            if (u <= cumulative) return k_down;
        }
    }
    return mode;  // u exceeded accumulated mass by floating-point slack
}

}  // namespace surprise::rng
