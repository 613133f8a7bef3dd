#pragma once

#include <cstdint>

namespace surprise {

/// The two ballot options. A voter's class is the candidate they prefer.
enum class Candidate : std::uint8_t { A1 = 1, A2 = 2 };

constexpr Candidate opposite(Candidate c) {
    return c == Candidate::A1 ? Candidate::A2 : Candidate::A1;
}

/// Fixed two-class voter population. Counts are the source of truth; the
/// margin is always derived from them. Voters are laid out canonically:
/// indices [0, n1) prefer A1, the rest prefer A2. Immutable once built.
class Electorate {
  public:
    /// Builds an electorate from class counts. Rejects an empty population;
    /// a one-sided population (one count zero) is accepted because sampled
    /// sub-elections can realise it.
    static Electorate with_counts(std::int64_t n1, std::int64_t n2);

    std::int64_t size() const { return n1_ + n2_; }
    std::int64_t n1() const { return n1_; }
    std::int64_t n2() const { return n2_; }

    std::int64_t class_size(Candidate c) const { return c == Candidate::A1 ? n1_ : n2_; }

    /// Canonical class map: voter index -> preferred candidate.
    Candidate voter_class(std::int64_t voter) const {
        return voter < n1_ ? Candidate::A1 : Candidate::A2;
    }

    /// Plurality winner; an exact tie goes to A2.
    Candidate winner() const { return n1_ > n2_ ? Candidate::A1 : Candidate::A2; }

    /// Class reported in the "majority" slot of aggregate statistics: the
    /// strictly larger class, with A1 keeping the slot on a tie.
    Candidate majority_class() const { return n2_ > n1_ ? Candidate::A2 : Candidate::A1; }
    Candidate minority_class() const { return opposite(majority_class()); }

    /// Signed margin epsilon with n1 = n(1/2 + eps): exactly (n1 - n2) / (2n).
    double margin() const {
        return double(n1_ - n2_) / (2.0 * double(size()));
    }

  private:
    Electorate(std::int64_t n1, std::int64_t n2) : n1_(n1), n2_(n2) {}
    std::int64_t n1_;
    std::int64_t n2_;
};

}  // namespace surprise
