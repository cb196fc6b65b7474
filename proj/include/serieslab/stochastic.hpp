#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "serieslab/index_set.hpp"
#include "serieslab/rational.hpp"
#include "serieslab/series.hpp"
#include "serieslab/trace.hpp"

namespace serieslab {

// SplitMix64 mixing step (Steele, Lea, Flood 2014). Used for random-access
// sign bits; fully determined by its input.
uint64_t splitmix64(uint64_t x);

// Deterministic stream RNG: std::mt19937_64 (bit sequence fixed by the C++
// standard) with unbiased rejection sampling for bounded draws.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}
    uint64_t next() { return gen_(); }
    // uniform on [0, n)
    uint64_t below(uint64_t n);

private:
    std::mt19937_64 gen_;
};

// Random-access ±1 signs: bit(n) = splitmix64(seed ^ n·golden) & 1. The same
// seed reproduces identical bits. Constant sequences are available for the
// degenerate sign choices.
class SignSequence {
public:
    explicit SignSequence(uint64_t seed) : seed_(seed), constant_(-1) {}
    static SignSequence zeros() { return SignSequence(0, 0); }
    static SignSequence ones() { return SignSequence(0, 1); }

    int bit(uint64_t n) const; // {0,1}
    int sign(uint64_t n) const { return bit(n) == 0 ? +1 : -1; } // (-1)^bit
    uint64_t seed() const { return seed_; }

private:
    SignSequence(uint64_t seed, int constant) : seed_(seed), constant_(constant) {}
    uint64_t seed_;
    int constant_; // -1: seeded, else the constant bit
};

// I_1 = [1,2]; I_k the interval of length 2k adjacent on the right.
std::pair<uint64_t, uint64_t> k_interval(uint64_t k);
// which block contains n
uint64_t k_interval_index(uint64_t n);

// A point of K = Π D_k: one k-element subset of I_k per block, to a depth.
class KPoint {
public:
    KPoint(uint64_t depth, std::vector<std::vector<uint8_t>> flags, uint64_t seed);

    // uniform draw: each choice(k) uniform over the k-element subsets of I_k
    static KPoint sample(uint64_t depth, uint64_t seed);

    uint64_t depth() const { return depth_; }
    uint64_t seed() const { return seed_; }
    bool positive_at(uint64_t n) const; // n within depth
    std::vector<uint64_t> choice(uint64_t k) const; // the k chosen indices of I_k
    uint64_t max_index() const { return k_interval(depth_).second; }

    KPoint flip() const; // choice'(k) = I_k ∖ choice(k)

    bool operator==(const KPoint& o) const { return flags_ == o.flags_; }

private:
    uint64_t depth_;
    uint64_t seed_;
    std::vector<std::vector<uint8_t>> flags_; // flags_[k-1][i]: sign of min(I_k)+i
};

// a_n = +1/k² on I_k ∩ choice(k), −1/k² elsewhere in I_k. Queries past the
// depth raise HorizonError.
Series kspace_series(const KPoint& x);

struct InfReport {
    uint64_t samples = 0;
    uint64_t depth = 0;
    Rational threshold;
    uint64_t exceed_count = 0;      // samples whose A-trace ever exceeds +threshold
    uint64_t flip_below_count = 0;  // flipped samples whose A-trace ever drops below -threshold
    uint64_t pairing_violations = 0; // sample-by-sample mismatches (must be 0)
    double exceed_fraction = 0.0;
    uint64_t seed = 0;
};

// Samples KPoints (seed_i = seed + i), reports the fraction whose A-restricted
// prefix sums strictly exceed the threshold by the depth, with the flipped
// fraction paired sample-by-sample.
InfReport inf_experiment(const IndexSet& A, uint64_t samples, uint64_t depth,
                         const Rational& threshold, uint64_t seed);

// Trace of Σ (−1)^{s(n)} c_n over A∩[1,m]; c must be nonnegative.
PartialSumTrace rademacher_trace(const Series& c, const SignSequence& s, const IndexSet& A,
                                 uint64_t horizon);

struct FreqReport {
    uint64_t trials = 0;
    uint64_t horizon = 0;
    Rational escape;
    double fraction = 0.0;           // |S_m| > escape for some m <= horizon
    double endpoint_fraction = 0.0;  // |S_H| > escape
    double stderr_fraction = 0.0;
    double chebyshev_bound = 0.0;    // Σ c_n² / escape², exact value rounded
    double endpoint_mean = 0.0;
    double endpoint_variance = 0.0;  // sample variance of S_H
    double exact_variance = 0.0;     // Σ_{n∈A, n<=H} c_n², exact value rounded
    uint64_t seed = 0;
};

// Monte Carlo escape-frequency estimate over random sign sequences
// (seed_i = seed + i). Summaries are floating point by design; the Chebyshev
// reference is computed exactly and rounded once.
FreqReport divergence_frequency(const Series& c, const IndexSet& A, uint64_t trials,
                                uint64_t horizon, const Rational& escape, uint64_t seed);

struct BoundCheckReport {
    uint64_t samples = 0;
    uint64_t depth = 0;
    uint64_t violations = 0;         // prefix sums with |S_m| > 1/k, exact
    uint64_t prefixes_checked = 0;
    uint64_t seed = 0;
};

// Exact per-sample verification that every full prefix sum obeys |S_m| <= 1/k
// for m in I_k (seed_i = seed + i).
BoundCheckReport kspace_bound_check(uint64_t samples, uint64_t depth, uint64_t seed);

} // namespace serieslab
