#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "serieslab/index_set.hpp"
#include "serieslab/rational.hpp"
#include "serieslab/series.hpp"

namespace serieslab {

// Exact prefix sums S_m = Σ_{n ∈ A ∩ [1,m]} a_n for m = 1..horizon.
struct PartialSumTrace {
    uint64_t horizon = 0;
    std::optional<IndexSet> over; // absent = all of N
    std::vector<Rational> sums;

    const Rational& at(uint64_t m) const { return sums.at(m - 1); }
};

PartialSumTrace partial_sums(const Series& a, uint64_t horizon,
                             const std::optional<IndexSet>& over = std::nullopt);

// One threshold crossing inside an alternating excursion chain.
struct Crossing {
    bool up = false;      // true: S >= value crossed the upper threshold
    uint64_t index = 0;
    Rational value;       // exact S at index
};

struct DivergenceVerdict {
    enum class Kind { Exceeds, Below, Oscillation, Inconclusive };
    Kind kind = Kind::Inconclusive;
    uint64_t horizon = 0;

    // Exceeds / Below
    Rational bound;
    uint64_t at_index = 0;
    Rational value_at;

    // Oscillation: alternating excursions strictly above `upper` and strictly
    // below `lower`.
    Rational upper, lower;
    uint32_t upcross_count = 0;
    uint32_t downcross_count = 0;
    std::vector<Crossing> crossings;

    bool certified() const { return kind != Kind::Inconclusive; }
    std::string kind_name() const;
};

// Verdict priority: oscillation, then exceeds, then below; Inconclusive is the
// safe default. Exceeds needs some S_m >= bound with no S_m <= -osc_amplitude
// afterwards (Below symmetric). Oscillation needs >= min_crossings alternating
// excursions strictly above +osc_amplitude and strictly below -osc_amplitude.
DivergenceVerdict classify(const PartialSumTrace& trace, const Rational& bound,
                           const Rational& osc_amplitude, uint32_t min_crossings);

// Same logic with an asymmetric oscillation band (upper/lower thresholds).
DivergenceVerdict classify_band(const PartialSumTrace& trace, const Rational& bound,
                                const Rational& osc_upper, const Rational& osc_lower,
                                uint32_t min_crossings);

// Re-checks every certificate stored in a verdict against the raw trace.
bool verdict_sound(const DivergenceVerdict& v, const PartialSumTrace& trace);

// Exact Σ_{n ∈ A ∩ (lo, hi]} a_n by divide-and-conquer (balanced summation;
// fast even when the result has ~10^5-digit denominators).
Rational window_sum(const Series& a, const std::optional<IndexSet>& over, uint64_t lo, uint64_t hi);
Rational window_abs_sum(const Series& a, const std::optional<IndexSet>& over, uint64_t lo,
                        uint64_t hi);

// classify_band over a virtual trace that is never materialized: a compensated
// floating scan locates candidate crossings, then every stored certificate is
// re-derived exactly via window sums. Sound (all certificates exact); candidate
// detection uses a guard band and falls back to exact refinement when a sum
// lands inside it.
DivergenceVerdict classify_streaming(const Series& a, const std::optional<IndexSet>& over,
                                     uint64_t horizon, const Rational& bound,
                                     const Rational& osc_upper, const Rational& osc_lower,
                                     uint32_t min_crossings);

} // namespace serieslab
