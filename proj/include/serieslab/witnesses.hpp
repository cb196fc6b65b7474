#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "serieslab/index_set.hpp"
#include "serieslab/rational.hpp"
#include "serieslab/series.hpp"
#include "serieslab/trace.hpp"

namespace serieslab {

enum class MilestoneMode { ToPlusInfinity, ToMinusInfinity, Oscillation };

// Exact sum over A ∩ (lo, hi] together with the inequality it certifies.
struct BlockCertificate {
    uint64_t lo = 0, hi = 0;
    Rational sum;
    Rational threshold;
    bool greater = true; // sum > threshold (else sum < threshold)
    bool holds() const { return greater ? sum > threshold : sum < threshold; }
};

// Block right-endpoints m_1 < m_2 < ... with block k = (m_{k-1}, m_k], m_0 = 0.
// ToPlusInfinity certifies each block sum > 1 (ToMinusInfinity: < -1);
// Oscillation alternates > +c, < -c starting upward.
struct Milestones {
    MilestoneMode mode = MilestoneMode::ToPlusInfinity;
    Rational c;
    bool strengthened = false;
    uint64_t horizon = 0;
    uint64_t requested = 0;
    std::vector<uint64_t> indices;
    std::vector<BlockCertificate> certs;
    bool shortfall() const { return indices.size() < requested; }
};

// Greedy milestone extraction. `strengthened` (one-sided modes only) also
// requires the running block sum to stay past the threshold for every j up to
// the horizon. Horizon exhaustion yields a partial result, not an error.
Milestones find_milestones(const Series& a, const IndexSet& A, MilestoneMode mode,
                           const Rational& c, uint64_t count, uint64_t horizon,
                           bool strengthened = false);

// Re-checks every stored certificate by independent window summation.
bool milestones_sound(const Milestones& m, const Series& a, const IndexSet& A);

// Milestones whose block sums dominate all prior absolute mass:
// Σ_{A∩(m_k, m_{k+1}]} a_n > Σ_{n ≤ m_k} |a_n| + 1. Uses a compensated float
// prescan for candidate indices and verifies each certificate exactly.
struct DominatingCertificate {
    uint64_t lo = 0, hi = 0;
    Rational block_sum;
    Rational prefix_abs; // Σ_{n <= lo} |a_n|, full series
    bool holds() const { return block_sum > prefix_abs + Rational(1); }
};

struct DominatingMilestones {
    std::vector<uint64_t> indices;
    std::vector<DominatingCertificate> certs;
    uint64_t horizon = 0;
    uint64_t requested = 0;
    bool shortfall() const { return indices.size() < requested; }
};

DominatingMilestones find_dominating_milestones(const Series& a, const IndexSet& A, uint64_t count,
                                                uint64_t horizon);

// Greedy maximal consecutive blocks J_1, J_2, ... with Σ_{n∈J_k}|a_n| <= base^k;
// appending the next term would overflow the budget (stored as next_abs).
struct BlockPartition {
    Rational base;
    std::vector<std::pair<uint64_t, uint64_t>> blocks; // [lo, hi]; hi = lo-1 for an empty block
    std::vector<Rational> abs_sums;
    std::vector<Rational> next_abs;

    size_t count() const { return blocks.size(); }
    // Σ_{l <= k} abs_sums[l], exact absolute mass of [1, max J_k]
    Rational prefix_abs(size_t k) const;
};

BlockPartition blocks_base_pow(const Series& a, const Rational& base, uint64_t block_count,
                               uint64_t scan_bound = kDefaultScanBound);

// base^k/2 - Σ_{n ∈ J_k, a_n >= 0} a_n per block (signed residual of the
// half-mass approximation).
std::vector<Rational> positive_part_residuals(const Series& a, const BlockPartition& p);

struct UpDownReport {
    Rational bound;
    Rational tail_slack;     // max_m S_m of the full-series trace
    Rational comp_threshold; // -(bound - tail_slack)
    std::optional<uint64_t> a_cross_index;
    Rational a_cross_value;
    std::optional<uint64_t> comp_cross_index;
    Rational comp_cross_value;
    bool comp_never_moves = false;
    bool partition_identity_ok = false; // S^A_m + S^(N∖A)_m == S_m for all m
    uint64_t horizon = 0;
};

// Finite shadow of "if Σ_A = ∞ then Σ_{N∖A} = -∞": first index where the
// A-trace reaches +bound, and first index where the complement trace drops
// below -(bound - tail_slack).
UpDownReport up_down_check(const Series& a, const IndexSet& A, const Rational& bound,
                           uint64_t horizon);

// classify of the D-trace with band ±1/4 and min_crossings = excursions.
DivergenceVerdict quarter_oscillation_check(const Series& a, const IndexSet& D,
                                            uint32_t excursions, uint64_t horizon);

struct TargetCertificate {
    Rational target;
    uint64_t reached_at = 0;
    Rational value;
};

struct OscillatorResult {
    std::vector<uint64_t> members; // sorted; the constructed finite set
    std::vector<TargetCertificate> certs;
    bool shortfall = false;
    uint64_t horizon = 0;
    IndexSet set() const { return IndexSet::finite(members); }
};

// Greedy oscillation-set construction: starting from the empty set, append
// positive-term indices beyond the current front until the trace reaches the
// next target above the current value (negative-term indices when the target
// lies below), alternating through k_targets.
OscillatorResult generic_oscillator(const Series& a, const std::vector<Rational>& k_targets,
                                    uint64_t horizon, const Rational& growth_checkpoint = Rational(2),
                                    uint64_t audit_horizon = 10'000);

} // namespace serieslab
