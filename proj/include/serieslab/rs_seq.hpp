#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "serieslab/index_set.hpp"
#include "serieslab/rational.hpp"
#include "serieslab/series.hpp"
#include "serieslab/trace.hpp"
#include "serieslab/witnesses.hpp"

namespace serieslab {

// One block of an (r,s)-sequence: a finite piece I_k (interval or explicit
// set) with a distinguished part B_k ⊆ I_k.
struct RSBlock {
    uint64_t lo = 0, hi = 0;      // interval form when elems is empty
    std::vector<uint64_t> elems;  // explicit finite-set form (sorted)
    IndexSet b = IndexSet::empty();

    bool interval_form() const { return elems.empty(); }
    uint64_t min_elem() const { return interval_form() ? lo : elems.front(); }
    uint64_t max_elem() const { return interval_form() ? hi : elems.back(); }
    bool empty() const { return interval_form() ? hi < lo : elems.empty(); }

    template <class F>
    void for_each(F&& f) const {
        if (interval_form()) {
            for (uint64_t n = lo; n <= hi && n >= lo; ++n) f(n);
        } else {
            for (uint64_t n : elems) f(n);
        }
    }
};

// Finite-horizon (Ī, B̄, x̄) block structure with targets r, s. Terms lie in
// [0,1] (audited on access); blocks are strictly separated.
class RSSequence {
public:
    RSSequence(std::string desc, std::vector<RSBlock> blocks, TermFn x, Rational r, Rational s);

    const std::string& description() const { return desc_; }
    size_t block_count() const { return blocks_.size(); }
    const RSBlock& block(size_t k) const { return blocks_.at(k - 1); } // 1-based
    const Rational& r() const { return r_; }
    const Rational& s() const { return s_; }

    Rational x(uint64_t n) const; // term, audited into [0,1]

    // Present when the sequence came out of one_one_sequence: the base-5
    // J-blocks it was assembled from.
    const std::optional<BlockPartition>& j_blocks() const { return j_; }
    void set_j_blocks(BlockPartition p) { j_ = std::move(p); }

    // Σ_{n ∈ B_k} x_n and Σ_{n ∈ I_k∖B_k} x_n, exact.
    std::pair<Rational, Rational> block_sums(size_t k) const;

private:
    std::string desc_;
    std::vector<RSBlock> blocks_;
    TermFn x_;
    Rational r_, s_;
    std::optional<BlockPartition> j_;
};

// Blocks I_k = J_{2k-1} ∪ J_{2k}, B_k = (P ∩ J_{2k-1}) ∪ (N ∩ J_{2k}) with
// P = {a_n >= 0}, N = {a_n < 0}, and x_n = |a_n| / 5^k for n ∈ J_k. Requires a
// declared term bound <= 1.
RSSequence one_one_sequence(const Series& a, uint64_t block_pairs,
                            uint64_t scan_bound = kDefaultScanBound);

struct RSAuditRow {
    size_t k = 0;
    Rational b_sum, comp_sum;
    Rational b_dev, comp_dev;
    bool pass = false;
};

struct RSAudit {
    std::vector<RSAuditRow> rows; // k >= tail_start
    Rational tol;
    size_t tail_start = 1;
    bool passes = true;
    std::optional<size_t> first_failing_block;
};

RSAudit audit_rs(const RSSequence& seq, const Rational& tol, size_t tail_start);

struct SplitRow {
    size_t k = 0;
    Rational d_b_sum;    // Σ_{n ∈ D∩B_k} x_n
    Rational b_dev;      // |d_b_sum - r|
    Rational d_comp_sum; // Σ_{n ∈ D∩(I_k∖B_k)} x_n
    bool exact_equality = false; // D ∩ I_k == B_k
};

// E is computed maximal: every qualifying block is listed.
struct SplitWitness {
    std::vector<size_t> E;
    std::vector<SplitRow> rows; // one per k ∈ E
    Rational tol;
    uint64_t min_blocks = 0;
    bool is_witness = false; // |E| >= min_blocks
};

SplitWitness almost_splits(const IndexSet& D, const RSSequence& seq, const Rational& tol,
                           uint64_t min_blocks);

SplitWitness totally_splits(const IndexSet& D, const RSSequence& seq, uint64_t min_blocks);

// Re-derives every deviation stored in a witness from scratch.
bool witness_sound(const SplitWitness& w, const IndexSet& D, const RSSequence& seq);

// Exact per-block inequality rows behind the ±1/4 oscillation conclusion.
struct ScaledBlockRow {
    size_t k = 0;
    bool pass = false;
    // x-scale: Σ x_n over D∩P∩J_{2k-1}, D∩N∩J_{2k}, D∩N∩J_{2k-1}, D∩P∩J_{2k}
    Rational x_p_odd, x_n_even, x_n_odd, x_p_even;
    // a-scale counterparts (signed sums of a_n over the same sets)
    Rational a_p_odd, a_n_even, a_n_odd, a_p_even;
    Rational up_total;    // Σ_{D∩J_{2k-1}} a_n
    Rational down_total;  // Σ_{D∩J_{2k}} a_n
    Rational prefix_abs;  // Σ_{n < min I_k} |a_n|
    Rational prefix_cap;  // (5^{2k-1} - 1)/4
    Rational trace_up;    // Σ_{n∈D, n <= max J_{2k-1}} a_n  (> 1/4 when pass)
    Rational trace_down;  // Σ_{n∈D, n <= max J_{2k}} a_n    (< -1/4 when pass)
    uint64_t up_index = 0, down_index = 0;
};

struct OscWitnessReport {
    std::vector<ScaledBlockRow> rows;
    size_t passing = 0;
    DivergenceVerdict verdict;
};

// Scales the witness-block x-inequalities back to the series exactly and runs
// the ±1/4 check. Witness tolerance must be <= 1/8; the sequence must carry
// base-5 J-blocks.
OscWitnessReport oscillation_from_witness(const Series& a, const RSSequence& seq, const IndexSet& D,
                                          const SplitWitness& witness);

} // namespace serieslab
