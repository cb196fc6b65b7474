#include "serieslab/rs_seq.hpp"

#include <algorithm>

namespace serieslab {

RSSequence::RSSequence(std::string desc, std::vector<RSBlock> blocks, TermFn x, Rational r,
                       Rational s)
    : desc_(std::move(desc)), blocks_(std::move(blocks)), x_(std::move(x)), r_(std::move(r)),
      s_(std::move(s)) {
    for (size_t i = 1; i < blocks_.size(); ++i) {
        if (blocks_[i - 1].empty() || blocks_[i].empty()) continue;
        if (blocks_[i - 1].max_elem() >= blocks_[i].min_elem())
            throw Error("rs sequence " + desc_ + ": blocks " + std::to_string(i) + " and " +
                        std::to_string(i + 1) + " are not strictly separated");
    }
}

Rational RSSequence::x(uint64_t n) const {
    Rational v = x_(n);
    if (v.sign() < 0 || v > Rational(1))
        throw AuditError("rs sequence " + desc_ + ": term x_" + std::to_string(n) + " = " +
                         v.str() + " is outside [0,1]");
    return v;
}

std::pair<Rational, Rational> RSSequence::block_sums(size_t k) const {
    const RSBlock& blk = block(k);
    Rational in(0), out(0);
    blk.for_each([&](uint64_t n) {
        if (blk.b.contains(n)) in += x(n);
        else out += x(n);
    });
    return {in, out};
}

RSSequence one_one_sequence(const Series& a, uint64_t block_pairs, uint64_t scan_bound) {
    if (block_pairs == 0) throw Error("one_one_sequence: block_pairs must be >= 1");
    if (!a.term_bound() || *a.term_bound() > Rational(1))
        throw AuditError("one_one_sequence: series \"" + a.name() +
                         "\" must declare a term bound <= 1");

    BlockPartition part = blocks_base_pow(a, Rational(5), 2 * block_pairs, scan_bound);

    auto boundaries = std::make_shared<std::vector<uint64_t>>();
    for (auto [lo, hi] : part.blocks) boundaries->push_back(hi);

    auto j_index_of = [boundaries](uint64_t n) -> size_t {
        auto it = std::lower_bound(boundaries->begin(), boundaries->end(), n);
        if (it == boundaries->end())
            throw HorizonError("one_one_sequence term query past the last computed block");
        return static_cast<size_t>(it - boundaries->begin()) + 1; // 1-based J index
    };

    std::vector<RSBlock> blocks;
    for (uint64_t k = 1; k <= block_pairs; ++k) {
        auto [lo1, hi1] = part.blocks[2 * k - 2];
        auto [lo2, hi2] = part.blocks[2 * k - 1];
        Series cap = a;
        IndexSet bk = IndexSet::from_predicate(
            "B_" + std::to_string(k) + "(" + a.name() + ")",
            [cap, lo1, hi1, lo2, hi2](uint64_t n) {
                if (n >= lo1 && n <= hi1) return cap.term(n).sign() >= 0; // P side
                if (n >= lo2 && n <= hi2) return cap.term(n).sign() < 0;  // N side
                return false;
            });
        RSBlock blk;
        blk.lo = lo1;
        blk.hi = hi2;
        blk.b = bk;
        blocks.push_back(std::move(blk));
    }

    auto inv_pows = std::make_shared<std::vector<Rational>>();
    for (uint64_t k = 1; k <= 2 * block_pairs; ++k)
        inv_pows->push_back(Rational(1) / Rational::pow(Rational(5), k));

    Series cap = a;
    TermFn x = [cap, j_index_of, inv_pows](uint64_t n) {
        size_t k = j_index_of(n);
        return cap.term(n).abs() * (*inv_pows)[k - 1];
    };

    RSSequence seq("one_one(" + a.name() + ")", std::move(blocks), std::move(x), Rational(1),
                   Rational(1));
    seq.set_j_blocks(std::move(part));
    return seq;
}

RSAudit audit_rs(const RSSequence& seq, const Rational& tol, size_t tail_start) {
    if (tail_start < 1 || tail_start > seq.block_count())
        throw Error("audit_rs: tail_start must be within 1..block_count");
    RSAudit audit;
    audit.tol = tol;
    audit.tail_start = tail_start;
    for (size_t k = tail_start; k <= seq.block_count(); ++k) {
        auto [b_sum, comp_sum] = seq.block_sums(k);
        RSAuditRow row;
        row.k = k;
        row.b_sum = b_sum;
        row.comp_sum = comp_sum;
        row.b_dev = (b_sum - seq.r()).abs();
        row.comp_dev = (comp_sum - seq.s()).abs();
        row.pass = row.b_dev <= tol && row.comp_dev <= tol;
        if (!row.pass && !audit.first_failing_block) audit.first_failing_block = k;
        audit.passes = audit.passes && row.pass;
        audit.rows.push_back(std::move(row));
    }
    return audit;
}

namespace {

SplitRow split_row(const IndexSet& D, const RSSequence& seq, size_t k) {
    const RSBlock& blk = seq.block(k);
    SplitRow row;
    row.k = k;
    row.d_b_sum = Rational(0);
    row.d_comp_sum = Rational(0);
    row.exact_equality = true;
    blk.for_each([&](uint64_t n) {
        bool in_d = D.contains(n);
        bool in_b = blk.b.contains(n);
        if (in_d != in_b) row.exact_equality = false;
        if (!in_d) return;
        if (in_b) row.d_b_sum += seq.x(n);
        else row.d_comp_sum += seq.x(n);
    });
    row.b_dev = (row.d_b_sum - seq.r()).abs();
    return row;
}

} // namespace

SplitWitness almost_splits(const IndexSet& D, const RSSequence& seq, const Rational& tol,
                           uint64_t min_blocks) {
    if (min_blocks == 0) throw Error("almost_splits: min_blocks must be >= 1");
    SplitWitness w;
    w.tol = tol;
    w.min_blocks = min_blocks;
    for (size_t k = 1; k <= seq.block_count(); ++k) {
        SplitRow row = split_row(D, seq, k);
        if (row.b_dev <= tol && row.d_comp_sum <= tol) {
            w.E.push_back(k);
            w.rows.push_back(std::move(row));
        }
    }
    w.is_witness = w.E.size() >= min_blocks;
    return w;
}

SplitWitness totally_splits(const IndexSet& D, const RSSequence& seq, uint64_t min_blocks) {
    if (min_blocks == 0) throw Error("totally_splits: min_blocks must be >= 1");
    SplitWitness w;
    w.tol = Rational(0);
    w.min_blocks = min_blocks;
    for (size_t k = 1; k <= seq.block_count(); ++k) {
        SplitRow row = split_row(D, seq, k);
        if (row.exact_equality) {
            w.E.push_back(k);
            w.rows.push_back(std::move(row));
        }
    }
    w.is_witness = w.E.size() >= min_blocks;
    return w;
}

bool witness_sound(const SplitWitness& w, const IndexSet& D, const RSSequence& seq) {
    if (w.E.size() != w.rows.size()) return false;
    for (size_t i = 0; i < w.E.size(); ++i) {
        SplitRow fresh = split_row(D, seq, w.E[i]);
        const SplitRow& stored = w.rows[i];
        if (fresh.d_b_sum != stored.d_b_sum || fresh.d_comp_sum != stored.d_comp_sum ||
            fresh.b_dev != stored.b_dev || fresh.exact_equality != stored.exact_equality)
            return false;
    }
    return true;
}

OscWitnessReport oscillation_from_witness(const Series& a, const RSSequence& seq, const IndexSet& D,
                                          const SplitWitness& witness) {
    if (witness.E.empty())
        throw WitnessTooWeakError("oscillation_from_witness: the witness has no qualifying blocks");
    if (witness.tol > Rational(1, 8))
        throw WitnessTooWeakError("oscillation_from_witness: witness tolerance " +
                                  witness.tol.str() + " exceeds 1/8");
    if (!seq.j_blocks())
        throw AuditError("oscillation_from_witness: the sequence carries no base-5 block data");
    const BlockPartition& part = *seq.j_blocks();
    if (part.base != Rational(5))
        throw AuditError("oscillation_from_witness: the ±1/4 derivation requires base 5");

    const Rational three_eighths(3, 8), one_eighth(1, 8), quarter(1, 4);

    OscWitnessReport rep;
    Rational trace(0); // exact D-trace value, advanced block end to block end
    uint64_t trace_idx = 0;
    std::optional<IndexSet> dset = D;

    for (size_t k : witness.E) {
        auto [lo1, hi1] = part.blocks[2 * k - 2];
        auto [lo2, hi2] = part.blocks[2 * k - 1];

        ScaledBlockRow row;
        row.k = k;
        for (uint64_t n = lo1; n <= hi1; ++n) {
            if (!D.contains(n)) continue;
            Rational t = a.term(n);
            if (t.sign() >= 0) { row.x_p_odd += seq.x(n); row.a_p_odd += t; }
            else { row.x_n_odd += seq.x(n); row.a_n_odd += t; }
        }
        for (uint64_t n = lo2; n <= hi2; ++n) {
            if (!D.contains(n)) continue;
            Rational t = a.term(n);
            if (t.sign() >= 0) { row.x_p_even += seq.x(n); row.a_p_even += t; }
            else { row.x_n_even += seq.x(n); row.a_n_even += t; }
        }

        Rational p_odd = Rational::pow(Rational(5), 2 * k - 1);
        Rational p_even = Rational::pow(Rational(5), 2 * k);

        // scaling bridge: the a-sums must equal the x-sums times ±5^j exactly
        if (row.a_p_odd != row.x_p_odd * p_odd || row.a_n_odd != -(row.x_n_odd * p_odd) ||
            row.a_p_even != row.x_p_even * p_even || row.a_n_even != -(row.x_n_even * p_even))
            throw Error("internal: x/a scaling bridge failed on block " + std::to_string(k));

        row.up_total = row.a_p_odd + row.a_n_odd;
        row.down_total = row.a_p_even + row.a_n_even;
        row.prefix_abs = part.prefix_abs(2 * k - 2);
        row.prefix_cap = (p_odd - Rational(1)) / Rational(4);
        row.up_index = hi1;
        row.down_index = hi2;

        bool zoom = row.x_p_odd > three_eighths && row.x_n_even > three_eighths &&
                    row.x_n_odd < one_eighth && row.x_p_even < one_eighth;
        bool scaled = row.a_p_odd > three_eighths * p_odd &&
                      row.a_n_even < -(three_eighths * p_even) &&
                      row.a_n_odd > -(one_eighth * p_odd) && row.a_p_even < one_eighth * p_even;
        bool combined = row.up_total > quarter * p_odd && row.down_total < -(quarter * p_even);
        bool prefix_ok = row.prefix_abs < row.prefix_cap;

        trace += window_sum(a, dset, trace_idx, hi1);
        trace_idx = hi1;
        row.trace_up = trace;
        trace += window_sum(a, dset, trace_idx, hi2);
        trace_idx = hi2;
        row.trace_down = trace;
        bool trace_ok = row.trace_up > quarter && row.trace_down < -quarter;

        row.pass = zoom && scaled && combined && prefix_ok && trace_ok;
        if (row.pass) ++rep.passing;
        rep.rows.push_back(std::move(row));
    }

    if (rep.passing == 0)
        throw WitnessTooWeakError(
            "oscillation_from_witness: no witness block sustains the scaled inequalities");

    uint64_t horizon = 0;
    for (const auto& row : rep.rows)
        if (row.pass) horizon = std::max(horizon, row.down_index);
    rep.verdict = quarter_oscillation_check(a, D, static_cast<uint32_t>(rep.passing), horizon);
    return rep;
}

} // namespace serieslab
