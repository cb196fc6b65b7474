#include "serieslab/witnesses.hpp"

#include <algorithm>
#include <cmath>

namespace serieslab {

namespace {

// One-sided greedy milestones. sign = +1 hunts block sums > 1, -1 hunts < -1.
void one_sided_milestones(const Series& a, const IndexSet& A, int sign, uint64_t count,
                          uint64_t horizon, bool strengthened, Milestones& out) {
    const Rational thr(sign);
    uint64_t prev = 0;
    while (out.indices.size() < count && prev < horizon) {
        Rational acc(0);
        uint64_t milestone = 0;
        Rational milestone_sum;
        if (!strengthened) {
            for (uint64_t n = prev + 1; n <= horizon; ++n) {
                if (!A.contains(n)) continue;
                acc += a.term(n);
                bool crossed = sign > 0 ? acc > thr : acc < thr;
                if (crossed) {
                    milestone = n;
                    milestone_sum = acc;
                    break;
                }
            }
        } else {
            // need the block sum past the threshold for every j up to horizon:
            // the milestone is one past the last dip
            uint64_t last_dip = prev;
            for (uint64_t n = prev + 1; n <= horizon; ++n) {
                if (A.contains(n)) acc += a.term(n);
                bool past = sign > 0 ? acc > thr : acc < thr;
                if (!past) last_dip = n;
            }
            if (last_dip < horizon) {
                milestone = last_dip + 1;
                milestone_sum = window_sum(a, A, prev, milestone);
            }
        }
        if (milestone == 0) break; // horizon exhausted: shortfall
        out.indices.push_back(milestone);
        out.certs.push_back(BlockCertificate{prev, milestone, milestone_sum, thr, sign > 0});
        prev = milestone;
    }
}

void oscillation_milestones(const Series& a, const IndexSet& A, const Rational& c, uint64_t count,
                            uint64_t horizon, Milestones& out) {
    uint64_t prev = 0;
    bool up = true;
    while (out.indices.size() < count && prev < horizon) {
        Rational acc(0);
        uint64_t milestone = 0;
        for (uint64_t n = prev + 1; n <= horizon; ++n) {
            if (!A.contains(n)) continue;
            acc += a.term(n);
            if (up ? acc > c : acc < -c) {
                milestone = n;
                break;
            }
        }
        if (milestone == 0) break;
        out.indices.push_back(milestone);
        out.certs.push_back(BlockCertificate{prev, milestone, acc, up ? c : -c, up});
        prev = milestone;
        up = !up;
    }
}

} // namespace

Milestones find_milestones(const Series& a, const IndexSet& A, MilestoneMode mode,
                           const Rational& c, uint64_t count, uint64_t horizon,
                           bool strengthened) {
    if (count == 0) throw Error("find_milestones: count must be >= 1");
    if (mode == MilestoneMode::Oscillation && !(c > Rational(0)))
        throw Error("find_milestones: oscillation amplitude must be positive");
    if (strengthened && mode == MilestoneMode::Oscillation)
        throw Error("find_milestones: the strengthened variant applies to one-sided modes");

    Milestones out;
    out.mode = mode;
    out.c = c;
    out.strengthened = strengthened;
    out.horizon = horizon;
    out.requested = count;

    switch (mode) {
        case MilestoneMode::ToPlusInfinity:
            one_sided_milestones(a, A, +1, count, horizon, strengthened, out);
            break;
        case MilestoneMode::ToMinusInfinity:
            one_sided_milestones(a, A, -1, count, horizon, strengthened, out);
            break;
        case MilestoneMode::Oscillation:
            oscillation_milestones(a, A, c, count, horizon, out);
            break;
    }
    return out;
}

bool milestones_sound(const Milestones& m, const Series& a, const IndexSet& A) {
    if (m.indices.size() != m.certs.size()) return false;
    uint64_t prev = 0;
    for (size_t i = 0; i < m.certs.size(); ++i) {
        const BlockCertificate& c = m.certs[i];
        if (c.lo != prev || c.hi != m.indices[i] || c.hi <= c.lo) return false;
        if (window_sum(a, A, c.lo, c.hi) != c.sum) return false;
        if (!c.holds()) return false;
        prev = c.hi;
    }
    return true;
}

DominatingMilestones find_dominating_milestones(const Series& a, const IndexSet& A, uint64_t count,
                                                uint64_t horizon) {
    if (count == 0) throw Error("find_dominating_milestones: count must be >= 1");
    DominatingMilestones out;
    out.horizon = horizon;
    out.requested = count;

    // float prescan for candidate block ends
    double prefix_abs = 0.0;
    double block_thr = 1.0; // prefix_abs at block start + 1
    double acc = 0.0, comp = 0.0;
    std::vector<uint64_t> candidates;
    for (uint64_t n = 1; n <= horizon && candidates.size() < count; ++n) {
        double t = a.term(n).to_double();
        if (A.contains(n)) {
            double y = t - comp;
            double u = acc + y;
            comp = (u - acc) - y;
            acc = u;
        }
        prefix_abs += std::abs(t);
        double guard = 1e-12 * prefix_abs + 1e-300;
        if (acc > block_thr + guard) {
            candidates.push_back(n);
            acc = 0.0;
            comp = 0.0;
            block_thr = prefix_abs + 1.0;
        }
    }

    // exact certificates, walking the candidates with incremental windows
    std::optional<IndexSet> all;
    uint64_t prev = 0;
    Rational prefix(0); // Σ_{n <= prev} |a_n|
    for (uint64_t m : candidates) {
        Rational block = window_sum(a, A, prev, m);
        DominatingCertificate cert{prev, m, block, prefix};
        if (!cert.holds())
            throw Error("internal: dominating-milestone guard band violated at index " +
                        std::to_string(m));
        out.indices.push_back(m);
        out.certs.push_back(cert);
        prefix += window_abs_sum(a, all, prev, m);
        prev = m;
    }
    return out;
}

Rational BlockPartition::prefix_abs(size_t k) const {
    Rational s(0);
    for (size_t i = 0; i < k && i < abs_sums.size(); ++i) s += abs_sums[i];
    return s;
}

BlockPartition blocks_base_pow(const Series& a, const Rational& base, uint64_t block_count,
                               uint64_t scan_bound) {
    if (!(base > Rational(1))) throw Error("blocks_base_pow: base must exceed 1");
    BlockPartition p;
    p.base = base;
    std::optional<IndexSet> all;
    uint64_t lo = 1;
    for (uint64_t k = 1; k <= block_count; ++k) {
        Rational budget = Rational::pow(base, k);
        double budget_fp = budget.to_double();
        uint64_t scanned = 0;
        auto exhausted = [&] {
            return HorizonError("blocks_base_pow: block " + std::to_string(k) +
                                " did not close within the scan bound " +
                                std::to_string(scan_bound) +
                                " (series may be absolutely summable below the budget)");
        };

        // phase 1: compensated float scan for the first index that could
        // overflow the budget (generous guard: never past the true closure)
        double acc = 0.0, comp = 0.0, absmass = 0.0;
        uint64_t n = lo;
        while (true) {
            if (scanned >= scan_bound) throw exhausted();
            double t = std::abs(a.term(n).to_double());
            double guard = 1e-9 * (absmass + budget_fp) + 1e-300;
            if (acc + t > budget_fp - guard) break;
            double y = t - comp;
            double u = acc + y;
            comp = (u - acc) - y;
            acc = u;
            absmass += t;
            ++n;
            ++scanned;
        }

        // phase 2: exact from the candidate on; the certificate sums are exact
        Rational exact = window_abs_sum(a, all, lo - 1, n - 1);
        while (true) {
            if (scanned >= scan_bound) throw exhausted();
            Rational t = a.term(n).abs();
            if (exact + t > budget) {
                p.blocks.emplace_back(lo, n - 1);
                p.abs_sums.push_back(exact);
                p.next_abs.push_back(t);
                lo = n;
                break;
            }
            exact += t;
            ++n;
            ++scanned;
        }
    }
    return p;
}

std::vector<Rational> positive_part_residuals(const Series& a, const BlockPartition& p) {
    std::vector<Rational> out;
    out.reserve(p.count());
    for (size_t k = 1; k <= p.count(); ++k) {
        auto [lo, hi] = p.blocks[k - 1];
        Rational pos(0);
        for (uint64_t n = lo; n <= hi; ++n) {
            Rational t = a.term(n);
            if (t.sign() >= 0) pos += t;
        }
        out.push_back(Rational::pow(p.base, k) / Rational(2) - pos);
    }
    return out;
}

UpDownReport up_down_check(const Series& a, const IndexSet& A, const Rational& bound,
                           uint64_t horizon) {
    if (!(bound > Rational(0))) throw Error("up_down_check: bound must be positive");
    if (horizon == 0) throw EmptyHorizonError("up_down_check: horizon must be >= 1");

    UpDownReport rep;
    rep.bound = bound;
    rep.horizon = horizon;
    rep.comp_never_moves = true;
    rep.partition_identity_ok = true;

    IndexSet comp = A.complement();

    // pass 1: tail slack (max of full-series sums), A-crossing, identity check
    Rational s_full(0), s_a(0), s_comp(0), max_full;
    bool first = true;
    for (uint64_t m = 1; m <= horizon; ++m) {
        Rational t = a.term(m);
        s_full += t;
        bool in_a = A.contains(m);
        if (in_a) s_a += t;
        if (comp.contains(m)) {
            s_comp += t;
            if (in_a) rep.partition_identity_ok = false; // overlap would break the partition
        }
        if (s_a + s_comp != s_full) rep.partition_identity_ok = false;
        if (!s_comp.is_zero()) rep.comp_never_moves = false;
        if (first || s_full > max_full) {
            max_full = s_full;
            first = false;
        }
        if (!rep.a_cross_index && s_a >= bound) {
            rep.a_cross_index = m;
            rep.a_cross_value = s_a;
        }
    }
    rep.tail_slack = max_full;
    rep.comp_threshold = -(bound - max_full);

    // pass 2: first complement crossing of the shadow threshold
    Rational s2(0);
    for (uint64_t m = 1; m <= horizon; ++m) {
        if (comp.contains(m)) s2 += a.term(m);
        if (s2 <= rep.comp_threshold) {
            rep.comp_cross_index = m;
            rep.comp_cross_value = s2;
            break;
        }
    }
    return rep;
}

DivergenceVerdict quarter_oscillation_check(const Series& a, const IndexSet& D,
                                            uint32_t excursions, uint64_t horizon) {
    if (excursions == 0) throw Error("quarter_oscillation_check: excursions must be >= 1");
    Rational quarter(1, 4);
    return classify_streaming(a, D, horizon, quarter, quarter, -quarter, excursions);
}

OscillatorResult generic_oscillator(const Series& a, const std::vector<Rational>& k_targets,
                                    uint64_t horizon, const Rational& growth_checkpoint,
                                    uint64_t audit_horizon) {
    // conditional-convergence audit: both signed parts must show growth
    Rational pos(0), neg(0);
    uint64_t ah = std::min(horizon, audit_horizon);
    for (uint64_t n = 1; n <= ah; ++n) {
        Rational t = a.term(n);
        if (t.sign() > 0) pos += t;
        if (t.sign() < 0) neg += t;
        if (pos >= growth_checkpoint && -neg >= growth_checkpoint) break;
    }
    if (pos < growth_checkpoint || -neg < growth_checkpoint)
        throw AuditError("generic_oscillator: series \"" + a.name() +
                         "\" failed the conditional-convergence audit (positive mass " + pos.str() +
                         ", negative mass " + neg.str() + " below checkpoint " +
                         growth_checkpoint.str() + " at horizon " + std::to_string(ah) + ")");

    OscillatorResult res;
    res.horizon = horizon;
    Rational s(0);
    uint64_t front = 0;
    for (const Rational& target : k_targets) {
        if (target == s) {
            res.certs.push_back(TargetCertificate{target, front, s});
            continue;
        }
        bool climb = target > s;
        bool reached = false;
        for (uint64_t n = front + 1; n <= horizon; ++n) {
            Rational t = a.term(n);
            if (climb ? t.sign() <= 0 : t.sign() >= 0) continue;
            res.members.push_back(n);
            s += t;
            front = n;
            if (climb ? s >= target : s <= target) {
                res.certs.push_back(TargetCertificate{target, n, s});
                reached = true;
                break;
            }
        }
        if (!reached) {
            res.shortfall = true;
            break;
        }
    }
    return res;
}

} // namespace serieslab
