#include "serieslab/trace.hpp"

#include <algorithm>
#include <cmath>

namespace serieslab {

PartialSumTrace partial_sums(const Series& a, uint64_t horizon,
                             const std::optional<IndexSet>& over) {
    if (horizon == 0) throw EmptyHorizonError("partial_sums: horizon must be >= 1");
    PartialSumTrace t;
    t.horizon = horizon;
    t.over = over;
    t.sums.reserve(horizon);
    Rational acc(0);
    for (uint64_t m = 1; m <= horizon; ++m) {
        if (!over || over->contains(m)) acc += a.term(m);
        t.sums.push_back(acc);
    }
    return t;
}

std::string DivergenceVerdict::kind_name() const {
    switch (kind) {
        case Kind::Exceeds: return "CertifiedExceeds";
        case Kind::Below: return "CertifiedBelow";
        case Kind::Oscillation: return "CertifiedOscillation";
        case Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

// Greedy alternating crossing chain: strictly above `upper`, strictly below
// `lower`, starting with whichever side is hit first.
std::vector<Crossing> crossing_chain(const PartialSumTrace& trace, const Rational& upper,
                                     const Rational& lower) {
    std::vector<Crossing> chain;
    enum { Neutral, WantUp, WantDown } expect = Neutral;
    for (uint64_t m = 1; m <= trace.horizon; ++m) {
        const Rational& s = trace.at(m);
        if (expect != WantDown && s > upper) {
            chain.push_back(Crossing{true, m, s});
            expect = WantDown;
            continue;
        }
        if (expect != WantUp && s < lower) {
            chain.push_back(Crossing{false, m, s});
            expect = WantUp;
        }
    }
    return chain;
}

void fill_osc(DivergenceVerdict& v, std::vector<Crossing> chain, const Rational& upper,
              const Rational& lower) {
    v.upper = upper;
    v.lower = lower;
    v.upcross_count = 0;
    v.downcross_count = 0;
    for (const auto& c : chain) (c.up ? v.upcross_count : v.downcross_count)++;
    v.crossings = std::move(chain);
}

} // namespace

DivergenceVerdict classify_band(const PartialSumTrace& trace, const Rational& bound,
                                const Rational& osc_upper, const Rational& osc_lower,
                                uint32_t min_crossings) {
    if (!(bound > Rational(0))) throw Error("classify: bound must be positive");
    if (!(osc_upper > osc_lower)) throw Error("classify: oscillation band is empty");
    if (min_crossings == 0) throw Error("classify: min_crossings must be >= 1");

    DivergenceVerdict v;
    v.horizon = trace.horizon;
    v.bound = bound;

    auto chain = crossing_chain(trace, osc_upper, osc_lower);
    fill_osc(v, std::move(chain), osc_upper, osc_lower);
    if (v.upcross_count >= min_crossings && v.downcross_count >= min_crossings) {
        v.kind = DivergenceVerdict::Kind::Oscillation;
        return v;
    }

    // exceeds: some S_m >= bound with no S <= osc_lower afterwards
    uint64_t last_le_low = 0, last_ge_up = 0;
    for (uint64_t m = 1; m <= trace.horizon; ++m) {
        if (trace.at(m) <= osc_lower) last_le_low = m;
        if (trace.at(m) >= osc_upper) last_ge_up = m;
    }
    for (uint64_t m = last_le_low + 1; m <= trace.horizon; ++m) {
        if (trace.at(m) >= bound) {
            v.kind = DivergenceVerdict::Kind::Exceeds;
            v.at_index = m;
            v.value_at = trace.at(m);
            return v;
        }
    }
    for (uint64_t m = last_ge_up + 1; m <= trace.horizon; ++m) {
        if (trace.at(m) <= -bound) {
            v.kind = DivergenceVerdict::Kind::Below;
            v.at_index = m;
            v.value_at = trace.at(m);
            return v;
        }
    }
    v.kind = DivergenceVerdict::Kind::Inconclusive;
    return v;
}

DivergenceVerdict classify(const PartialSumTrace& trace, const Rational& bound,
                           const Rational& osc_amplitude, uint32_t min_crossings) {
    if (!(osc_amplitude > Rational(0)))
        throw Error("classify: oscillation amplitude must be positive");
    return classify_band(trace, bound, osc_amplitude, -osc_amplitude, min_crossings);
}

bool verdict_sound(const DivergenceVerdict& v, const PartialSumTrace& trace) {
    switch (v.kind) {
        case DivergenceVerdict::Kind::Inconclusive:
            return true;
        case DivergenceVerdict::Kind::Exceeds:
            return v.at_index >= 1 && v.at_index <= trace.horizon &&
                   trace.at(v.at_index) == v.value_at && v.value_at >= v.bound;
        case DivergenceVerdict::Kind::Below:
            return v.at_index >= 1 && v.at_index <= trace.horizon &&
                   trace.at(v.at_index) == v.value_at && v.value_at <= -v.bound;
        case DivergenceVerdict::Kind::Oscillation: {
            if (v.crossings.empty()) return false;
            uint32_t ups = 0, downs = 0;
            uint64_t prev = 0;
            std::optional<bool> prev_up;
            for (const auto& c : v.crossings) {
                if (c.index <= prev || c.index > trace.horizon) return false;
                if (trace.at(c.index) != c.value) return false;
                if (c.up && !(c.value > v.upper)) return false;
                if (!c.up && !(c.value < v.lower)) return false;
                if (prev_up && *prev_up == c.up) return false; // must alternate
                prev = c.index;
                prev_up = c.up;
                (c.up ? ups : downs)++;
            }
            return ups == v.upcross_count && downs == v.downcross_count && ups >= 1 && downs >= 1;
        }
    }
    return false;
}

// --- exact window sums --------------------------------------------------------

namespace {

Rational window_sum_rec(const Series& a, const std::optional<IndexSet>& over, uint64_t lo,
                        uint64_t hi, bool absolute) {
    if (hi - lo <= 128) {
        Rational s(0);
        for (uint64_t n = lo + 1; n <= hi; ++n) {
            if (over && !over->contains(n)) continue;
            Rational t = a.term(n);
            s += absolute ? t.abs() : t;
        }
        return s;
    }
    uint64_t mid = lo + (hi - lo) / 2;
    return window_sum_rec(a, over, lo, mid, absolute) + window_sum_rec(a, over, mid, hi, absolute);
}

} // namespace

Rational window_sum(const Series& a, const std::optional<IndexSet>& over, uint64_t lo,
                    uint64_t hi) {
    if (hi <= lo) return Rational(0);
    return window_sum_rec(a, over, lo, hi, false);
}

Rational window_abs_sum(const Series& a, const std::optional<IndexSet>& over, uint64_t lo,
                        uint64_t hi) {
    if (hi <= lo) return Rational(0);
    return window_sum_rec(a, over, lo, hi, true);
}

// --- streaming classification ---------------------------------------------------

namespace {

// Monotone exact evaluator of prefix sums, paying one window sum per advance.
class ExactCursor {
public:
    ExactCursor(const Series& a, const std::optional<IndexSet>& over) : a_(a), over_(over) {}

    const Rational& at(uint64_t m) {
        if (m < idx_) throw Error("internal: exact cursor moved backwards");
        if (m > idx_) {
            value_ += window_sum(a_, over_, idx_, m);
            idx_ = m;
        }
        return value_;
    }

private:
    const Series& a_;
    const std::optional<IndexSet>& over_;
    uint64_t idx_ = 0;
    Rational value_{0};
};

} // namespace

DivergenceVerdict classify_streaming(const Series& a, const std::optional<IndexSet>& over,
                                     uint64_t horizon, const Rational& bound,
                                     const Rational& osc_upper, const Rational& osc_lower,
                                     uint32_t min_crossings) {
    if (horizon == 0) throw EmptyHorizonError("classify_streaming: horizon must be >= 1");
    if (!(bound > Rational(0))) throw Error("classify: bound must be positive");
    if (!(osc_upper > osc_lower)) throw Error("classify: oscillation band is empty");
    if (min_crossings == 0) throw Error("classify: min_crossings must be >= 1");

    const double up_fp = osc_upper.to_double();
    const double low_fp = osc_lower.to_double();
    const double bound_fp = bound.to_double();

    ExactCursor resolver(a, over);

    double s = 0.0, comp = 0.0; // Kahan
    double absmass = 0.0;
    enum { Neutral, WantUp, WantDown } expect = Neutral;
    std::vector<Crossing> chain; // values filled exactly afterwards
    uint64_t last_le_low = 0, last_ge_up = 0;
    std::optional<uint64_t> exceed_idx, below_idx;

    // decides "sum cmp threshold" with the guard band, escalating to exact
    auto decide = [&](uint64_t m, double thr_fp, const Rational& thr, bool greater,
                      bool strict) -> bool {
        double guard = 1e-13 * absmass + 1e-300;
        double margin = greater ? s - thr_fp : thr_fp - s;
        if (margin > guard) return true;
        if (margin < -guard) return false;
        const Rational& exact = resolver.at(m);
        if (greater) return strict ? exact > thr : exact >= thr;
        return strict ? exact < thr : exact <= thr;
    };

    for (uint64_t m = 1; m <= horizon; ++m) {
        if (over && !over->contains(m)) continue; // value unchanged, no new crossings
        double t = a.term(m).to_double();
        double y = t - comp;
        double u = s + y;
        comp = (u - s) - y;
        s = u;
        absmass += std::abs(t);

        if (expect != WantDown && decide(m, up_fp, osc_upper, /*greater=*/true, /*strict=*/true)) {
            chain.push_back(Crossing{true, m, Rational(0)});
            expect = WantDown;
        } else if (expect != WantUp &&
                   decide(m, low_fp, osc_lower, /*greater=*/false, /*strict=*/true)) {
            chain.push_back(Crossing{false, m, Rational(0)});
            expect = WantUp;
        }

        if (decide(m, low_fp, osc_lower, false, false)) { // S <= lower
            last_le_low = m;
            exceed_idx.reset();
        }
        if (decide(m, up_fp, osc_upper, true, false)) { // S >= upper
            last_ge_up = m;
            below_idx.reset();
        }
        if (!exceed_idx && decide(m, bound_fp, bound, true, false)) exceed_idx = m;
        if (!below_idx && decide(m, -bound_fp, -bound, false, false)) below_idx = m;
    }

    // Exact verification of everything the verdict will store.
    std::vector<uint64_t> need;
    for (const auto& c : chain) need.push_back(c.index);
    if (exceed_idx) need.push_back(*exceed_idx);
    if (below_idx) need.push_back(*below_idx);
    std::sort(need.begin(), need.end());
    need.erase(std::unique(need.begin(), need.end()), need.end());

    ExactCursor verify(a, over);
    std::vector<std::pair<uint64_t, Rational>> exact_at;
    exact_at.reserve(need.size());
    for (uint64_t m : need) exact_at.emplace_back(m, verify.at(m));
    auto exact_of = [&](uint64_t m) -> const Rational& {
        auto it = std::lower_bound(exact_at.begin(), exact_at.end(), m,
                                   [](const auto& p, uint64_t v) { return p.first < v; });
        return it->second;
    };

    DivergenceVerdict v;
    v.horizon = horizon;
    v.bound = bound;
    for (auto& c : chain) {
        c.value = exact_of(c.index);
        bool ok = c.up ? c.value > osc_upper : c.value < osc_lower;
        if (!ok) throw Error("internal: streaming guard band violated at index " +
                             std::to_string(c.index));
    }
    fill_osc(v, std::move(chain), osc_upper, osc_lower);
    if (v.upcross_count >= min_crossings && v.downcross_count >= min_crossings) {
        v.kind = DivergenceVerdict::Kind::Oscillation;
        return v;
    }
    if (exceed_idx) {
        const Rational& val = exact_of(*exceed_idx);
        if (!(val >= bound))
            throw Error("internal: streaming guard band violated at exceed index");
        v.kind = DivergenceVerdict::Kind::Exceeds;
        v.at_index = *exceed_idx;
        v.value_at = val;
        return v;
    }
    if (below_idx) {
        const Rational& val = exact_of(*below_idx);
        if (!(val <= -bound))
            throw Error("internal: streaming guard band violated at below index");
        v.kind = DivergenceVerdict::Kind::Below;
        v.at_index = *below_idx;
        v.value_at = val;
        return v;
    }
    v.kind = DivergenceVerdict::Kind::Inconclusive;
    return v;
}

} // namespace serieslab
