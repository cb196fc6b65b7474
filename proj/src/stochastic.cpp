#include "serieslab/stochastic.hpp"

#include <algorithm>
#include <cmath>

namespace serieslab {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t Rng::below(uint64_t n) {
    if (n == 0) throw Error("Rng::below(0)");
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = gen_();
    } while (v >= limit);
    return v % n;
}

int SignSequence::bit(uint64_t n) const {
    if (constant_ >= 0) return constant_;
    return static_cast<int>(splitmix64(seed_ ^ (n * 0x9E3779B97F4A7C15ULL)) & 1);
}

std::pair<uint64_t, uint64_t> k_interval(uint64_t k) {
    if (k == 0) throw Error("k_interval: k is 1-based");
    return {k * (k - 1) + 1, k * (k + 1)};
}

uint64_t k_interval_index(uint64_t n) {
    if (n == 0) throw Error("k_interval_index: n is 1-based");
    auto k = static_cast<uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (k == 0) k = 1;
    while (k * (k - 1) + 1 > n) --k;
    while (k * (k + 1) < n) ++k;
    return k;
}

KPoint::KPoint(uint64_t depth, std::vector<std::vector<uint8_t>> flags, uint64_t seed)
    : depth_(depth), seed_(seed), flags_(std::move(flags)) {
    if (flags_.size() != depth_) throw Error("KPoint: flag blocks do not match depth");
    for (uint64_t k = 1; k <= depth_; ++k) {
        if (flags_[k - 1].size() != 2 * k)
            throw Error("KPoint: block " + std::to_string(k) + " has wrong width");
        uint64_t positives = 0;
        for (uint8_t f : flags_[k - 1]) positives += f ? 1 : 0;
        if (positives != k)
            throw Error("KPoint: block " + std::to_string(k) + " does not pick exactly k of 2k");
    }
}

KPoint KPoint::sample(uint64_t depth, uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<uint8_t>> flags;
    flags.reserve(depth);
    for (uint64_t k = 1; k <= depth; ++k) {
        // partial Fisher–Yates: choose k slots of 2k uniformly
        std::vector<uint64_t> idx(2 * k);
        for (uint64_t i = 0; i < 2 * k; ++i) idx[i] = i;
        std::vector<uint8_t> f(2 * k, 0);
        for (uint64_t i = 0; i < k; ++i) {
            uint64_t j = i + rng.below(2 * k - i);
            std::swap(idx[i], idx[j]);
            f[idx[i]] = 1;
        }
        flags.push_back(std::move(f));
    }
    return KPoint(depth, std::move(flags), seed);
}

bool KPoint::positive_at(uint64_t n) const {
    uint64_t k = k_interval_index(n);
    if (k > depth_)
        throw HorizonError("KPoint: index " + std::to_string(n) + " lies past depth " +
                           std::to_string(depth_));
    auto [lo, hi] = k_interval(k);
    (void)hi;
    return flags_[k - 1][n - lo] != 0;
}

std::vector<uint64_t> KPoint::choice(uint64_t k) const {
    if (k == 0 || k > depth_) throw HorizonError("KPoint::choice: block out of range");
    auto [lo, hi] = k_interval(k);
    std::vector<uint64_t> out;
    for (uint64_t n = lo; n <= hi; ++n)
        if (flags_[k - 1][n - lo]) out.push_back(n);
    return out;
}

KPoint KPoint::flip() const {
    std::vector<std::vector<uint8_t>> flags = flags_;
    for (auto& block : flags)
        for (auto& f : block) f = f ? 0 : 1;
    return KPoint(depth_, std::move(flags), seed_);
}

Series kspace_series(const KPoint& x) {
    auto shared = std::make_shared<KPoint>(x);
    return Series(
        "kspace(seed=" + std::to_string(x.seed()) + ",depth=" + std::to_string(x.depth()) + ")",
        [shared](uint64_t n) {
            uint64_t k = k_interval_index(n);
            Rational mag(1, static_cast<long long>(k * k));
            return shared->positive_at(n) ? mag : -mag;
        },
        Rational(1));
}

InfReport inf_experiment(const IndexSet& A, uint64_t samples, uint64_t depth,
                         const Rational& threshold, uint64_t seed) {
    if (samples == 0) throw Error("inf_experiment: samples must be >= 1");
    if (depth == 0) throw EmptyHorizonError("inf_experiment: depth must be >= 1");
    InfReport rep;
    rep.samples = samples;
    rep.depth = depth;
    rep.threshold = threshold;
    rep.seed = seed;
    uint64_t max_n = k_interval(depth).second;
    for (uint64_t i = 0; i < samples; ++i) {
        KPoint x = KPoint::sample(depth, seed + i);
        KPoint y = x.flip();
        Rational sx(0), sy(0);
        bool exceed = false, below = false;
        for (uint64_t n = 1; n <= max_n; ++n) {
            if (!A.contains(n)) continue;
            uint64_t k = k_interval_index(n);
            Rational mag(1, static_cast<long long>(k * k));
            sx += x.positive_at(n) ? mag : -mag;
            sy += y.positive_at(n) ? mag : -mag;
            if (sx != -sy) ++rep.pairing_violations;
            if (sx > threshold) exceed = true;
            if (sy < -threshold) below = true;
        }
        if (exceed != below) ++rep.pairing_violations;
        if (exceed) ++rep.exceed_count;
        if (below) ++rep.flip_below_count;
    }
    rep.exceed_fraction = static_cast<double>(rep.exceed_count) / static_cast<double>(samples);
    return rep;
}

BoundCheckReport kspace_bound_check(uint64_t samples, uint64_t depth, uint64_t seed) {
    if (samples == 0) throw Error("kspace_bound_check: samples must be >= 1");
    if (depth == 0) throw EmptyHorizonError("kspace_bound_check: depth must be >= 1");
    BoundCheckReport rep;
    rep.samples = samples;
    rep.depth = depth;
    rep.seed = seed;
    for (uint64_t i = 0; i < samples; ++i) {
        KPoint x = KPoint::sample(depth, seed + i);
        Rational acc(0);
        for (uint64_t k = 1; k <= depth; ++k) {
            auto [lo, hi] = k_interval(k);
            Rational mag(1, static_cast<long long>(k * k));
            Rational cap(1, static_cast<long long>(k));
            for (uint64_t n = lo; n <= hi; ++n) {
                acc += x.positive_at(n) ? mag : -mag;
                ++rep.prefixes_checked;
                if (acc.abs() > cap) ++rep.violations;
            }
        }
    }
    return rep;
}

PartialSumTrace rademacher_trace(const Series& c, const SignSequence& s, const IndexSet& A,
                                 uint64_t horizon) {
    if (horizon == 0) throw EmptyHorizonError("rademacher_trace: horizon must be >= 1");
    PartialSumTrace t;
    t.horizon = horizon;
    t.over = A;
    t.sums.reserve(horizon);
    Rational acc(0);
    for (uint64_t m = 1; m <= horizon; ++m) {
        if (A.contains(m)) {
            Rational term = c.term(m);
            if (term.sign() < 0)
                throw AuditError("rademacher_trace: c_" + std::to_string(m) + " is negative");
            acc += s.bit(m) == 0 ? term : -term;
        }
        t.sums.push_back(acc);
    }
    return t;
}

FreqReport divergence_frequency(const Series& c, const IndexSet& A, uint64_t trials,
                                uint64_t horizon, const Rational& escape, uint64_t seed) {
    if (trials == 0) throw Error("divergence_frequency: trials must be >= 1");
    if (!(escape > Rational(0))) throw Error("divergence_frequency: escape must be positive");
    if (horizon == 0) throw EmptyHorizonError("divergence_frequency: horizon must be >= 1");

    FreqReport rep;
    rep.trials = trials;
    rep.horizon = horizon;
    rep.escape = escape;
    rep.seed = seed;

    // cache |c_n| as doubles once; membership once
    std::vector<double> mag(horizon + 1, 0.0);
    std::vector<uint8_t> in_a(horizon + 1, 0);
    Rational var_exact(0);
    for (uint64_t n = 1; n <= horizon; ++n) {
        if (!A.contains(n)) continue;
        Rational t = c.term(n);
        if (t.sign() < 0)
            throw AuditError("divergence_frequency: c_" + std::to_string(n) + " is negative");
        in_a[n] = 1;
        mag[n] = t.to_double();
        var_exact += t * t;
    }
    rep.exact_variance = var_exact.to_double();
    double esc = escape.to_double();
    rep.chebyshev_bound = (var_exact / (escape * escape)).to_double();

    uint64_t ever = 0, endpoint = 0;
    double mean_acc = 0.0, m2_acc = 0.0; // Welford over endpoints
    for (uint64_t i = 0; i < trials; ++i) {
        SignSequence s(seed + i);
        double sum = 0.0, comp = 0.0;
        bool escaped = false;
        for (uint64_t n = 1; n <= horizon; ++n) {
            if (!in_a[n]) continue;
            double t = s.sign(n) * mag[n];
            double y = t - comp;
            double u = sum + y;
            comp = (u - sum) - y;
            sum = u;
            if (std::abs(sum) > esc) escaped = true;
        }
        if (escaped) ++ever;
        if (std::abs(sum) > esc) ++endpoint;
        double delta = sum - mean_acc;
        mean_acc += delta / static_cast<double>(i + 1);
        m2_acc += delta * (sum - mean_acc);
    }
    rep.fraction = static_cast<double>(ever) / static_cast<double>(trials);
    rep.endpoint_fraction = static_cast<double>(endpoint) / static_cast<double>(trials);
    rep.stderr_fraction =
        std::sqrt(rep.endpoint_fraction * (1.0 - rep.endpoint_fraction) /
                  static_cast<double>(trials));
    rep.endpoint_mean = mean_acc;
    rep.endpoint_variance = trials > 1 ? m2_acc / static_cast<double>(trials - 1) : 0.0;
    return rep;
}

} // namespace serieslab
