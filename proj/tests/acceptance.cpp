// Acceptance suite: one runnable criterion per section, each printing a
// [PASS]/[FAIL] line plus indented detail. Returns the number of failing
// criteria. Every randomized criterion derives its inputs from a fixed seed
// and writes a summary report file (env SERIESLAB_ACCEPT_DIR, default
// ./acceptance_reports); the final criterion regenerates each report and
// compares bytes.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "serieslab/rs_seq.hpp"
#include "serieslab/serialize.hpp"
#include "serieslab/series.hpp"
#include "serieslab/stochastic.hpp"
#include "serieslab/transforms.hpp"
#include "serieslab/witnesses.hpp"

using namespace serieslab;

namespace {

std::filesystem::path report_dir() {
    const char* env = std::getenv("SERIESLAB_ACCEPT_DIR");
    std::filesystem::path p = env ? env : "acceptance_reports";
    std::filesystem::create_directories(p);
    return p;
}

void write_report(const std::string& name, const std::string& payload) {
    std::ofstream f(report_dir() / name, std::ios::binary);
    f << payload;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string summary_json(const std::string& kind, uint64_t seed,
                         std::initializer_list<std::pair<const char*, uint64_t>> fields) {
    Json j;
    j["schema"] = kSchemaTag;
    j["kind"] = kind;
    j["seed"] = seed;
    for (const auto& [k, v] : fields) j[k] = v;
    return j.dump(2) + "\n";
}

IndexSet random_tailed_set(std::mt19937_64& gen, uint64_t cut) {
    std::vector<uint64_t> low;
    for (uint64_t n = 1; n <= cut; ++n)
        if (gen() & 1) low.push_back(n);
    uint64_t parity = gen() % 2;
    auto low_ptr = std::make_shared<std::vector<uint64_t>>(std::move(low));
    return IndexSet::from_predicate("rand", [low_ptr, cut, parity](uint64_t n) {
        if (n <= cut) return std::binary_search(low_ptr->begin(), low_ptr->end(), n);
        return n % 2 == parity;
    });
}

// ---------------------------------------------------------------- criterion 1

constexpr uint64_t kC1Samples = 1000, kC1Depth = 60, kC1Seed = 101;

struct C1Result {
    BoundCheckReport rep;
    std::string report;
};

C1Result c1_run() {
    BoundCheckReport rep = kspace_bound_check(kC1Samples, kC1Depth, kC1Seed);
    return {rep, summary_json("bound_suite", kC1Seed,
                              {{"samples", rep.samples},
                               {"depth", rep.depth},
                               {"prefixes_checked", rep.prefixes_checked},
                               {"violations", rep.violations}})};
}

bool criterion1(std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    C1Result r = c1_run();
    double dt = seconds_since(t0);
    write_report("c1_bound_suite.json", r.report);
    out << "    " << r.rep.samples << " samples to depth " << r.rep.depth << ": "
        << r.rep.prefixes_checked << " exact prefix sums, " << r.rep.violations
        << " violations of |S_m| <= 1/k, " << dt << " s (cap 60 s)\n";
    return r.rep.violations == 0 && dt < 60.0;
}

// ---------------------------------------------------------------- criterion 2

constexpr uint64_t kC2Sets = 20, kC2SetSeed = 202;

struct C2Result {
    uint64_t term_checks = 0, sum_checks = 0, violations = 0;
    std::string report;
};

C2Result c2_run() {
    C2Result r;
    uint64_t max_n = k_interval(kC1Depth).second;
    std::mt19937_64 gen(kC2SetSeed);
    std::vector<std::vector<uint8_t>> sets(kC2Sets, std::vector<uint8_t>(max_n + 1, 0));
    for (auto& s : sets)
        for (uint64_t n = 1; n <= max_n; ++n) s[n] = gen() & 1;

    for (uint64_t i = 0; i < kC1Samples; ++i) {
        KPoint x = KPoint::sample(kC1Depth, kC1Seed + i);
        KPoint f = x.flip();
        std::vector<Rational> tx, tf;
        tx.reserve(max_n);
        tf.reserve(max_n);
        for (uint64_t n = 1; n <= max_n; ++n) {
            uint64_t k = k_interval_index(n);
            Rational mag(1, static_cast<long long>(k * k));
            tx.push_back(x.positive_at(n) ? mag : -mag);
            tf.push_back(f.positive_at(n) ? mag : -mag);
            ++r.term_checks;
            if (tf.back() != -tx.back()) ++r.violations;
        }
        for (const auto& s : sets) {
            Rational ax(0), af(0);
            for (uint64_t n = 1; n <= max_n; ++n) {
                if (!s[n]) continue;
                ax += tx[n - 1];
                af += tf[n - 1];
                ++r.sum_checks;
                if (af != -ax) ++r.violations;
            }
        }
    }
    r.report = summary_json("flip_symmetry", kC1Seed,
                            {{"samples", kC1Samples},
                             {"sets", kC2Sets},
                             {"term_checks", r.term_checks},
                             {"sum_checks", r.sum_checks},
                             {"violations", r.violations}});
    return r;
}

bool criterion2(std::ostream& out) {
    C2Result r = c2_run();
    write_report("c2_flip_symmetry.json", r.report);
    out << "    " << r.sum_checks << " exact prefix comparisons over " << kC2Sets << " sets x "
        << kC1Samples << " samples (plus " << r.term_checks << " term negations): "
        << r.violations << " violations\n";
    return r.violations == 0;
}

// ---------------------------------------------------------------- criterion 3

struct C3Result {
    uint64_t point_checks = 0, formula_hits = 0, block_instances = 0, mismatches = 0;
    std::string report;
};

C3Result c3_run() {
    C3Result r;
    std::mt19937_64 gen(303);

    for (int rep = 0; rep < 200; ++rep) {
        IndexSet A = random_tailed_set(gen, 200);
        IndexSet B = random_tailed_set(gen, 200);
        Injection p = p_from_set(A, B, 4000);

        Shuffle s(A, B.complement());
        std::map<uint64_t, uint64_t> inv;
        for (uint64_t n = 1; inv.size() < 200 && n < 50'000; ++n) {
            uint64_t v = s(n);
            if (v <= 200) inv[v] = n;
        }
        for (uint64_t n = 1; n <= 200; ++n) {
            ++r.point_checks;
            if (!inv.count(n) || p(n) != inv[n]) ++r.mismatches;
            auto predicted = p_from_set_gap_formula(A, B, n);
            if (predicted) {
                ++r.formula_hits;
                if (*predicted != p(n)) ++r.mismatches;
            }
        }
    }

    while (r.block_instances < 50) {
        bool with_hit = r.block_instances % 2 == 1;
        IndexSet A = random_tailed_set(gen, 60);
        uint64_t m_lo = gen() % 30 + 5;
        uint64_t m_hi = m_lo + gen() % 40 + 10;
        uint64_t r_lo = A.rank(m_lo), r_hi = A.rank(m_hi);
        if (r_hi <= r_lo + 2) continue;
        uint64_t hit = with_hit ? r_lo + gen() % (r_hi - r_lo) + 1 : 0;
        auto in_gap = [r_lo, r_hi](uint64_t n) { return n > r_lo && n <= r_hi; };
        uint64_t parity = gen() % 2;
        IndexSet B0 = IndexSet::from_predicate("b0", [in_gap, parity, hit](uint64_t n) {
            if (hit && n == hit) return true;
            return !in_gap(n) && n % 2 == parity;
        });
        IndexSet B = diagonal_shift(B0);
        Injection p = p_from_set(A, B, 4000);

        std::vector<uint64_t> expected;
        A.for_each_in(m_lo + 1, m_hi, [&](uint64_t n) { expected.push_back(n); });
        uint64_t diff = r_hi - r_lo;

        if (!with_hit) {
            uint64_t l = B0.rank(r_lo);
            for (uint64_t j = 1; j <= diff; ++j)
                if (p(r_lo + l + j) != expected[j - 1]) ++r.mismatches;
        } else {
            uint64_t l = B0.rank(hit);
            size_t pos = 0, inserted = 0;
            for (uint64_t i = 1; i <= diff + 1; ++i) {
                uint64_t img = p(r_lo + (l - 1) + i);
                if (pos < expected.size() && img == expected[pos]) ++pos;
                else {
                    if (A.contains(img)) ++r.mismatches;
                    ++inserted;
                }
            }
            if (pos != expected.size() || inserted != 1) ++r.mismatches;
        }
        ++r.block_instances;
    }

    r.report = summary_json("gap_formula_equivalence", 303,
                            {{"pairs", 200},
                             {"point_checks", r.point_checks},
                             {"formula_hits", r.formula_hits},
                             {"block_instances", r.block_instances},
                             {"mismatches", r.mismatches}});
    return r;
}

bool criterion3(std::ostream& out) {
    C3Result r = c3_run();
    write_report("c3_gap_formula.json", r.report);
    out << "    200 pairs x 200 points vs brute-force inversion (" << r.formula_hits
        << " gap-formula evaluations), " << r.block_instances
        << " block-image instances: " << r.mismatches << " mismatches\n";
    return r.mismatches == 0;
}

// ---------------------------------------------------------------- criterion 4

// Greedy ">1"-block milestones located by a compensated float scan, each block
// certificate then re-verified exactly. Diagnostic companion to the exact
// library scan, which is impractical at 1e6 on harmonic-type denominators.
std::vector<uint64_t> up_milestones_streaming(const Series& a, const IndexSet& A, uint64_t count,
                                              uint64_t horizon) {
    std::vector<uint64_t> out;
    double acc = 0.0, comp = 0.0, absmass = 0.0;
    for (uint64_t n = 1; n <= horizon && out.size() < count; ++n) {
        if (!A.contains(n)) continue;
        double t = a.term(n).to_double();
        absmass += std::abs(t);
        double y = t - comp, u = acc + y;
        comp = (u - acc) - y;
        acc = u;
        if (acc > 1.0 + 1e-12 * absmass) {
            out.push_back(n);
            acc = 0.0;
            comp = 0.0;
        }
    }
    uint64_t prev = 0;
    for (uint64_t m : out) {
        if (!(window_sum(a, A, prev, m) > Rational(1)))
            throw Error("internal: streaming milestone certificate failed");
        prev = m;
    }
    return out;
}

bool criterion4(std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    const uint64_t horizon = 1'000'000;
    Series a = alternating_harmonic();
    IndexSet A = IndexSet::odds();

    DominatingMilestones strong = find_dominating_milestones(a, A, 20, horizon);
    std::vector<uint64_t> weak = up_milestones_streaming(a, A, 20, horizon);

    auto pipeline = [&](const std::vector<uint64_t>& m) {
        // B0: 1, then every second milestone, then a parity tail past the
        // horizon; every finite gap (b_l, b_{l+1}] then holds two milestones
        std::vector<uint64_t> finite_part{1};
        for (size_t i = 1; i < m.size(); i += 2) finite_part.push_back(m[i]);
        auto fp = std::make_shared<std::vector<uint64_t>>(finite_part);
        IndexSet B0 = IndexSet::from_predicate("B0", [fp, horizon](uint64_t n) {
            if (n <= horizon) return std::binary_search(fp->begin(), fp->end(), n);
            return n % 2 == 0;
        });
        uint64_t x_gaps = 0;
        for (size_t l = 1; l + 1 <= fp->size(); ++l) {
            uint64_t lo = (*fp)[l - 1], hi = (*fp)[l];
            uint64_t cnt = 0;
            for (uint64_t v : m)
                if (v > lo && v <= hi) ++cnt;
            if (cnt >= 2) ++x_gaps;
        }
        IndexSet S = IndexSet::odds();
        IndexSet C = osc_set(A, B0, S);
        DivergenceVerdict v =
            classify_streaming(a, C, horizon, Rational(1), Rational(1), Rational(0), 5);
        return std::make_pair(x_gaps, v);
    };

    auto [x_strong, v_strong] = pipeline(strong.indices);
    auto [x_weak, v_weak] = pipeline(weak);
    double dt = seconds_since(t0);

    out << "    milestones below 1e6: " << strong.indices.size()
        << " dominating-strength, " << weak.size() << " weak (> 1) strength\n";
    out << "    X-gaps (two milestones per B0 gap): " << x_strong << " / " << x_weak << "\n";
    out << "    exact crossings of the (0,1) band: " << v_strong.upcross_count << " up, "
        << v_strong.downcross_count << " down (dominating); " << v_weak.upcross_count << " up, "
        << v_weak.downcross_count << " down (weak); required >= 5 and >= 5\n";
    out << "    one-signed mass below 1e6 is ~7.2 < 10 needed for 5+5 band crossings: "
        << "unattainable at this horizon (see decisions ledger)\n";
    out << "    runtime " << dt << " s (cap 120 s)\n";

    return v_strong.kind == DivergenceVerdict::Kind::Oscillation && v_strong.upcross_count >= 5 &&
           v_strong.downcross_count >= 5 && dt < 120.0;
}

// ---------------------------------------------------------------- criterion 5

bool criterion5(std::ostream& out) {
    Series a = alternating_harmonic();
    try {
        BlockPartition p = blocks_base_pow(a, Rational(5), 8, kDefaultScanBound);
        RSSequence seq = one_one_sequence(a, 4, kDefaultScanBound);
        RSAudit audit = audit_rs(seq, Rational(1, 10), 2);
        out << "    blocks built: " << p.count() << ", audit "
            << (audit.passes ? "pass" : "fail") << "\n";
        return false; // 8 J-blocks give 4 I-blocks; 6 agreeing blocks cannot exist
    } catch (const HorizonError& e) {
        out << "    " << e.what() << "\n";
        out << "    base-5 block 2 of the alternating harmonic closes near 6e12; its exact "
               "abs-sum certificate cannot be materialized (see decisions ledger). The full "
               "base-5 mechanism runs on the alternating-unit series in the rs_seq suite.\n";
        return false;
    }
}

// ---------------------------------------------------------------- criterion 6

constexpr uint64_t kC6Seeds = 2000, kC6Seed = 606;

double endpoint_sample_variance(const Series& c, uint64_t m, uint64_t seeds, uint64_t base_seed) {
    std::vector<double> mag(m + 1, 0.0);
    for (uint64_t n = 1; n <= m; ++n) mag[n] = c.term(n).to_double();
    double mean = 0.0, m2 = 0.0;
    for (uint64_t i = 0; i < seeds; ++i) {
        SignSequence s(base_seed + i);
        double sum = 0.0, comp = 0.0;
        for (uint64_t n = 1; n <= m; ++n) {
            double t = s.sign(n) * mag[n];
            double y = t - comp, u = sum + y;
            comp = (u - sum) - y;
            sum = u;
        }
        double delta = sum - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (sum - mean);
    }
    return m2 / static_cast<double>(seeds - 1);
}

struct C6Result {
    bool pass = true;
    std::vector<std::string> lines;
    std::string report;
};

C6Result c6_run() {
    C6Result r;
    Json j;
    j["schema"] = kSchemaTag;
    j["kind"] = "rademacher_statistics";
    j["seeds"] = kC6Seeds;
    j["seed"] = kC6Seed;

    {
        const uint64_t m = 10'000;
        Rational exact(0);
        for (uint64_t n = 1; n <= m; ++n) {
            Rational t(1, static_cast<long long>(n));
            exact += t * t;
        }
        double ev = exact.to_double();
        double var = endpoint_sample_variance(harmonic_terms(), m, kC6Seeds, kC6Seed);
        double se = ev * std::sqrt(2.0 / (kC6Seeds - 1));
        bool ok = std::abs(var - ev) <= 5 * se;
        std::ostringstream os;
        os << "1/n at m=1e4: sample variance " << var << " vs exact " << ev << " (5 SE = "
           << 5 * se << "): " << (ok ? "ok" : "VIOLATION");
        r.lines.push_back(os.str());
        j["harmonic_var"] = float_repr(var);
        j["harmonic_var_exact"] = float_repr(ev);
        r.pass = r.pass && ok;
    }

    for (uint64_t m : {1'000ULL, 10'000ULL}) {
        Series c = inv_sqrt_dyadic();
        Rational exact(0);
        for (uint64_t n = 1; n <= m; ++n) {
            Rational t = c.term(n);
            exact += t * t;
        }
        double target = std::sqrt(exact.to_double());
        double sd = std::sqrt(endpoint_sample_variance(c, m, kC6Seeds, kC6Seed + m));
        bool ok = std::abs(sd - target) <= 0.10 * target;
        std::ostringstream os;
        os << "1/sqrt(n) at m=" << m << ": empirical std " << sd << " vs sqrt(sum c^2) "
           << target << " (10%): " << (ok ? "ok" : "VIOLATION");
        r.lines.push_back(os.str());
        j["invsqrt_std_m" + std::to_string(m)] = float_repr(sd);
        j["invsqrt_target_m" + std::to_string(m)] = float_repr(target);
        r.pass = r.pass && ok;
    }

    {
        FreqReport fr = divergence_frequency(harmonic_terms(), IndexSet::naturals(), kC6Seeds,
                                             10'000, Rational(10), kC6Seed);
        bool ok = fr.endpoint_fraction <= fr.chebyshev_bound + 3 * fr.stderr_fraction + 1e-12;
        std::ostringstream os;
        os << "escape 10: endpoint exceedance " << fr.endpoint_fraction << " vs Chebyshev bound "
           << fr.chebyshev_bound << ": " << (ok ? "ok" : "VIOLATION");
        r.lines.push_back(os.str());
        j["endpoint_fraction"] = float_repr(fr.endpoint_fraction);
        j["chebyshev_bound"] = float_repr(fr.chebyshev_bound);
        r.pass = r.pass && ok;
    }
    r.report = j.dump(2) + "\n";
    return r;
}

bool criterion6(std::ostream& out) {
    C6Result r = c6_run();
    write_report("c6_rademacher.json", r.report);
    for (const auto& line : r.lines) out << "    " << line << "\n";
    return r.pass;
}

// ---------------------------------------------------------------- criterion 7

Series random_dyadic_series(uint64_t seed) {
    return Series("dyadic" + std::to_string(seed),
                  [seed](uint64_t n) {
                      uint64_t h = splitmix64(seed ^ (n * 0x9E3779B97F4A7C15ULL));
                      long long num = 1 + static_cast<long long>(h % 64);
                      return Rational((h >> 32) & 1 ? num : -num, 64);
                  },
                  Rational(1));
}

struct C7Result {
    uint64_t pairs = 0, term_checks = 0, mismatches = 0;
    std::string report;
};

C7Result c7_run() {
    C7Result r;
    std::mt19937_64 gen(707);
    const uint64_t horizon = 100'000;

    for (int rep = 0; rep < 100; ++rep) {
        Series b = random_dyadic_series(gen());
        IndexSet B = random_tailed_set(gen, 100);
        Series zp = zero_pad(b, B);

        uint64_t count = 0;
        for (uint64_t n = 1; n <= horizon; ++n) {
            Rational t = zp.term(n);
            ++r.term_checks;
            if (B.contains(n)) {
                ++count;
                if (t != b.term(count)) ++r.mismatches;
            } else if (!t.is_zero()) {
                ++r.mismatches;
            }
        }
        if (count != B.rank(horizon)) ++r.mismatches;

        if (rep % 2 == 0) {
            // B∖A finite: the nonzero tail of the subseries is b's tail, shifted
            uint64_t b1 = B.nth(1), b2 = B.nth(2), b3 = B.nth(3);
            auto killed =
                std::make_shared<std::vector<uint64_t>>(std::vector<uint64_t>{b1, b2, b3});
            IndexSet A = IndexSet::from_predicate("cofinite-in-B", [killed](uint64_t n) {
                return !std::binary_search(killed->begin(), killed->end(), n);
            });
            Series sub = subseries(zp, A);
            uint64_t found = 0;
            for (uint64_t k = 1; found < 40; ++k) {
                Rational t = sub.term(k);
                if (t.is_zero()) continue;
                ++found;
                ++r.term_checks;
                if (t != b.term(found + 3)) ++r.mismatches;
            }
        } else {
            // A∩B finite: the subseries trace has an all-zero tail
            uint64_t b2 = B.nth(2);
            auto kept = std::make_shared<std::vector<uint64_t>>(
                std::vector<uint64_t>{B.nth(1), b2});
            IndexSet compB = B.complement();
            IndexSet A = IndexSet::from_predicate("finite-in-B", [kept, compB](uint64_t n) {
                return compB.contains(n) || std::binary_search(kept->begin(), kept->end(), n);
            });
            Series sub = subseries(zp, A);
            uint64_t last_kept_rank = A.rank(b2);
            for (uint64_t k = last_kept_rank + 1; k <= last_kept_rank + 60; ++k) {
                ++r.term_checks;
                if (!sub.term(k).is_zero()) ++r.mismatches;
            }
        }
        ++r.pairs;
    }
    r.report = summary_json("zero_pad_invariant", 707,
                            {{"pairs", r.pairs},
                             {"term_checks", r.term_checks},
                             {"mismatches", r.mismatches}});
    return r;
}

bool criterion7(std::ostream& out) {
    C7Result r = c7_run();
    write_report("c7_zero_pad.json", r.report);
    out << "    " << r.pairs << " random (series, B) pairs to horizon 1e5 (" << r.term_checks
        << " exact term checks): " << r.mismatches << " mismatches\n";
    return r.mismatches == 0;
}

// ---------------------------------------------------------------- criterion 8

struct C8Result {
    uint64_t checks = 0, violations = 0;
    std::string report;
};

C8Result c8_run() {
    C8Result r;
    std::mt19937_64 gen(808);
    const uint64_t horizon = 10'000;

    for (int rep = 0; rep < 100; ++rep) {
        IndexSet A = random_tailed_set(gen, 100);
        IndexSet B = random_tailed_set(gen, 100);
        Shuffle fwd(A, B);
        Shuffle bwd(B, A);
        for (uint64_t n = 1; n <= horizon; ++n) {
            r.checks += 2;
            if (bwd(fwd(n)) != n) ++r.violations;
            if (fwd(bwd(n)) != n) ++r.violations;
        }
    }

    Series a = alternating_harmonic();
    Series padded = zero_pad(a, IndexSet::naturals());
    Series reid = apply_injection(a, Injection::identity());
    for (uint64_t n = 1; n <= horizon; ++n) {
        r.checks += 2;
        if (padded.term(n) != a.term(n)) ++r.violations;
        if (reid.term(n) != a.term(n)) ++r.violations;
    }
    r.report = summary_json("shuffle_algebra", 808,
                            {{"checks", r.checks}, {"violations", r.violations}});
    return r;
}

bool criterion8(std::ostream& out) {
    C8Result r = c8_run();
    write_report("c8_shuffle_algebra.json", r.report);
    out << "    100 shuffle pairs composed both ways on [1,1e4], zero_pad(.,N) and "
           "apply_injection(.,id) identities ("
        << r.checks << " checks): " << r.violations << " violations\n";
    return r.violations == 0;
}

// ---------------------------------------------------------------- criterion 9

struct MadeSeq {
    RSSequence seq;
    std::vector<std::vector<uint64_t>> b_elems, comp_elems;
};

MadeSeq make_exact_sequence(std::mt19937_64& gen, const Rational& r, const Rational& s,
                            size_t blocks) {
    auto terms = std::make_shared<std::map<uint64_t, Rational>>();
    std::vector<RSBlock> rsblocks;
    std::vector<std::vector<uint64_t>> b_all, c_all;
    uint64_t cursor = 1;
    for (size_t k = 0; k < blocks; ++k) {
        cursor += gen() % 5;
        uint64_t nb = 4 + gen() % 4, nc = 4 + gen() % 4;
        std::vector<uint64_t> all;
        for (uint64_t i = 0; i < nb + nc; ++i) all.push_back(cursor + i);
        std::shuffle(all.begin(), all.end(), gen);
        std::vector<uint64_t> belems(all.begin(), all.begin() + nb);
        std::vector<uint64_t> celems(all.begin() + nb, all.end());
        std::sort(belems.begin(), belems.end());
        std::sort(celems.begin(), celems.end());
        auto assign = [&](const std::vector<uint64_t>& elems, const Rational& target) {
            std::vector<long long> w;
            long long total = 0;
            for (size_t i = 0; i < elems.size(); ++i) {
                w.push_back(1 + static_cast<long long>(gen() % 2));
                total += w.back();
            }
            for (size_t i = 0; i < elems.size(); ++i)
                (*terms)[elems[i]] = target * Rational(w[i], total);
        };
        assign(belems, r);
        assign(celems, s);
        RSBlock blk;
        blk.lo = cursor;
        blk.hi = cursor + nb + nc - 1;
        blk.b = IndexSet::finite(belems);
        rsblocks.push_back(std::move(blk));
        b_all.push_back(std::move(belems));
        c_all.push_back(std::move(celems));
        cursor += nb + nc;
    }
    TermFn x = [terms](uint64_t n) {
        auto it = terms->find(n);
        return it == terms->end() ? Rational(0) : it->second;
    };
    return MadeSeq{RSSequence("made", std::move(rsblocks), std::move(x), r, s),
                   std::move(b_all), std::move(c_all)};
}

struct C9Result {
    uint64_t containment_failures = 0, reverify_failures = 0;
    std::string report;
};

C9Result c9_run() {
    C9Result r;
    std::mt19937_64 gen(909);
    const std::vector<Rational> tols = {Rational(0), Rational(1, 100), Rational(1, 8)};
    for (int rep = 0; rep < 500; ++rep) {
        MadeSeq m = make_exact_sequence(gen, Rational(1), Rational(1, 2), 6);
        std::vector<uint64_t> d;
        for (size_t k = 0; k < 6; ++k) {
            if (gen() % 3 == 0) {
                d.insert(d.end(), m.b_elems[k].begin(), m.b_elems[k].end());
            } else {
                for (uint64_t n : m.b_elems[k])
                    if (gen() & 1) d.push_back(n);
                for (uint64_t n : m.comp_elems[k])
                    if (gen() % 4 == 0) d.push_back(n);
            }
        }
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        IndexSet D = IndexSet::finite(d);

        SplitWitness total = totally_splits(D, m.seq, 1);
        if (!witness_sound(total, D, m.seq)) ++r.reverify_failures;
        for (const Rational& tol : tols) {
            SplitWitness almost = almost_splits(D, m.seq, tol, 1);
            if (!witness_sound(almost, D, m.seq)) ++r.reverify_failures;
            for (size_t k : total.E)
                if (std::find(almost.E.begin(), almost.E.end(), k) == almost.E.end())
                    ++r.containment_failures;
        }
    }
    r.report = summary_json("rs_containment", 909,
                            {{"instances", 500},
                             {"containment_failures", r.containment_failures},
                             {"reverify_failures", r.reverify_failures}});
    return r;
}

bool criterion9(std::ostream& out) {
    C9Result r = c9_run();
    write_report("c9_containment.json", r.report);
    out << "    500 random (D, sequence) instances at tol {0, 1/100, 1/8}: "
        << r.containment_failures << " containment failures, " << r.reverify_failures
        << " witness re-verification failures\n";
    return r.containment_failures == 0 && r.reverify_failures == 0;
}

// --------------------------------------------------------------- criterion 10

bool criterion10(std::ostream& out) {
    uint64_t mismatches = 0;
    auto compare = [&](const std::string& name, const std::string& fresh) {
        std::ifstream f(report_dir() / name, std::ios::binary);
        std::ostringstream os;
        os << f.rdbuf();
        if (!f.good() && os.str().empty()) {
            ++mismatches;
            out << "    " << name << ": missing (run the producing criterion first)\n";
            return;
        }
        if (os.str() != fresh) {
            ++mismatches;
            out << "    " << name << ": bytes differ on re-run\n";
        }
    };

    compare("c1_bound_suite.json", c1_run().report);
    compare("c2_flip_symmetry.json", c2_run().report);
    compare("c3_gap_formula.json", c3_run().report);
    compare("c6_rademacher.json", c6_run().report);
    compare("c7_zero_pad.json", c7_run().report);
    compare("c8_shuffle_algebra.json", c8_run().report);
    compare("c9_containment.json", c9_run().report);
    out << "    7 randomized reports regenerated from their fixed seeds: " << mismatches
        << " byte mismatches\n";
    return mismatches == 0;
}

struct Criterion {
    int id;
    const char* title;
    bool (*run)(std::ostream&);
};

const Criterion kCriteria[] = {
    {1, "product-space bound suite: |S_m| <= 1/k exactly", criterion1},
    {2, "flip symmetry: S^A(flip x) = -S^A(x) exactly", criterion2},
    {3, "gap-formula and block-image oracle equivalence", criterion3},
    {4, "oscillation-set pipeline at horizon 1e6", criterion4},
    {5, "base-5 block pipeline on the alternating harmonic", criterion5},
    {6, "random-sign statistics: variance, std, Chebyshev", criterion6},
    {7, "zero-pad nonzero-subsequence and non-splitting tails", criterion7},
    {8, "shuffle algebra and identity transforms", criterion8},
    {9, "total-split within almost-split containment", criterion9},
    {10, "seeded runs produce byte-identical reports", criterion10},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
            continue;
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail << "    unexpected error: " << e.what() << "\n";
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title
                  << "\n"
                  << detail.str();
        if (!ok) ++failures;
    }
    return failures;
}
