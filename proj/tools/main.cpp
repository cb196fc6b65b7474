#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "serieslab/serialize.hpp"
#include "serieslab/series.hpp"
#include "serieslab/transforms.hpp"

namespace sl = serieslab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitHorizon = 3;
constexpr int kExitShortfall = 4;

struct GlobalOpts {
    uint64_t horizon = 1'000'000;
    std::string tol = "1/8";
    uint64_t seed = 0;
    std::string format = "csv";
    std::string base = "5";
    std::string out = "-";
    uint64_t scan_bound = sl::kDefaultScanBound;
};

sl::RunConfig make_config(const GlobalOpts& g, const std::string& command) {
    sl::RunConfig cfg;
    cfg.horizon = g.horizon;
    cfg.tol = sl::Rational::from_string(g.tol);
    cfg.seed = g.seed;
    cfg.format = g.format;
    cfg.base = sl::Rational::from_string(g.base);
    cfg.scan_bound = g.scan_bound;
    cfg.command = command;
    return cfg;
}

void write_output(const std::string& out, const std::string& payload) {
    if (out == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw sl::Error("cannot open output file \"" + out + "\"");
    f << payload;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

// pipeline stages: zero_pad(SET) | subseries(SET) | apply_shuffle(A;B) | apply_pfromset(A;B)
sl::Series apply_pipe(sl::Series s, const std::string& pipe) {
    std::stringstream ss(pipe);
    std::string stage;
    while (std::getline(ss, stage, '|')) {
        stage = trim(stage);
        if (stage.empty()) continue;
        auto open = stage.find('(');
        if (open == std::string::npos || stage.back() != ')')
            throw sl::ParseError("bad pipeline stage \"" + stage + "\" (want op(args))");
        std::string op = trim(stage.substr(0, open));
        std::string args = stage.substr(open + 1, stage.size() - open - 2);
        if (op == "zero_pad") {
            s = sl::zero_pad(s, sl::parse_set(trim(args)));
        } else if (op == "subseries") {
            s = sl::subseries(s, sl::parse_set(trim(args)));
        } else if (op == "apply_shuffle" || op == "apply_pfromset") {
            auto semi = args.find(';');
            if (semi == std::string::npos)
                throw sl::ParseError("stage \"" + op + "\" needs two sets separated by ';'");
            sl::IndexSet a = sl::parse_set(trim(args.substr(0, semi)));
            sl::IndexSet b = sl::parse_set(trim(args.substr(semi + 1)));
            if (op == "apply_shuffle")
                s = sl::apply_injection(s, sl::Shuffle(a, b).as_injection());
            else
                s = sl::apply_injection(s, sl::p_from_set(a, b));
        } else {
            throw sl::ParseError("unknown pipeline op \"" + op + "\"");
        }
    }
    return s;
}

std::vector<sl::Rational> parse_rational_list(const std::string& spec) {
    std::vector<sl::Rational> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(sl::Rational::from_string(item));
    }
    return out;
}

void print_milestone_table(const sl::Milestones& m) {
    std::cerr << "# milestones (" << m.indices.size() << "/" << m.requested << ")\n";
    for (const auto& c : m.certs) {
        std::cerr << "#   block (" << c.lo << ", " << c.hi << "]: sum " << c.sum.str()
                  << (c.greater ? " > " : " < ") << c.threshold.str() << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serieslab: finite-horizon experiments on conditionally convergent series"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    GlobalOpts g;
    app.add_option("--horizon", g.horizon, "scan horizon (default 1e6)");
    app.add_option("--tol", g.tol, "rational tolerance (default 1/8)");
    app.add_option("--seed", g.seed, "RNG seed (default 0)");
    app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--base", g.base, "block budget base (default 5)");
    app.add_option("--out", g.out, "output path, '-' for stdout");
    app.add_option("--scan-bound", g.scan_bound, "enumeration scan bound (default 1e7)");

    // trace
    std::string t_series = "altharm", t_set = "naturals";
    auto* cmd_trace = app.add_subcommand("trace", "exact prefix-sum trace over a set");
    cmd_trace->add_option("--series", t_series, "series spec");
    cmd_trace->add_option("--set", t_set, "index set spec");

    // transform
    std::string x_series = "altharm", x_pipe, x_perm;
    auto* cmd_transform = app.add_subcommand("transform", "series pipeline or permutation export");
    cmd_transform->add_option("--series", x_series, "series spec");
    cmd_transform->add_option("--pipe", x_pipe, "e.g. \"zero_pad(evens) | subseries(odds)\"");
    cmd_transform->add_option("--perm", x_perm, "export permutation: shuffle:A;B or pfromset:A;B");

    // witness subcommands
    auto* cmd_witness = app.add_subcommand("witness", "divergence certificates");
    cmd_witness->require_subcommand(1);
    std::string w_series = "altharm", w_set = "odds", w_mode = "up", w_c = "1", w_targets;
    std::string w_bound = "2";
    uint64_t w_count = 3, w_excursions = 1;
    bool w_strengthened = false;
    auto* wm = cmd_witness->add_subcommand("milestones", "greedy milestone blocks");
    wm->add_option("--series", w_series);
    wm->add_option("--set", w_set);
    wm->add_option("--mode", w_mode)->check(CLI::IsMember({"up", "down", "osc"}));
    wm->add_option("--c", w_c, "oscillation amplitude");
    wm->add_option("--count", w_count);
    wm->add_flag("--strengthened", w_strengthened);
    auto* wd = cmd_witness->add_subcommand("dominating", "blocks dominating prior absolute mass");
    wd->add_option("--series", w_series);
    wd->add_option("--set", w_set);
    wd->add_option("--count", w_count);
    auto* wo = cmd_witness->add_subcommand("oscillator", "greedy oscillation set");
    wo->add_option("--series", w_series);
    wo->add_option("--targets", w_targets, "comma-separated rational targets")->required();
    auto* wu = cmd_witness->add_subcommand("updown", "complement divergence shadow");
    wu->add_option("--series", w_series);
    wu->add_option("--set", w_set);
    wu->add_option("--bound", w_bound);
    auto* wq = cmd_witness->add_subcommand("quarter", "±1/4 oscillation check");
    wq->add_option("--series", w_series);
    wq->add_option("--set", w_set);
    wq->add_option("--excursions", w_excursions);

    // rs subcommands
    auto* cmd_rs = app.add_subcommand("rs", "(r,s)-sequence construction and audits");
    cmd_rs->require_subcommand(1);
    std::string r_series = "altunit", r_d = "odds";
    uint64_t r_count = 4, r_pairs = 2, r_min_blocks = 1, r_tail = 1;
    auto* rb = cmd_rs->add_subcommand("blocks", "greedy base-power blocks");
    rb->add_option("--series", r_series);
    rb->add_option("--count", r_count);
    auto* ro = cmd_rs->add_subcommand("oneone", "(1,1)-sequence from base-5 blocks");
    ro->add_option("--series", r_series);
    ro->add_option("--pairs", r_pairs);
    auto* ra = cmd_rs->add_subcommand("audit", "per-block target deviations");
    ra->add_option("--series", r_series);
    ra->add_option("--pairs", r_pairs);
    ra->add_option("--tail-start", r_tail);
    auto* ral = cmd_rs->add_subcommand("almost", "almost-split witness");
    ral->add_option("--series", r_series);
    ral->add_option("--pairs", r_pairs);
    ral->add_option("--d", r_d, "candidate splitting set");
    ral->add_option("--min-blocks", r_min_blocks);
    auto* rt = cmd_rs->add_subcommand("total", "total-split witness");
    rt->add_option("--series", r_series);
    rt->add_option("--pairs", r_pairs);
    rt->add_option("--d", r_d);
    rt->add_option("--min-blocks", r_min_blocks);
    auto* rosc = cmd_rs->add_subcommand("oscillate", "witness-driven ±1/4 oscillation");
    rosc->add_option("--series", r_series);
    rosc->add_option("--pairs", r_pairs);
    rosc->add_option("--d", r_d);
    rosc->add_option("--min-blocks", r_min_blocks);

    // mc
    auto* cmd_mc = app.add_subcommand("mc", "Monte Carlo sign experiments");
    cmd_mc->require_subcommand(1);
    std::string m_cn = "harmonic", m_set = "naturals", m_escape = "10";
    uint64_t m_trials = 1000;
    auto* mr = cmd_mc->add_subcommand("rademacher", "random-sign escape frequencies");
    mr->add_option("--cn", m_cn, "nonnegative magnitude series");
    mr->add_option("--set", m_set);
    mr->add_option("--trials", m_trials);
    mr->add_option("--escape", m_escape);

    // kspace
    auto* cmd_kspace = app.add_subcommand("kspace", "product-space sign experiments");
    cmd_kspace->require_subcommand(1);
    std::string k_set = "odds", k_threshold = "1/2";
    uint64_t k_samples = 100, k_depth = 50;
    bool k_skip_bound = false;
    auto* ks = cmd_kspace->add_subcommand("sample", "flip pairing + block bound check");
    ks->add_option("--samples", k_samples);
    ks->add_option("--depth", k_depth);
    ks->add_option("--set", k_set);
    ks->add_option("--threshold", k_threshold);
    ks->add_flag("--skip-bound-check", k_skip_bound);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    std::string command;
    for (int i = 0; i < argc; ++i) command += std::string(i ? " " : "") + argv[i];

    try {
        sl::RunConfig cfg = make_config(g, command);
        bool shortfall = false;

        if (cmd_trace->parsed()) {
            sl::Series s = sl::parse_series(t_series);
            sl::PartialSumTrace t = sl::partial_sums(s, g.horizon, sl::parse_set(t_set));
            if (g.format == "json") {
                write_output(g.out, sl::trace_to_json(t, cfg).dump(2) + "\n");
            } else {
                std::ostringstream os;
                sl::trace_to_csv(os, t, cfg);
                write_output(g.out, os.str());
            }
        } else if (cmd_transform->parsed()) {
            if (!x_perm.empty()) {
                auto colon = x_perm.find(':');
                auto semi = x_perm.find(';');
                if (colon == std::string::npos || semi == std::string::npos)
                    throw sl::ParseError("--perm wants kind:A;B");
                std::string kind = x_perm.substr(0, colon);
                sl::IndexSet a = sl::parse_set(trim(x_perm.substr(colon + 1, semi - colon - 1)));
                sl::IndexSet b = sl::parse_set(trim(x_perm.substr(semi + 1)));
                sl::Injection p = [&]() {
                    if (kind == "shuffle") return sl::Shuffle(a, b).as_injection();
                    if (kind == "pfromset") return sl::p_from_set(a, b);
                    throw sl::ParseError("unknown perm kind \"" + kind + "\"");
                }();
                std::ostringstream os;
                os << "# schema: " << sl::kSchemaTag << "\n# command: " << command << "\n";
                os << "n,p\n";
                for (uint64_t n = 1; n <= g.horizon; ++n) os << n << "," << p(n) << "\n";
                write_output(g.out, os.str());
            } else {
                sl::Series s = apply_pipe(sl::parse_series(x_series), x_pipe);
                sl::PartialSumTrace t = sl::partial_sums(s, g.horizon);
                if (g.format == "json") {
                    write_output(g.out, sl::trace_to_json(t, cfg).dump(2) + "\n");
                } else {
                    std::ostringstream os;
                    sl::trace_to_csv(os, t, cfg);
                    write_output(g.out, os.str());
                }
            }
        } else if (cmd_witness->parsed()) {
            sl::Series s = sl::parse_series(w_series);
            sl::IndexSet set = sl::parse_set(w_set);
            if (wm->parsed()) {
                sl::MilestoneMode mode = w_mode == "up" ? sl::MilestoneMode::ToPlusInfinity
                                       : w_mode == "down" ? sl::MilestoneMode::ToMinusInfinity
                                                          : sl::MilestoneMode::Oscillation;
                sl::Milestones m =
                    sl::find_milestones(s, set, mode, sl::Rational::from_string(w_c), w_count,
                                        g.horizon, w_strengthened);
                print_milestone_table(m);
                write_output(g.out, sl::milestones_to_json(m, cfg).dump(2) + "\n");
                shortfall = m.shortfall();
            } else if (wd->parsed()) {
                sl::DominatingMilestones m =
                    sl::find_dominating_milestones(s, set, w_count, g.horizon);
                write_output(g.out, sl::dominating_to_json(m, cfg).dump(2) + "\n");
                shortfall = m.shortfall();
            } else if (wo->parsed()) {
                sl::OscillatorResult r =
                    sl::generic_oscillator(s, parse_rational_list(w_targets), g.horizon);
                write_output(g.out, sl::oscillator_to_json(r, cfg).dump(2) + "\n");
                shortfall = r.shortfall;
            } else if (wu->parsed()) {
                sl::UpDownReport r =
                    sl::up_down_check(s, set, sl::Rational::from_string(w_bound), g.horizon);
                write_output(g.out, sl::updown_to_json(r, cfg).dump(2) + "\n");
            } else if (wq->parsed()) {
                sl::DivergenceVerdict v = sl::quarter_oscillation_check(
                    s, set, static_cast<uint32_t>(w_excursions), g.horizon);
                write_output(g.out, sl::verdict_to_json(v).dump(2) + "\n");
                shortfall = !v.certified();
            }
        } else if (cmd_rs->parsed()) {
            sl::Series s = sl::parse_series(r_series);
            if (rb->parsed()) {
                sl::BlockPartition p = sl::blocks_base_pow(s, sl::Rational::from_string(g.base),
                                                           r_count, g.scan_bound);
                write_output(g.out, sl::block_partition_to_json(p, cfg).dump(2) + "\n");
            } else if (ro->parsed()) {
                sl::RSSequence seq = sl::one_one_sequence(s, r_pairs, g.scan_bound);
                write_output(g.out, sl::rs_sequence_to_json(seq, cfg).dump(2) + "\n");
            } else if (ra->parsed()) {
                sl::RSSequence seq = sl::one_one_sequence(s, r_pairs, g.scan_bound);
                sl::RSAudit audit = sl::audit_rs(seq, cfg.tol, r_tail);
                write_output(g.out, sl::rs_audit_to_json(audit, cfg).dump(2) + "\n");
                shortfall = !audit.passes;
            } else if (ral->parsed() || rt->parsed()) {
                sl::RSSequence seq = sl::one_one_sequence(s, r_pairs, g.scan_bound);
                sl::IndexSet d = sl::parse_set(r_d);
                sl::SplitWitness w = ral->parsed()
                                         ? sl::almost_splits(d, seq, cfg.tol, r_min_blocks)
                                         : sl::totally_splits(d, seq, r_min_blocks);
                write_output(g.out, sl::split_witness_to_json(w, cfg).dump(2) + "\n");
                shortfall = !w.is_witness;
            } else if (rosc->parsed()) {
                sl::RSSequence seq = sl::one_one_sequence(s, r_pairs, g.scan_bound);
                sl::IndexSet d = sl::parse_set(r_d);
                sl::SplitWitness w = sl::almost_splits(d, seq, cfg.tol, r_min_blocks);
                sl::OscWitnessReport rep = sl::oscillation_from_witness(s, seq, d, w);
                write_output(g.out, sl::osc_witness_report_to_json(rep, cfg).dump(2) + "\n");
                shortfall = rep.verdict.kind != sl::DivergenceVerdict::Kind::Oscillation;
            }
        } else if (cmd_mc->parsed()) {
            if (mr->parsed()) {
                sl::FreqReport r = sl::divergence_frequency(
                    sl::parse_series(m_cn), sl::parse_set(m_set), m_trials, g.horizon,
                    sl::Rational::from_string(m_escape), g.seed);
                write_output(g.out, sl::freq_report_to_json(r, cfg).dump(2) + "\n");
            }
        } else if (cmd_kspace->parsed()) {
            if (ks->parsed()) {
                sl::Json j = sl::inf_report_to_json(
                    sl::inf_experiment(sl::parse_set(k_set), k_samples, k_depth,
                                       sl::Rational::from_string(k_threshold), g.seed),
                    cfg);
                if (!k_skip_bound) {
                    sl::BoundCheckReport b = sl::kspace_bound_check(k_samples, k_depth, g.seed);
                    j["bound_check"] = sl::bound_check_to_json(b, cfg);
                    if (b.violations > 0) shortfall = true;
                }
                write_output(g.out, j.dump(2) + "\n");
            }
        }

        return shortfall ? kExitShortfall : kExitOk;
    } catch (const sl::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const sl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHorizon;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
