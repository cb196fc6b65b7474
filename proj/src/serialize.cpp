#include "serieslab/serialize.hpp"

#include <cstdio>
#include <ostream>

namespace serieslab {

std::string float_repr(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json RunConfig::to_json() const {
    Json j;
    j["schema"] = kSchemaTag;
    j["command"] = command;
    j["horizon"] = horizon;
    j["tol"] = tol.str();
    j["seed"] = seed;
    j["format"] = format;
    j["scan_bound"] = scan_bound;
    j["base"] = base.str();
    return j;
}

Json rational_json(const Rational& r) { return r.str(); }

Json rational_pair_json(const Rational& r) { return Json::array({r.num_str(), r.den_str()}); }

Rational rational_from_json(const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw ParseError("rational pair must have two entries");
        return Rational(mpz_class(j[0].get<std::string>()), mpz_class(j[1].get<std::string>()));
    }
    return Rational::from_string(j.get<std::string>());
}

void trace_to_csv(std::ostream& os, const PartialSumTrace& t, const RunConfig& cfg,
                  uint64_t compact_threshold) {
    os << "# schema: " << kSchemaTag << "\n";
    os << "# command: " << cfg.command << "\n";
    os << "# horizon: " << t.horizon << "\n";
    os << "# set: " << (t.over ? t.over->description() : "naturals") << "\n";
    os << "# seed: " << cfg.seed << "\n";
    os << "# scan_bound: " << cfg.scan_bound << "\n";
    bool compact = t.horizon > compact_threshold;
    if (compact) {
        os << "# compact: rows are sum_num,sum_den,sum_float with m = row number\n";
        os << "sum_num,sum_den,sum_float\n";
    } else {
        os << "m,sum_num,sum_den,sum_float\n";
    }
    for (uint64_t m = 1; m <= t.horizon; ++m) {
        const Rational& s = t.at(m);
        if (!compact) os << m << ",";
        os << s.num_str() << "," << s.den_str() << "," << float_repr(s.to_double()) << "\n";
    }
}

Json trace_to_json(const PartialSumTrace& t, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "trace";
    j["set"] = t.over ? t.over->description() : "naturals";
    j["trace_horizon"] = t.horizon;
    Json sums = Json::array();
    for (const Rational& s : t.sums) sums.push_back(s.str());
    j["sums"] = std::move(sums);
    return j;
}

std::vector<Rational> trace_sums_from_json(const Json& j) {
    std::vector<Rational> out;
    for (const auto& s : j.at("sums")) out.push_back(Rational::from_string(s.get<std::string>()));
    return out;
}

Json verdict_to_json(const DivergenceVerdict& v) {
    Json j;
    j["schema"] = kSchemaTag;
    j["kind"] = "verdict";
    j["verdict"] = v.kind_name();
    j["horizon"] = v.horizon;
    switch (v.kind) {
        case DivergenceVerdict::Kind::Exceeds:
        case DivergenceVerdict::Kind::Below:
            j["bound"] = v.bound.str();
            j["at_index"] = v.at_index;
            j["value_at"] = v.value_at.str();
            break;
        case DivergenceVerdict::Kind::Oscillation: {
            j["upper"] = v.upper.str();
            j["lower"] = v.lower.str();
            j["upcross_count"] = v.upcross_count;
            j["downcross_count"] = v.downcross_count;
            Json xs = Json::array();
            for (const auto& c : v.crossings) {
                Json cj;
                cj["up"] = c.up;
                cj["index"] = c.index;
                cj["value"] = c.value.str();
                xs.push_back(std::move(cj));
            }
            j["crossings"] = std::move(xs);
            break;
        }
        case DivergenceVerdict::Kind::Inconclusive:
            break;
    }
    return j;
}

DivergenceVerdict verdict_from_json(const Json& j) {
    DivergenceVerdict v;
    v.horizon = j.at("horizon").get<uint64_t>();
    std::string kind = j.at("verdict").get<std::string>();
    if (kind == "CertifiedExceeds" || kind == "CertifiedBelow") {
        v.kind = kind == "CertifiedExceeds" ? DivergenceVerdict::Kind::Exceeds
                                            : DivergenceVerdict::Kind::Below;
        v.bound = rational_from_json(j.at("bound"));
        v.at_index = j.at("at_index").get<uint64_t>();
        v.value_at = rational_from_json(j.at("value_at"));
    } else if (kind == "CertifiedOscillation") {
        v.kind = DivergenceVerdict::Kind::Oscillation;
        v.upper = rational_from_json(j.at("upper"));
        v.lower = rational_from_json(j.at("lower"));
        v.upcross_count = j.at("upcross_count").get<uint32_t>();
        v.downcross_count = j.at("downcross_count").get<uint32_t>();
        for (const auto& cj : j.at("crossings")) {
            Crossing c;
            c.up = cj.at("up").get<bool>();
            c.index = cj.at("index").get<uint64_t>();
            c.value = rational_from_json(cj.at("value"));
            v.crossings.push_back(std::move(c));
        }
    } else if (kind == "Inconclusive") {
        v.kind = DivergenceVerdict::Kind::Inconclusive;
    } else {
        throw ParseError("unknown verdict kind \"" + kind + "\"");
    }
    return v;
}

namespace {

const char* mode_name(MilestoneMode m) {
    switch (m) {
        case MilestoneMode::ToPlusInfinity: return "to_plus_infinity";
        case MilestoneMode::ToMinusInfinity: return "to_minus_infinity";
        case MilestoneMode::Oscillation: return "oscillation";
    }
    return "?";
}

MilestoneMode mode_from_name(const std::string& s) {
    if (s == "to_plus_infinity") return MilestoneMode::ToPlusInfinity;
    if (s == "to_minus_infinity") return MilestoneMode::ToMinusInfinity;
    if (s == "oscillation") return MilestoneMode::Oscillation;
    throw ParseError("unknown milestone mode \"" + s + "\"");
}

} // namespace

Json milestones_to_json(const Milestones& m, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "milestones";
    j["mode"] = mode_name(m.mode);
    j["c"] = m.c.str();
    j["strengthened"] = m.strengthened;
    j["requested"] = m.requested;
    j["shortfall"] = m.shortfall();
    j["indices"] = m.indices;
    Json certs = Json::array();
    for (const auto& c : m.certs) {
        Json cj;
        cj["lo"] = c.lo;
        cj["hi"] = c.hi;
        cj["sum"] = rational_pair_json(c.sum);
        cj["threshold"] = rational_pair_json(c.threshold);
        cj["greater"] = c.greater;
        certs.push_back(std::move(cj));
    }
    j["certificates"] = std::move(certs);
    return j;
}

Milestones milestones_from_json(const Json& j) {
    Milestones m;
    m.mode = mode_from_name(j.at("mode").get<std::string>());
    m.c = rational_from_json(j.at("c"));
    m.strengthened = j.at("strengthened").get<bool>();
    m.requested = j.at("requested").get<uint64_t>();
    m.horizon = j.at("horizon").get<uint64_t>();
    m.indices = j.at("indices").get<std::vector<uint64_t>>();
    for (const auto& cj : j.at("certificates")) {
        BlockCertificate c;
        c.lo = cj.at("lo").get<uint64_t>();
        c.hi = cj.at("hi").get<uint64_t>();
        c.sum = rational_from_json(cj.at("sum"));
        c.threshold = rational_from_json(cj.at("threshold"));
        c.greater = cj.at("greater").get<bool>();
        m.certs.push_back(std::move(c));
    }
    return m;
}

Json dominating_to_json(const DominatingMilestones& m, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "dominating_milestones";
    j["requested"] = m.requested;
    j["shortfall"] = m.shortfall();
    j["indices"] = m.indices;
    Json certs = Json::array();
    for (const auto& c : m.certs) {
        Json cj;
        cj["lo"] = c.lo;
        cj["hi"] = c.hi;
        cj["block_sum"] = rational_pair_json(c.block_sum);
        cj["prefix_abs"] = rational_pair_json(c.prefix_abs);
        certs.push_back(std::move(cj));
    }
    j["certificates"] = std::move(certs);
    return j;
}

Json block_partition_to_json(const BlockPartition& p, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "block_partition";
    j["block_base"] = p.base.str();
    Json blocks = Json::array();
    for (size_t k = 0; k < p.count(); ++k) {
        Json bj;
        bj["k"] = k + 1;
        bj["lo"] = p.blocks[k].first;
        bj["hi"] = p.blocks[k].second;
        bj["abs_sum"] = rational_pair_json(p.abs_sums[k]);
        bj["next_abs"] = rational_pair_json(p.next_abs[k]);
        blocks.push_back(std::move(bj));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

BlockPartition block_partition_from_json(const Json& j) {
    BlockPartition p;
    p.base = Rational::from_string(j.at("block_base").get<std::string>());
    for (const auto& bj : j.at("blocks")) {
        p.blocks.emplace_back(bj.at("lo").get<uint64_t>(), bj.at("hi").get<uint64_t>());
        p.abs_sums.push_back(rational_from_json(bj.at("abs_sum")));
        p.next_abs.push_back(rational_from_json(bj.at("next_abs")));
    }
    return p;
}

Json rs_sequence_to_json(const RSSequence& seq, const RunConfig& cfg, uint64_t max_block_width) {
    Json j = cfg.to_json();
    j["kind"] = "rs_sequence";
    j["description"] = seq.description();
    j["r"] = seq.r().str();
    j["s"] = seq.s().str();
    Json blocks = Json::array();
    for (size_t k = 1; k <= seq.block_count(); ++k) {
        const RSBlock& blk = seq.block(k);
        if (!blk.empty() && blk.max_elem() - blk.min_elem() + 1 > max_block_width)
            throw Error("rs_sequence_to_json: block " + std::to_string(k) +
                        " is too wide to materialize");
        Json bj;
        bj["I"] = Json::array({blk.min_elem(), blk.max_elem()});
        Json belems = Json::array();
        Json terms = Json::object();
        blk.for_each([&](uint64_t n) {
            if (blk.b.contains(n)) belems.push_back(n);
            terms[std::to_string(n)] = rational_pair_json(seq.x(n));
        });
        bj["B"] = std::move(belems);
        bj["x"] = std::move(terms);
        blocks.push_back(std::move(bj));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

Json rs_audit_to_json(const RSAudit& a, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "rs_audit";
    j["tol"] = a.tol.str();
    j["tail_start"] = a.tail_start;
    j["passes"] = a.passes;
    if (a.first_failing_block) j["first_failing_block"] = *a.first_failing_block;
    Json rows = Json::array();
    for (const auto& r : a.rows) {
        Json rj;
        rj["k"] = r.k;
        rj["b_sum"] = r.b_sum.str();
        rj["comp_sum"] = r.comp_sum.str();
        rj["b_dev"] = r.b_dev.str();
        rj["comp_dev"] = r.comp_dev.str();
        rj["pass"] = r.pass;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    return j;
}

Json split_witness_to_json(const SplitWitness& w, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "split_witness";
    j["tol"] = w.tol.str();
    j["min_blocks"] = w.min_blocks;
    j["is_witness"] = w.is_witness;
    j["E"] = w.E;
    Json rows = Json::array();
    for (const auto& r : w.rows) {
        Json rj;
        rj["k"] = r.k;
        rj["d_b_sum"] = r.d_b_sum.str();
        rj["b_dev"] = r.b_dev.str();
        rj["d_comp_sum"] = r.d_comp_sum.str();
        rj["exact_equality"] = r.exact_equality;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    return j;
}

Json osc_witness_report_to_json(const OscWitnessReport& r, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "oscillation_witness_report";
    j["passing_blocks"] = r.passing;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json rj;
        rj["k"] = row.k;
        rj["pass"] = row.pass;
        rj["x_p_odd"] = row.x_p_odd.str();
        rj["x_n_even"] = row.x_n_even.str();
        rj["x_n_odd"] = row.x_n_odd.str();
        rj["x_p_even"] = row.x_p_even.str();
        rj["a_p_odd"] = row.a_p_odd.str();
        rj["a_n_even"] = row.a_n_even.str();
        rj["a_n_odd"] = row.a_n_odd.str();
        rj["a_p_even"] = row.a_p_even.str();
        rj["up_total"] = row.up_total.str();
        rj["down_total"] = row.down_total.str();
        rj["prefix_abs"] = row.prefix_abs.str();
        rj["prefix_cap"] = row.prefix_cap.str();
        rj["trace_up"] = row.trace_up.str();
        rj["trace_down"] = row.trace_down.str();
        rj["up_index"] = row.up_index;
        rj["down_index"] = row.down_index;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    j["verdict"] = verdict_to_json(r.verdict);
    return j;
}

Json updown_to_json(const UpDownReport& r, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "up_down";
    j["bound"] = r.bound.str();
    j["tail_slack"] = r.tail_slack.str();
    j["comp_threshold"] = r.comp_threshold.str();
    if (r.a_cross_index) {
        j["a_cross_index"] = *r.a_cross_index;
        j["a_cross_value"] = r.a_cross_value.str();
    }
    if (r.comp_cross_index) {
        j["comp_cross_index"] = *r.comp_cross_index;
        j["comp_cross_value"] = r.comp_cross_value.str();
    }
    j["comp_never_moves"] = r.comp_never_moves;
    j["partition_identity_ok"] = r.partition_identity_ok;
    return j;
}

Json oscillator_to_json(const OscillatorResult& r, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "oscillator";
    j["shortfall"] = r.shortfall;
    j["members"] = r.members;
    Json certs = Json::array();
    for (const auto& c : r.certs) {
        Json cj;
        cj["target"] = c.target.str();
        cj["reached_at"] = c.reached_at;
        cj["value"] = c.value.str();
        certs.push_back(std::move(cj));
    }
    j["certificates"] = std::move(certs);
    return j;
}

Json inf_report_to_json(const InfReport& r, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "inf_experiment";
    j["samples"] = r.samples;
    j["depth"] = r.depth;
    j["threshold"] = r.threshold.str();
    j["exceed_count"] = r.exceed_count;
    j["flip_below_count"] = r.flip_below_count;
    j["pairing_violations"] = r.pairing_violations;
    j["exceed_fraction"] = float_repr(r.exceed_fraction);
    return j;
}

Json bound_check_to_json(const BoundCheckReport& r, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "kspace_bound_check";
    j["samples"] = r.samples;
    j["depth"] = r.depth;
    j["prefixes_checked"] = r.prefixes_checked;
    j["violations"] = r.violations;
    return j;
}

Json freq_report_to_json(const FreqReport& r, const RunConfig& cfg) {
    Json j = cfg.to_json();
    j["kind"] = "divergence_frequency";
    j["trials"] = r.trials;
    j["mc_horizon"] = r.horizon;
    j["escape"] = r.escape.str();
    j["fraction"] = float_repr(r.fraction);
    j["endpoint_fraction"] = float_repr(r.endpoint_fraction);
    j["stderr"] = float_repr(r.stderr_fraction);
    j["chebyshev_bound"] = float_repr(r.chebyshev_bound);
    j["endpoint_mean"] = float_repr(r.endpoint_mean);
    j["endpoint_variance"] = float_repr(r.endpoint_variance);
    j["exact_variance"] = float_repr(r.exact_variance);
    return j;
}

} // namespace serieslab
