#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "serieslab/rs_seq.hpp"
#include "serieslab/stochastic.hpp"
#include "serieslab/trace.hpp"
#include "serieslab/witnesses.hpp"

namespace serieslab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "serieslab/1";

// Common run parameters echoed into every output file.
struct RunConfig {
    uint64_t horizon = 1'000'000;
    Rational tol = Rational(1, 8);
    uint64_t seed = 0;
    std::string format = "csv"; // csv | json
    uint64_t scan_bound = kDefaultScanBound;
    Rational base = Rational(5);
    std::string command; // echoed verbatim

    Json to_json() const;
};

// Rationals serialize as "p" / "p/q" strings, or as exact [num, den] string
// pairs where the format calls for explicit numerator/denominator columns.
// The reader accepts both.
Json rational_json(const Rational& r);
Json rational_pair_json(const Rational& r);
Rational rational_from_json(const Json& j);

// Trace formats. CSV columns: m,sum_num,sum_den,sum_float; traces longer than
// compact_threshold rows switch to the compact form sum_num,sum_den,sum_float
// with m implicit in the row number. Config lines are '#'-prefixed.
void trace_to_csv(std::ostream& os, const PartialSumTrace& t, const RunConfig& cfg,
                  uint64_t compact_threshold = 100'000);
Json trace_to_json(const PartialSumTrace& t, const RunConfig& cfg);
// Reads back sums from the JSON form (set descriptions are informational only).
std::vector<Rational> trace_sums_from_json(const Json& j);

Json verdict_to_json(const DivergenceVerdict& v);
DivergenceVerdict verdict_from_json(const Json& j);

Json milestones_to_json(const Milestones& m, const RunConfig& cfg);
Milestones milestones_from_json(const Json& j);

Json dominating_to_json(const DominatingMilestones& m, const RunConfig& cfg);

Json block_partition_to_json(const BlockPartition& p, const RunConfig& cfg);
BlockPartition block_partition_from_json(const Json& j);

// Serializes blocks with materialized element/B lists; refuses blocks wider
// than max_block_width to keep files sane.
Json rs_sequence_to_json(const RSSequence& seq, const RunConfig& cfg,
                         uint64_t max_block_width = 100'000);
Json rs_audit_to_json(const RSAudit& a, const RunConfig& cfg);
Json split_witness_to_json(const SplitWitness& w, const RunConfig& cfg);
Json osc_witness_report_to_json(const OscWitnessReport& r, const RunConfig& cfg);

Json updown_to_json(const UpDownReport& r, const RunConfig& cfg);
Json oscillator_to_json(const OscillatorResult& r, const RunConfig& cfg);

Json inf_report_to_json(const InfReport& r, const RunConfig& cfg);
Json freq_report_to_json(const FreqReport& r, const RunConfig& cfg);
Json bound_check_to_json(const BoundCheckReport& r, const RunConfig& cfg);

// Deterministic float formatting (%.17g) for CSV columns.
std::string float_repr(double v);

} // namespace serieslab
