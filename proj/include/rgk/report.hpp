#pragma once

// File formats: summary JSON, run manifest, raw per-sample CSV, plot-data CSV.

#include "rgk/montecarlo.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace rgk {

inline constexpr const char* kToolName = "rgk";
inline constexpr const char* kToolVersion = "0.1.0";
// Bump whenever a summary field changes meaning.
inline constexpr const char* kSummarySchema = "rgk-summary/1";

using Json = nlohmann::ordered_json;

Json model_to_json(const ModelSpec& m);
ModelSpec model_from_json(const Json& j);
Json config_to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j);

Json tallies_to_json(const TallySheet& t);
TallySheet tallies_from_json(const Json& j);
Json cis_to_json(const CiReport& r);
Json comparison_to_json(const std::vector<Comparison>& cs);

// SHA-1 of "blob <size>\0" + content, as git computes object ids.
std::string git_blob_sha1(const std::string& content);

// {tool, version, config, wall_time_seconds, outputs{...}}.
Json make_manifest(const RunConfig& config, double wall_seconds, const Json& output_hashes);

// {schema_version, manifest, tallies, cis, theory_comparison}. The manifest's
// outputs include the hash of the other three sections.
Json make_summary(const RunConfig& config, const RunResult& result, const Json& extra_hashes = Json::object());

// Raw CSV: header names the per-prime columns as sylow_<p>.
void write_raw_header(std::ostream& out, const std::vector<std::uint64_t>& primes);
void write_raw_row(std::ostream& out, const RawRecord& rec);

struct PlotRow {
    std::string group_label;
    double empirical_freq = 0;
    double ci_lo = 0;
    double ci_hi = 0;
    std::optional<double> theory_value;
    TheoryStatus theory_status = TheoryStatus::open;
};

// Sylow p histogram of a summary, ordered by group order then partition.
// Throws InvalidInput if the run did not profile p.
std::vector<PlotRow> sylow_plot_rows(const Json& summary, std::uint64_t p);
void write_plot_csv(std::ostream& out, const std::vector<PlotRow>& rows);

// Single-matrix report used by `inspect`.
Json invariant_to_json(const KInvariant& inv);
std::string invariant_text(const KInvariant& inv);

} // namespace rgk
