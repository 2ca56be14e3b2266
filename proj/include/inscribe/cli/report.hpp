#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "inscribe/frame.hpp"
#include "inscribe/models.hpp"
#include "inscribe/oracle.hpp"
#include "inscribe/solutions.hpp"

namespace inscribe::cli {

using Json = nlohmann::ordered_json;

/// Parses a configuration document holding exactly one of "lines" (four
/// {"a","b","c"} objects in cyclic vertex order) or "canonical" ({"mA",
/// "bA", "mB", "mC", "mD"}). Throws MalformedInput on schema violations and
/// the config module's errors on invalid geometry.
Normalized parse_config(const std::string& text, double tol = kDefaultTol);
Normalized load_config(const std::string& path, double tol = kDefaultTol);

Json to_json(const CanonicalConfig& cfg);
Json to_json(const NormalizationRecord& record);
Json to_json(const Parallelogram& p);
Json frame_json(const Frame& frame);
Json analysis_json(const Normalized& normalized, const Frame& frame, const LocusReport& locus);
Json locus_json(const LocusReport& locus);

/// %.17g
std::string format_double(double x);

std::string solution_csv(const std::vector<SolutionSample>& samples);
std::string oracle_csv(const std::vector<OracleHit>& hits);

/// Writes to a sibling temporary file, then renames it over path.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace inscribe::cli
