#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hesslab/garding.hpp"
#include "hesslab/lelong.hpp"
#include "hesslab/slicing.hpp"

namespace hesslab {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "hesslab 0.1.0";

// ---- JSON encoding ---------------------------------------------------------

json complex_to_json(const cplx& c);
json points_to_json(std::span<const cplx> v);
json to_json(const RegionLabel& label);
json to_json(const RegionRow& row);
json to_json(const BoundaryCurve& curve);
json to_json(const LadderPoint& pt);
json to_json(const RadiusLadder& ladder);
json to_json(const LelongEstimate& est);
json to_json(const DirectionalEstimate& est);
json to_json(const MonotonicityReport& rep);
json to_json(const SliceIdentityReport& rep);
json to_json(const PointIdentityReport& rep);
json to_json(const IntegrabilityEvidence& ev);

// ---- CSV -------------------------------------------------------------------

// Rows of already-formatted cells; the writer only joins and terminates.
std::string csv_render(const std::vector<std::vector<std::string>>& rows);
std::string format_double(double v);  // shortest round-trip (%.17g trimmed)

std::string table1_csv(const std::vector<RegionRow>& rows);
std::string ladder_csv(const LelongEstimate& est);
std::string directional_csv(const DirectionalEstimate& est);
std::string boundaries_csv(const std::vector<BoundaryCurve>& curves);

// ---- Schema validation -----------------------------------------------------

// Subset of JSON Schema: type (string or list), properties, required, items,
// enum, const. Returns human-readable violations; empty means valid.
std::vector<std::string> schema_violations(const json& schema, const json& value);

// Schemas embedded at build time from the checked-in schemas/ directory,
// keyed by command name ("classify", "table1", ...).
const std::map<std::string, std::string>& embedded_schemas();

// Validate a payload against the embedded schema for `command`; throws
// std::runtime_error on violation (schema drift fails the suite).
void validate_payload(const std::string& command, const json& payload);

// ---- Files -----------------------------------------------------------------

void write_text_file(const std::string& path, const std::string& content);

}  // namespace hesslab
