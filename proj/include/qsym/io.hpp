#pragma once

#include <string>

#include "json.hpp"  // vendored nlohmann::json

#include "qsym/decouple.hpp"

namespace qsym {

using json = nlohmann::json;

// Group files: {"cyclic": n} | {"product": [spec, spec]} |
// {"name": str, "order": n, "mul": [[int]]}.
json group_to_json(const GroupPtr& g);
GroupPtr group_from_json(const json& j);

// CLI shorthand: "trivial", "cyclic:N", "product:cyclic:2,cyclic:3", or a
// path to a JSON group file.
GroupPtr parse_groupspec(const std::string& spec);

ModuleSpec module_from_string(const std::string& name, const GroupPtr& g);
std::string module_to_string(const ModuleSpec& m);

// Cocycle files: {"group":, "degree":, "module":, "values": [{"args": [...],
// "coord": [...], "angle": "p/q"}]}; omitted entries default to angle 0.
json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const json& j);

json fingerprint_to_json(const ClassFingerprint& f);
json cohomology_group_to_json(const CohomologyGroup& h);

// Symmetry files: chain spec + named builder, or explicit per-element gate
// lists {"support": [lo,hi], "matrix": [[re,im], ...]} (row-major).
json symmetry_to_json(const Symmetry& s);
Symmetry symmetry_from_json(const json& j);

json operator_to_json(const LocalOperator& op);

json anomaly_report_to_json(const AnomalyReport& r);
json obstruction_report_to_json(const ObstructionReport& r);
json mu_report_to_json(const MuReport& r);

void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

// 12 significant digits, the report printing convention.
std::string format_double(double v);

}  // namespace qsym
