#pragma once

#include <json.hpp>
#include <string>

namespace adelic {

enum class DescriptorFormat { Json, Toml };

/// Parsed, schema-validated problem descriptor. Unknown keys are rejected
/// with a diagnostic naming the offending path.
struct ProblemDescriptor {
    nlohmann::json doc; // normalized JSON document
    std::string command() const { return doc.at("command").get<std::string>(); }
};

ProblemDescriptor parse_descriptor(const std::string& text, DescriptorFormat format);

/// Result of running a descriptor. Grid commands (nevanlinna, family-height)
/// emit CSV; everything else emits JSON.
struct Report {
    nlohmann::json document; // command echo, inputs echo, results, warnings, version stamp
    std::string csv;         // nonempty for grid commands
    bool is_csv = false;
};

Report run(const ProblemDescriptor& descriptor);

/// Serializes the report: floats carry 15 significant digits, rationals are
/// "a/b" strings; byte-identical for identical descriptor and configuration.
std::string emit(const Report& report);

/// Converts the TOML subset used by descriptors (tables, arrays of tables,
/// key = string/number/boolean/array) into JSON.
nlohmann::json toml_to_json(const std::string& text);

extern const char* kVersionStamp;

} // namespace adelic
