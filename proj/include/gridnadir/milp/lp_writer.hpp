#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>

#include "gridnadir/milp/model.hpp"

namespace gridnadir::milp {

/// Writes CPLEX-LP-format text with deterministic insertion ordering. Names
/// that the format cannot carry are sanitized; when that happens a reversible
/// mapping table lands next to the LP file as <stem>.names.json. The
/// objective constant travels as a comment (the format has no slot for it)
/// and is re-applied when solutions are parsed. Returns the sanitized ->
/// original variable-name map used when parsing solutions back.
std::unordered_map<std::string, std::string> write_lp(const MilpModel& model,
                                                      const std::filesystem::path& destination);

/// LP-safe name plus whether it had to change.
std::pair<std::string, bool> sanitize_lp_name(const std::string& name);

}  // namespace gridnadir::milp
