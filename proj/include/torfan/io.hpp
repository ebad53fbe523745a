// JSON fan files: {"dim": n, "rays": [[..],..], "max_cones": [[..],..]} with
// 0-based ray indices. Parsing is strict: unknown keys and non-primitive rays
// are refused. Coordinates outside the int64 range travel as decimal strings.
#pragma once

#include <string>

#include "torfan/fan.hpp"

namespace torfan {

Fan parse_fan_text(const std::string& text);
Fan parse_fan(const std::string& path);

std::string serialize_fan_text(const Fan& fan);
void serialize_fan(const Fan& fan, const std::string& path);

}  // namespace torfan
