#pragma once

// Plain-text fan interchange:
//
//   dim 3
//   rays
//   1 0 0
//   ...
//   cones
//   0 1 2
//   ...
//
// Ray indices are 0-based, blank lines are ignored and lines starting with
// '#' are comments.

#include <string>
#include <string_view>

#include "toric/fan.hpp"

namespace toric {

/// Throws ParseError with a line number on malformed input.
Fan parse_fan_text(std::string_view text);
/// Canonical rendering; parse_fan_text(emit_fan_text(f)) == f.
std::string emit_fan_text(const Fan& fan);
Fan read_fan_file(const std::string& path);

}  // namespace toric
