#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gch/dynamics.hpp"

namespace gch {

/// Flat `key = value` lines, `#` starts a comment. Required keys: family, k,
/// n, t_end, and amplitude unless family = custom (which takes `samples`, a
/// comma- or space-separated list). Optional keys with defaults: cfl,
/// dt_max, dt_min, blowup_threshold, rhs_form, record_stride, x0, out_dir.
/// Unknown, duplicate, missing or mistyped keys raise ConfigError naming the
/// key and line.
SimConfig parse_config_text(std::string_view text);
SimConfig parse_config(const std::filesystem::path& path);

/// Inverse of parse_config_text for the keys that differ from defaults or
/// are required.
std::string format_config(const SimConfig& cfg);

}  // namespace gch
