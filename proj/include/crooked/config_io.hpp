#pragma once

#include <string>

#include "crooked/affine_schottky.hpp"

namespace crooked {

/// Thrown on malformed JSON or schema violations; carries position context
/// from the parser where available.
struct ConfigParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Load a configuration from JSON.  Either "generators" + "half_spaces" are
/// given explicitly, or "intervals" + "half_spaces" (vertices) are given and
/// the generators are built from the interval pairing.
AffineSchottkyConfig load_config(const std::string& path);
AffineSchottkyConfig parse_config(const std::string& json_text);

/// Serialize with round-trip precision.
std::string config_to_json(const AffineSchottkyConfig& cfg);
void save_config(const AffineSchottkyConfig& cfg, const std::string& path);

}  // namespace crooked
