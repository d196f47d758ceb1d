#pragma once

#include <string>

namespace ccstack {

/// Serialize a double for machine-readable files (JSON, CSV): scientific
/// notation with 17 significant digits, round-trip exact.
std::string serialize_double(double value);

/// Format a double for human-readable output: %.17g (shortest form that
/// still round-trips).
std::string display_double(double value);

} // namespace ccstack
