#pragma once

#include <string>

namespace ptwell {

inline constexpr const char* kVersion = "0.1.0";

/// Scientific notation with 17 significant digits (binary64 round-trips) and a
/// compact exponent: 1.5707963267948966e0, -2.5e-5, 0.0000000000000000e0.
std::string format_sci(double v);

/// First line of every output: "# ptwell <version> <command> <flags...>".
std::string provenance_line(const std::string& command, const std::string& flags);

}  // namespace ptwell
