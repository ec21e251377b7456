#pragma once

#include <string>
#include <vector>

#include "ptwell/errors.hpp"

namespace ptwell {

/// An infinitely deep square well on (-1,1) decorated with PT-symmetric pairs of
/// imaginary point interactions: +i xi_l delta(x - a_l) - i xi_l delta(x + a_l).
/// Positions are strictly ordered, 0 < a_1 < ... < a_L < 1.  L = 0 is the bare well.
struct WellSpec {
  std::vector<double> positions;  // a_l, strictly increasing inside (0,1)
  std::vector<double> couplings;  // xi_l, any real (zeros retained)

  int count() const { return static_cast<int>(positions.size()); }
};

/// Parse the line-based potential-spec format:
///   '#' starts a comment, blank lines are skipped,
///   optional first directive "domain -1 1",
///   then "delta <a> <xi>" lines with strictly increasing a.
/// Throws Error with code MalformedLine / BadDomain / BadPosition / BadNumber.
WellSpec parse_well_spec(const std::string& text);

/// Render a WellSpec in the same format; parse(render(s)) == s field-for-field.
std::string render_well_spec(const WellSpec& spec);

/// Report every invariant violation (empty vector means the spec is valid).
std::vector<std::string> validate(const WellSpec& spec);

}  // namespace ptwell
