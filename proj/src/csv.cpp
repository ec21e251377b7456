#include "ptwell/csv.hpp"

#include <cstdio>
#include <cstring>

namespace ptwell {

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  // canonicalize the exponent: strip '+' and leading zeros ("e+00" -> "e0", "e-05" -> "e-5")
  std::string s(buf);
  auto e = s.find('e');
  std::string mant = s.substr(0, e);
  std::string exp = s.substr(e + 1);
  bool neg = false;
  size_t i = 0;
  if (exp[i] == '+') {
    ++i;
  } else if (exp[i] == '-') {
    neg = true;
    ++i;
  }
  while (i + 1 < exp.size() && exp[i] == '0') ++i;
  return mant + "e" + (neg ? "-" : "") + exp.substr(i);
}

std::string provenance_line(const std::string& command, const std::string& flags) {
  std::string s = "# ptwell ";
  s += kVersion;
  s += ' ';
  s += command;
  if (!flags.empty()) {
    s += ' ';
    s += flags;
  }
  return s;
}

}  // namespace ptwell
