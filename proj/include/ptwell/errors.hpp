#pragma once

#include <stdexcept>
#include <string>

namespace ptwell {

enum class Errc {
  MalformedLine,
  BadDomain,
  BadPosition,
  BadNumber,
  ZeroKappa,
  CalibrationFailed,
  NotARoot,
  OutOfDomain,
  SpecMismatch,
  NonPositiveWeight,
  DegenerateRoot,
  NoCoalescence,
  PoleAtKappa,
};

/// Library-wide exception carrying a machine-readable error kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::BadDomain: return "BadDomain";
    case Errc::BadPosition: return "BadPosition";
    case Errc::BadNumber: return "BadNumber";
    case Errc::ZeroKappa: return "ZeroKappa";
    case Errc::CalibrationFailed: return "CalibrationFailed";
    case Errc::NotARoot: return "NotARoot";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::DegenerateRoot: return "DegenerateRoot";
    case Errc::NoCoalescence: return "NoCoalescence";
    case Errc::PoleAtKappa: return "PoleAtKappa";
  }
  return "Unknown";
}

}  // namespace ptwell
