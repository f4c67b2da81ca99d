#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectra {

enum class ErrorKind {
  AxiomViolation,
  InvalidParameter,
  SizeBound,
  MixedRings,
  MixedSpectra,
  NotIdempotent,
  InvalidIdeal,
  NotRegular,
  NotProper,
  NotClosed,
  NotOpen,
  EmptyFamily,
  CycleDetected,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::SizeBound: return "SizeBound";
    case ErrorKind::MixedRings: return "MixedRings";
    case ErrorKind::MixedSpectra: return "MixedSpectra";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::InvalidIdeal: return "InvalidIdeal";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported through this type;
/// `kind()` is stable and is what callers (and the CLI exit codes) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace spectra
