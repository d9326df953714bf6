// Error types shared across the library. Validation failures carry the
// violated invariant and its measured magnitude so callers can report or
// filter without string parsing.
#pragma once

#include <stdexcept>
#include <string>

namespace complab {

enum class Violation {
  NotFinite,
  NotHermitian,
  BadTrace,
  NotPsd,
  BadNorm,
  NotUnitary,
  BadDetectorState,
  IncompleteSum,
  PositivityBound,
  ExcessDroppedMass,
  OutOfRange,
};

const char* violation_name(Violation v);

// One failed invariant: which one, how badly, and (where meaningful) the
// offending index, e.g. the effect number of a non-PSD POVM element.
struct ViolationReport {
  Violation kind;
  double magnitude = 0.0;
  int index = -1;

  std::string describe() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const ViolationReport& report);

  Violation kind() const { return report_.kind; }
  double magnitude() const { return report_.magnitude; }
  int index() const { return report_.index; }
  const ViolationReport& report() const { return report_; }

 private:
  ViolationReport report_;
};

class DimensionMismatch : public std::runtime_error {
 public:
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

class UnknownScenario : public std::runtime_error {
 public:
  explicit UnknownScenario(const std::string& name)
      : std::runtime_error("unknown scenario: " + name) {}
};

class IncompatibleEndpoints : public std::runtime_error {
 public:
  explicit IncompatibleEndpoints(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace complab
