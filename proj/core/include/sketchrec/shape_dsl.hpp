#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sketchrec/errors.hpp"

namespace sketchrec {

// Domain description language.
//
//   library    := domain+
//   domain     := "domain" IDENT "{" shape+ "}"
//   shape      := "shape" IDENT "{"
//                   "lines" INT [".." INT] ";"
//                   "constraints" "{" constraint* "}"
//                   ["display" STRING ";"]
//                   ["report" IDENT ("," IDENT)* ";"]
//                 "}"
//   constraint := ( "closed"
//                 | "perpendicular" INT INT
//                 | "parallel" INT INT
//                 | "equal_length" INT INT
//                 | "angle" INT INT NUMBER
//                 | "length_ratio" INT INT NUMBER ) ["tol" NUMBER] ";"
//
// `#` starts a comment that runs to the end of the line. Line indices are
// 1-based in drawing order.

namespace tolerance {
inline constexpr double kAngleDeg = 15.0;
inline constexpr double kLengthRatio = 0.2;
inline constexpr double kClosedGapPx = 10.0;
inline constexpr double kClosedGapFraction = 0.1;
} // namespace tolerance

/// Closure gap must be <= max(gap_px, gap_fraction * bbox diagonal).
/// `closed tol T;` sets gap_px = T when T >= 1, otherwise gap_fraction = T;
/// the other component becomes 0.
struct Closed {
  double gap_px = tolerance::kClosedGapPx;
  double gap_fraction = tolerance::kClosedGapFraction;
  friend bool operator==(const Closed&, const Closed&) = default;
};

struct Perpendicular {
  int first = 1;
  int second = 2;
  double tol_deg = tolerance::kAngleDeg;
  friend bool operator==(const Perpendicular&, const Perpendicular&) = default;
};

struct Parallel {
  int first = 1;
  int second = 2;
  double tol_deg = tolerance::kAngleDeg;
  friend bool operator==(const Parallel&, const Parallel&) = default;
};

/// 1 - min/max of the two lengths must be <= tol_ratio.
struct EqualLength {
  int first = 1;
  int second = 2;
  double tol_ratio = tolerance::kLengthRatio;
  friend bool operator==(const EqualLength&, const EqualLength&) = default;
};

/// Angle between the reversed first line and the second line, i.e. the
/// interior angle at their shared vertex when the lines are consecutive.
struct AngleBetween {
  int first = 1;
  int second = 2;
  double degrees = 90.0;
  double tol_deg = tolerance::kAngleDeg;
  friend bool operator==(const AngleBetween&, const AngleBetween&) = default;
};

/// |len(first) / len(second) / ratio - 1| must be <= tol_ratio.
struct LengthRatio {
  int first = 1;
  int second = 2;
  double ratio = 1.0;
  double tol_ratio = tolerance::kLengthRatio;
  friend bool operator==(const LengthRatio&, const LengthRatio&) = default;
};

using Constraint = std::variant<Closed, Perpendicular, Parallel, EqualLength, AngleBetween, LengthRatio>;

enum class ReportProperty { kAngles, kLengths, kClosureGap };

std::string_view property_name(ReportProperty p);

struct LineRange {
  int min = 1;
  int max = 1;
  bool contains(int n) const { return n >= min && n <= max; }
  friend bool operator==(const LineRange&, const LineRange&) = default;
};

struct ShapeSpec {
  std::string name;
  LineRange lines;
  std::vector<Constraint> constraints;
  std::string display_label;
  std::vector<ReportProperty> report;

  bool is_closed() const;
  friend bool operator==(const ShapeSpec&, const ShapeSpec&) = default;
};

struct DomainSpec {
  std::string name;
  std::vector<ShapeSpec> shapes;
  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

struct DomainLibrary {
  std::vector<DomainSpec> domains;
  friend bool operator==(const DomainLibrary&, const DomainLibrary&) = default;
};

/// Error raised while reading DSL text. Always carries a line number.
class DslError : public ParseError {
public:
  enum class Kind { kSyntax, kVocabulary, kValidation };

  DslError(Kind kind, const std::string& message, std::size_t line, std::size_t column);
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Parses one or more domains. Omitted tolerances and display labels are
/// filled in with their defaults so the result carries no hidden state.
DomainLibrary parse_library(std::string_view text);

/// Parses a file that must contain exactly one domain.
DomainSpec parse_domain_file(std::string_view text);

/// Canonical text form; parse_library(render_library(x)) == x.
std::string render_library(const DomainLibrary& library);
std::string render_domain(const DomainSpec& domain);

struct Diagnostic {
  std::string path;  // "Domain/Shape" or "Domain"
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Empty iff every library invariant holds.
std::vector<Diagnostic> validate(const DomainLibrary& library);

/// Bundled Flowchart and Mathematics domains.
const DomainLibrary& builtin_library();
std::string_view builtin_library_source();

/// Parses every `*.dsl` file in `dir` (sorted by file name) into one
/// library and validates it; throws ValidationError listing diagnostics.
DomainLibrary load_library_dir(const std::filesystem::path& dir);

} // namespace sketchrec
