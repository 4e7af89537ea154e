#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sketchrec/geometry.hpp"

namespace sketchrec {

using StrokeId = std::int64_t;

/// Pixels captured between one pointer-down and the following pointer-up.
struct Stroke {
  StrokeId id = 0;
  std::vector<Point> points;

  friend bool operator==(const Stroke&, const Stroke&) = default;
};

struct CanvasSize {
  Coord width = 0;
  Coord height = 0;

  friend bool operator==(const CanvasSize&, const CanvasSize&) = default;
};

struct SketchDocument {
  std::vector<Stroke> strokes;
  std::optional<CanvasSize> canvas;

  friend bool operator==(const SketchDocument&, const SketchDocument&) = default;
};

/// Drops consecutive repeated points. Idempotent.
Stroke dedup_points(Stroke stroke);

/// Throws ValidationError unless stroke ids are positive and unique and
/// every stroke has at least one point.
void validate_document(const SketchDocument& document);

/// Parses the sketch file format:
///   {"strokes": [{"id": 1, "points": [[x, y], ...]}, ...], "canvas": [w, h]}
/// Syntax errors raise ParseError with line/column; schema violations
/// (fractional coordinates, missing keys, duplicate ids) raise ValidationError.
SketchDocument parse_document(std::string_view text);

/// Same as parse_document but starting from an already-parsed JSON value.
SketchDocument document_from_json(const nlohmann::json& value);

nlohmann::json document_to_json(const SketchDocument& document);
std::string serialize_document(const SketchDocument& document);

SketchDocument load_document(const std::string& path);

} // namespace sketchrec
