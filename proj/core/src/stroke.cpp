#include "sketchrec/stroke.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "sketchrec/errors.hpp"

namespace sketchrec {

namespace {

std::string position_prefix(std::size_t line, std::size_t column) {
  if (line == 0)
    return {};
  std::string out = "line " + std::to_string(line);
  if (column != 0)
    out += ", column " + std::to_string(column);
  return out + ": ";
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(position_prefix(line, column) + message), detail_(message), line_(line), column_(column) {}

Stroke dedup_points(Stroke stroke) {
  auto last = std::unique(stroke.points.begin(), stroke.points.end());
  stroke.points.erase(last, stroke.points.end());
  return stroke;
}

void validate_document(const SketchDocument& document) {
  std::unordered_set<StrokeId> seen;
  for (const auto& stroke : document.strokes) {
    if (stroke.id <= 0)
      throw ValidationError("stroke id must be positive, got " + std::to_string(stroke.id));
    if (!seen.insert(stroke.id).second)
      throw ValidationError("duplicate stroke id " + std::to_string(stroke.id));
    if (stroke.points.empty())
      throw ValidationError("stroke " + std::to_string(stroke.id) + " has no points");
  }
  if (document.canvas && (document.canvas->width <= 0 || document.canvas->height <= 0))
    throw ValidationError("canvas dimensions must be positive");
}

} // namespace sketchrec
