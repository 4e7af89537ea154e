#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sketchrec/errors.hpp"
#include "sketchrec/stroke.hpp"

namespace sketchrec {

namespace {

using nlohmann::json;

// nlohmann reports a byte offset; turn it into line/column.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i + 1 < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Coord integer_coord(const json& v, const std::string& where) {
  if (!v.is_number_integer())
    throw ValidationError(where + ": expected an integer, got " + v.dump());
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw ValidationError(where + ": integer out of range");
  return v.get<Coord>();
}

Point point_from_json(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2)
    throw ValidationError(where + ": point must be a two-element array [x, y]");
  return {integer_coord(v[0], where + ".x"), integer_coord(v[1], where + ".y")};
}

} // namespace

SketchDocument document_from_json(const json& value) {
  if (!value.is_object())
    throw ValidationError("sketch document must be a JSON object");
  const auto strokes = value.find("strokes");
  if (strokes == value.end())
    throw ValidationError("missing key \"strokes\"");
  if (!strokes->is_array())
    throw ValidationError("\"strokes\" must be an array");

  SketchDocument doc;
  doc.strokes.reserve(strokes->size());
  for (std::size_t i = 0; i < strokes->size(); ++i) {
    const json& s = (*strokes)[i];
    const std::string where = "strokes[" + std::to_string(i) + "]";
    if (!s.is_object())
      throw ValidationError(where + " must be an object");
    const auto id = s.find("id");
    const auto points = s.find("points");
    if (id == s.end())
      throw ValidationError(where + ": missing key \"id\"");
    if (points == s.end() || !points->is_array())
      throw ValidationError(where + ": \"points\" must be an array");

    Stroke stroke;
    stroke.id = integer_coord(*id, where + ".id");
    stroke.points.reserve(points->size());
    for (std::size_t k = 0; k < points->size(); ++k)
      stroke.points.push_back(point_from_json((*points)[k], where + ".points[" + std::to_string(k) + "]"));
    doc.strokes.push_back(std::move(stroke));
  }

  if (const auto canvas = value.find("canvas"); canvas != value.end() && !canvas->is_null()) {
    const Point wh = point_from_json(*canvas, "canvas");
    doc.canvas = CanvasSize{wh.x, wh.y};
  }

  validate_document(doc);
  return doc;
}

SketchDocument parse_document(std::string_view text) {
  json value;
  try {
    value = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte);
    std::string what = e.what();
    // Strip nlohmann's "[json.exception.parse_error.101] " prefix.
    if (auto pos = what.find("] "); pos != std::string::npos)
      what = what.substr(pos + 2);
    throw ParseError(what, line, column);
  }
  return document_from_json(value);
}

json document_to_json(const SketchDocument& document) {
  json strokes = json::array();
  for (const auto& s : document.strokes) {
    json points = json::array();
    for (const auto& p : s.points)
      points.push_back({p.x, p.y});
    strokes.push_back({{"id", s.id}, {"points", std::move(points)}});
  }
  json out = {{"strokes", std::move(strokes)}};
  if (document.canvas)
    out["canvas"] = {document.canvas->width, document.canvas->height};
  return out;
}

std::string serialize_document(const SketchDocument& document) {
  return document_to_json(document).dump(2) + "\n";
}

SketchDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open sketch file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

} // namespace sketchrec
