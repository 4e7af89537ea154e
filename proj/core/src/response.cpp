#include "sketchrec/response.hpp"

#include <cstdio>

#include "sketchrec/beautifier.hpp"

namespace sketchrec {

namespace {

using nlohmann::json;

json segments_json(std::span<const Segment> segments) {
  json out = json::array();
  for (const auto& s : segments)
    out.push_back({s.start.x, s.start.y, s.end.x, s.end.y});
  return out;
}

json properties_json(const PropertyMap& props) {
  json out = json::object();
  for (const auto& [name, values] : props)
    out[name] = values;
  return out;
}

std::string fixed1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

} // namespace

json recognize_response(const SketchDocument& document, const DomainLibrary& library, const SegmentationConfig& cfg) {
  json results = json::array();
  for (const auto& r : recognize(document, library, cfg)) {
    json rec;
    rec["stroke_id"] = r.stroke_id;
    if (r.chosen) {
      const ShapeSpec& spec = spec_of(library, *r.chosen);
      const BeautifiedShape shape = beautify(*r.chosen, r.segments_of(*r.chosen), spec);
      rec["domain"] = r.chosen->domain_name;
      rec["shape"] = r.chosen->shape_name;
      rec["label"] = spec.display_label;
      rec["properties"] = properties_json(r.chosen->properties);
      json vertices = json::array();
      for (const Vec2& v : shape.vertices)
        vertices.push_back({v.x, v.y});
      rec["beautified"] = {{"vertices", std::move(vertices)},
                           {"closed", shape.closed},
                           {"degraded", shape.degraded},
                           {"properties", properties_json(shape.properties)}};
    } else {
      rec["domain"] = kUndefined;
      rec["shape"] = kUndefined;
      rec["properties"] = json::object();
    }
    rec["segments"] = {{"raw", segments_json(r.raw_segments)}, {"merged", segments_json(r.merged_segments)}};
    json candidates = json::array();
    for (const auto& c : r.candidates)
      candidates.push_back({{"domain", c.domain_name},
                            {"shape", c.shape_name},
                            {"primitive_count", c.primitive_count},
                            {"residual", c.residual}});
    rec["candidates"] = std::move(candidates);
    if (!r.error.empty())
      rec["error"] = r.error;
    results.push_back(std::move(rec));
  }
  return {{"results", std::move(results)}};
}

json domains_response(const DomainLibrary& library) {
  json domains = json::array();
  for (const auto& d : library.domains) {
    json shapes = json::array();
    for (const auto& s : d.shapes)
      shapes.push_back(s.name);
    domains.push_back({{"name", d.name}, {"shapes", std::move(shapes)}});
  }
  return {{"domains", std::move(domains)}};
}

std::string format_result_line(const RecognitionResult& result) {
  std::string line = "stroke " + std::to_string(result.stroke_id) + ": ";
  if (!result.chosen)
    return line + kUndefined;
  line += result.chosen->domain_name + "/" + result.chosen->shape_name;
  for (const auto& [name, values] : result.chosen->properties) {
    line += " " + name + "=[";
    for (std::size_t i = 0; i < values.size(); ++i)
      line += (i ? ", " : "") + fixed1(values[i]);
    line += "]";
  }
  return line;
}

std::string dump_json(const json& value) { return value.dump(2) + "\n"; }

} // namespace sketchrec
