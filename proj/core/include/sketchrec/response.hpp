#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "sketchrec/recognizer.hpp"
#include "sketchrec/segmentation.hpp"
#include "sketchrec/shape_dsl.hpp"
#include "sketchrec/stroke.hpp"

namespace sketchrec {

inline constexpr const char* kUndefined = "Undefined";

/// {"results": [{stroke_id, domain, shape, properties, beautified?,
///               segments: {raw, merged}, candidates}]}
/// `beautified` is absent exactly when domain and shape are "Undefined".
nlohmann::json recognize_response(const SketchDocument& document, const DomainLibrary& library,
                                  const SegmentationConfig& cfg = {});

/// {"domains": [{"name": ..., "shapes": [...]}]}
nlohmann::json domains_response(const DomainLibrary& library);

/// "stroke <id>: <domain>/<shape> [properties]" or "stroke <id>: Undefined".
std::string format_result_line(const RecognitionResult& result);

/// Canonical serialization shared by the CLI and the HTTP service.
std::string dump_json(const nlohmann::json& value);

} // namespace sketchrec
