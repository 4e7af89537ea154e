#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sketchrec/geometry.hpp"
#include "sketchrec/segmentation.hpp"
#include "sketchrec/shape_dsl.hpp"
#include "sketchrec/stroke.hpp"

namespace sketchrec {

/// Geometric measurements of a chained polyline.
struct FeatureVector {
  int segment_count = 0;
  std::vector<Vec2> edges;           // end - start of each segment
  std::vector<double> lengths;       // pixels
  std::vector<double> turn_angles;   // interior angle at each shared vertex, degrees
  double wrap_angle = 0.0;           // interior angle between last and first segment
  double closure_gap = 0.0;          // last end -> first start
  double bbox_diagonal = 0.0;
};

FeatureVector extract_features(std::span<const Segment> segments);

/// Same measurements for a real-valued chain of n + 1 vertices (n lines).
FeatureVector extract_features(std::span<const Vec2> chain);

struct ConstraintResult {
  bool satisfied = false;
  double slack = 0.0;  // measured deviation / tolerance; 0 at the ideal value
};

/// Throws GeometryError when a line index exceeds the segment count.
ConstraintResult eval_constraint(const Constraint& c, const FeatureVector& f);

using PropertyMap = std::map<std::string, std::vector<double>>;

/// Properties listed in `spec.report`. Angles include the wraparound
/// angle for closed shapes.
PropertyMap report_properties(const ShapeSpec& spec, const FeatureVector& f);

/// Which primitive decomposition of a stroke an interpretation was built on.
enum class Decomposition { kMerged, kRaw };

struct Interpretation {
  std::string domain_name;
  std::string shape_name;
  int primitive_count = 0;
  PropertyMap properties;
  double residual = 0.0;

  std::size_t domain_index = 0;
  std::size_t shape_index = 0;
  Decomposition decomposition = Decomposition::kMerged;
};

/// An interpretation iff the segment count is within spec.lines and every
/// constraint holds. Domain fields are left empty.
std::optional<Interpretation> match_shape(const ShapeSpec& spec, std::span<const Segment> segments);

struct RecognitionResult {
  StrokeId stroke_id = 0;
  std::optional<Interpretation> chosen;  // nullopt means Undefined
  std::vector<Interpretation> candidates;
  std::vector<Segment> raw_segments;
  std::vector<Segment> merged_segments;
  std::string error;  // segmentation failure, if any

  std::span<const Segment> segments_of(const Interpretation& interp) const;
};

/// Picks the candidate with the most primitives; ties go to the earliest
/// library entry, then to the smallest residual. Null when empty.
const Interpretation* select_interpretation(std::span<const Interpretation> candidates);

/// Segments the stroke and evaluates every shape of every domain against
/// both its merged and (when different) raw segment lists.
RecognitionResult recognize_stroke(const Stroke& stroke, const DomainLibrary& library,
                                   const SegmentationConfig& cfg = {});

std::vector<RecognitionResult> recognize(const SketchDocument& document, const DomainLibrary& library,
                                         const SegmentationConfig& cfg = {});

const ShapeSpec& spec_of(const DomainLibrary& library, const Interpretation& interp);

} // namespace sketchrec
