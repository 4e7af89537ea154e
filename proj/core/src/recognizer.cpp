#include "sketchrec/recognizer.hpp"

#include <algorithm>
#include <limits>
#include <type_traits>

#include "sketchrec/errors.hpp"

namespace sketchrec {

FeatureVector extract_features(std::span<const Vec2> chain) {
  FeatureVector f;
  if (chain.size() < 2)
    return f;
  f.segment_count = static_cast<int>(chain.size()) - 1;
  f.edges.reserve(chain.size() - 1);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    f.edges.push_back(chain[i + 1] - chain[i]);
    f.lengths.push_back(norm(f.edges.back()));
  }
  for (std::size_t i = 0; i + 1 < f.edges.size(); ++i)
    f.turn_angles.push_back(angle_between_deg(-f.edges[i], f.edges[i + 1]));
  f.wrap_angle = angle_between_deg(-f.edges.back(), f.edges.front());
  f.closure_gap = distance(chain.back(), chain.front());

  Vec2 lo = chain.front();
  Vec2 hi = chain.front();
  for (const Vec2& p : chain) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  f.bbox_diagonal = distance(lo, hi);
  return f;
}

FeatureVector extract_features(std::span<const Segment> segments) {
  const auto chain = chain_vertices(segments);
  return extract_features(std::span<const Vec2>(chain));
}

namespace {

double normalized(double deviation, double tolerance) {
  return tolerance > 0.0 ? deviation / tolerance : deviation;
}

ConstraintResult judged(double deviation, double tolerance) {
  return {deviation <= tolerance, normalized(deviation, tolerance)};
}

// Acute angle between two undirected lines, in [0, 90].
double line_angle_deg(Vec2 a, Vec2 b) {
  const double t = angle_between_deg(a, b);
  return std::min(t, 180.0 - t);
}

} // namespace

ConstraintResult eval_constraint(const Constraint& constraint, const FeatureVector& f) {
  return std::visit(
      [&](const auto& c) -> ConstraintResult {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Closed>) {
          const double limit = std::max(c.gap_px, c.gap_fraction * f.bbox_diagonal);
          return {f.closure_gap <= limit, normalized(f.closure_gap, limit)};
        } else {
          for (int idx : {c.first, c.second})
            if (idx < 1 || idx > f.segment_count)
              throw GeometryError("constraint line index " + std::to_string(idx) + " exceeds segment count " +
                                  std::to_string(f.segment_count));
          const auto i = static_cast<std::size_t>(c.first - 1);
          const auto j = static_cast<std::size_t>(c.second - 1);
          if constexpr (std::is_same_v<T, Perpendicular>) {
            return judged(90.0 - line_angle_deg(f.edges[i], f.edges[j]), c.tol_deg);
          } else if constexpr (std::is_same_v<T, Parallel>) {
            return judged(line_angle_deg(f.edges[i], f.edges[j]), c.tol_deg);
          } else if constexpr (std::is_same_v<T, AngleBetween>) {
            return judged(std::abs(angle_between_deg(-f.edges[i], f.edges[j]) - c.degrees), c.tol_deg);
          } else if constexpr (std::is_same_v<T, EqualLength>) {
            const double lo = std::min(f.lengths[i], f.lengths[j]);
            const double hi = std::max(f.lengths[i], f.lengths[j]);
            return judged(hi > 0.0 ? 1.0 - lo / hi : 0.0, c.tol_ratio);
          } else {
            static_assert(std::is_same_v<T, LengthRatio>);
            if (f.lengths[j] == 0.0)
              return {false, std::numeric_limits<double>::infinity()};
            return judged(std::abs(f.lengths[i] / f.lengths[j] / c.ratio - 1.0), c.tol_ratio);
          }
        }
      },
      constraint);
}

PropertyMap report_properties(const ShapeSpec& spec, const FeatureVector& f) {
  PropertyMap out;
  for (ReportProperty p : spec.report) {
    switch (p) {
    case ReportProperty::kAngles: {
      auto angles = f.turn_angles;
      if (spec.is_closed() && f.segment_count >= 2)
        angles.push_back(f.wrap_angle);
      out["angles"] = std::move(angles);
      break;
    }
    case ReportProperty::kLengths: out["lengths"] = f.lengths; break;
    case ReportProperty::kClosureGap: out["closure_gap"] = {f.closure_gap}; break;
    }
  }
  return out;
}

std::optional<Interpretation> match_shape(const ShapeSpec& spec, std::span<const Segment> segments) {
  const int n = static_cast<int>(segments.size());
  if (n == 0 || !spec.lines.contains(n))
    return std::nullopt;
  const FeatureVector f = extract_features(segments);

  double residual = 0.0;
  for (const auto& c : spec.constraints) {
    ConstraintResult r;
    try {
      r = eval_constraint(c, f);
    } catch (const GeometryError&) {
      return std::nullopt;  // spec refers to a line this stroke does not have
    }
    if (!r.satisfied)
      return std::nullopt;
    residual += r.slack;
  }

  Interpretation interp;
  interp.shape_name = spec.name;
  interp.primitive_count = n;
  interp.properties = report_properties(spec, f);
  interp.residual = residual;
  return interp;
}

std::span<const Segment> RecognitionResult::segments_of(const Interpretation& interp) const {
  return interp.decomposition == Decomposition::kRaw ? std::span<const Segment>(raw_segments)
                                                     : std::span<const Segment>(merged_segments);
}

const Interpretation* select_interpretation(std::span<const Interpretation> candidates) {
  const Interpretation* best = nullptr;
  for (const auto& c : candidates) {
    if (!best) {
      best = &c;
      continue;
    }
    if (c.primitive_count != best->primitive_count) {
      if (c.primitive_count > best->primitive_count)
        best = &c;
      continue;
    }
    const auto pos = std::pair(c.domain_index, c.shape_index);
    const auto best_pos = std::pair(best->domain_index, best->shape_index);
    if (pos < best_pos || (pos == best_pos && c.residual < best->residual))
      best = &c;
  }
  return best;
}

RecognitionResult recognize_stroke(const Stroke& stroke, const DomainLibrary& library, const SegmentationConfig& cfg) {
  RecognitionResult result;
  result.stroke_id = stroke.id;
  try {
    StrokeSegmentation seg = analyze_stroke(stroke, cfg);
    result.raw_segments = std::move(seg.raw);
    result.merged_segments = std::move(seg.merged);
  } catch (const GeometryError& e) {
    result.error = e.what();
    return result;
  }

  const bool raw_differs = result.raw_segments.size() != result.merged_segments.size();
  for (std::size_t d = 0; d < library.domains.size(); ++d) {
    const DomainSpec& domain = library.domains[d];
    for (std::size_t s = 0; s < domain.shapes.size(); ++s) {
      auto consider = [&](Decomposition which) {
        auto interp = match_shape(domain.shapes[s], which == Decomposition::kRaw ? result.raw_segments
                                                                                 : result.merged_segments);
        if (!interp)
          return;
        interp->domain_name = domain.name;
        interp->domain_index = d;
        interp->shape_index = s;
        interp->decomposition = which;
        result.candidates.push_back(std::move(*interp));
      };
      consider(Decomposition::kMerged);
      if (raw_differs)
        consider(Decomposition::kRaw);
    }
  }

  if (const Interpretation* best = select_interpretation(result.candidates))
    result.chosen = *best;
  return result;
}

std::vector<RecognitionResult> recognize(const SketchDocument& document, const DomainLibrary& library,
                                         const SegmentationConfig& cfg) {
  std::vector<RecognitionResult> out;
  out.reserve(document.strokes.size());
  for (const auto& stroke : document.strokes)
    out.push_back(recognize_stroke(stroke, library, cfg));
  return out;
}

const ShapeSpec& spec_of(const DomainLibrary& library, const Interpretation& interp) {
  if (interp.domain_index >= library.domains.size() ||
      interp.shape_index >= library.domains[interp.domain_index].shapes.size())
    throw Error("interpretation does not refer to a shape in this library");
  return library.domains[interp.domain_index].shapes[interp.shape_index];
}

} // namespace sketchrec
