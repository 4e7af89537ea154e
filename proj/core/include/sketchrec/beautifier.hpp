#pragma once

#include <span>
#include <string>
#include <vector>

#include "sketchrec/geometry.hpp"
#include "sketchrec/recognizer.hpp"
#include "sketchrec/segmentation.hpp"
#include "sketchrec/shape_dsl.hpp"

namespace sketchrec {

/// Clean redraw of a recognized figure.
///
/// Closed shapes hold one vertex per line (the closing edge is implicit);
/// open shapes hold lines + 1 vertices.
struct BeautifiedShape {
  std::vector<Vec2> vertices;
  bool closed = false;
  std::string label;
  PropertyMap properties;
  bool degraded = false;  // constraints could not all be enforced

  /// Vertex chain with the first vertex repeated at the end when closed.
  std::vector<Vec2> chain() const;
};

/// Directions within this many degrees of a multiple of 45 are snapped.
inline constexpr double kSnapToleranceDeg = 15.0;

/// Redraws a polyline of n + 1 vertices according to `spec`:
///   1. snap each direction to the 45-degree grid when within 15 degrees;
///   2. fix directions so every perpendicular/parallel/angle constraint holds
///      exactly, rotating later lines about the earliest constrained one;
///   3. set equal_length/length_ratio groups to their least-squares length;
///   4. for closed specs, adjust group lengths by the minimum-norm change
///      that closes the polygon, keeping all directions;
///   5. translate so the vertex centroid matches the input.
/// When 2-4 cannot be met (inconsistent constraints, a length would become
/// non-positive) the result is the input with only its closure gap spread
/// evenly over the vertices, and `degraded` is set.
BeautifiedShape beautify_chain(std::span<const Vec2> chain, const ShapeSpec& spec);

BeautifiedShape beautify(const Interpretation& interp, std::span<const Segment> segments,
                         const ShapeSpec& spec);

} // namespace sketchrec
