#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sketchrec/geometry.hpp"
#include "sketchrec/stroke.hpp"

namespace sketchrec {

/// Motion class of one adjacent point pair, keyed on the signs of the x and
/// y displacements. Numeric values are the stored table values (1..8).
enum class DirectionCategory : std::uint8_t {
  kPosX = 1,      ///< dx > 0, dy = 0
  kNegX = 2,      ///< dx < 0, dy = 0
  kPosY = 3,      ///< dx = 0, dy > 0
  kNegY = 4,      ///< dx = 0, dy < 0
  kPosXNegY = 5,  ///< dx > 0, dy < 0
  kPosXPosY = 6,  ///< dx > 0, dy > 0
  kNegXPosY = 7,  ///< dx < 0, dy > 0
  kNegXNegY = 8,  ///< dx < 0, dy < 0
};

constexpr int to_int(DirectionCategory c) { return static_cast<int>(c); }

/// Throws GeometryError for values outside 1..8.
DirectionCategory category_from_int(int value);

/// The category of the reversed motion (1<->2, 3<->4, 5<->7, 6<->8).
DirectionCategory opposite(DirectionCategory c);

/// A straight piece of a stroke. `index` is 1-based within its list.
struct Segment {
  int index = 1;
  Point start;
  Point end;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SmoothingConfig {
  int block_size = 5;
};

struct MergeConfig {
  double max_deviation = 5.0;  // pixels
};

struct SegmentationConfig {
  SmoothingConfig smoothing;
  MergeConfig merge;
};

/// Throws GeometryError when p1 == p2.
DirectionCategory direction_category(Point p1, Point p2);

/// One category per adjacent pair. Requires >= 2 points with no
/// consecutive duplicates.
std::vector<DirectionCategory> categorize(std::span<const Point> points);

/// Block-mode smoothing: the input is cut into consecutive blocks of
/// `block_size` (the last may be shorter) and every element of a block is
/// replaced by the block's most frequent category. Ties go to the block's
/// middle element if it is one of the tied values, else to the smallest.
std::vector<DirectionCategory> smooth(std::span<const DirectionCategory> categories,
                                      const SmoothingConfig& cfg = {});

/// Indices i >= 1 where smoothed[i] != smoothed[i - 1]. Category index i maps
/// to point index i of the stroke.
std::vector<std::size_t> split_points(std::span<const DirectionCategory> smoothed);

/// Cuts the polyline at the given point indices. Spans whose endpoints
/// coincide (the stroke doubled back onto the same pixel) are folded into
/// their neighbour so that start != end always holds.
std::vector<Segment> extract_segments(std::span<const Point> points,
                                      std::span<const std::size_t> splits);

/// Greedy forward pass: each run is extended while every interior vertex
/// stays within `max_deviation` of the run's start->end chord. Output is
/// reindexed from 1 and stays chained.
std::vector<Segment> merge_collinear(std::span<const Segment> segments, const MergeConfig& cfg = {});

/// Every intermediate of the pipeline for one stroke.
struct StrokeSegmentation {
  Stroke stroke;  // deduplicated
  std::vector<DirectionCategory> categories;
  std::vector<DirectionCategory> smoothed;
  std::vector<std::size_t> splits;
  std::vector<Segment> raw;
  std::vector<Segment> merged;
};

StrokeSegmentation analyze_stroke(const Stroke& stroke, const SegmentationConfig& cfg = {});

/// merge_collinear(extract_segments(split_points(smooth(categorize(dedup)))))
/// Never empty; throws GeometryError for strokes with fewer than two
/// distinct points.
std::vector<Segment> segment_stroke(const Stroke& stroke, const SegmentationConfig& cfg = {});

/// Polyline vertices of a chained segment list: first start, then every end.
std::vector<Vec2> chain_vertices(std::span<const Segment> segments);

} // namespace sketchrec
