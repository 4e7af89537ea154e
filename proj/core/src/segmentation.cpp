#include "sketchrec/segmentation.hpp"

#include <array>
#include <string>

#include "sketchrec/errors.hpp"

namespace sketchrec {

DirectionCategory category_from_int(int value) {
  if (value < 1 || value > 8)
    throw GeometryError("direction category out of range: " + std::to_string(value));
  return static_cast<DirectionCategory>(value);
}

DirectionCategory opposite(DirectionCategory c) {
  using D = DirectionCategory;
  switch (c) {
  case D::kPosX: return D::kNegX;
  case D::kNegX: return D::kPosX;
  case D::kPosY: return D::kNegY;
  case D::kNegY: return D::kPosY;
  case D::kPosXNegY: return D::kNegXPosY;
  case D::kPosXPosY: return D::kNegXNegY;
  case D::kNegXPosY: return D::kPosXNegY;
  case D::kNegXNegY: return D::kPosXPosY;
  }
  throw GeometryError("invalid direction category");
}

DirectionCategory direction_category(Point p1, Point p2) {
  using D = DirectionCategory;
  const Coord dx = p2.x - p1.x;
  const Coord dy = p2.y - p1.y;
  if (dx == 0 && dy == 0)
    throw GeometryError("zero displacement between consecutive points (" + std::to_string(p1.x) + "," +
                        std::to_string(p1.y) + "); deduplicate the stroke first");
  if (dy == 0)
    return dx > 0 ? D::kPosX : D::kNegX;
  if (dx == 0)
    return dy > 0 ? D::kPosY : D::kNegY;
  if (dx > 0)
    return dy < 0 ? D::kPosXNegY : D::kPosXPosY;
  return dy > 0 ? D::kNegXPosY : D::kNegXNegY;
}

std::vector<DirectionCategory> categorize(std::span<const Point> points) {
  if (points.size() < 2)
    throw GeometryError("stroke too short: need at least 2 points, got " + std::to_string(points.size()));
  std::vector<DirectionCategory> out;
  out.reserve(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    out.push_back(direction_category(points[i], points[i + 1]));
  return out;
}

std::vector<DirectionCategory> smooth(std::span<const DirectionCategory> categories, const SmoothingConfig& cfg) {
  if (categories.empty())
    throw GeometryError("cannot smooth an empty category list");
  if (cfg.block_size < 1)
    throw GeometryError("smoothing block size must be >= 1");

  const auto block = static_cast<std::size_t>(cfg.block_size);
  std::vector<DirectionCategory> out(categories.size());
  for (std::size_t begin = 0; begin < categories.size(); begin += block) {
    const std::size_t end = std::min(begin + block, categories.size());

    std::array<int, 9> counts{};
    for (std::size_t i = begin; i < end; ++i)
      ++counts[to_int(categories[i])];

    int best = 0;
    for (int c = 1; c <= 8; ++c)
      best = std::max(best, counts[c]);

    const DirectionCategory middle = categories[begin + (end - begin - 1) / 2];
    DirectionCategory mode = middle;
    if (counts[to_int(middle)] != best) {
      for (int c = 1; c <= 8; ++c) {
        if (counts[c] == best) {
          mode = static_cast<DirectionCategory>(c);
          break;
        }
      }
    }
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(begin), out.begin() + static_cast<std::ptrdiff_t>(end),
              mode);
  }
  return out;
}

std::vector<std::size_t> split_points(std::span<const DirectionCategory> smoothed) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < smoothed.size(); ++i)
    if (smoothed[i] != smoothed[i - 1])
      out.push_back(i);
  return out;
}

std::vector<Segment> extract_segments(std::span<const Point> points, std::span<const std::size_t> splits) {
  if (points.size() < 2)
    throw GeometryError("stroke too short: need at least 2 points, got " + std::to_string(points.size()));
  const std::size_t last = points.size() - 1;
  std::size_t prev = 0;
  for (std::size_t s : splits) {
    if (s == 0 || s >= last || s <= prev)
      throw GeometryError("invalid split index " + std::to_string(s) + " for a stroke of " +
                          std::to_string(points.size()) + " points");
    prev = s;
  }

  std::vector<Segment> out;
  out.reserve(splits.size() + 1);
  std::size_t from = 0;
  auto emit = [&](std::size_t to) {
    if (points[from] == points[to])
      return;  // doubled back; the next span starts from the same pixel
    out.push_back({static_cast<int>(out.size()) + 1, points[from], points[to]});
    from = to;
  };
  for (std::size_t s : splits)
    emit(s);
  emit(last);

  if (out.empty())
    throw GeometryError("stroke returns to its starting pixel without any straight span");
  return out;
}

std::vector<Segment> merge_collinear(std::span<const Segment> segments, const MergeConfig& cfg) {
  std::vector<Segment> out;
  std::size_t i = 0;
  while (i < segments.size()) {
    const Vec2 start(segments[i].start);
    std::size_t j = i;  // run is segments[i..j]
    while (j + 1 < segments.size()) {
      const Point candidate_end = segments[j + 1].end;
      if (candidate_end == segments[i].start)
        break;
      const Vec2 end(candidate_end);
      bool ok = true;
      for (std::size_t k = i; k <= j && ok; ++k)
        ok = perpendicular_distance(Vec2(segments[k].end), start, end) <= cfg.max_deviation;
      if (!ok)
        break;
      ++j;
    }
    out.push_back({static_cast<int>(out.size()) + 1, segments[i].start, segments[j].end});
    i = j + 1;
  }
  return out;
}

StrokeSegmentation analyze_stroke(const Stroke& stroke, const SegmentationConfig& cfg) {
  StrokeSegmentation r;
  r.stroke = dedup_points(stroke);
  r.categories = categorize(r.stroke.points);
  r.smoothed = smooth(r.categories, cfg.smoothing);
  r.splits = split_points(r.smoothed);
  r.raw = extract_segments(r.stroke.points, r.splits);
  r.merged = merge_collinear(r.raw, cfg.merge);
  return r;
}

std::vector<Segment> segment_stroke(const Stroke& stroke, const SegmentationConfig& cfg) {
  return analyze_stroke(stroke, cfg).merged;
}

std::vector<Vec2> chain_vertices(std::span<const Segment> segments) {
  std::vector<Vec2> out;
  if (segments.empty())
    return out;
  out.reserve(segments.size() + 1);
  out.emplace_back(segments.front().start);
  for (const auto& s : segments)
    out.emplace_back(s.end);
  return out;
}

} // namespace sketchrec
