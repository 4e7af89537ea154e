#pragma once

// Independent reference computations. Nothing here calls into the code
// paths it is used to check.

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "sketchrec/geometry.hpp"

namespace sketchrec::oracle {

/// Direction case looked up from the sign table (dx sign, dy sign).
inline int table_case(long long dx, long long dy) {
  const int sx = (dx > 0) - (dx < 0);
  const int sy = (dy > 0) - (dy < 0);
  static const std::map<std::pair<int, int>, int> table = {
      {{1, 0}, 1}, {{-1, 0}, 2}, {{0, 1}, 3},  {{0, -1}, 4},
      {{1, -1}, 5}, {{1, 1}, 6}, {{-1, 1}, 7}, {{-1, -1}, 8},
  };
  const auto it = table.find({sx, sy});
  return it == table.end() ? 0 : it->second;
}

/// Per-block mode with the middle-element / smallest-value tie break.
inline std::vector<int> block_mode(const std::vector<int>& cats, std::size_t block) {
  std::vector<int> out;
  for (std::size_t b = 0; b < cats.size(); b += block) {
    const std::size_t e = std::min(cats.size(), b + block);
    std::map<int, int> count;
    for (std::size_t i = b; i < e; ++i)
      count[cats[i]]++;
    int best = 0;
    for (auto& [c, n] : count)
      best = std::max(best, n);
    const int middle = cats[b + (e - b - 1) / 2];
    int mode = middle;
    if (count[middle] != best)
      for (auto& [c, n] : count)
        if (n == best) {
          mode = c;
          break;
        }
    out.insert(out.end(), e - b, mode);
  }
  return out;
}

/// Every adjacent pair is compared; a change at (i-1, i) yields i.
inline std::vector<std::size_t> brute_force_splits(const std::vector<int>& smoothed) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < smoothed.size(); ++i)
    for (std::size_t j = 0; j < smoothed.size(); ++j)
      if (j == i + 1 && smoothed[i] != smoothed[j])
        out.push_back(j);
  return out;
}

/// Point-to-line distance via Heron's formula: 2 * area / base.
inline double heron_distance(Vec2 p, Vec2 a, Vec2 b) {
  const double ab = std::hypot(b.x - a.x, b.y - a.y);
  const double ap = std::hypot(p.x - a.x, p.y - a.y);
  const double bp = std::hypot(p.x - b.x, p.y - b.y);
  const double s = (ab + ap + bp) / 2.0;
  const double area = std::sqrt(std::max(0.0, s * (s - ab) * (s - ap) * (s - bp)));
  return 2.0 * area / ab;
}

/// Greedy merge over a vertex chain: returns the kept vertex indices.
inline std::vector<std::size_t> greedy_merge(const std::vector<Vec2>& chain, double eps) {
  std::vector<std::size_t> kept{0};
  std::size_t i = 0;
  const std::size_t last = chain.size() - 1;
  while (i < last) {
    std::size_t j = i + 1;
    while (j + 1 <= last) {
      const std::size_t cand = j + 1;
      if (chain[cand] == chain[i])
        break;
      bool ok = true;
      for (std::size_t k = i + 1; k < cand; ++k)
        if (heron_distance(chain[k], chain[i], chain[cand]) > eps + 1e-9)
          ok = false;
      if (!ok)
        break;
      j = cand;
    }
    kept.push_back(j);
    i = j;
  }
  return kept;
}

/// Interior angle at b of the path a -> b -> c, via the law of cosines.
inline double interior_angle_deg(Vec2 a, Vec2 b, Vec2 c) {
  const double ab = std::hypot(a.x - b.x, a.y - b.y);
  const double cb = std::hypot(c.x - b.x, c.y - b.y);
  const double ac = std::hypot(a.x - c.x, a.y - c.y);
  const double cosv = std::clamp((ab * ab + cb * cb - ac * ac) / (2 * ab * cb), -1.0, 1.0);
  return std::acos(cosv) * 180.0 / 3.14159265358979323846;
}

/// Acute angle between two undirected lines from their slopes.
inline double line_angle_deg(Vec2 d1, Vec2 d2) {
  double a = std::abs(std::atan2(d1.y, d1.x) - std::atan2(d2.y, d2.x)) * 180.0 / 3.14159265358979323846;
  a = std::fmod(a, 180.0);
  return std::min(a, 180.0 - a);
}

} // namespace sketchrec::oracle
