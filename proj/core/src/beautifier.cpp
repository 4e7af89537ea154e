#include "sketchrec/beautifier.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>
#include <type_traits>

#include "sketchrec/errors.hpp"

namespace sketchrec {

std::vector<Vec2> BeautifiedShape::chain() const {
  std::vector<Vec2> out = vertices;
  if (closed && !out.empty())
    out.push_back(out.front());
  return out;
}

namespace {

constexpr double kExact = 1e-9;

double circular_distance_deg(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

// A direction relation between two lines, from perpendicular / parallel /
// angle constraints. Indices are 0-based.
struct DirectionRelation {
  std::size_t first;
  std::size_t second;
  Constraint constraint;
};

// Headings the `other` line may take given that line `from` has heading
// `theta`.
std::vector<double> heading_options(const DirectionRelation& rel, double theta) {
  return std::visit(
      [&](const auto& c) -> std::vector<double> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Perpendicular>)
          return {theta + 90.0, theta - 90.0};
        else if constexpr (std::is_same_v<T, Parallel>)
          return {theta, theta + 180.0};
        else if constexpr (std::is_same_v<T, AngleBetween>)
          // angle(-d_i, d_j) is symmetric in i and j.
          return {theta + 180.0 - c.degrees, theta + 180.0 + c.degrees};
        else
          return {};
      },
      rel.constraint);
}

// Weighted union-find: length[k] = scale[k] * length[parent[k]].
class LengthGroups {
public:
  explicit LengthGroups(std::size_t n) : parent_(n), scale_(n, 1.0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t k) {
    if (parent_[k] == k)
      return k;
    const std::size_t p = parent_[k];
    const std::size_t root = find(p);
    scale_[k] *= scale_[p];
    parent_[k] = root;
    return root;
  }

  double scale(std::size_t k) {
    find(k);
    return scale_[k];
  }

  // Requires length[i] = ratio * length[j]. False when that contradicts
  // an earlier relation.
  bool relate(std::size_t i, std::size_t j, double ratio) {
    const std::size_t ri = find(i);
    const std::size_t rj = find(j);
    const double si = scale_[i];
    const double sj = scale_[j];
    if (ri == rj)
      return std::abs(si - ratio * sj) <= kExact * std::max(si, ratio * sj);
    parent_[ri] = rj;
    scale_[ri] = ratio * sj / si;
    return true;
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<double> scale_;
};

struct Mat2 {
  double a = 0, b = 0, d = 0;  // symmetric [[a, b], [b, d]]
};

// Moore-Penrose inverse applied to r, for a symmetric positive
// semi-definite 2x2 matrix.
Vec2 pinv_apply(const Mat2& m, Vec2 r) {
  const double trace = m.a + m.d;
  if (trace <= 0.0)
    return {};
  const double det = m.a * m.d - m.b * m.b;
  if (std::abs(det) > 1e-12 * trace * trace)
    return {(m.d * r.x - m.b * r.y) / det, (-m.b * r.x + m.a * r.y) / det};
  const double t2 = trace * trace;
  return {(m.a * r.x + m.b * r.y) / t2, (m.b * r.x + m.d * r.y) / t2};
}

Vec2 centroid(std::span<const Vec2> pts) {
  Vec2 sum;
  for (const Vec2& p : pts)
    sum += p;
  return sum / static_cast<double>(pts.size());
}

BeautifiedShape closure_only(std::span<const Vec2> chain, const ShapeSpec& spec) {
  BeautifiedShape out;
  out.closed = spec.is_closed();
  out.label = spec.display_label;
  out.degraded = true;
  const std::size_t n = chain.size() - 1;
  if (out.closed) {
    const Vec2 gap = chain[n] - chain[0];
    for (std::size_t k = 0; k < n; ++k)
      out.vertices.push_back(chain[k] - gap * (static_cast<double>(k) / static_cast<double>(n)));
  } else {
    out.vertices.assign(chain.begin(), chain.end());
  }
  return out;
}

// Returns the final edge vectors, or nullopt when the constraints cannot be
// met together.
std::optional<std::vector<Vec2>> enforce(std::span<const Vec2> chain, const ShapeSpec& spec) {
  const std::size_t n = chain.size() - 1;
  std::vector<double> heading(n);
  std::vector<double> length(n);
  std::vector<bool> snapped(n, false);

  // 1. Snap to the 45-degree grid.
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 e = chain[k + 1] - chain[k];
    length[k] = norm(e);
    if (length[k] == 0.0)
      return std::nullopt;
    heading[k] = heading_deg(e);
    const double grid = std::round(heading[k] / 45.0) * 45.0;
    if (std::abs(heading[k] - grid) <= kSnapToleranceDeg) {
      heading[k] = grid;
      snapped[k] = true;
    }
  }

  std::vector<DirectionRelation> relations;
  LengthGroups groups(n);
  for (const auto& constraint : spec.constraints) {
    bool consistent = true;
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (!std::is_same_v<T, Closed>) {
            if (c.first < 1 || c.second < 1 || static_cast<std::size_t>(c.first) > n ||
                static_cast<std::size_t>(c.second) > n) {
              consistent = false;
              return;
            }
            const auto i = static_cast<std::size_t>(c.first - 1);
            const auto j = static_cast<std::size_t>(c.second - 1);
            if constexpr (std::is_same_v<T, EqualLength>)
              consistent = groups.relate(i, j, 1.0);
            else if constexpr (std::is_same_v<T, LengthRatio>)
              consistent = groups.relate(i, j, c.ratio);
            else
              relations.push_back({i, j, constraint});
          }
        },
        constraint);
    if (!consistent)
      return std::nullopt;
  }

  // 2. Propagate directions through each connected component, starting from
  // its first snapped line (or its first line).
  std::vector<std::vector<std::size_t>> adjacent(n);
  for (std::size_t r = 0; r < relations.size(); ++r) {
    adjacent[relations[r].first].push_back(r);
    adjacent[relations[r].second].push_back(r);
  }
  std::vector<bool> seen(n, false);
  std::vector<bool> fixed(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start])
      continue;
    std::vector<std::size_t> component;
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      component.push_back(k);
      for (std::size_t r : adjacent[k]) {
        const std::size_t other = relations[r].first == k ? relations[r].second : relations[r].first;
        if (!seen[other]) {
          seen[other] = true;
          queue.push_back(other);
        }
      }
    }
    std::sort(component.begin(), component.end());
    const auto anchor_it = std::find_if(component.begin(), component.end(), [&](std::size_t k) { return snapped[k]; });
    const std::size_t anchor = anchor_it != component.end() ? *anchor_it : component.front();

    fixed[anchor] = true;
    queue = {anchor};
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      std::vector<std::size_t> rels = adjacent[k];
      std::sort(rels.begin(), rels.end(), [&](std::size_t x, std::size_t y) {
        const auto ox = relations[x].first == k ? relations[x].second : relations[x].first;
        const auto oy = relations[y].first == k ? relations[y].second : relations[y].first;
        return ox != oy ? ox < oy : x < y;
      });
      for (std::size_t r : rels) {
        const std::size_t other = relations[r].first == k ? relations[r].second : relations[r].first;
        if (fixed[other])
          continue;
        double best = heading[other];
        double best_distance = 1e300;
        for (double option : heading_options(relations[r], heading[k])) {
          const double d = circular_distance_deg(option, heading[other]);
          if (d < best_distance) {
            best_distance = d;
            best = option;
          }
        }
        heading[other] = best;
        fixed[other] = true;
        queue.push_back(other);
      }
    }
  }

  std::vector<Vec2> unit(n);
  for (std::size_t k = 0; k < n; ++k)
    unit[k] = unit_from_degrees(heading[k]);

  // Cycles in the relation graph may still disagree.
  {
    FeatureVector probe;
    probe.segment_count = static_cast<int>(n);
    probe.edges = unit;
    probe.lengths.assign(n, 1.0);
    for (const auto& rel : relations)
      if (eval_constraint(rel.constraint, probe).slack > kExact)
        return std::nullopt;
  }

  // 3. Least-squares base length per group: length[k] = s_k * base[g].
  std::vector<std::size_t> group_of(n);
  std::vector<double> s(n);
  std::vector<std::size_t> roots;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t root = groups.find(k);
    s[k] = groups.scale(k);
    auto it = std::find(roots.begin(), roots.end(), root);
    group_of[k] = static_cast<std::size_t>(it - roots.begin());
    if (it == roots.end())
      roots.push_back(root);
  }
  const std::size_t g_count = roots.size();
  std::vector<double> weight(g_count, 0.0);
  std::vector<double> base(g_count, 0.0);
  std::vector<Vec2> column(g_count);
  for (std::size_t k = 0; k < n; ++k) {
    weight[group_of[k]] += s[k] * s[k];
    base[group_of[k]] += s[k] * length[k];
    column[group_of[k]] += s[k] * unit[k];
  }
  for (std::size_t g = 0; g < g_count; ++g)
    base[g] /= weight[g];

  // 4. Close the polygon with the minimum weighted change of base lengths.
  const double scale = std::accumulate(length.begin(), length.end(), 0.0);
  if (spec.is_closed()) {
    Mat2 m;
    Vec2 residual;
    for (std::size_t g = 0; g < g_count; ++g) {
      m.a += column[g].x * column[g].x / weight[g];
      m.b += column[g].x * column[g].y / weight[g];
      m.d += column[g].y * column[g].y / weight[g];
      residual += base[g] * column[g];
    }
    const Vec2 lambda = pinv_apply(m, residual);
    Vec2 closure;
    for (std::size_t g = 0; g < g_count; ++g) {
      base[g] -= dot(column[g], lambda) / weight[g];
      closure += base[g] * column[g];
    }
    if (norm(closure) > kExact * scale)
      return std::nullopt;
  }
  for (std::size_t g = 0; g < g_count; ++g)
    if (!(base[g] > kExact * scale))
      return std::nullopt;

  std::vector<Vec2> edges(n);
  for (std::size_t k = 0; k < n; ++k)
    edges[k] = (s[k] * base[group_of[k]]) * unit[k];
  return edges;
}

} // namespace

BeautifiedShape beautify_chain(std::span<const Vec2> chain, const ShapeSpec& spec) {
  if (chain.size() < 2)
    throw GeometryError("beautify needs at least one line");

  auto edges = enforce(chain, spec);
  BeautifiedShape out;
  if (!edges) {
    out = closure_only(chain, spec);
  } else {
    out.closed = spec.is_closed();
    out.label = spec.display_label;
    const std::size_t count = out.closed ? edges->size() : edges->size() + 1;
    out.vertices.reserve(count);
    out.vertices.push_back({});
    for (std::size_t k = 0; k + 1 < count; ++k)
      out.vertices.push_back(out.vertices.back() + (*edges)[k]);

    const Vec2 shift = centroid(chain.first(count)) - centroid(out.vertices);
    for (Vec2& v : out.vertices)
      v += shift;
  }

  const auto final_chain = out.chain();
  out.properties = report_properties(spec, extract_features(std::span<const Vec2>(final_chain)));
  return out;
}

BeautifiedShape beautify(const Interpretation& interp, std::span<const Segment> segments, const ShapeSpec& spec) {
  if (static_cast<int>(segments.size()) != interp.primitive_count)
    throw ConsistencyError("interpretation was not produced from these segments");
  const auto chain = chain_vertices(segments);
  return beautify_chain(chain, spec);
}

} // namespace sketchrec
