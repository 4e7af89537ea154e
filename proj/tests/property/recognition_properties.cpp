#include <cmath>
#include <random>
#include <variant>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "sketchrec/recognizer.hpp"
#include "sketchrec/response.hpp"
#include "sketchrec/stroke.hpp"
#include "synthetic.hpp"

using namespace sketchrec;

namespace {

constexpr const char* kExtraLibrary = R"(
domain Extra {
  shape Wedge {
    lines 2;
    constraints { angle 1 2 60 tol 10; length_ratio 1 2 2 tol 0.25; }
  }
  shape Zed {
    lines 3;
    constraints { parallel 1 3; equal_length 1 3 tol 0.3; }
  }
  shape Box {
    lines 3..5;
    constraints { closed tol 0.05; perpendicular 1 2 tol 20; }
  }
})";

/// Brute-force constraint check written against the raw endpoints.
bool oracle_holds(const Constraint& constraint, const std::vector<Segment>& segs) {
  auto dir = [&](int k) {
    const auto& s = segs[static_cast<std::size_t>(k - 1)];
    return Vec2{static_cast<double>(s.end.x - s.start.x), static_cast<double>(s.end.y - s.start.y)};
  };
  auto len = [&](int k) { return std::hypot(dir(k).x, dir(k).y); };
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Closed>) {
          double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
          for (const auto& s : segs)
            for (Point p : {s.start, s.end}) {
              x0 = std::min<double>(x0, p.x);
              y0 = std::min<double>(y0, p.y);
              x1 = std::max<double>(x1, p.x);
              y1 = std::max<double>(y1, p.y);
            }
          const double gap = std::hypot(double(segs.back().end.x - segs.front().start.x),
                                        double(segs.back().end.y - segs.front().start.y));
          return gap <= std::max(c.gap_px, c.gap_fraction * std::hypot(x1 - x0, y1 - y0));
        } else {
          if (std::max(c.first, c.second) > static_cast<int>(segs.size()))
            return false;
          if constexpr (std::is_same_v<T, Perpendicular>) {
            return 90.0 - oracle::line_angle_deg(dir(c.first), dir(c.second)) <= c.tol_deg;
          } else if constexpr (std::is_same_v<T, Parallel>) {
            return oracle::line_angle_deg(dir(c.first), dir(c.second)) <= c.tol_deg;
          } else if constexpr (std::is_same_v<T, AngleBetween>) {
            const Vec2 a = -dir(c.first);
            const Vec2 b = dir(c.second);
            const double cosv = std::clamp((a.x * b.x + a.y * b.y) / (len(c.first) * len(c.second)), -1.0, 1.0);
            return std::abs(std::acos(cosv) * 180.0 / kPi - c.degrees) <= c.tol_deg;
          } else if constexpr (std::is_same_v<T, EqualLength>) {
            const double a = len(c.first), b = len(c.second);
            return std::abs(a - b) / std::max(a, b) <= c.tol_ratio;
          } else {
            return std::abs(len(c.first) / len(c.second) / c.ratio - 1.0) <= c.tol_ratio;
          }
        }
      },
      constraint);
}

bool oracle_matches_any(const DomainLibrary& lib, const RecognitionResult& r) {
  for (const auto* segs : {&r.raw_segments, &r.merged_segments}) {
    if (segs->empty())
      continue;
    const int n = static_cast<int>(segs->size());
    for (const auto& d : lib.domains)
      for (const auto& s : d.shapes) {
        if (n < s.lines.min || n > s.lines.max)
          continue;
        bool all = true;
        for (const auto& c : s.constraints)
          all = all && oracle_holds(c, *segs);
        if (all)
          return true;
      }
  }
  return false;
}

Stroke translated(const Stroke& s, Coord dx, Coord dy) {
  Stroke out = s;
  for (auto& p : out.points) {
    p.x += dx;
    p.y += dy;
  }
  return out;
}

std::vector<Stroke> sample_strokes(std::mt19937& rng, int count) {
  std::uniform_int_distribution<int> family(0, 5);
  std::uniform_real_distribution<double> size(40, 160);
  std::uniform_real_distribution<double> pos(0, 300);
  std::vector<Stroke> out;
  for (int i = 0; i < count; ++i) {
    const StrokeId id = i + 1;
    const Vec2 o{pos(rng), pos(rng)};
    switch (family(rng)) {
    case 0: out.push_back(testing::rectangle_stroke(id, o, size(rng), size(rng))); break;
    case 1: out.push_back(testing::triangle_stroke(id, o, size(rng))); break;
    case 2: out.push_back(testing::zigzag_stroke(id, 2 + i % 9, o)); break;
    case 3: out.push_back(testing::random_stroke(rng, id, 10 + i % 50)); break;
    case 4: out.push_back(testing::polyline_stroke(id, {o, o + Vec2{size(rng), 0}, o + Vec2{0, size(rng)}})); break;
    default: out.push_back(testing::random_polyline_stroke(rng, id, 2 + i % 5)); break;
    }
  }
  return out;
}

DomainLibrary combined_library() {
  DomainLibrary lib = builtin_library();
  for (auto& d : parse_library(kExtraLibrary).domains)
    lib.domains.push_back(d);
  return lib;
}

} // namespace

TEST_CASE("recognition is invariant under integer translation") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<Coord> shift(-5000, 5000);
  const auto lib = combined_library();
  for (const auto& s : sample_strokes(rng, 300)) {
    const Coord dx = shift(rng), dy = shift(rng);
    const SketchDocument a{{s}, std::nullopt};
    const SketchDocument b{{translated(s, dx, dy)}, std::nullopt};
    auto ra = recognize_response(a, lib);
    auto rb = recognize_response(b, lib);
    REQUIRE(ra["results"].size() == 1);
    REQUIRE(rb["results"].size() == 1);
    auto& xa = ra["results"][0];
    auto& xb = rb["results"][0];
    REQUIRE(xa.contains("beautified") == xb.contains("beautified"));
    if (xa.contains("beautified")) {
      const auto& va = xa["beautified"]["vertices"];
      const auto& vb = xb["beautified"]["vertices"];
      REQUIRE(va.size() == vb.size());
      for (std::size_t k = 0; k < va.size(); ++k) {
        CHECK(vb[k][0].get<double>() - double(dx) == doctest::Approx(va[k][0].get<double>()).epsilon(1e-9));
        CHECK(vb[k][1].get<double>() - double(dy) == doctest::Approx(va[k][1].get<double>()).epsilon(1e-9));
      }
      for (auto& [name, values] : xa["beautified"]["properties"].items())
        for (std::size_t k = 0; k < values.size(); ++k)
          CHECK(xb["beautified"]["properties"][name][k].get<double>() ==
                doctest::Approx(values[k].get<double>()).epsilon(1e-9));
      xa.erase("beautified");
      xb.erase("beautified");
    }
    xa.erase("segments");
    xb.erase("segments");
    CHECK(ra == rb);

    const auto x = recognize_stroke(s, lib);
    const auto y = recognize_stroke(translated(s, dx, dy), lib);
    REQUIRE(x.merged_segments.size() == y.merged_segments.size());
    for (std::size_t k = 0; k < x.merged_segments.size(); ++k)
      CHECK(y.merged_segments[k].start == Point{x.merged_segments[k].start.x + dx, x.merged_segments[k].start.y + dy});
  }
}

TEST_CASE("recognition is deterministic") {
  std::mt19937 rng(32);
  const auto strokes = sample_strokes(rng, 100);
  const SketchDocument doc{strokes, std::nullopt};
  const auto lib = combined_library();
  CHECK(dump_json(recognize_response(doc, lib)) == dump_json(recognize_response(doc, lib)));
}

TEST_CASE("strokes are recognized independently") {
  std::mt19937 rng(33);
  const auto strokes = sample_strokes(rng, 60);
  const SketchDocument doc{strokes, std::nullopt};
  const auto lib = combined_library();
  const auto whole = recognize_response(doc, lib);
  REQUIRE(whole["results"].size() == strokes.size());
  for (std::size_t i = 0; i < strokes.size(); ++i) {
    const auto single = recognize_response(SketchDocument{{strokes[i]}, std::nullopt}, lib);
    CHECK(whole["results"][i] == single["results"][0]);
  }
}

TEST_CASE("Undefined only when no spec matches under a brute-force check") {
  std::mt19937 rng(34);
  const auto lib = combined_library();
  int undefined = 0, defined = 0;
  for (const auto& s : sample_strokes(rng, 600)) {
    const auto r = recognize_stroke(s, lib);
    if (!r.error.empty())
      continue;
    const bool any = oracle_matches_any(lib, r);
    CHECK(any == r.chosen.has_value());
    (r.chosen ? defined : undefined)++;
  }
  CHECK(undefined > 20);
  CHECK(defined > 20);
}

TEST_CASE("the chosen interpretation has the most primitives among candidates") {
  std::mt19937 rng(35);
  const auto lib = combined_library();
  for (const auto& s : sample_strokes(rng, 300)) {
    const auto r = recognize_stroke(s, lib);
    if (!r.chosen)
      continue;
    for (const auto& c : r.candidates) {
      CHECK(c.primitive_count <= r.chosen->primitive_count);
      if (c.primitive_count == r.chosen->primitive_count)
        CHECK(std::pair(r.chosen->domain_index, r.chosen->shape_index) <= std::pair(c.domain_index, c.shape_index));
    }
  }
}
