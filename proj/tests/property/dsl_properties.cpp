#include <random>
#include <string>

#include "doctest.h"
#include "sketchrec/errors.hpp"
#include "sketchrec/shape_dsl.hpp"

using namespace sketchrec;

namespace {

double pick(std::mt19937& rng, std::initializer_list<double> values) {
  std::uniform_int_distribution<std::size_t> d(0, values.size() - 1);
  return *(values.begin() + d(rng));
}

ShapeSpec random_shape(std::mt19937& rng, int serial) {
  std::uniform_int_distribution<int> lo(1, 6);
  std::uniform_int_distribution<int> extra(0, 3);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_real_distribution<double> real(0.0, 1.0);

  ShapeSpec s;
  s.name = "S" + std::to_string(serial);
  s.lines.min = lo(rng);
  s.lines.max = s.lines.min + extra(rng);
  std::uniform_int_distribution<int> line(1, s.lines.max);
  const int n = s.lines.max >= 2 ? count(rng) : 0;
  for (int k = 0; k < n; ++k) {
    int a = line(rng);
    int b = line(rng);
    while (b == a)
      b = line(rng);
    const double tol = pick(rng, {0.0, 2.5, 15.0, 1e-3, 7.125});
    const double rtol = pick(rng, {0.2, 0.05, 0.0, 0.333});
    switch (kind(rng)) {
    case 0: {
      const Closed variants[] = {Closed{}, Closed{12.5, 0.0}, Closed{0.0, 0.15}};
      s.constraints.push_back(variants[k % 3]);
      break;
    }
    case 1: s.constraints.push_back(Perpendicular{a, b, tol}); break;
    case 2: s.constraints.push_back(Parallel{a, b, tol}); break;
    case 3: s.constraints.push_back(EqualLength{a, b, rtol}); break;
    case 4: s.constraints.push_back(AngleBetween{a, b, 180.0 * real(rng), tol}); break;
    default: s.constraints.push_back(LengthRatio{a, b, 0.1 + 9.0 * real(rng), rtol}); break;
    }
  }
  const char* labels[] = {"", "Plain", "with \"quotes\"", "back\\slash", "tab\there"};
  s.display_label = labels[serial % 5];
  if (s.display_label.empty())
    s.display_label = s.name;
  const ReportProperty props[] = {ReportProperty::kAngles, ReportProperty::kLengths, ReportProperty::kClosureGap};
  for (auto p : props)
    if (real(rng) < 0.5)
      s.report.push_back(p);
  return s;
}

} // namespace

TEST_CASE("render then parse reproduces random libraries") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> shapes(1, 4);
  std::uniform_int_distribution<int> domains(1, 3);
  for (int i = 0; i < 500; ++i) {
    DomainLibrary lib;
    int serial = 0;
    const int nd = domains(rng);
    for (int d = 0; d < nd; ++d) {
      DomainSpec dom{"D" + std::to_string(d), {}};
      const int ns = shapes(rng);
      for (int k = 0; k < ns; ++k)
        dom.shapes.push_back(random_shape(rng, serial++));
      lib.domains.push_back(std::move(dom));
    }
    REQUIRE(validate(lib).empty());
    const auto text = render_library(lib);
    CAPTURE(text);
    CHECK(parse_library(text) == lib);
    CHECK(parse_domain_file(render_domain(lib.domains[0])) == lib.domains[0]);
  }
}

TEST_CASE("random bytes never crash the parser") {
  std::mt19937 rng(22);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 200);
  for (int i = 0; i < 3000; ++i) {
    std::string text;
    const int n = len(rng);
    for (int k = 0; k < n; ++k)
      text.push_back(static_cast<char>(byte(rng)));
    try {
      (void)parse_library(text);
    } catch (const DslError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
    }
  }
}

TEST_CASE("mutated valid sources fail with a position or parse cleanly") {
  std::mt19937 rng(23);
  const std::string base(builtin_library_source());
  const std::string alphabet = "{};.#\"0123456789 \nabcdefghijklmnopqrstuvwxyz_-+e";
  std::uniform_int_distribution<std::size_t> pos(0, base.size() - 1);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> op(0, 2);
  std::uniform_int_distribution<int> edits(1, 6);
  int failures = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string text = base;
    const int n = edits(rng);
    for (int k = 0; k < n; ++k) {
      const std::size_t p = pos(rng) % text.size();
      switch (op(rng)) {
      case 0: text.erase(p, 1); break;
      case 1: text.insert(p, 1, alphabet[ch(rng)]); break;
      default: text[p] = alphabet[ch(rng)]; break;
      }
    }
    try {
      const auto lib = parse_library(text);
      CHECK(parse_library(render_library(lib)) == lib);
    } catch (const DslError& e) {
      ++failures;
      CHECK(e.line() >= 1);
      const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
      CHECK(e.line() <= lines);
    }
  }
  CHECK(failures > 0);
}
