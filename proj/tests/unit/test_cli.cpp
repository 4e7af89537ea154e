#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "doctest.h"
#include "sketchrec/response.hpp"
#include "sketchrec/segmentation.hpp"
#include "sketchrec/stroke.hpp"
#include "sketchrec/tables.hpp"

using namespace sketchrec;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sketchrec");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const char* name) { return std::string(SKETCHREC_TEST_DATA_DIR "/") + name; }

fs::path fresh_dir(const char* name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

} // namespace

TEST_CASE("segment writes the reference tables") {
  const auto dir = fresh_dir("sketchrec_cli_segment");
  const auto r = run({"segment", data("rectangle.json"), "-o", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out == "stroke 1: 76 points, 7 segments, 4 merged\n");
  CHECK(read_text_file(dir / "sketch1segment.csv") == read_text_file(data("sketch1segment.csv")));
  const auto merged = parse_segment_table(read_text_file(dir / "sketch1segmentm.csv"));
  CHECK(merged.size() == 4);
  for (const char* f : {"sketch1.csv", "sketch1cat.csv", "sketch1catm.csv"})
    CHECK(fs::exists(dir / f));
  fs::remove_all(dir);
}

TEST_CASE("missing input file exits with 2") {
  const auto r = run({"segment", "/nonexistent/sketch.json", "-o", "/tmp/unused"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") == 0);
  CHECK(run({"recognize", "/nonexistent/sketch.json"}).code == 2);
  CHECK(run({"recognize", data("rectangle.json"), "--domains", "/nonexistent/dir"}).code == 2);
}

TEST_CASE("invalid input exits with 1") {
  const auto dir = fresh_dir("sketchrec_cli_invalid");
  fs::create_directories(dir);
  write_text_file(dir / "bad.json", "{\"strokes\": [ {\"id\": 1 ");
  const auto r = run({"recognize", (dir / "bad.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 1") != std::string::npos);

  write_text_file(dir / "broken.dsl", "domain D {\n shape S { lines 2; constraints { wobbly; } } }");
  const auto d = run({"recognize", data("rectangle.json"), "--domains", dir.string()});
  CHECK(d.code == 1);
  CHECK(d.err.find("broken.dsl") != std::string::npos);
  CHECK(d.err.find("wobbly") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("block size 1 splits at every raw category change") {
  const auto dir = fresh_dir("sketchrec_cli_block1");
  const auto r = run({"segment", data("rectangle.json"), "-o", dir.string(), "--block-size", "1"});
  REQUIRE(r.code == 0);
  const auto tables = import_tables(dir, 1);
  CHECK(tables.smoothed == tables.categories);
  std::size_t changes = 0;
  for (std::size_t i = 1; i < tables.categories.size(); ++i)
    changes += tables.categories[i] != tables.categories[i - 1];
  CHECK(tables.segments.size() <= changes + 1);
  CHECK(tables.segments.size() > 7);
  fs::remove_all(dir);
}

TEST_CASE("recognize prints one line per stroke") {
  const auto rect = run({"recognize", data("rectangle.json")});
  CHECK(rect.code == 0);
  CHECK(rect.out.rfind("stroke 1: Flowchart/Rectangle", 0) == 0);
  CHECK(run({"recognize", data("scribble.json")}).out == "stroke 1: Undefined\n");
  const auto two = run({"recognize", data("two_shapes.json")});
  CHECK(two.out.find("Flowchart/Rectangle") != std::string::npos);
  CHECK(two.out.find("Mathematics/Triangle") != std::string::npos);
  CHECK(std::count(two.out.begin(), two.out.end(), '\n') == 2);
}

TEST_CASE("recognize --json matches the library response") {
  const auto r = run({"recognize", data("two_shapes.json"), "--json"});
  REQUIRE(r.code == 0);
  const auto doc = load_document(data("two_shapes.json"));
  CHECK(r.out == dump_json(recognize_response(doc, builtin_library())));
}

TEST_CASE("domains list") {
  const auto r = run({"domains", "list"});
  CHECK(r.code == 0);
  CHECK(r.out == "Flowchart: Rectangle, Diamond\nMathematics: Triangle, Angle, Square, Parallelogram\n");
}

TEST_CASE("export-tables") {
  const auto dir = fresh_dir("sketchrec_cli_export");
  const auto r = run({"export-tables", data("two_shapes.json"), "-o", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "wrote 8 tables to " + dir.string() + "\n");
  const auto doc = load_document(data("two_shapes.json"));
  for (const auto& s : doc.strokes)
    CHECK(import_tables(dir, s.id).stroke == dedup_points(s));
  fs::remove_all(dir);
  CHECK(run({"export-tables", data("two_shapes.json")}).code != 0);
}

TEST_CASE("usage errors") {
  CHECK(run({"frobnicate"}).code != 0);
  CHECK(run({"segment"}).code != 0);
}
