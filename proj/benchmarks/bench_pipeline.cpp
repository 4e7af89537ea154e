#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "sketchrec/beautifier.hpp"
#include "sketchrec/recognizer.hpp"
#include "sketchrec/response.hpp"
#include "sketchrec/segmentation.hpp"
#include "sketchrec/shape_dsl.hpp"
#include "synthetic.hpp"

using namespace sketchrec;

namespace {

SketchDocument shapes(int count, double step) {
  SketchDocument doc;
  for (int i = 0; i < count; ++i) {
    const Vec2 o{40.0 + (i % 20) * 60.0, 40.0 + (i / 20) * 60.0};
    switch (i % 3) {
    case 0: doc.strokes.push_back(testing::rectangle_stroke(i + 1, o, 50, 35, step)); break;
    case 1: doc.strokes.push_back(testing::triangle_stroke(i + 1, o, 45, step)); break;
    default: doc.strokes.push_back(testing::polyline_stroke(i + 1, {o + Vec2{0, 45}, o, o + Vec2{45, 0}}, step)); break;
    }
  }
  return doc;
}

void BM_SegmentStroke(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto stroke = testing::random_stroke(rng, 1, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(segment_stroke(stroke));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SegmentStroke)->Arg(20)->Arg(200)->Arg(2000);

void BM_RecognizeDocument(benchmark::State& state) {
  const auto doc = shapes(static_cast<int>(state.range(0)), 10.0);
  const auto& lib = builtin_library();
  for (auto _ : state)
    benchmark::DoNotOptimize(recognize(doc, lib));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RecognizeDocument)->Arg(1)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_RecognizeResponse200(benchmark::State& state) {
  const auto doc = shapes(200, 10.0);
  const auto& lib = builtin_library();
  for (auto _ : state)
    benchmark::DoNotOptimize(dump_json(recognize_response(doc, lib)));
}
BENCHMARK(BM_RecognizeResponse200)->Unit(benchmark::kMillisecond);

void BM_BeautifyRectangle(benchmark::State& state) {
  const std::vector<Vec2> chain{{102, 30}, {99, 123}, {171, 129}, {160, 30}, {98, 27}};
  const auto& spec = builtin_library().domains[0].shapes[0];
  for (auto _ : state)
    benchmark::DoNotOptimize(beautify_chain(chain, spec));
}
BENCHMARK(BM_BeautifyRectangle);

void BM_ParseBuiltinLibrary(benchmark::State& state) {
  const auto text = builtin_library_source();
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_library(text));
}
BENCHMARK(BM_ParseBuiltinLibrary);

} // namespace

BENCHMARK_MAIN();
