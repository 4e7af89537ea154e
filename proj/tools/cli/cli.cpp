#include "cli/cli.hpp"

#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "service/http_server.hpp"
#include "sketchrec/errors.hpp"
#include "sketchrec/recognizer.hpp"
#include "sketchrec/response.hpp"
#include "sketchrec/segmentation.hpp"
#include "sketchrec/shape_dsl.hpp"
#include "sketchrec/stroke.hpp"
#include "sketchrec/tables.hpp"

namespace sketchrec::cli {

namespace {

namespace fs = std::filesystem;

// Distinguishes "could not read" from "read but invalid".
class IoFailure : public Error {
public:
  using Error::Error;
};

SketchDocument read_document(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec))
    throw IoFailure("cannot read sketch file '" + path + "'");
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw IoFailure(e.what());
  }
  try {
    return parse_document(text);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

DomainLibrary read_library(const std::string& dir) {
  if (dir.empty())
    return builtin_library();
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw IoFailure("cannot read domain directory '" + dir + "'");
  return load_library_dir(dir);
}

struct SegmentationFlags {
  int block_size = SmoothingConfig{}.block_size;
  double max_deviation = MergeConfig{}.max_deviation;

  void attach(CLI::App& cmd) {
    cmd.add_option("--block-size", block_size, "Categories per smoothing block")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--max-deviation", max_deviation, "Collinear merge tolerance in pixels")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }

  SegmentationConfig config() const { return {{block_size}, {max_deviation}}; }
};

// Runs the pipeline per stroke, tolerating strokes too short to segment.
struct DocumentSegmentation {
  std::vector<StrokeTableData> tables;
  std::vector<std::vector<Segment>> merged;
  std::vector<std::string> errors;
  SketchDocument deduplicated;
};

DocumentSegmentation segment_document(const SketchDocument& doc, const SegmentationConfig& cfg) {
  DocumentSegmentation out;
  out.deduplicated.canvas = doc.canvas;
  for (const auto& stroke : doc.strokes) {
    Stroke clean = dedup_points(stroke);
    StrokeTableData data;
    std::vector<Segment> merged;
    std::string error;
    try {
      StrokeSegmentation s = analyze_stroke(clean, cfg);
      data = {std::move(s.categories), std::move(s.smoothed), std::move(s.raw)};
      merged = std::move(s.merged);
    } catch (const GeometryError& e) {
      error = e.what();
      if (clean.points.size() >= 2) {
        data.categories = categorize(clean.points);
        data.smoothed = smooth(data.categories, cfg.smoothing);
      }
    }
    out.deduplicated.strokes.push_back(std::move(clean));
    out.tables.push_back(std::move(data));
    out.merged.push_back(std::move(merged));
    out.errors.push_back(std::move(error));
  }
  return out;
}

std::vector<StrokeTables> write_document_tables(const DocumentSegmentation& seg, const fs::path& dir) {
  auto tables = export_tables(seg.deduplicated, seg.tables);
  try {
    write_tables(tables, dir);
  } catch (const fs::filesystem_error& e) {
    throw IoFailure(e.what());
  } catch (const Error& e) {
    throw IoFailure(e.what());
  }
  return tables;
}

service::RecognitionServer* g_server = nullptr;

void on_signal(int) {
  if (g_server)
    g_server->stop();
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sketch recognition by direction segmentation and domain classification", "sketchrec"};
  app.require_subcommand(1);

  // segment
  std::string segment_file;
  std::string segment_dir = "tables";
  SegmentationFlags segment_flags;
  auto* segment = app.add_subcommand("segment", "Segment strokes and write the per-stroke tables");
  segment->add_option("file", segment_file, "Sketch file")->required();
  segment->add_option("-o,--output", segment_dir, "Output directory")->capture_default_str();
  segment_flags.attach(*segment);

  // recognize
  std::string recognize_file;
  std::string recognize_domains;
  bool recognize_json = false;
  SegmentationFlags recognize_flags;
  auto* recognize_cmd = app.add_subcommand("recognize", "Recognize every stroke of a sketch");
  recognize_cmd->add_option("file", recognize_file, "Sketch file")->required();
  recognize_cmd->add_option("--domains", recognize_domains, "Directory of .dsl domain files (default: builtin)");
  recognize_cmd->add_flag("--json", recognize_json, "Emit the structured response");
  recognize_flags.attach(*recognize_cmd);

  // domains list
  std::string list_domains;
  auto* domains = app.add_subcommand("domains", "Inspect domain libraries");
  domains->require_subcommand(1);
  auto* list = domains->add_subcommand("list", "List domains and their shapes");
  list->add_option("--domains", list_domains, "Directory of .dsl domain files (default: builtin)");

  // export-tables
  std::string export_file;
  std::string export_dir;
  auto* export_cmd = app.add_subcommand("export-tables", "Write the four per-stroke tables");
  export_cmd->add_option("file", export_file, "Sketch file")->required();
  export_cmd->add_option("-o,--output", export_dir, "Output directory")->required();

  // serve
  service::ServerOptions serve_opts;
  std::string serve_domains;
  std::string serve_static;
  SegmentationFlags serve_flags;
  auto* serve = app.add_subcommand("serve", "Run the HTTP recognition service");
  serve->add_option("--port", serve_opts.port, "TCP port (0 picks a free one)")->capture_default_str();
  serve->add_option("--host", serve_opts.host, "Listen address")->capture_default_str();
  serve->add_option("--domains", serve_domains, "Directory of .dsl domain files (default: builtin)");
  serve->add_option("--static", serve_static, "Directory of UI assets served at /");
  serve_flags.attach(*serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*segment) {
      const auto doc = read_document(segment_file);
      const auto seg = segment_document(doc, segment_flags.config());
      write_document_tables(seg, segment_dir);
      for (std::size_t i = 0; i < seg.deduplicated.strokes.size(); ++i) {
        const auto& stroke = seg.deduplicated.strokes[i];
        out << "stroke " << stroke.id << ": " << stroke.points.size() << " points";
        if (!seg.errors[i].empty()) {
          out << ", not segmented (" << seg.errors[i] << ")\n";
          continue;
        }
        write_text_file(fs::path(segment_dir) / table_filename(stroke.id, TableKind::kMergedSegments),
                        segment_table(seg.merged[i]));
        out << ", " << seg.tables[i].segments.size() << " segments, " << seg.merged[i].size() << " merged\n";
      }
      return kOk;
    }

    if (*recognize_cmd) {
      const auto doc = read_document(recognize_file);
      const auto library = read_library(recognize_domains);
      if (recognize_json) {
        out << dump_json(recognize_response(doc, library, recognize_flags.config()));
      } else {
        for (const auto& r : recognize(doc, library, recognize_flags.config()))
          out << format_result_line(r) << "\n";
      }
      return kOk;
    }

    if (*list) {
      const auto library = read_library(list_domains);
      for (const auto& d : library.domains) {
        out << d.name << ":";
        for (std::size_t i = 0; i < d.shapes.size(); ++i)
          out << (i ? ", " : " ") << d.shapes[i].name;
        out << "\n";
      }
      return kOk;
    }

    if (*export_cmd) {
      const auto doc = read_document(export_file);
      const auto tables = write_document_tables(segment_document(doc, {}), export_dir);
      out << "wrote " << tables.size() * 4 << " tables to " << export_dir << "\n";
      return kOk;
    }

    if (*serve) {
      if (!serve_static.empty())
        serve_opts.static_dir = serve_static;
      serve_opts.segmentation = serve_flags.config();
      service::RecognitionServer server(read_library(serve_domains), serve_opts);
      const int port = server.bind();
      out << "listening on http://" << serve_opts.host << ":" << port << std::endl;
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      server.listen();
      g_server = nullptr;
      return kOk;
    }
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kOk;
}

} // namespace sketchrec::cli
