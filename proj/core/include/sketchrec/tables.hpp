#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sketchrec/segmentation.hpp"
#include "sketchrec/stroke.hpp"

namespace sketchrec {

// CSV exchange format for the four per-stroke tables:
//   sketch{k}         ID,X,Y            one row per point
//   sketch{k}cat      ID,CAT            one row per adjacent pair
//   sketch{k}catm     ID,CAT            smoothed categories
//   sketch{k}segment  ID,X1,Y1,X2,Y2    one row per segment
// LF line endings, no quoting, IDs consecutive from 1. k is the stroke id.

enum class TableKind { kPoints, kCategories, kSmoothed, kSegments, kMergedSegments };

/// File name for a table, e.g. "sketch3catm.csv".
std::string table_filename(StrokeId stroke_id, TableKind kind);

std::string points_table(std::span<const Point> points);
std::string category_table(std::span<const DirectionCategory> categories);
std::string segment_table(std::span<const Segment> segments);

std::vector<Point> parse_points_table(std::string_view text);
std::vector<DirectionCategory> parse_category_table(std::string_view text);
std::vector<Segment> parse_segment_table(std::string_view text);

struct StrokeTables {
  StrokeId stroke_id = 0;
  std::string points;
  std::string categories;
  std::string smoothed;
  std::string segments;
};

/// Per-stroke inputs to export_tables, all derived from the same
/// deduplicated stroke.
struct StrokeTableData {
  std::vector<DirectionCategory> categories;
  std::vector<DirectionCategory> smoothed;
  std::vector<Segment> segments;
};

/// Throws ConsistencyError when the per-stroke inputs do not line up with
/// the document (count mismatch, category count != points - 1, ...).
std::vector<StrokeTables> export_tables(const SketchDocument& document,
                                        std::span<const StrokeTableData> data);

/// Writes the four files of every stroke into `dir` (created if missing).
void write_tables(std::span<const StrokeTables> tables, const std::filesystem::path& dir);

struct ImportedTables {
  Stroke stroke;
  std::vector<DirectionCategory> categories;
  std::vector<DirectionCategory> smoothed;
  std::vector<Segment> segments;

  friend bool operator==(const ImportedTables&, const ImportedTables&) = default;
};

ImportedTables import_tables(const StrokeTables& tables);
ImportedTables import_tables(const std::filesystem::path& dir, StrokeId stroke_id);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace sketchrec
