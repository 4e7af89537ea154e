#include "sketchrec/tables.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sketchrec/errors.hpp"

namespace sketchrec {

namespace {

constexpr std::string_view kPointsHeader = "ID,X,Y";
constexpr std::string_view kCategoryHeader = "ID,CAT";
constexpr std::string_view kSegmentHeader = "ID,X1,Y1,X2,Y2";

template <typename Row>
std::string render(std::string_view header, std::size_t rows, Row&& row) {
  std::string out(header);
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out += std::to_string(i + 1);
    row(i, out);
    out += '\n';
  }
  return out;
}

void append_cells(std::string& out, std::initializer_list<Coord> cells) {
  for (Coord c : cells) {
    out += ',';
    out += std::to_string(c);
  }
}

// Parses the table body into rows of integers, checking the header and
// that IDs run 1, 2, 3, ...
std::vector<std::vector<Coord>> parse_rows(std::string_view text, std::string_view header) {
  std::vector<std::vector<Coord>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  const std::size_t columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;

  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (line_no == 1) {
      if (line != header)
        throw ParseError("expected header '" + std::string(header) + "', got '" + std::string(line) + "'", 1, 1);
      continue;
    }
    if (line.empty()) {
      if (pos >= text.size())
        break;
      throw ParseError("empty row", line_no, 1);
    }

    std::vector<Coord> cells;
    std::size_t col_start = 0;
    while (true) {
      const std::size_t comma = line.find(',', col_start);
      const std::string_view cell = line.substr(col_start, comma == std::string_view::npos ? line.npos : comma - col_start);
      Coord value = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty())
        throw ParseError("non-integer cell '" + std::string(cell) + "'", line_no, col_start + 1);
      cells.push_back(value);
      if (comma == std::string_view::npos)
        break;
      col_start = comma + 1;
    }
    if (cells.size() != columns)
      throw ParseError("expected " + std::to_string(columns) + " columns, got " + std::to_string(cells.size()),
                       line_no, 1);
    if (cells[0] != static_cast<Coord>(rows.size() + 1))
      throw ParseError("expected ID " + std::to_string(rows.size() + 1) + ", got " + std::to_string(cells[0]),
                       line_no, 1);
    rows.push_back(std::move(cells));
  }
  if (line_no == 0)
    throw ParseError("missing header '" + std::string(header) + "'", 1, 1);
  return rows;
}

} // namespace

std::string table_filename(StrokeId stroke_id, TableKind kind) {
  std::string name = "sketch" + std::to_string(stroke_id);
  switch (kind) {
  case TableKind::kPoints: break;
  case TableKind::kCategories: name += "cat"; break;
  case TableKind::kSmoothed: name += "catm"; break;
  case TableKind::kSegments: name += "segment"; break;
  case TableKind::kMergedSegments: name += "segmentm"; break;
  }
  return name + ".csv";
}

std::string points_table(std::span<const Point> points) {
  return render(kPointsHeader, points.size(), [&](std::size_t i, std::string& out) {
    append_cells(out, {points[i].x, points[i].y});
  });
}

std::string category_table(std::span<const DirectionCategory> categories) {
  return render(kCategoryHeader, categories.size(), [&](std::size_t i, std::string& out) {
    append_cells(out, {to_int(categories[i])});
  });
}

std::string segment_table(std::span<const Segment> segments) {
  return render(kSegmentHeader, segments.size(), [&](std::size_t i, std::string& out) {
    const auto& s = segments[i];
    append_cells(out, {s.start.x, s.start.y, s.end.x, s.end.y});
  });
}

std::vector<Point> parse_points_table(std::string_view text) {
  std::vector<Point> out;
  for (const auto& row : parse_rows(text, kPointsHeader))
    out.push_back({row[1], row[2]});
  return out;
}

std::vector<DirectionCategory> parse_category_table(std::string_view text) {
  std::vector<DirectionCategory> out;
  std::size_t line = 1;
  for (const auto& row : parse_rows(text, kCategoryHeader)) {
    ++line;
    if (row[1] < 1 || row[1] > 8)
      throw ParseError("category must be in 1..8, got " + std::to_string(row[1]), line, 1);
    out.push_back(static_cast<DirectionCategory>(row[1]));
  }
  return out;
}

std::vector<Segment> parse_segment_table(std::string_view text) {
  std::vector<Segment> out;
  for (const auto& row : parse_rows(text, kSegmentHeader))
    out.push_back({static_cast<int>(row[0]), {row[1], row[2]}, {row[3], row[4]}});
  return out;
}

std::vector<StrokeTables> export_tables(const SketchDocument& document, std::span<const StrokeTableData> data) {
  if (data.size() != document.strokes.size())
    throw ConsistencyError("got table data for " + std::to_string(data.size()) + " strokes, document has " +
                           std::to_string(document.strokes.size()));
  std::vector<StrokeTables> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Stroke& stroke = document.strokes[i];
    const StrokeTableData& d = data[i];
    const std::string who = "stroke " + std::to_string(stroke.id) + ": ";
    const std::size_t pairs = stroke.points.empty() ? 0 : stroke.points.size() - 1;
    if (d.categories.size() != pairs)
      throw ConsistencyError(who + std::to_string(d.categories.size()) + " categories for " +
                             std::to_string(stroke.points.size()) + " points");
    if (d.smoothed.size() != d.categories.size())
      throw ConsistencyError(who + "smoothed and raw category counts differ");
    for (std::size_t k = 1; k < d.segments.size(); ++k)
      if (d.segments[k - 1].end != d.segments[k].start)
        throw ConsistencyError(who + "segments are not chained at " + std::to_string(k + 1));
    if (!d.segments.empty() &&
        (d.segments.front().start != stroke.points.front() || d.segments.back().end != stroke.points.back()))
      throw ConsistencyError(who + "segments do not span the stroke");

    out.push_back({stroke.id, points_table(stroke.points), category_table(d.categories), category_table(d.smoothed),
                   segment_table(d.segments)});
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void write_tables(std::span<const StrokeTables> tables, const std::filesystem::path& dir) {
  if (tables.empty())
    return;
  std::filesystem::create_directories(dir);
  for (const auto& t : tables) {
    write_text_file(dir / table_filename(t.stroke_id, TableKind::kPoints), t.points);
    write_text_file(dir / table_filename(t.stroke_id, TableKind::kCategories), t.categories);
    write_text_file(dir / table_filename(t.stroke_id, TableKind::kSmoothed), t.smoothed);
    write_text_file(dir / table_filename(t.stroke_id, TableKind::kSegments), t.segments);
  }
}

ImportedTables import_tables(const StrokeTables& tables) {
  ImportedTables out;
  out.stroke.id = tables.stroke_id;
  out.stroke.points = parse_points_table(tables.points);
  out.categories = parse_category_table(tables.categories);
  out.smoothed = parse_category_table(tables.smoothed);
  out.segments = parse_segment_table(tables.segments);
  return out;
}

ImportedTables import_tables(const std::filesystem::path& dir, StrokeId stroke_id) {
  StrokeTables t;
  t.stroke_id = stroke_id;
  t.points = read_text_file(dir / table_filename(stroke_id, TableKind::kPoints));
  t.categories = read_text_file(dir / table_filename(stroke_id, TableKind::kCategories));
  t.smoothed = read_text_file(dir / table_filename(stroke_id, TableKind::kSmoothed));
  t.segments = read_text_file(dir / table_filename(stroke_id, TableKind::kSegments));
  return import_tables(t);
}

} // namespace sketchrec
