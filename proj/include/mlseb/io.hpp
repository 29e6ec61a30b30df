#pragma once

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mlseb/format.hpp"
#include "mlseb/types.hpp"

namespace mlseb {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

/// Split a CSV line on commas into trimmed fields.
inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

}  // namespace detail

/// Read `x1,y1,x2,y2` rows (optional header) and min-max normalize the
/// drawing into [0,width] x [0,height], preserving aspect ratio and
/// centering the slack axis. Zero-length rows are dropped and counted.
template <typename Scalar>
[[nodiscard]] Graph<Scalar> load_edge_csv(const std::string& path, Scalar width, Scalar height) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  Graph<Scalar> graph;
  graph.width = width;
  graph.height = height;

  std::string line;
  long long line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split_fields(text);
    double v[4];
    const bool numeric = fields.size() == 4 && detail::parse_double(fields[0], v[0]) &&
                         detail::parse_double(fields[1], v[1]) &&
                         detail::parse_double(fields[2], v[2]) &&
                         detail::parse_double(fields[3], v[3]);
    if (!numeric) {
      if (first_content_line) {  // tolerate a header row
        first_content_line = false;
        continue;
      }
      throw ParseError("'" + path + "' line " + std::to_string(line_no) +
                       ": expected 4 comma-separated numbers");
    }
    first_content_line = false;
    Edge<Scalar> edge{Vec2<Scalar>(Scalar(v[0]), Scalar(v[1])),
                      Vec2<Scalar>(Scalar(v[2]), Scalar(v[3]))};
    if (edge.p == edge.q) {
      ++graph.dropped_zero_length;
      continue;
    }
    graph.edges.push_back(edge);
  }
  if (graph.edges.empty())
    throw EmptyInputError("'" + path + "' contains no usable edges (" +
                          std::to_string(graph.dropped_zero_length) + " zero-length rows dropped)");

  Vec2<Scalar> lo = graph.edges.front().p;
  Vec2<Scalar> hi = lo;
  for (const auto& edge : graph.edges) {
    lo = lo.cwiseMin(edge.p).cwiseMin(edge.q);
    hi = hi.cwiseMax(edge.p).cwiseMax(edge.q);
  }
  const Vec2<Scalar> extent = hi - lo;
  Scalar scale;
  if (extent.x() > Scalar(0) && extent.y() > Scalar(0))
    scale = std::min(width / extent.x(), height / extent.y());
  else if (extent.x() > Scalar(0))
    scale = width / extent.x();
  else
    scale = height / extent.y();
  const Vec2<Scalar> offset((width - scale * extent.x()) / Scalar(2),
                            (height - scale * extent.y()) / Scalar(2));
  for (auto& edge : graph.edges) {
    edge.p = offset + scale * (edge.p - lo);
    edge.q = offset + scale * (edge.q - lo);
  }
  return graph;
}

/// One row per point, `edge_id,point_index,x,y`, ordered by (edge, index).
/// Coordinates are written with full precision so a re-read reproduces the
/// set exactly.
template <typename Scalar>
void write_polylines_csv(const PolylineSet<Scalar>& polys, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "edge_id,point_index,x,y\n";
  for (std::size_t e = 0; e < polys.lines.size(); ++e) {
    const auto& line = polys.lines[e];
    for (std::size_t k = 0; k < line.size(); ++k) {
      out << e << ',' << k << ',' << format_value(double(line[k].x())) << ','
          << format_value(double(line[k].y())) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

template <typename Scalar>
[[nodiscard]] PolylineSet<Scalar> read_polylines_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  PolylineSet<Scalar> polys;
  std::string line;
  long long line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split_fields(text);
    double v[4];
    const bool numeric = fields.size() == 4 && detail::parse_double(fields[0], v[0]) &&
                         detail::parse_double(fields[1], v[1]) &&
                         detail::parse_double(fields[2], v[2]) &&
                         detail::parse_double(fields[3], v[3]);
    if (!numeric) {
      if (first_content_line) {
        first_content_line = false;
        continue;
      }
      throw ParseError("'" + path + "' line " + std::to_string(line_no) +
                       ": expected edge_id,point_index,x,y");
    }
    first_content_line = false;
    const auto edge = static_cast<long long>(v[0]);
    const auto index = static_cast<long long>(v[1]);
    if (edge < 0 || edge > static_cast<long long>(polys.lines.size()))
      throw ParseError("'" + path + "' line " + std::to_string(line_no) +
                       ": edge ids must be contiguous from 0");
    if (edge == static_cast<long long>(polys.lines.size())) polys.lines.emplace_back();
    auto& points = polys.lines[static_cast<std::size_t>(edge)];
    if (index != static_cast<long long>(points.size()))
      throw ParseError("'" + path + "' line " + std::to_string(line_no) +
                       ": point indices must be sequential from 0");
    points.emplace_back(Scalar(v[2]), Scalar(v[3]));
  }
  for (std::size_t e = 0; e < polys.lines.size(); ++e) {
    if (polys.lines[e].size() < 2)
      throw ParseError("'" + path + "': edge " + std::to_string(e) + " has fewer than 2 points");
  }
  return polys;
}

}  // namespace mlseb
