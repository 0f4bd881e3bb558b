#pragma once

// Text format for ordered diagrams and named points.
//
//   bvd 1
//   level 1
//     a <- root root
//   level 2
//     v <- a a
//     _ <- a          # unnamed, referenced as 1
//   repeat from 2 period 1
//   point x = a:1 v:2 | v:1 (v:1)
//
// A vertex line lists its sources in ordinal order. A point is its base
// edges (range:ordinal, one per level from level 1), then optionally `|`
// with explicit tail edges and a parenthesized cycle that repeats forever.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bvd/diagram.hpp"
#include "bvd/vershik.hpp"

namespace bvd {

inline constexpr int kDocumentVersion = 1;

struct NamedPoint {
  std::string name;
  PointApprox point;
  bool operator==(const NamedPoint&) const = default;
};

struct DiagramDocument {
  int version = kDocumentVersion;
  OrderedDiagram diagram;
  // names[n][v]; empty when the vertex is unnamed. names[0] is {"root"}.
  std::vector<std::vector<std::string>> names;
  std::vector<NamedPoint> points;

  // A name or a decimal index; levels past the stored prefix use the repeat.
  std::optional<VertexId> find_vertex(std::size_t n, std::string_view token) const;
  std::string vertex_label(std::size_t n, VertexId v) const;
  const PointApprox* find_point(std::string_view name) const;

  bool operator==(const DiagramDocument&) const = default;
};

// Wraps a diagram with unnamed vertices.
DiagramDocument make_document(OrderedDiagram diagram);

// Throws ParseError with line and column. Out-of-range indices are kept and
// left to validate_and_profile.
DiagramDocument parse_document(std::string_view text);
std::string serialize_document(const DiagramDocument& doc);
std::string serialize_diagram(const OrderedDiagram& diagram);

// Throws IoError when the file cannot be read or written.
DiagramDocument load_document(const std::filesystem::path& path);
void save_document(const std::filesystem::path& path, const DiagramDocument& doc);

}  // namespace bvd
