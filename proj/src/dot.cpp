#include "bvd/dot.hpp"

#include <sstream>

#include "bvd/errors.hpp"

namespace bvd {

namespace {

std::string node_id(std::size_t n, VertexId v) { return "n" + std::to_string(n) + "_" + std::to_string(v); }

}  // namespace

std::string export_dot(const DiagramDocument& doc, const DotOptions& options) {
  const OrderedDiagram& d = doc.diagram;
  const std::size_t depth = options.max_level.value_or(d.stored_depth());
  if (depth > 0 && !d.has_level(depth)) throw ContractError("level " + std::to_string(depth) + " is beyond the diagram");
  std::ostringstream out;
  out << "digraph bratteli {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=circle, fontsize=10];\n";
  for (std::size_t n = 0; n <= depth; ++n) {
    out << "  { rank=same;";
    for (VertexId v = 0; v < d.vertex_count(n); ++v)
      out << ' ' << node_id(n, v) << " [label=\"" << doc.vertex_label(n, v) << "\"];";
    out << " }\n";
  }
  for (std::size_t n = 1; n <= depth; ++n)
    for (VertexId v = 0; v < d.vertex_count(n); ++v) {
      const auto& sources = d.sources(n, v);
      for (std::size_t o = 0; o < sources.size(); ++o) {
        out << "  " << node_id(n - 1, sources[o]) << " -> " << node_id(n, v);
        if (options.ordinals) out << " [label=\"" << o + 1 << "\"]";
        out << ";\n";
      }
    }
  out << "}\n";
  return out.str();
}

std::string export_dot(const OrderedDiagram& diagram, const DotOptions& options) {
  return export_dot(make_document(diagram), options);
}

}  // namespace bvd
