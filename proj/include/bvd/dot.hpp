#pragma once

// Graphviz rendering: one rank per level, edges from source to range labeled
// with their ordinals.

#include <optional>
#include <string>

#include "bvd/document.hpp"

namespace bvd {

struct DotOptions {
  // Defaults to the stored depth.
  std::optional<std::size_t> max_level;
  bool ordinals = true;
};

std::string export_dot(const OrderedDiagram& diagram, const DotOptions& options = {});
// Uses the document's vertex names as node labels.
std::string export_dot(const DiagramDocument& doc, const DotOptions& options = {});

}  // namespace bvd
