#pragma once

#include <map>
#include <string>

#include "mkn/graph.hpp"
#include "mkn/quality.hpp"

namespace mkn {

/// Reads a whole file; throws IoError with the path in the message.
std::string read_file(const std::string& path);

/// Write-then-rename so partial output never lands under the final name.
void atomic_write(const std::string& path, const std::string& content);

/// Canonical graph JSON: nodes sorted by (name, kind), edges in index order
/// as [symptom, disease, weight], quality values grouped per measure and
/// node kind. Byte-identical for identical inputs.
std::string graph_json(const KnowledgeGraph& graph,
                       const std::vector<double>& weights,
                       const std::map<QualityMeasure, NodeQuality>& quality);

}  // namespace mkn
