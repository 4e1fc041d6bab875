#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mkn/graph.hpp"
#include "mkn/model.hpp"
#include "mkn/records.hpp"

namespace testutil {

/// One TSV rule line; omit `weight` to leave the field out entirely.
inline std::string rule_line(const std::string& symptom,
                             const std::string& disease,
                             const std::string& weight = "") {
  std::string line = "indication\t" + symptom + "\t" + disease;
  if (!weight.empty()) line += "\t" + weight;
  return line + "\n";
}

/// Grounds a network from inline TSV text with the given configuration.
inline mkn::GroundNetwork network_from_text(
    const std::string& text, mkn::ModelConfig config = {},
    std::optional<double> init = std::nullopt) {
  mkn::BuiltNetwork built = mkn::build_graph(mkn::parse_rules_text(text), init);
  return mkn::GroundNetwork::build(std::move(built.graph),
                                   std::move(built.weights), config);
}

/// Same, but every node's quality is pinned to `m` so hand calculations do
/// not depend on a centrality algorithm.
inline mkn::GroundNetwork network_with_quality(const std::string& text,
                                               double m,
                                               mkn::ModelConfig config = {}) {
  mkn::BuiltNetwork built = mkn::build_graph(mkn::parse_rules_text(text));
  mkn::NodeQuality quality{
      config.quality_measure,
      std::vector<double>(built.graph.node_count(), m)};
  return mkn::GroundNetwork(std::move(built.graph), std::move(built.weights),
                            std::move(quality), config);
}

/// A record built from (symptom, modifier) pairs plus gold disease names.
inline mkn::EvidenceRecord make_record(
    std::string id,
    const std::vector<std::pair<std::string, mkn::Modifier>>& symptoms,
    std::vector<std::string> diseases) {
  mkn::EvidenceRecord record;
  record.id = std::move(id);
  for (const auto& [name, modifier] : symptoms) {
    record.symptoms.push_back(
        mkn::SymptomObservation::from_modifier(name, modifier));
  }
  record.diseases = std::move(diseases);
  return record;
}

}  // namespace testutil
