#include "mkn/model.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mkn {

const char* to_string(GpfMode mode) {
  switch (mode) {
    case GpfMode::Gated: return "gated";
    case GpfMode::Ungated: return "ungated";
    case GpfMode::Off: return "off";
  }
  return "?";
}

void ModelConfig::validate() const {
  if (!(sigma > 0.0)) {
    throw Error(ErrorKind::InvalidSpec, "sigma must be > 0");
  }
  if (distance < 0.0) {
    throw Error(ErrorKind::InvalidSpec, "distance must be >= 0");
  }
}

double ModelConfig::gpf_attenuation() const {
  const double ratio = distance / sigma;
  return std::exp(-ratio * ratio);
}

GroundNetwork::GroundNetwork(KnowledgeGraph graph, std::vector<double> weights,
                             NodeQuality quality, ModelConfig config)
    : graph_(std::move(graph)),
      weights_(std::move(weights)),
      quality_(std::move(quality)),
      config_(config) {
  config_.validate();
  if (weights_.size() != graph_.edge_count()) {
    throw Error(ErrorKind::InvalidSpec, "weight vector length != edge count");
  }
  if (quality_.values.size() != graph_.node_count()) {
    throw Error(ErrorKind::InvalidSpec, "quality vector length != node count");
  }
  diseases_ = graph_.nodes_of_kind(NodeKind::Disease);
  symptoms_ = graph_.nodes_of_kind(NodeKind::Symptom);
}

GroundNetwork GroundNetwork::build(KnowledgeGraph graph,
                                   std::vector<double> weights,
                                   ModelConfig config) {
  NodeQuality quality = compute_quality(graph, config.quality_measure);
  return GroundNetwork(std::move(graph), std::move(weights), std::move(quality),
                       config);
}

WorldState WorldState::zeros(const KnowledgeGraph& graph) {
  return WorldState{std::vector<double>(graph.node_count(), 0.0),
                    std::vector<int>(graph.node_count(), 0)};
}

double edge_energy(const GroundNetwork& net, std::size_t edge,
                   const WorldState& world) {
  const auto& e = net.graph().edge(edge);
  return -net.weight(edge) * world.symptom(e.symptom) *
         static_cast<double>(world.disease(e.disease));
}

double gpf(const GroundNetwork& net, std::size_t symptom_node,
           const WorldState& world) {
  const GpfMode mode = net.config().gpf_mode;
  if (mode == GpfMode::Off) return 0.0;
  const double attenuation = net.config().gpf_attenuation();
  double u = 0.0;
  for (std::size_t d : net.graph().neighbors(symptom_node)) {
    const double gate =
        mode == GpfMode::Gated ? static_cast<double>(world.disease(d)) : 1.0;
    u += net.quality().value(d) * gate * attenuation;
  }
  return u;
}

double log_score(const GroundNetwork& net, const WorldState& world) {
  double total = 0.0;
  for (std::size_t e = 0; e < net.graph().edge_count(); ++e) {
    const auto& edge = net.graph().edge(e);
    const double x = world.symptom(edge.symptom);
    if (x == 0.0) continue;  // both terms carry the factor x
    total += net.weight(e) * x * static_cast<double>(world.disease(edge.disease));
    total += gpf(net, edge.symptom, world) * x;
  }
  return total;
}

double partition(const GroundNetwork& net, const WorldState& world,
                 const std::vector<std::size_t>& disease_set) {
  if (disease_set.size() > kEnumerationLimit) {
    throw Error(ErrorKind::EnumerationTooLarge,
                std::to_string(disease_set.size()) +
                    " diseases exceed the enumeration limit of " +
                    std::to_string(kEnumerationLimit));
  }
  WorldState scratch = world;
  double z = 0.0;
  const std::uint64_t count = 1ull << disease_set.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t bit = 0; bit < disease_set.size(); ++bit) {
      scratch.disease_values[disease_set[bit]] = (mask >> bit) & 1u;
    }
    z += std::exp(log_score(net, scratch));
  }
  return z;
}

double joint_probability(const GroundNetwork& net, const WorldState& world,
                         const std::vector<std::size_t>& disease_set) {
  return std::exp(log_score(net, world)) / partition(net, world, disease_set);
}

}  // namespace mkn
