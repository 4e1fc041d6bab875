#pragma once

#include <cstddef>
#include <vector>

#include "mkn/encode.hpp"
#include "mkn/graph.hpp"
#include "mkn/quality.hpp"

namespace mkn {

/// Whether the individual-node potential of a symptom counts a neighboring
/// disease always (Ungated), only while that disease is active (Gated), or
/// not at all (Off).
enum class GpfMode { Gated, Ungated, Off };

const char* to_string(GpfMode mode);

struct ModelConfig {
  double sigma = 1.0;     // influence range of a node, > 0
  double distance = 1.0;  // distance between adjacent nodes, >= 0
  GpfMode gpf_mode = GpfMode::Gated;
  QualityMeasure quality_measure = QualityMeasure::PageRank;
  EncodingKind encoding = EncodingKind::ImprovedSigmoid;
  bool binarize = false;  // threshold encoded evidence to {0,1}

  void validate() const;
  /// e^(-(distance/sigma)^2), the attenuation applied to every quality term.
  double gpf_attenuation() const;
};

/// The immutable ground network: graph topology, per-edge weights, per-node
/// quality and the model configuration. Everything downstream (inference,
/// learning, evaluation) only reads from it.
class GroundNetwork {
 public:
  GroundNetwork(KnowledgeGraph graph, std::vector<double> weights,
                NodeQuality quality, ModelConfig config);

  /// Builds the network, computing node quality per config.
  static GroundNetwork build(KnowledgeGraph graph, std::vector<double> weights,
                             ModelConfig config);

  const KnowledgeGraph& graph() const { return graph_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t edge) const { return weights_[edge]; }
  const NodeQuality& quality() const { return quality_; }
  const ModelConfig& config() const { return config_; }

  const std::vector<std::size_t>& diseases() const { return diseases_; }
  const std::vector<std::size_t>& symptoms() const { return symptoms_; }

 private:
  KnowledgeGraph graph_;
  std::vector<double> weights_;
  NodeQuality quality_;
  ModelConfig config_;
  std::vector<std::size_t> diseases_;
  std::vector<std::size_t> symptoms_;
};

/// One complete assignment: nonnegative symptom values and binary disease
/// activations, both indexed by node index. Unset entries are 0.
struct WorldState {
  std::vector<double> symptom_values;
  std::vector<int> disease_values;

  static WorldState zeros(const KnowledgeGraph& graph);

  double symptom(std::size_t node) const { return symptom_values[node]; }
  int disease(std::size_t node) const { return disease_values[node]; }
};

/// Pairwise Boltzmann energy of one edge: -w * x_symptom * y_disease.
double edge_energy(const GroundNetwork& net, std::size_t edge,
                   const WorldState& world);

/// Individual-node potential of a symptom: the quality of each neighboring
/// disease, gated by its activation in Gated mode, attenuated by
/// e^(-(d/sigma)^2). Zero when the mode is Off.
double gpf(const GroundNetwork& net, std::size_t symptom_node,
           const WorldState& world);

/// Unnormalized log score of a world: sum over edges of
/// w*x*y + gpf(symptom)*x.
double log_score(const GroundNetwork& net, const WorldState& world);

inline constexpr std::size_t kEnumerationLimit = 20;

/// Normalizer over all 2^k activation patterns of `disease_set`, the
/// remaining diseases held at their world values.
double partition(const GroundNetwork& net, const WorldState& world,
                 const std::vector<std::size_t>& disease_set);

/// exp(log_score) / partition over the same enumeration.
double joint_probability(const GroundNetwork& net, const WorldState& world,
                         const std::vector<std::size_t>& disease_set);

}  // namespace mkn
