#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mkn/model.hpp"
#include "mkn/records.hpp"

namespace mkn {

/// Shape of a generated ground-truth network and corpus. Everything is
/// deterministic given the seed.
struct SynthSpec {
  int n_diseases = 10;
  int n_symptoms = 20;
  double edge_density = 0.25;        // (0, 1]
  double weight_low = 0.2;
  double weight_high = 1.2;
  int n_records = 200;
  int min_gold_diseases = 3;
  int max_gold_diseases = 6;
  std::uint64_t seed = 1;

  void validate() const;
};

using SynthRng = std::mt19937_64;

/// Random bipartite indication graph: every (symptom, disease) pair appears
/// with probability edge_density, and every disease keeps at least one edge.
/// Weights are uniform in [weight_low, weight_high].
std::vector<KnowledgeRule> generate_knowledge(const SynthSpec& spec, SynthRng& rng);

/// Forward-samples patient records from the network. Gold diseases are drawn
/// uniformly; each blanket symptom of a gold disease turns Present with
/// probability sigmoid(edge weight), Possible with half the remainder,
/// otherwise Absent. Off-blanket symptoms stay absent with probability 0.95
/// and otherwise contribute modifier noise.
std::vector<EvidenceRecord> sample_records(const GroundNetwork& net,
                                           const SynthSpec& spec, SynthRng& rng,
                                           int count, int first_index = 0);

}  // namespace mkn
