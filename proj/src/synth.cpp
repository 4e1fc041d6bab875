#include "mkn/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

namespace mkn {

void SynthSpec::validate() const {
  if (n_diseases < 1 || n_symptoms < 1 || n_records < 1) {
    throw Error(ErrorKind::InvalidSpec, "counts must be at least 1");
  }
  if (!(edge_density > 0.0) || edge_density > 1.0) {
    throw Error(ErrorKind::InvalidSpec, "edge density must be in (0, 1]");
  }
  if (!std::isfinite(weight_low) || !std::isfinite(weight_high) ||
      weight_low > weight_high) {
    throw Error(ErrorKind::InvalidSpec, "weight range must be finite and ordered");
  }
  if (min_gold_diseases < 1 || min_gold_diseases > max_gold_diseases ||
      max_gold_diseases > n_diseases) {
    throw Error(ErrorKind::InvalidSpec,
                "gold-disease range must satisfy 1 <= min <= max <= diseases");
  }
}

namespace {

std::string indexed_name(char prefix, int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%04d", prefix, i);
  return buf;
}

double unit(SynthRng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

std::vector<KnowledgeRule> generate_knowledge(const SynthSpec& spec,
                                              SynthRng& rng) {
  spec.validate();
  std::vector<KnowledgeRule> rules;
  std::vector<int> disease_degree(spec.n_diseases, 0);
  for (int s = 0; s < spec.n_symptoms; ++s) {
    for (int d = 0; d < spec.n_diseases; ++d) {
      if (unit(rng) < spec.edge_density) {
        rules.push_back(KnowledgeRule{indexed_name('s', s), indexed_name('d', d),
                                      std::nullopt});
        ++disease_degree[d];
      }
    }
  }
  // No disease may end up unreachable: give degree-0 diseases one random edge.
  for (int d = 0; d < spec.n_diseases; ++d) {
    if (disease_degree[d] > 0) continue;
    const int s = std::uniform_int_distribution<int>(0, spec.n_symptoms - 1)(rng);
    rules.push_back(KnowledgeRule{indexed_name('s', s), indexed_name('d', d),
                                  std::nullopt});
  }
  for (KnowledgeRule& rule : rules) {
    rule.weight = spec.weight_low == spec.weight_high
                      ? spec.weight_low
                      : std::uniform_real_distribution<double>(
                            spec.weight_low, spec.weight_high)(rng);
  }
  return rules;
}

std::vector<EvidenceRecord> sample_records(const GroundNetwork& net,
                                           const SynthSpec& spec, SynthRng& rng,
                                           int count, int first_index) {
  spec.validate();
  const std::vector<std::size_t>& diseases = net.diseases();
  if (diseases.empty()) {
    throw Error(ErrorKind::EmptyRuleSet, "network has no diseases to sample");
  }
  const int max_gold =
      std::min<int>(spec.max_gold_diseases, static_cast<int>(diseases.size()));
  const int min_gold = std::min(spec.min_gold_diseases, max_gold);

  std::vector<EvidenceRecord> records;
  records.reserve(static_cast<std::size_t>(count));
  std::vector<std::size_t> pool(diseases.begin(), diseases.end());
  for (int r = 0; r < count; ++r) {
    EvidenceRecord record;
    {
      char buf[16];
      std::snprintf(buf, sizeof buf, "r%06d", first_index + r);
      record.id = buf;
    }
    const int k =
        std::uniform_int_distribution<int>(min_gold, max_gold)(rng);
    // Partial Fisher-Yates for k distinct gold diseases.
    for (int i = 0; i < k; ++i) {
      const std::size_t j = std::uniform_int_distribution<std::size_t>(
          static_cast<std::size_t>(i), pool.size() - 1)(rng);
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> gold(pool.begin(), pool.begin() + k);
    std::sort(gold.begin(), gold.end());
    for (std::size_t d : gold) record.diseases.push_back(net.graph().node(d).name);

    // Blanket pass: each edge of a gold disease votes on its symptom; a
    // stronger outcome never downgrades to a weaker one.
    std::vector<int> level(net.graph().node_count(), -1);  // -1 = untouched
    for (std::size_t d : gold) {
      for (std::size_t e : net.graph().node(d).edges) {
        const std::size_t s = net.graph().edge(e).symptom;
        const double p_present = sigmoid(net.weight(e));
        const double u = unit(rng);
        int drawn = 0;  // absent
        if (u < p_present) {
          drawn = 2;
        } else if (u < p_present + (1.0 - p_present) * 0.5) {
          drawn = 1;
        }
        level[s] = std::max(level[s], drawn);
      }
    }
    // Noise pass over the untouched symptoms, in node order. Noise leans
    // hard toward the weaker modifier, so graded encodings can discount it.
    for (std::size_t s : net.symptoms()) {
      if (level[s] == -1) {
        if (unit(rng) < 0.95) continue;
        level[s] = unit(rng) < 0.9 ? 1 : 2;
      }
      if (level[s] <= 0) continue;
      record.symptoms.push_back(SymptomObservation::from_modifier(
          net.graph().node(s).name,
          level[s] == 2 ? Modifier::Present : Modifier::Possible));
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace mkn
