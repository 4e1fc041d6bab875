#include "mkn/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

namespace mkn {

MarkovBlanket markov_blanket_at(const GroundNetwork& net,
                                std::size_t disease_node) {
  MarkovBlanket blanket;
  blanket.disease = disease_node;
  std::set<std::size_t> seen;
  for (std::size_t e : net.graph().node(disease_node).edges) {
    blanket.rules.push_back(e);
    std::size_t s = net.graph().edge(e).symptom;
    if (seen.insert(s).second) blanket.symptoms.push_back(s);
  }
  return blanket;
}

MarkovBlanket markov_blanket(const GroundNetwork& net,
                             const std::string& disease) {
  auto node = net.graph().find(NodeKind::Disease, disease);
  if (!node) {
    throw Error(ErrorKind::UnknownDisease, "unknown disease \"" + disease + "\"");
  }
  return markov_blanket_at(net, *node);
}

namespace {

// Activated/inactivated halves of the two-term softmax for one disease, all
// other diseases held inactive. In gated mode the disease's gate rides on
// gpf(s) of every edge incident to s, so its term carries a factor deg(s).
struct BlanketScores {
  double inactivated = 0.0;
  double activated = 0.0;
};

// Sums in ascending value order, so equal contribution multisets round to
// identical doubles no matter how the rule file ordered the edges.
double canonical_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

BlanketScores blanket_scores(const GroundNetwork& net,
                             std::span<const double> weights,
                             const EncodedEvidence& evidence,
                             std::size_t disease_node) {
  const GpfMode mode = net.config().gpf_mode;
  const double attenuation = net.config().gpf_attenuation();
  const double m_disease = net.quality().value(disease_node);
  std::vector<double> activated;
  std::vector<double> inactivated;
  for (std::size_t e : net.graph().node(disease_node).edges) {
    const std::size_t s = net.graph().edge(e).symptom;
    const double x = evidence.value(s);
    if (x == 0.0) continue;
    activated.push_back(weights[e] * x);
    if (mode == GpfMode::Gated) {
      activated.push_back(
          static_cast<double>(net.graph().degree(s)) * m_disease * attenuation * x);
    } else if (mode == GpfMode::Ungated) {
      double u = 0.0;
      for (std::size_t d : net.graph().neighbors(s)) {
        u += net.quality().value(d) * attenuation;
      }
      activated.push_back(u * x);
      inactivated.push_back(u * x);
    }
  }
  BlanketScores scores;
  scores.activated = canonical_sum(activated);
  scores.inactivated = canonical_sum(inactivated);
  return scores;
}

double stable_softmax_pick(double picked, double other) {
  const double top = std::max(picked, other);
  const double ep = std::exp(picked - top);
  return ep / (std::exp(other - top) + ep);
}

}  // namespace

double disease_log_odds(const GroundNetwork& net, std::span<const double> weights,
                        const EncodedEvidence& evidence,
                        std::size_t disease_node) {
  BlanketScores s = blanket_scores(net, weights, evidence, disease_node);
  return s.activated - s.inactivated;
}

double disease_log_odds(const GroundNetwork& net, const EncodedEvidence& evidence,
                        std::size_t disease_node) {
  return disease_log_odds(net, net.weights(), evidence, disease_node);
}

double disease_risk_at(const GroundNetwork& net, const EncodedEvidence& evidence,
                       std::size_t disease_node) {
  BlanketScores s = blanket_scores(net, net.weights(), evidence, disease_node);
  return stable_softmax_pick(s.activated, s.inactivated);
}

double disease_conditional(const GroundNetwork& net,
                           const EncodedEvidence& evidence,
                           std::size_t disease_node, int y) {
  BlanketScores s = blanket_scores(net, net.weights(), evidence, disease_node);
  return y == 1 ? stable_softmax_pick(s.activated, s.inactivated)
                : stable_softmax_pick(s.inactivated, s.activated);
}

double disease_risk(const GroundNetwork& net, const EncodedEvidence& evidence,
                    const std::string& disease) {
  auto node = net.graph().find(NodeKind::Disease, disease);
  if (!node) {
    throw Error(ErrorKind::UnknownDisease, "unknown disease \"" + disease + "\"");
  }
  return disease_risk_at(net, evidence, *node);
}

DiagnosisResult diagnose(const GroundNetwork& net, const EvidenceRecord& record,
                         const std::vector<std::size_t>& query) {
  EncodedEvidence evidence = encode_evidence(net, record);
  DiagnosisResult result;
  result.skipped_symptoms = evidence.skipped_symptoms;
  result.ranked.reserve(query.size());
  for (std::size_t d : query) {
    result.ranked.push_back(DiagnosisResult::Entry{
        net.graph().node(d).name, disease_risk_at(net, evidence, d)});
  }
  std::sort(result.ranked.begin(), result.ranked.end(),
            [](const DiagnosisResult::Entry& a, const DiagnosisResult::Entry& b) {
              if (a.probability != b.probability) {
                return a.probability > b.probability;
              }
              return a.disease < b.disease;
            });
  return result;
}

DiagnosisResult diagnose(const GroundNetwork& net, const EvidenceRecord& record) {
  return diagnose(net, record, net.diseases());
}

namespace {

std::size_t require_node(const GroundNetwork& net, NodeKind kind,
                         const std::string& name) {
  auto node = net.graph().find(kind, name);
  if (!node) {
    throw Error(kind == NodeKind::Disease ? ErrorKind::UnknownDisease
                                          : ErrorKind::UnknownSymptom,
                std::string("unknown ") + to_string(kind) + " \"" + name + "\"");
  }
  return *node;
}

// The predicate holds in a world when its symptom is active and its disease on.
bool satisfied(const WorldState& world, std::size_t symptom, std::size_t disease) {
  return world.symptom(symptom) > 0.0 && world.disease(disease) == 1;
}

}  // namespace

double rule_probability(const GroundNetwork& net, const RulePredicate& target,
                        const std::optional<RulePredicate>& given,
                        const EncodedEvidence& evidence) {
  const std::size_t ts = require_node(net, NodeKind::Symptom, target.symptom);
  const std::size_t td = require_node(net, NodeKind::Disease, target.disease);
  std::set<std::size_t> symptom_set{ts};
  std::set<std::size_t> disease_set{td};
  std::size_t gs = ts, gd = td;
  if (given) {
    gs = require_node(net, NodeKind::Symptom, given->symptom);
    gd = require_node(net, NodeKind::Disease, given->disease);
    symptom_set.insert(gs);
    disease_set.insert(gd);
  }
  // Close over the atoms' graph neighborhoods so the restricted sum is exact
  // on the subnetwork that interacts with them.
  for (std::size_t s : std::vector<std::size_t>(symptom_set.begin(), symptom_set.end())) {
    for (std::size_t d : net.graph().neighbors(s)) disease_set.insert(d);
  }
  for (std::size_t d : std::vector<std::size_t>(disease_set.begin(), disease_set.end())) {
    for (std::size_t s : net.graph().neighbors(d)) symptom_set.insert(s);
  }
  const std::size_t total_atoms = symptom_set.size() + disease_set.size();
  if (total_atoms > kEnumerationLimit) {
    throw Error(ErrorKind::EnumerationTooLarge,
                std::to_string(total_atoms) +
                    " atoms exceed the enumeration limit of " +
                    std::to_string(kEnumerationLimit));
  }

  double present = encode(
      SymptomObservation::from_modifier("", Modifier::Present),
      net.config().encoding);
  if (net.config().binarize) present = 1.0;

  const std::vector<std::size_t> symptoms(symptom_set.begin(), symptom_set.end());
  const std::vector<std::size_t> diseases(disease_set.begin(), disease_set.end());

  WorldState world = WorldState::zeros(net.graph());
  world.symptom_values = evidence.values;

  // Single pass with log-sum-exp over the given-satisfying worlds.
  std::vector<double> scores;
  std::vector<bool> in_target;
  scores.reserve(1u << total_atoms);
  const std::uint64_t world_count = 1ull << total_atoms;
  double top = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < world_count; ++mask) {
    for (std::size_t bit = 0; bit < symptoms.size(); ++bit) {
      world.symptom_values[symptoms[bit]] = (mask >> bit) & 1u ? present : 0.0;
    }
    for (std::size_t bit = 0; bit < diseases.size(); ++bit) {
      world.disease_values[diseases[bit]] =
          (mask >> (symptoms.size() + bit)) & 1u;
    }
    if (given && !satisfied(world, gs, gd)) continue;
    scores.push_back(log_score(net, world));
    in_target.push_back(satisfied(world, ts, td));
    top = std::max(top, scores.back());
  }
  if (scores.empty()) {
    throw Error(ErrorKind::GivenHasZeroMass, "conditioning event has no worlds");
  }
  double numer = 0.0, denom = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double w = std::exp(scores[i] - top);
    denom += w;
    if (in_target[i]) numer += w;
  }
  if (denom == 0.0) {
    throw Error(ErrorKind::GivenHasZeroMass, "conditioning event has zero mass");
  }
  return numer / denom;
}

double brute_force_disease_risk(const GroundNetwork& net,
                                const EncodedEvidence& evidence,
                                const std::string& disease) {
  const std::size_t target = require_node(net, NodeKind::Disease, disease);
  const std::vector<std::size_t>& diseases = net.diseases();
  if (diseases.size() > kEnumerationLimit) {
    throw Error(ErrorKind::EnumerationTooLarge,
                std::to_string(diseases.size()) +
                    " diseases exceed the enumeration limit of " +
                    std::to_string(kEnumerationLimit));
  }
  WorldState world = WorldState::zeros(net.graph());
  world.symptom_values = evidence.values;

  const std::uint64_t count = 1ull << diseases.size();
  std::vector<double> scores(count);
  std::vector<bool> active(count);
  double top = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t bit = 0; bit < diseases.size(); ++bit) {
      world.disease_values[diseases[bit]] = (mask >> bit) & 1u;
    }
    scores[mask] = log_score(net, world);
    active[mask] = world.disease(target) == 1;
    top = std::max(top, scores[mask]);
  }
  double numer = 0.0, denom = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const double w = std::exp(scores[mask] - top);
    denom += w;
    if (active[mask]) numer += w;
  }
  return numer / denom;
}

}  // namespace mkn
