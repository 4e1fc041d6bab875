#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mkn/model.hpp"
#include "mkn/records.hpp"

namespace mkn {

/// The conditioning set of a disease: its incident edges and the symptoms on
/// them (deduplicated).
struct MarkovBlanket {
  std::size_t disease;              // node index
  std::vector<std::size_t> rules;   // incident edge indices
  std::vector<std::size_t> symptoms;  // neighbor symptom node indices
};

MarkovBlanket markov_blanket(const GroundNetwork& net,
                             const std::string& disease);
MarkovBlanket markov_blanket_at(const GroundNetwork& net,
                                std::size_t disease_node);

/// Ranked diagnosis, probability descending with ties broken by disease name
/// ascending so identical inputs serialize identically.
struct DiagnosisResult {
  struct Entry {
    std::string disease;
    double probability;
  };
  std::vector<Entry> ranked;
  int skipped_symptoms = 0;
};

/// Log-odds of the disease being active given the encoded evidence, i.e. the
/// gap between the activated and inactivated halves of the two-term softmax.
double disease_log_odds(const GroundNetwork& net, const EncodedEvidence& evidence,
                        std::size_t disease_node);

/// Same log-odds with the network's weights replaced by `weights` (indexed by
/// edge); lets the learner score candidate vectors without rebuilding.
double disease_log_odds(const GroundNetwork& net, std::span<const double> weights,
                        const EncodedEvidence& evidence,
                        std::size_t disease_node);

/// P(disease = y | evidence) for y in {0,1}; the two calls sum to one.
double disease_conditional(const GroundNetwork& net,
                           const EncodedEvidence& evidence,
                           std::size_t disease_node, int y);

/// P(disease = 1 | evidence) via the disease's blanket, evaluated with max
/// subtraction so large sums cannot overflow.
double disease_risk(const GroundNetwork& net, const EncodedEvidence& evidence,
                    const std::string& disease);
double disease_risk_at(const GroundNetwork& net, const EncodedEvidence& evidence,
                       std::size_t disease_node);

/// One risk score per query disease (default: every disease in the graph).
DiagnosisResult diagnose(const GroundNetwork& net, const EvidenceRecord& record);
DiagnosisResult diagnose(const GroundNetwork& net, const EvidenceRecord& record,
                         const std::vector<std::size_t>& query);

/// An indication event: the symptom is active and the disease holds.
struct RulePredicate {
  std::string symptom;
  std::string disease;
};

/// P(target | given) by exact enumeration over the atoms of both predicates
/// plus their graph neighborhoods; the involved symptoms range over
/// {0, Present-encoded}, the involved diseases over {0,1}, everything else
/// stays fixed at the evidence.
double rule_probability(const GroundNetwork& net, const RulePredicate& target,
                        const std::optional<RulePredicate>& given,
                        const EncodedEvidence& evidence);

/// Exact P(disease = 1 | evidence) by full enumeration of every disease
/// assignment; the test oracle for disease_risk.
double brute_force_disease_risk(const GroundNetwork& net,
                                const EncodedEvidence& evidence,
                                const std::string& disease);

}  // namespace mkn
