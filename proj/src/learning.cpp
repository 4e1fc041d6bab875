#include "mkn/learning.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mkn {

const char* to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::Learned: return "learned";
    case WeightMode::Constant: return "constant";
    case WeightMode::LearnedNonnegative: return "nonneg";
  }
  return "?";
}

void LearningConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorKind::InvalidSpec, "learning rate must be positive");
  }
  if (iterations < 1) {
    throw Error(ErrorKind::InvalidSpec, "iterations must be at least 1");
  }
  if (!std::isfinite(init_weight)) {
    throw Error(ErrorKind::InvalidSpec, "initial weight must be finite");
  }
}

namespace {

// Neumaier's variant of Kahan summation: the order the terms arrive in stops
// mattering at the accuracy we assert on.
struct CompensatedSum {
  double sum = 0.0;
  double correction = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      correction += (sum - t) + v;
    } else {
      correction += (v - t) + sum;
    }
    sum = t;
  }
  double get() const { return sum + correction; }
};

double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// log P(y = gold | blanket) from the log-odds; exact 0 when saturated.
double log_conditional(double log_odds, bool gold) {
  return gold ? -softplus(-log_odds) : -softplus(log_odds);
}

double pll_over_encoded(const GroundNetwork& net,
                        std::span<const double> weights,
                        const std::vector<EncodedEvidence>& evidence,
                        const std::vector<std::vector<char>>& gold) {
  CompensatedSum total;
  const std::vector<std::size_t>& diseases = net.diseases();
  for (std::size_t r = 0; r < evidence.size(); ++r) {
    for (std::size_t j = 0; j < diseases.size(); ++j) {
      const double odds = disease_log_odds(net, weights, evidence[r], diseases[j]);
      total.add(log_conditional(odds, gold[r][j] != 0));
    }
  }
  return total.get();
}

struct EncodedCorpus {
  std::vector<EncodedEvidence> evidence;
  std::vector<std::vector<char>> gold;  // [record][disease position]
};

EncodedCorpus encode_corpus(const GroundNetwork& net,
                            const std::vector<EvidenceRecord>& records) {
  EncodedCorpus corpus;
  corpus.evidence.reserve(records.size());
  corpus.gold.reserve(records.size());
  const std::vector<std::size_t>& diseases = net.diseases();
  for (const EvidenceRecord& record : records) {
    corpus.evidence.push_back(encode_evidence(net, record));
    std::vector<char> row(diseases.size(), 0);
    for (std::size_t j = 0; j < diseases.size(); ++j) {
      row[j] = record.has_gold(net.graph().node(diseases[j]).name) ? 1 : 0;
    }
    corpus.gold.push_back(std::move(row));
  }
  return corpus;
}

}  // namespace

double pseudo_log_likelihood(const GroundNetwork& net,
                             const std::vector<EvidenceRecord>& records) {
  EncodedCorpus corpus = encode_corpus(net, records);
  return pll_over_encoded(net, net.weights(), corpus.evidence, corpus.gold);
}

double pll_gradient(const GroundNetwork& net,
                    const std::vector<EvidenceRecord>& records,
                    std::size_t edge) {
  const std::size_t s = net.graph().edge(edge).symptom;
  const std::size_t d = net.graph().edge(edge).disease;
  const std::string& disease_name = net.graph().node(d).name;
  CompensatedSum slope;
  for (const EvidenceRecord& record : records) {
    EncodedEvidence evidence = encode_evidence(net, record);
    const double x = evidence.value(s);
    if (x == 0.0) continue;
    const double y = record.has_gold(disease_name) ? 1.0 : 0.0;
    const double p = sigmoid(disease_log_odds(net, net.weights(), evidence, d));
    slope.add(x * (y - p));
  }
  return slope.get();
}

LearnResult learn_weights(const GroundNetwork& net,
                          const std::vector<EvidenceRecord>& records,
                          const LearningConfig& config) {
  config.validate();
  const std::size_t edge_count = net.graph().edge_count();
  const std::vector<std::size_t>& diseases = net.diseases();

  EncodedCorpus corpus = encode_corpus(net, records);

  // Disease node index -> position in the diseases list, for the gold rows.
  std::vector<std::size_t> position(net.graph().node_count(), 0);
  for (std::size_t j = 0; j < diseases.size(); ++j) position[diseases[j]] = j;

  LearnResult result;
  result.weights.assign(edge_count, config.init_weight);
  auto record_loss = [&](int iteration) {
    const double loss =
        -pll_over_encoded(net, result.weights, corpus.evidence, corpus.gold);
    if (!std::isfinite(loss)) {
      throw Error(ErrorKind::DivergenceDetected,
                  "loss became non-finite at iteration " +
                      std::to_string(iteration));
    }
    result.loss_trace.push_back(LossTracePoint{iteration, loss});
  };
  record_loss(0);
  if (config.weight_mode == WeightMode::Constant) return result;

  std::vector<CompensatedSum> slopes(edge_count);
  std::vector<double> risk(diseases.size());
  for (int t = 1; t <= config.iterations; ++t) {
    for (auto& s : slopes) s = CompensatedSum{};
    for (std::size_t r = 0; r < corpus.evidence.size(); ++r) {
      const EncodedEvidence& evidence = corpus.evidence[r];
      for (std::size_t j = 0; j < diseases.size(); ++j) {
        risk[j] = sigmoid(
            disease_log_odds(net, result.weights, evidence, diseases[j]));
      }
      for (std::size_t e = 0; e < edge_count; ++e) {
        const double x = evidence.value(net.graph().edge(e).symptom);
        if (x == 0.0) continue;
        const std::size_t j = position[net.graph().edge(e).disease];
        slopes[e].add(x * ((corpus.gold[r][j] ? 1.0 : 0.0) - risk[j]));
      }
    }
    for (std::size_t e = 0; e < edge_count; ++e) {
      result.weights[e] += config.learning_rate * slopes[e].get();
      if (!std::isfinite(result.weights[e])) {
        throw Error(ErrorKind::DivergenceDetected,
                    "weight became non-finite at iteration " +
                        std::to_string(t));
      }
    }
    if (config.weight_mode == WeightMode::LearnedNonnegative) {
      double min_positive = std::numeric_limits<double>::infinity();
      for (double w : result.weights) {
        if (w > 0.0) min_positive = std::min(min_positive, w);
      }
      const double floor = std::isfinite(min_positive) ? min_positive : 0.0;
      for (double& w : result.weights) {
        if (w < 0.0) w = floor;
      }
    }
    record_loss(t);
  }
  return result;
}

}  // namespace mkn
