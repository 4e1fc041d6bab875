#include "mkn/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace mkn {

namespace {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

std::unordered_map<std::string, std::size_t> index_of(
    const std::vector<std::string>& names) {
  std::unordered_map<std::string, std::size_t> idx;
  idx.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) idx.emplace(names[i], i);
  return idx;
}

}  // namespace

double LogisticModel::predict(std::size_t disease_index,
                              const std::vector<double>& features) const {
  double z = bias[disease_index];
  const std::vector<double>& w = weights[disease_index];
  for (std::size_t f = 0; f < w.size(); ++f) z += w[f] * features[f];
  return sigmoid(z);
}

std::vector<double> lr_features(const LogisticModel& model,
                                const EvidenceRecord& record,
                                EncodingKind encoding) {
  std::vector<double> features(model.vocabulary.size(), 0.0);
  const auto idx = index_of(model.vocabulary);
  for (const SymptomObservation& obs : record.symptoms) {
    auto it = idx.find(obs.symptom);
    if (it == idx.end()) continue;
    features[it->second] = encode(obs, encoding);
  }
  return features;
}

LogisticModel lr_train(const std::vector<EvidenceRecord>& records,
                       const std::vector<std::string>& vocabulary,
                       const std::vector<std::string>& diseases,
                       EncodingKind encoding, double rate, int iterations) {
  if (!(rate > 0.0) || !std::isfinite(rate) || iterations < 1) {
    throw Error(ErrorKind::InvalidSpec,
                "learning rate must be positive and iterations at least 1");
  }
  LogisticModel model;
  model.vocabulary = vocabulary;
  model.diseases = diseases;
  model.weights.assign(diseases.size(),
                       std::vector<double>(vocabulary.size(), 0.0));
  model.bias.assign(diseases.size(), 0.0);

  std::vector<std::vector<double>> features;
  std::vector<std::vector<char>> labels;
  features.reserve(records.size());
  labels.reserve(records.size());
  for (const EvidenceRecord& record : records) {
    features.push_back(lr_features(model, record, encoding));
    std::vector<char> row(diseases.size(), 0);
    for (std::size_t j = 0; j < diseases.size(); ++j) {
      row[j] = record.has_gold(diseases[j]) ? 1 : 0;
    }
    labels.push_back(std::move(row));
  }

  std::vector<double> z(records.size());
  auto total_loss = [&]() {
    double loss = 0.0;
    for (std::size_t j = 0; j < diseases.size(); ++j) {
      for (std::size_t r = 0; r < records.size(); ++r) {
        double v = model.bias[j];
        for (std::size_t f = 0; f < vocabulary.size(); ++f) {
          v += model.weights[j][f] * features[r][f];
        }
        loss += labels[r][j] ? softplus(-v) : softplus(v);
      }
    }
    return loss;
  };
  model.loss_trace.push_back(total_loss());

  std::vector<double> grad_w(vocabulary.size());
  for (int t = 1; t <= iterations; ++t) {
    for (std::size_t j = 0; j < diseases.size(); ++j) {
      std::fill(grad_w.begin(), grad_w.end(), 0.0);
      double grad_b = 0.0;
      for (std::size_t r = 0; r < records.size(); ++r) {
        double v = model.bias[j];
        for (std::size_t f = 0; f < vocabulary.size(); ++f) {
          v += model.weights[j][f] * features[r][f];
        }
        const double err = sigmoid(v) - (labels[r][j] ? 1.0 : 0.0);
        grad_b += err;
        for (std::size_t f = 0; f < vocabulary.size(); ++f) {
          grad_w[f] += err * features[r][f];
        }
      }
      model.bias[j] -= rate * grad_b;
      for (std::size_t f = 0; f < vocabulary.size(); ++f) {
        model.weights[j][f] -= rate * grad_w[f];
      }
    }
    const double loss = total_loss();
    if (!std::isfinite(loss)) {
      throw Error(ErrorKind::DivergenceDetected,
                  "log-loss became non-finite at iteration " +
                      std::to_string(t));
    }
    model.loss_trace.push_back(loss);
  }
  return model;
}

DiagnosisResult lr_diagnose(const LogisticModel& model,
                            const EvidenceRecord& record,
                            EncodingKind encoding) {
  DiagnosisResult result;
  const auto idx = index_of(model.vocabulary);
  for (const SymptomObservation& obs : record.symptoms) {
    if (!idx.contains(obs.symptom)) ++result.skipped_symptoms;
  }
  const std::vector<double> features = lr_features(model, record, encoding);
  result.ranked.reserve(model.diseases.size());
  for (std::size_t j = 0; j < model.diseases.size(); ++j) {
    result.ranked.push_back(
        DiagnosisResult::Entry{model.diseases[j], model.predict(j, features)});
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

ModelConfig binary_proxy_config() {
  ModelConfig config;
  config.gpf_mode = GpfMode::Off;
  config.binarize = true;
  config.encoding = EncodingKind::ImprovedSigmoid;
  return config;
}

}  // namespace mkn
