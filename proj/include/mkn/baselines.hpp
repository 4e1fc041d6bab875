#pragma once

#include <string>
#include <vector>

#include "mkn/inference.hpp"
#include "mkn/records.hpp"

namespace mkn {

/// Independent binary logistic regressions, one per disease, over the shared
/// symptom vocabulary. Zero-initialized, batch gradient descent.
struct LogisticModel {
  std::vector<std::string> vocabulary;  // feature order
  std::vector<std::string> diseases;
  std::vector<std::vector<double>> weights;  // [disease][feature]
  std::vector<double> bias;                  // [disease]
  std::vector<double> loss_trace;            // total log-loss per iteration

  double predict(std::size_t disease_index,
                 const std::vector<double>& features) const;
};

/// Features are encoded symptom values, 0 when absent from the record.
std::vector<double> lr_features(const LogisticModel& model,
                                const EvidenceRecord& record,
                                EncodingKind encoding);

LogisticModel lr_train(const std::vector<EvidenceRecord>& records,
                       const std::vector<std::string>& vocabulary,
                       const std::vector<std::string>& diseases,
                       EncodingKind encoding, double rate, int iterations);

DiagnosisResult lr_diagnose(const LogisticModel& model,
                            const EvidenceRecord& record,
                            EncodingKind encoding);

/// The binary-atom special case: evidence thresholded to {0,1} and the
/// individual-node potential switched off.
ModelConfig binary_proxy_config();

}  // namespace mkn
