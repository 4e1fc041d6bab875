#pragma once

#include <cstddef>
#include <vector>

#include "mkn/inference.hpp"
#include "mkn/records.hpp"

namespace mkn {

enum class WeightMode { Learned, Constant, LearnedNonnegative };

const char* to_string(WeightMode mode);

struct LearningConfig {
  double learning_rate = 0.01;
  int iterations = 100;
  double init_weight = 0.5;
  WeightMode weight_mode = WeightMode::Learned;

  void validate() const;
};

struct LossTracePoint {
  int iteration;          // 0 is the initial state, before any update
  double negative_pll;
};

struct LearnResult {
  std::vector<double> weights;
  std::vector<LossTracePoint> loss_trace;
};

/// Sum over records, over graph diseases, of log P(y = gold | blanket),
/// with absent gold labels read as y=0. Stable for any finite weights.
double pseudo_log_likelihood(const GroundNetwork& net,
                             const std::vector<EvidenceRecord>& records);

/// Gradient of the pseudo-log-likelihood for one edge weight:
/// sum over records of x * (y_gold - P(y=1 | blanket, record)).
double pll_gradient(const GroundNetwork& net,
                    const std::vector<EvidenceRecord>& records,
                    std::size_t edge);

/// Batch gradient ascent from a flat init, one synchronous sweep per
/// iteration. Constant mode returns the init untouched; the nonnegative mode
/// replaces negative weights with the current minimum positive weight after
/// every sweep. Throws DivergenceDetected when the loss turns non-finite.
LearnResult learn_weights(const GroundNetwork& net,
                          const std::vector<EvidenceRecord>& records,
                          const LearningConfig& config);

}  // namespace mkn
