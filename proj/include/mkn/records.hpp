#pragma once

#include <string>
#include <vector>

#include "mkn/encode.hpp"
#include "mkn/model.hpp"

namespace mkn {

/// One patient: raw symptom observations plus the gold disease labels.
struct EvidenceRecord {
  std::string id;
  std::vector<SymptomObservation> symptoms;
  std::vector<std::string> diseases;  // gold labels

  bool has_gold(const std::string& disease) const;
};

/// Encoded evidence over a specific graph: x by symptom node index, plus the
/// count of observations whose symptom is not in the graph.
struct EncodedEvidence {
  std::vector<double> values;  // by node index, 0 when unobserved
  int skipped_symptoms = 0;

  double value(std::size_t node) const { return values[node]; }
};

/// Encodes a record against the network's graph and encoding config.
/// Observations naming unknown symptoms are skipped, not fatal.
EncodedEvidence encode_evidence(const GroundNetwork& net,
                                const EvidenceRecord& record);

/// JSON-lines record files:
///   {"id": "...", "symptoms": [{"name": s, "modifier": "present"} |
///    {"name": s, "value": 7.1, "normal": 5.0}], "diseases": ["..."]}
std::vector<EvidenceRecord> load_records(const std::string& path);
std::string format_records(const std::vector<EvidenceRecord>& records);

}  // namespace mkn
