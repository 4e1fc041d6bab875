#pragma once

#include <set>
#include <string>
#include <vector>

#include "mkn/inference.hpp"

namespace mkn {

/// rel_i = 1 iff the i-th ranked disease is a gold disease; truncated at the
/// cutoff p.
std::vector<int> relevance_vector(const DiagnosisResult& result,
                                  const std::set<std::string>& gold, int p);

/// rel_1 + sum_{i=2..p} rel_i / log2(i); positions past the vector are 0.
double dcg(const std::vector<int>& rel, int p);

inline constexpr int kDcgCutoff = 10;

/// n/m with n gold diseases in the top k and m = |gold|. Gold diseases the
/// graph does not know still count in m.
double recall_at_k(const std::set<std::string>& gold,
                   const DiagnosisResult& result, int k = 10);

bool hit_at_k(const std::set<std::string>& gold, const DiagnosisResult& result,
              int k);

struct RecordScore {
  std::string record_id;
  double dcg;
  double r_at_10;
  bool hit10;
  bool hit20;
};

struct CorpusAggregates {
  double p_at_10;   // fraction of records with a gold disease in the top 10
  double p_at_20;
  double r_at_10_avg;
  double dcg_avg;
  int n_records;
};

struct CorpusReport {
  std::string system;
  std::string config_echo;  // serialized effective configuration
  std::vector<RecordScore> rows;
  CorpusAggregates aggregates;
};

/// Fraction of scored records with at least one gold disease in the top k.
double precision_hit_at_k(const std::vector<RecordScore>& rows, int k);

/// Scores one record against its gold set.
RecordScore score_record(const EvidenceRecord& record,
                         const DiagnosisResult& result);

CorpusReport build_report(std::string system, std::string config_echo,
                          std::vector<RecordScore> rows);

struct ReportPaths {
  std::string csv;
  std::string json;
  std::string dcg_svg;
  std::string r10_svg;
};

/// Writes the per-record CSV, the aggregate JSON and two static SVG charts.
/// Refuses an empty corpus.
void emit_report(const CorpusReport& report, const ReportPaths& paths);

std::string report_csv(const CorpusReport& report);
std::string report_json(const CorpusReport& report);

}  // namespace mkn
