#include "mkn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "mkn/io.hpp"

namespace mkn {

std::vector<int> relevance_vector(const DiagnosisResult& result,
                                  const std::set<std::string>& gold, int p) {
  std::vector<int> rel;
  const std::size_t n = std::min<std::size_t>(result.ranked.size(),
                                              p < 0 ? 0 : static_cast<std::size_t>(p));
  rel.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rel.push_back(gold.contains(result.ranked[i].disease) ? 1 : 0);
  }
  return rel;
}

double dcg(const std::vector<int>& rel, int p) {
  double total = 0.0;
  const std::size_t n = std::min<std::size_t>(rel.size(),
                                              p < 0 ? 0 : static_cast<std::size_t>(p));
  for (std::size_t i = 0; i < n; ++i) {
    // 1-based rank; the top position is undiscounted.
    total += i == 0 ? rel[i] : rel[i] / std::log2(static_cast<double>(i + 1));
  }
  return total;
}

double recall_at_k(const std::set<std::string>& gold,
                   const DiagnosisResult& result, int k) {
  if (gold.empty()) {
    throw Error(ErrorKind::EmptyGoldSet, "recall needs at least one gold disease");
  }
  const std::size_t n = std::min<std::size_t>(result.ranked.size(),
                                              k < 0 ? 0 : static_cast<std::size_t>(k));
  int hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (gold.contains(result.ranked[i].disease)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

bool hit_at_k(const std::set<std::string>& gold, const DiagnosisResult& result,
              int k) {
  const std::size_t n = std::min<std::size_t>(result.ranked.size(),
                                              k < 0 ? 0 : static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    if (gold.contains(result.ranked[i].disease)) return true;
  }
  return false;
}

double precision_hit_at_k(const std::vector<RecordScore>& rows, int k) {
  if (rows.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "no scored records");
  }
  if (k != 10 && k != 20) {
    throw Error(ErrorKind::InvalidSpec, "hit-rate cutoffs are 10 and 20");
  }
  int hits = 0;
  for (const RecordScore& row : rows) {
    if (k == 10 ? row.hit10 : row.hit20) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

RecordScore score_record(const EvidenceRecord& record,
                         const DiagnosisResult& result) {
  const std::set<std::string> gold(record.diseases.begin(),
                                   record.diseases.end());
  if (gold.empty()) {
    throw Error(ErrorKind::EmptyGoldSet,
                "record \"" + record.id + "\" has no gold diseases");
  }
  RecordScore row;
  row.record_id = record.id;
  row.dcg = dcg(relevance_vector(result, gold, kDcgCutoff), kDcgCutoff);
  row.r_at_10 = recall_at_k(gold, result, 10);
  row.hit10 = hit_at_k(gold, result, 10);
  row.hit20 = hit_at_k(gold, result, 20);
  return row;
}

CorpusReport build_report(std::string system, std::string config_echo,
                          std::vector<RecordScore> rows) {
  if (rows.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "cannot report on an empty corpus");
  }
  CorpusReport report;
  report.system = std::move(system);
  report.config_echo = std::move(config_echo);
  report.rows = std::move(rows);
  double dcg_sum = 0.0, r10_sum = 0.0;
  for (const RecordScore& row : report.rows) {
    dcg_sum += row.dcg;
    r10_sum += row.r_at_10;
  }
  const double n = static_cast<double>(report.rows.size());
  report.aggregates.p_at_10 = precision_hit_at_k(report.rows, 10);
  report.aggregates.p_at_20 = precision_hit_at_k(report.rows, 20);
  report.aggregates.r_at_10_avg = r10_sum / n;
  report.aggregates.dcg_avg = dcg_sum / n;
  report.aggregates.n_records = static_cast<int>(report.rows.size());
  return report;
}

namespace {

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char c : raw) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// Minimal static SVG helpers; no interactivity, fixed canvas.
constexpr int kChartW = 800;
constexpr int kChartH = 320;
constexpr int kMargin = 45;

std::string svg_open(const std::string& title) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kChartW
      << "\" height=\"" << kChartH << "\" viewBox=\"0 0 " << kChartW << " "
      << kChartH << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <text x=\"" << kChartW / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">"
      << title << "</text>\n"
      << "  <line x1=\"" << kMargin << "\" y1=\"" << kChartH - kMargin
      << "\" x2=\"" << kChartW - kMargin << "\" y2=\"" << kChartH - kMargin
      << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\""
      << kMargin << "\" y2=\"" << kChartH - kMargin << "\" stroke=\"black\"/>\n";
  return out.str();
}

std::string dcg_line_chart(const CorpusReport& report) {
  double top = 1.0;
  for (const RecordScore& row : report.rows) top = std::max(top, row.dcg);
  const double span_x = static_cast<double>(kChartW - 2 * kMargin);
  const double span_y = static_cast<double>(kChartH - 2 * kMargin);
  const std::size_t n = report.rows.size();
  std::ostringstream out;
  out << svg_open("DCG per record — " + report.system);
  out << "  <polyline fill=\"none\" stroke=\"#2b6cb0\" stroke-width=\"1.5\" "
         "points=\"";
  for (std::size_t i = 0; i < n; ++i) {
    const double fx = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1)
                            : 0.5;
    const double x = kMargin + fx * span_x;
    const double y = (kChartH - kMargin) - (report.rows[i].dcg / top) * span_y;
    out << x << "," << y << (i + 1 < n ? " " : "");
  }
  out << "\"/>\n";
  out << "  <text x=\"" << kMargin << "\" y=\"" << kMargin - 8
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << full_precision(top)
      << "</text>\n";
  out << "  <text x=\"" << kChartW - kMargin << "\" y=\""
      << kChartH - kMargin + 16
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << "record index</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string r10_bar_chart(const CorpusReport& report) {
  // Five equal recall bins: [0,0.2) ... [0.8,1.0]; perfect recall joins the
  // last bin.
  const int kBins = 5;
  int counts[kBins] = {0, 0, 0, 0, 0};
  for (const RecordScore& row : report.rows) {
    int bin = static_cast<int>(row.r_at_10 * kBins);
    if (bin >= kBins) bin = kBins - 1;
    if (bin < 0) bin = 0;
    ++counts[bin];
  }
  int top = 1;
  for (int c : counts) top = std::max(top, c);
  const double span_x = static_cast<double>(kChartW - 2 * kMargin);
  const double span_y = static_cast<double>(kChartH - 2 * kMargin);
  const double slot = span_x / kBins;
  std::ostringstream out;
  out << svg_open("R@10 distribution — " + report.system);
  for (int b = 0; b < kBins; ++b) {
    const double h = (static_cast<double>(counts[b]) / top) * span_y;
    const double x = kMargin + b * slot + slot * 0.1;
    const double y = (kChartH - kMargin) - h;
    out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << slot * 0.8
        << "\" height=\"" << h << "\" fill=\"#2f855a\"/>\n";
    out << "  <text x=\"" << kMargin + b * slot + slot / 2 << "\" y=\""
        << kChartH - kMargin + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << b * 2 << "0–" << (b + 1) * 2 << "0%</text>\n";
    out << "  <text x=\"" << kMargin + b * slot + slot / 2 << "\" y=\""
        << y - 4
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << counts[b] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string report_csv(const CorpusReport& report) {
  std::ostringstream out;
  out << "record_id,system,dcg,r_at_10,hit10,hit20\n";
  for (const RecordScore& row : report.rows) {
    out << csv_field(row.record_id) << "," << csv_field(report.system) << ","
        << full_precision(row.dcg) << "," << full_precision(row.r_at_10) << ","
        << (row.hit10 ? 1 : 0) << "," << (row.hit20 ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string report_json(const CorpusReport& report) {
  nlohmann::json j;
  j["system"] = report.system;
  nlohmann::json echo = nlohmann::json::parse(report.config_echo, nullptr,
                                              /*allow_exceptions=*/false);
  j["config"] = echo.is_discarded() ? nlohmann::json(report.config_echo) : echo;
  j["p_at_10"] = report.aggregates.p_at_10;
  j["p_at_20"] = report.aggregates.p_at_20;
  j["r_at_10_avg"] = report.aggregates.r_at_10_avg;
  j["dcg_avg"] = report.aggregates.dcg_avg;
  j["n_records"] = report.aggregates.n_records;
  return j.dump(2) + "\n";
}

void emit_report(const CorpusReport& report, const ReportPaths& paths) {
  if (report.rows.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "cannot report on an empty corpus");
  }
  atomic_write(paths.csv, report_csv(report));
  atomic_write(paths.json, report_json(report));
  atomic_write(paths.dcg_svg, dcg_line_chart(report));
  atomic_write(paths.r10_svg, r10_bar_chart(report));
}

}  // namespace mkn
