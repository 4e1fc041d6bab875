#include "mkn/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mkn {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open \"" + path + "\" for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorKind::IoError, "read failed for \"" + path + "\"");
  }
  return buf.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorKind::IoError, "cannot open \"" + tmp + "\" for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw Error(ErrorKind::IoError, "write failed for \"" + tmp + "\"");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::IoError,
                "cannot move \"" + tmp + "\" to \"" + path + "\": " + ec.message());
  }
}

std::string graph_json(const KnowledgeGraph& graph,
                       const std::vector<double>& weights,
                       const std::map<QualityMeasure, NodeQuality>& quality) {
  nlohmann::json j;

  // Nodes sorted by (name, kind) so re-serializing is byte-stable regardless
  // of insertion order.
  std::vector<std::size_t> order(graph.node_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& na = graph.node(a);
    const auto& nb = graph.node(b);
    if (na.name != nb.name) return na.name < nb.name;
    return static_cast<int>(na.kind) < static_cast<int>(nb.kind);
  });
  j["nodes"] = nlohmann::json::array();
  for (std::size_t i : order) {
    j["nodes"].push_back({{"name", graph.node(i).name},
                          {"kind", to_string(graph.node(i).kind)}});
  }

  j["edges"] = nlohmann::json::array();
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    j["edges"].push_back({graph.node(graph.edge(e).symptom).name,
                          graph.node(graph.edge(e).disease).name, weights[e]});
  }

  j["quality"] = nlohmann::json::object();
  for (const auto& [measure, values] : quality) {
    nlohmann::json per_kind;
    per_kind["symptoms"] = nlohmann::json::object();
    per_kind["diseases"] = nlohmann::json::object();
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
      const auto& node = graph.node(i);
      per_kind[node.kind == NodeKind::Symptom ? "symptoms" : "diseases"]
              [node.name] = values.value(i);
    }
    j["quality"][to_string(measure)] = std::move(per_kind);
  }

  return j.dump(2) + "\n";
}

}  // namespace mkn
