#include "mkn/graph.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mkn/io.hpp"

namespace mkn {

const char* to_string(NodeKind kind) {
  return kind == NodeKind::Symptom ? "symptom" : "disease";
}

namespace {

void check_name(const std::string& name) {
  if (name.empty() || name.find('\t') != std::string::npos ||
      name.find('\n') != std::string::npos) {
    throw Error(ErrorKind::InvalidName,
                "node name must be non-empty and free of tabs/newlines: \"" +
                    name + "\"");
  }
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<double> parse_weight_field(const std::string& field) {
  std::size_t consumed = 0;
  double value = 0;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (consumed != field.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

std::size_t KnowledgeGraph::add_node(NodeKind kind, const std::string& name) {
  check_name(name);
  auto key = std::make_pair(kind, name);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  nodes_.push_back(Node{kind, name, {}});
  index_.emplace(std::move(key), nodes_.size() - 1);
  return nodes_.size() - 1;
}

std::size_t KnowledgeGraph::add_edge(std::size_t symptom_node,
                                     std::size_t disease_node) {
  std::size_t index = edges_.size();
  edges_.push_back(Edge{symptom_node, disease_node});
  nodes_[symptom_node].edges.push_back(index);
  nodes_[disease_node].edges.push_back(index);
  return index;
}

std::optional<std::size_t> KnowledgeGraph::find(NodeKind kind,
                                                const std::string& name) const {
  auto it = index_.find({kind, name});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> KnowledgeGraph::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  out.reserve(nodes_[i].edges.size());
  for (std::size_t e : nodes_[i].edges) {
    const Edge& edge = edges_[e];
    out.push_back(edge.symptom == i ? edge.disease : edge.symptom);
  }
  return out;
}

std::vector<std::size_t> KnowledgeGraph::nodes_of_kind(NodeKind kind) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == kind) out.push_back(i);
  }
  return out;
}

std::vector<KnowledgeRule> parse_rules_text(const std::string& text) {
  std::vector<KnowledgeRule> rules;
  std::set<std::pair<std::string, std::string>> seen;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() < 3 || fields.size() > 4 || fields[0] != "indication" ||
        fields[1].empty() || fields[2].empty()) {
      throw Error(ErrorKind::MalformedLine,
                  "malformed rule at line " + std::to_string(line_number) +
                      ": \"" + line + "\"");
    }
    KnowledgeRule rule{fields[1], fields[2], std::nullopt};
    if (fields.size() == 4) {
      rule.weight = parse_weight_field(fields[3]);
      if (!rule.weight) {
        throw Error(ErrorKind::MalformedLine,
                    "bad weight at line " + std::to_string(line_number) +
                        ": \"" + fields[3] + "\"");
      }
    }
    if (!seen.emplace(rule.symptom, rule.disease).second) {
      throw Error(ErrorKind::DuplicateRule, "duplicate rule (" + rule.symptom +
                                                ", " + rule.disease + ")");
    }
    rules.push_back(std::move(rule));
  }
  if (rules.empty()) {
    throw Error(ErrorKind::EmptyRuleSet, "rule set is empty");
  }
  return rules;
}

std::vector<KnowledgeRule> parse_rules(const std::string& path) {
  return parse_rules_text(read_file(path));
}

BuiltNetwork build_graph(const std::vector<KnowledgeRule>& rules,
                         std::optional<double> init_weight) {
  if (rules.empty()) {
    throw Error(ErrorKind::EmptyRuleSet, "rule set is empty");
  }
  BuiltNetwork built;
  std::set<std::pair<std::string, std::string>> seen;
  for (const KnowledgeRule& rule : rules) {
    if (!seen.emplace(rule.symptom, rule.disease).second) {
      throw Error(ErrorKind::DuplicateRule, "duplicate rule (" + rule.symptom +
                                                ", " + rule.disease + ")");
    }
    std::size_t s = built.graph.add_node(NodeKind::Symptom, rule.symptom);
    std::size_t d = built.graph.add_node(NodeKind::Disease, rule.disease);
    built.graph.add_edge(s, d);
    if (init_weight) {
      built.weights.push_back(*init_weight);
    } else if (rule.weight) {
      built.weights.push_back(*rule.weight);
    } else {
      throw Error(ErrorKind::MissingWeight,
                  "rule (" + rule.symptom + ", " + rule.disease +
                      ") has no weight and no init weight was given");
    }
  }
  return built;
}

std::string format_rules(const KnowledgeGraph& graph,
                         const std::vector<double>& weights) {
  std::ostringstream out;
  char buf[64];
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edge(e);
    std::snprintf(buf, sizeof(buf), "%.17g", weights[e]);
    out << "indication\t" << graph.node(edge.symptom).name << '\t'
        << graph.node(edge.disease).name << '\t' << buf << '\n';
  }
  return out.str();
}

}  // namespace mkn
