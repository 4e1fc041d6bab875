#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mkn/error.hpp"

namespace mkn {

enum class NodeKind { Symptom, Disease };

const char* to_string(NodeKind kind);

/// (kind, name) identifies a node; names are unique within a kind and must
/// not contain tabs or newlines (they travel through TSV files).
struct NodeId {
  NodeKind kind;
  std::string name;

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline NodeId symptom_id(std::string name) {
  return {NodeKind::Symptom, std::move(name)};
}
inline NodeId disease_id(std::string name) {
  return {NodeKind::Disease, std::move(name)};
}

/// One indication rule: the symptom points at the disease with reliability
/// `weight`. A missing weight means the rule file left it to be fixed at
/// build time.
struct KnowledgeRule {
  std::string symptom;
  std::string disease;
  std::optional<double> weight;
};

/// Bipartite undirected graph of symptom and disease nodes. Edge index is a
/// stable 0-based ordinal matching rule order; the weight vector and the
/// learner both key off it.
class KnowledgeGraph {
 public:
  struct Node {
    NodeKind kind;
    std::string name;
    std::vector<std::size_t> edges;  // incident edge indices, insertion order
  };

  struct Edge {
    std::size_t symptom;  // node index
    std::size_t disease;  // node index
  };

  // Returns the index of the (kind, name) node, creating it on first use.
  std::size_t add_node(NodeKind kind, const std::string& name);

  // Adds an undirected symptom-disease edge and returns its edge index.
  std::size_t add_edge(std::size_t symptom_node, std::size_t disease_node);

  std::optional<std::size_t> find(NodeKind kind, const std::string& name) const;

  const Node& node(std::size_t i) const { return nodes_[i]; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(std::size_t i) const { return nodes_[i].edges.size(); }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbor node indices in edge-insertion order.
  std::vector<std::size_t> neighbors(std::size_t i) const;

  std::vector<std::size_t> nodes_of_kind(NodeKind kind) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::map<std::pair<NodeKind, std::string>, std::size_t> index_;
};

struct BuiltNetwork {
  KnowledgeGraph graph;
  std::vector<double> weights;  // by edge index
};

/// Parses a TSV rule file: `indication<TAB>symptom<TAB>disease<TAB>weight`,
/// with `#` comments and an optional weight field. Rules come back in file
/// order; duplicate (symptom, disease) pairs are rejected.
std::vector<KnowledgeRule> parse_rules(const std::string& path);

/// Same grammar, applied to in-memory text (one rule per line).
std::vector<KnowledgeRule> parse_rules_text(const std::string& text);

/// Builds the bipartite graph, one node per distinct entity and one edge per
/// rule. When `init_weight` is set, every edge weight is forced to it;
/// otherwise weights come from the rules themselves.
BuiltNetwork build_graph(const std::vector<KnowledgeRule>& rules,
                         std::optional<double> init_weight = std::nullopt);

/// Serializes rules in the same TSV format parse_rules reads.
std::string format_rules(const KnowledgeGraph& graph,
                         const std::vector<double>& weights);

}  // namespace mkn
