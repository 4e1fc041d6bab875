#pragma once

#include <string>
#include <vector>

#include "mkn/graph.hpp"

namespace mkn {

enum class QualityMeasure { PageRank, Degree, Betweenness };

const char* to_string(QualityMeasure measure);

/// Per-node quality scores m, indexed by node index. PageRank values form a
/// distribution (sum 1); degree and betweenness are normalized into [0,1].
struct NodeQuality {
  QualityMeasure measure;
  std::vector<double> values;

  double value(std::size_t node_index) const { return values[node_index]; }
};

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-9;
  int max_iter = 100;
};

/// Power iteration over the undirected graph, each edge traversed both ways.
/// The vector is renormalized every sweep, so it sums to 1 even on degenerate
/// graphs; isolated nodes hold teleport mass only.
NodeQuality pagerank(const KnowledgeGraph& graph, const PageRankOptions& opts = {});

/// deg(v) / max degree; all zeros when the graph has no edges.
NodeQuality degree_quality(const KnowledgeGraph& graph);

/// Brandes shortest-path betweenness, normalized by (n-1)(n-2)/2 for n >= 3,
/// all zeros otherwise.
NodeQuality betweenness_quality(const KnowledgeGraph& graph);

NodeQuality compute_quality(const KnowledgeGraph& graph, QualityMeasure measure);

}  // namespace mkn
