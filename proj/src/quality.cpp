#include "mkn/quality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace mkn {

const char* to_string(QualityMeasure measure) {
  switch (measure) {
    case QualityMeasure::PageRank: return "pagerank";
    case QualityMeasure::Degree: return "degree";
    case QualityMeasure::Betweenness: return "betweenness";
  }
  return "?";
}

NodeQuality pagerank(const KnowledgeGraph& graph, const PageRankOptions& opts) {
  const std::size_t n = graph.node_count();
  NodeQuality out{QualityMeasure::PageRank, std::vector<double>(n, 0.0)};
  if (n == 0) return out;

  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  const double teleport = (1.0 - opts.damping) / static_cast<double>(n);

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    std::fill(next.begin(), next.end(), teleport);
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
      const auto& edge = graph.edge(e);
      // Undirected: each endpoint spreads its rank across its incident edges.
      next[edge.disease] +=
          opts.damping * rank[edge.symptom] / graph.degree(edge.symptom);
      next[edge.symptom] +=
          opts.damping * rank[edge.disease] / graph.degree(edge.disease);
    }
    double total = std::accumulate(next.begin(), next.end(), 0.0);
    for (double& v : next) v /= total;

    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - rank[i]);
    rank.swap(next);
    if (change < opts.tol) break;
  }
  out.values = std::move(rank);
  return out;
}

NodeQuality degree_quality(const KnowledgeGraph& graph) {
  const std::size_t n = graph.node_count();
  NodeQuality out{QualityMeasure::Degree, std::vector<double>(n, 0.0)};
  std::size_t max_degree = 0;
  for (std::size_t i = 0; i < n; ++i) max_degree = std::max(max_degree, graph.degree(i));
  if (max_degree == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = static_cast<double>(graph.degree(i)) /
                    static_cast<double>(max_degree);
  }
  return out;
}

NodeQuality betweenness_quality(const KnowledgeGraph& graph) {
  const std::size_t n = graph.node_count();
  NodeQuality out{QualityMeasure::Betweenness, std::vector<double>(n, 0.0)};
  if (n < 3) return out;

  // Brandes accumulation over BFS shortest-path DAGs.
  std::vector<double>& centrality = out.values;
  std::vector<std::vector<std::size_t>> pred(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  std::vector<std::size_t> order;
  order.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      pred[i].clear();
      sigma[i] = 0.0;
      delta[i] = 0.0;
      dist[i] = -1;
    }
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (std::size_t w : graph.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::size_t w = *it;
      for (std::size_t v : pred[w]) {
        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) centrality[w] += delta[w];
    }
  }

  // Each unordered pair was visited from both endpoints.
  const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
  for (double& v : centrality) v = v / 2.0 / pairs;
  return out;
}

NodeQuality compute_quality(const KnowledgeGraph& graph, QualityMeasure measure) {
  switch (measure) {
    case QualityMeasure::PageRank: return pagerank(graph);
    case QualityMeasure::Degree: return degree_quality(graph);
    case QualityMeasure::Betweenness: return betweenness_quality(graph);
  }
  return degree_quality(graph);
}

}  // namespace mkn
