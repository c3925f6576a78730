#pragma once

// Aspect-Rhetorical Relation Graph: corpus-level directed graph whose nodes
// are aspects and whose edges are rhetorical relations between the aspects
// of related EDUs. Edges run satellite -> nucleus so PageRank mass collects
// on rhetorically salient aspects.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "aspectflow/adt.hpp"

namespace aspectflow {

struct AspectRelation {
  std::string source;  // satellite side
  std::string target;  // nucleus side
  RelationLabel relation = RelationLabel::Elaboration;
  std::string doc_id;
  bool operator==(const AspectRelation&) const = default;
};

// Breadth-first over internal nodes; pairs the aspects of the head EDUs of
// each node's two children when both heads are active.
std::vector<AspectRelation> extract_relations(const AspectDiscourseTree& adt);

struct NodeStats {
  std::size_t frequency = 0;
  std::array<std::size_t, kNumLabels> sentiment_counts{};  // label order
  bool operator==(const NodeStats&) const = default;
};

struct EdgeStats {
  std::size_t weight = 0;
  std::map<RelationLabel, std::size_t> relation_counts;
  bool operator==(const EdgeStats&) const = default;
};

struct ARRG {
  std::map<std::string, NodeStats> nodes;
  std::map<std::pair<std::string, std::string>, EdgeStats> edges;

  bool empty() const noexcept { return nodes.empty(); }
  // Additive; commutative and associative.
  void merge(const ARRG& other);
  bool operator==(const ARRG&) const = default;
};

// Counts every aspect of every active leaf, and every relation as one unit
// of edge weight. Relation endpoints missing from the nodes are created with
// zero frequency.
void merge_into_graph(ARRG& graph, const std::vector<AspectRelation>& relations,
                      const std::vector<const AspectEDU*>& leaves);

// Relations plus active leaves of one tree.
void add_document(ARRG& graph, const AspectDiscourseTree& adt);

struct RankedAspect {
  std::string aspect;
  double score = 0.0;
};

struct PageRankOptions {
  double damping = 0.85;
  double eps = 1e-9;  // L1 change between iterations
  int max_iter = 100;
};

// Weighted PageRank with uniform teleport and uniform redistribution of
// dangling mass. Sorted by score descending, ties (equal to 1e-12) by name.
// Throws std::invalid_argument on an empty graph.
std::vector<RankedAspect> pagerank(const ARRG& graph, const PageRankOptions& options = {});

// First ceil(factor * n) aspects; factor must lie in (0, 1].
std::vector<std::string> filter_by_importance(const std::vector<RankedAspect>& ranked, double factor);

struct AspectHierarchyTree {
  static constexpr const char* kSyntheticRoot = "*";
  std::string root;
  std::map<std::string, std::vector<std::string>> children;  // every node has an entry

  std::size_t size() const noexcept { return children.size(); }
};

// Maximum spanning forest over the kept subgraph (undirected weight = sum of
// both directions), each component rooted at its best-ranked aspect; `kept`
// must be in rank order. Disconnected forests hang under a synthetic "*".
AspectHierarchyTree build_hierarchy(const ARRG& graph, const std::vector<std::string>& kept);

nlohmann::json hierarchy_to_json(const AspectHierarchyTree& tree);

// Byte-stable graph file: nodes by pagerank desc then name, edges by
// (source, target).
nlohmann::json graph_to_json(const ARRG& graph, const std::vector<RankedAspect>& ranked);
ARRG graph_from_json(const nlohmann::json& j, std::vector<RankedAspect>* ranked = nullptr);

}  // namespace aspectflow
