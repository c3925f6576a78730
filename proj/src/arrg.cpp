#include "aspectflow/arrg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "aspectflow/simd/kernels.hpp"

namespace aspectflow {

std::vector<AspectRelation> extract_relations(const AspectDiscourseTree& adt) {
  std::vector<AspectRelation> out;
  if (adt.nodes.empty()) return out;
  auto emit = [&](const AspectEDU& from, const AspectEDU& to, RelationLabel label) {
    for (const AspectCandidate& s : from.aspects)
      for (const AspectCandidate& t : to.aspects)
        if (s.normalized != t.normalized) out.push_back({s.normalized, t.normalized, label, adt.doc_id});
  };

  std::queue<std::size_t> frontier;
  frontier.push(adt.root);
  while (!frontier.empty()) {
    const std::size_t n = frontier.front();
    frontier.pop();
    if (adt.is_leaf(n)) continue;
    const auto& in = adt.internal(n);
    frontier.push(in.left);
    frontier.push(in.right);

    const AspectEDU& left = head_leaf(adt, in.left);
    const AspectEDU& right = head_leaf(adt, in.right);
    if (!left.active || !right.active || left.aspects.empty() || right.aspects.empty()) continue;
    switch (in.nuclearity) {
      case Nuclearity::NS: emit(right, left, in.relation); break;
      case Nuclearity::SN: emit(left, right, in.relation); break;
      case Nuclearity::NN:
        emit(right, left, in.relation);
        emit(left, right, in.relation);
        break;
    }
  }
  return out;
}

void ARRG::merge(const ARRG& other) {
  for (const auto& [name, stats] : other.nodes) {
    NodeStats& mine = nodes[name];
    mine.frequency += stats.frequency;
    for (std::size_t c = 0; c < kNumLabels; ++c) mine.sentiment_counts[c] += stats.sentiment_counts[c];
  }
  for (const auto& [key, stats] : other.edges) {
    EdgeStats& mine = edges[key];
    mine.weight += stats.weight;
    for (const auto& [label, count] : stats.relation_counts) mine.relation_counts[label] += count;
  }
}

void merge_into_graph(ARRG& graph, const std::vector<AspectRelation>& relations,
                      const std::vector<const AspectEDU*>& leaves) {
  for (const AspectEDU* leaf : leaves) {
    if (!leaf->active) continue;
    for (const AspectCandidate& a : leaf->aspects) {
      NodeStats& node = graph.nodes[a.normalized];
      ++node.frequency;
      ++node.sentiment_counts[static_cast<std::size_t>(leaf->polarity)];
    }
  }
  for (const AspectRelation& r : relations) {
    if (r.source.empty() || r.target.empty() || r.source == r.target) continue;
    graph.nodes.try_emplace(r.source);
    graph.nodes.try_emplace(r.target);
    EdgeStats& edge = graph.edges[{r.source, r.target}];
    ++edge.weight;
    ++edge.relation_counts[r.relation];
  }
}

void add_document(ARRG& graph, const AspectDiscourseTree& adt) {
  merge_into_graph(graph, extract_relations(adt), adt.leaves());
}

namespace {

std::int64_t rank_key(double score) { return std::llround(score * 1e12); }

void sort_ranked(std::vector<RankedAspect>& ranked) {
  std::sort(ranked.begin(), ranked.end(), [](const RankedAspect& a, const RankedAspect& b) {
    const auto ka = rank_key(a.score);
    const auto kb = rank_key(b.score);
    if (ka != kb) return ka > kb;
    return a.aspect < b.aspect;
  });
}

}  // namespace

std::vector<RankedAspect> pagerank(const ARRG& graph, const PageRankOptions& options) {
  if (graph.empty()) throw std::invalid_argument("pagerank on an empty graph");
  const std::size_t n = graph.nodes.size();
  std::vector<std::string> names;
  names.reserve(n);
  std::map<std::string_view, std::size_t> index;
  for (const auto& [name, stats] : graph.nodes) {
    index.emplace(name, names.size());
    names.push_back(name);
  }

  std::vector<double> out_weight(n, 0.0);
  for (const auto& [key, edge] : graph.edges) out_weight[index.at(key.first)] += static_cast<double>(edge.weight);

  // Incoming adjacency in CSR form with precomputed transition probabilities.
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const auto& [key, edge] : graph.edges) ++offsets[index.at(key.second) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::size_t> in_source(offsets.back());
  std::vector<double> in_prob(offsets.back());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& [key, edge] : graph.edges) {
    const std::size_t s = index.at(key.first);
    const std::size_t slot = fill[index.at(key.second)]++;
    in_source[slot] = s;
    in_prob[slot] = static_cast<double>(edge.weight) / out_weight[s];
  }
  std::vector<std::size_t> dangling;
  for (std::size_t i = 0; i < n; ++i)
    if (out_weight[i] == 0.0) dangling.push_back(i);

  const double d = options.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n);
  for (int iter = 0; iter < options.max_iter; ++iter) {
    double dangling_mass = 0.0;
    for (std::size_t i : dangling) dangling_mass += rank[i];
    const double base = (1.0 - d) * inv_n + d * dangling_mass * inv_n;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) acc += rank[in_source[k]] * in_prob[k];
      next[i] = base + d * acc;
    }
    const double delta = simd::l1_distance(next, rank);
    rank.swap(next);
    if (delta < options.eps) break;
  }
  simd::scale(1.0 / simd::sum(rank), rank);

  std::vector<RankedAspect> ranked;
  ranked.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ranked.push_back({names[i], rank[i]});
  sort_ranked(ranked);
  return ranked;
}

std::vector<std::string> filter_by_importance(const std::vector<RankedAspect>& ranked, double factor) {
  if (!(factor > 0.0 && factor <= 1.0)) throw std::invalid_argument("importance factor must lie in (0, 1]");
  const double n = static_cast<double>(ranked.size());
  // The slack absorbs representation error such as 0.15 * 20 = 3.0000000000000004.
  auto keep = static_cast<std::size_t>(std::ceil(factor * n - 1e-9));
  keep = std::clamp<std::size_t>(keep, ranked.empty() ? 0 : 1, ranked.size());
  std::vector<std::string> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(ranked[i].aspect);
  return out;
}

AspectHierarchyTree build_hierarchy(const ARRG& graph, const std::vector<std::string>& kept) {
  if (kept.empty()) throw std::invalid_argument("hierarchy needs at least one kept aspect");
  const std::size_t n = kept.size();
  std::map<std::string_view, std::size_t> position;  // rank order == index in kept
  for (std::size_t i = 0; i < n; ++i) position.emplace(kept[i], i);

  std::map<std::pair<std::string, std::string>, std::size_t> undirected;
  for (const auto& [key, edge] : graph.edges) {
    if (!position.contains(key.first) || !position.contains(key.second)) continue;
    auto pair = std::minmax(key.first, key.second);
    undirected[{pair.first, pair.second}] += edge.weight;
  }
  std::vector<std::tuple<std::size_t, std::string, std::string>> candidates;
  for (const auto& [key, w] : undirected) candidates.emplace_back(w, key.first, key.second);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const auto& [w, a, b] : candidates) {
    const std::size_t ia = position.at(a), ib = position.at(b);
    const std::size_t ra = find(ia), rb = find(ib);
    if (ra == rb) continue;
    parent[ra] = rb;
    adjacency[ia].push_back(ib);
    adjacency[ib].push_back(ia);
  }

  AspectHierarchyTree tree;
  std::vector<bool> seen(n, false);
  std::vector<std::string> component_roots;
  for (std::size_t start = 0; start < n; ++start) {  // rank order: first unseen node is its component's best
    if (seen[start]) continue;
    component_roots.push_back(kept[start]);
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      std::vector<std::size_t> kids;
      for (std::size_t v : adjacency[u])
        if (!seen[v]) {
          seen[v] = true;
          kids.push_back(v);
        }
      std::sort(kids.begin(), kids.end());
      auto& names = tree.children[kept[u]];
      for (std::size_t v : kids) {
        names.push_back(kept[v]);
        queue.push_back(v);
      }
    }
  }
  if (component_roots.size() == 1) {
    tree.root = component_roots.front();
  } else {
    tree.root = AspectHierarchyTree::kSyntheticRoot;
    tree.children[tree.root] = component_roots;
  }
  return tree;
}

namespace {

nlohmann::json hierarchy_node(const AspectHierarchyTree& tree, const std::string& name) {
  nlohmann::json j{{"aspect", name}, {"children", nlohmann::json::array()}};
  for (const std::string& c : tree.children.at(name)) j["children"].push_back(hierarchy_node(tree, c));
  return j;
}

}  // namespace

nlohmann::json hierarchy_to_json(const AspectHierarchyTree& tree) { return hierarchy_node(tree, tree.root); }

nlohmann::json graph_to_json(const ARRG& graph, const std::vector<RankedAspect>& ranked) {
  std::map<std::string_view, double> score;
  for (const RankedAspect& r : ranked) score.emplace(r.aspect, r.score);
  std::vector<RankedAspect> order;
  for (const auto& [name, stats] : graph.nodes) {
    auto it = score.find(name);
    order.push_back({name, it == score.end() ? 0.0 : it->second});
  }
  sort_ranked(order);

  nlohmann::json nodes = nlohmann::json::array();
  for (const RankedAspect& r : order) {
    const NodeStats& s = graph.nodes.at(r.aspect);
    nodes.push_back({{"aspect", r.aspect},
                     {"frequency", s.frequency},
                     {"sentiment_counts", s.sentiment_counts},
                     {"pagerank", r.score}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [key, e] : graph.edges) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [label, c] : e.relation_counts) counts[std::string(to_string(label))] = c;
    edges.push_back({{"source", key.first}, {"target", key.second}, {"weight", e.weight}, {"relation_counts", counts}});
  }
  return nlohmann::json{{"label_order", {"negative", "neutral", "positive"}}, {"nodes", nodes}, {"edges", edges}};
}

ARRG graph_from_json(const nlohmann::json& j, std::vector<RankedAspect>* ranked) {
  ARRG graph;
  if (ranked) ranked->clear();
  for (const auto& node : j.at("nodes")) {
    NodeStats s;
    s.frequency = node.at("frequency").get<std::size_t>();
    s.sentiment_counts = node.at("sentiment_counts").get<std::array<std::size_t, kNumLabels>>();
    const std::string name = node.at("aspect").get<std::string>();
    graph.nodes[name] = s;
    if (ranked) ranked->push_back({name, node.at("pagerank").get<double>()});
  }
  for (const auto& edge : j.at("edges")) {
    EdgeStats e;
    e.weight = edge.at("weight").get<std::size_t>();
    for (const auto& [label, count] : edge.at("relation_counts").items()) {
      const auto rel = parse_relation(label);
      if (!rel) throw std::runtime_error("unknown relation label '" + label + "' in graph file");
      e.relation_counts[*rel] = count.get<std::size_t>();
    }
    graph.edges[{edge.at("source").get<std::string>(), edge.at("target").get<std::string>()}] = e;
  }
  if (ranked) sort_ranked(*ranked);
  return graph;
}

}  // namespace aspectflow
