#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "aspectflow/arrg.hpp"
#include "oracles.hpp"

using namespace aspectflow;
using aspectflow::test::dense_pagerank;
using aspectflow::test::random_graph;

namespace {

AspectCandidate cand(const std::string& s) { return {s, s, s, 0, 0}; }

AspectEDU leaf(int id, std::vector<std::string> aspects, Polarity p = Polarity::Positive, bool active = true) {
  AspectEDU e;
  e.edu.id = id;
  e.polarity = p;
  e.active = active;
  for (auto& a : aspects) e.aspects.push_back(cand(a));
  return e;
}

AspectDiscourseTree pair_tree(Nuclearity n, AspectEDU left, AspectEDU right, RelationLabel r = RelationLabel::Cause) {
  AspectDiscourseTree t;
  t.doc_id = "d:0";
  const auto l = t.add_leaf(std::move(left));
  const auto rr = t.add_leaf(std::move(right));
  t.root = t.add_internal(r, n, l, rr);
  return t;
}

}  // namespace

TEST(Relations, SingleLeafTreeHasNone) {
  AspectDiscourseTree t;
  t.root = t.add_leaf(leaf(0, {"battery"}));
  EXPECT_TRUE(extract_relations(t).empty());
}

TEST(Relations, NuclearityDecidesDirection) {
  auto ns = extract_relations(pair_tree(Nuclearity::NS, leaf(0, {"battery"}), leaf(1, {"charger"})));
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0], (AspectRelation{"charger", "battery", RelationLabel::Cause, "d:0"}));

  auto sn = extract_relations(pair_tree(Nuclearity::SN, leaf(0, {"battery"}), leaf(1, {"charger"})));
  ASSERT_EQ(sn.size(), 1u);
  EXPECT_EQ(sn[0].source, "battery");
  EXPECT_EQ(sn[0].target, "charger");

  auto nn = extract_relations(pair_tree(Nuclearity::NN, leaf(0, {"battery"}), leaf(1, {"charger"})));
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& r : nn) got.insert({r.source, r.target});
  EXPECT_EQ(got, (std::set<std::pair<std::string, std::string>>{{"charger", "battery"}, {"battery", "charger"}}));
}

TEST(Relations, InactiveHeadsAndSelfLoopsEmitNothing) {
  EXPECT_TRUE(
      extract_relations(pair_tree(Nuclearity::NN, leaf(0, {"a"}), leaf(1, {"b"}, Polarity::Neutral, false))).empty());
  EXPECT_TRUE(extract_relations(pair_tree(Nuclearity::NN, leaf(0, {"a"}), leaf(1, {"a"}))).empty());
  const auto rel = extract_relations(pair_tree(Nuclearity::NS, leaf(0, {"a", "b"}), leaf(1, {"a", "c"})));
  for (const auto& r : rel) EXPECT_NE(r.source, r.target);
  EXPECT_EQ(rel.size(), 3u);  // a->b, c->a, c->b
}

TEST(Relations, BreadthFirstUsesHeadEdus) {
  // Contrast(SN, a, Joint(NN, b, c)): the root pairs a with head b only.
  AspectDiscourseTree t;
  t.doc_id = "d";
  const auto a = t.add_leaf(leaf(0, {"a"}));
  const auto b = t.add_leaf(leaf(1, {"b"}));
  const auto c = t.add_leaf(leaf(2, {"c"}));
  const auto bc = t.add_internal(RelationLabel::Joint, Nuclearity::NN, b, c);
  t.root = t.add_internal(RelationLabel::Contrast, Nuclearity::SN, a, bc);
  const auto rel = extract_relations(t);
  ASSERT_EQ(rel.size(), 3u);
  EXPECT_EQ(rel[0], (AspectRelation{"a", "b", RelationLabel::Contrast, "d"}));
  EXPECT_EQ(rel[1].relation, RelationLabel::Joint);
  EXPECT_EQ(rel[2].relation, RelationLabel::Joint);
}

TEST(Graph, EmptyMergeIsEmpty) {
  ARRG g;
  merge_into_graph(g, {}, {});
  EXPECT_TRUE(g.empty());
  EXPECT_THROW(pagerank(g), std::invalid_argument);
}

TEST(Graph, CountsActiveLeavesAndEdges) {
  ARRG g;
  const auto t = pair_tree(Nuclearity::NS, leaf(0, {"battery"}, Polarity::Negative), leaf(1, {"charger"}));
  add_document(g, t);
  EXPECT_EQ(g.nodes.at("battery").frequency, 1u);
  EXPECT_EQ(g.nodes.at("battery").sentiment_counts, (std::array<std::size_t, 3>{1, 0, 0}));
  EXPECT_EQ(g.edges.at({"charger", "battery"}).weight, 1u);

  ARRG lonely;
  const auto inactive = pair_tree(Nuclearity::NS, leaf(0, {"x"}), leaf(1, {"y"}, Polarity::Neutral, false));
  add_document(lonely, inactive);
  EXPECT_EQ(lonely.nodes.size(), 1u);
  EXPECT_TRUE(lonely.edges.empty());
}

TEST(Graph, MergeIsAdditiveAndCommutative) {
  ARRG a, b;
  add_document(a, pair_tree(Nuclearity::NS, leaf(0, {"battery"}), leaf(1, {"charger"})));
  add_document(b, pair_tree(Nuclearity::NN, leaf(0, {"screen"}), leaf(1, {"battery"}), RelationLabel::Contrast));

  ARRG ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  EXPECT_EQ(ab, ba);
  EXPECT_EQ(graph_to_json(ab, {}).dump(), graph_to_json(ba, {}).dump());

  ARRG twice = a;
  twice.merge(a);
  for (const auto& [name, s] : a.nodes) EXPECT_EQ(twice.nodes.at(name).frequency, 2 * s.frequency);
  for (const auto& [key, e] : a.edges) EXPECT_EQ(twice.edges.at(key).weight, 2 * e.weight);

  ARRG c;
  add_document(c, pair_tree(Nuclearity::SN, leaf(0, {"screen"}), leaf(1, {"stand"})));
  ARRG left = ab, right = b;
  left.merge(c);
  right.merge(c);
  ARRG right_total = a;
  right_total.merge(right);
  EXPECT_EQ(left, right_total);
}

TEST(Graph, EdgeInvariants) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const ARRG g = random_graph(rng, 1 + trial % 10);
    for (const auto& [key, e] : g.edges) {
      EXPECT_TRUE(g.nodes.contains(key.first));
      EXPECT_TRUE(g.nodes.contains(key.second));
      EXPECT_GE(e.weight, 1u);
      std::size_t total = 0;
      for (const auto& [label, c] : e.relation_counts) total += c;
      EXPECT_EQ(total, e.weight);
    }
  }
}

TEST(Graph, JsonRoundTrip) {
  std::mt19937 rng(23);
  const ARRG g = random_graph(rng, 7);
  const auto ranked = pagerank(g);
  const auto j = graph_to_json(g, ranked);
  std::vector<RankedAspect> back_ranked;
  const ARRG back = graph_from_json(nlohmann::json::parse(j.dump()), &back_ranked);
  EXPECT_EQ(back, g);
  ASSERT_EQ(back_ranked.size(), ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    EXPECT_EQ(back_ranked[i].aspect, ranked[i].aspect);
    EXPECT_EQ(back_ranked[i].score, ranked[i].score);
  }
}

TEST(PageRank, SingleNode) {
  ARRG g;
  g.nodes["monitor"].frequency = 1;
  const auto r = pagerank(g);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_DOUBLE_EQ(r[0].score, 1.0);
}

TEST(PageRank, TwoNodeCycleIsSymmetric) {
  ARRG g;
  g.nodes["a"];
  g.nodes["b"];
  g.edges[{"a", "b"}] = {3, {{RelationLabel::Joint, 3}}};
  g.edges[{"b", "a"}] = {3, {{RelationLabel::Joint, 3}}};
  const auto r = pagerank(g);
  EXPECT_NEAR(r[0].score, 0.5, 1e-12);
  EXPECT_NEAR(r[1].score, 0.5, 1e-12);
  EXPECT_EQ(r[0].aspect, "a");  // tie broken by name
}

TEST(PageRank, ChainMatchesDenseOracle) {
  ARRG g;
  for (const char* n : {"a", "b", "c"}) g.nodes[n];
  g.edges[{"a", "b"}] = {1, {{RelationLabel::Cause, 1}}};
  g.edges[{"b", "c"}] = {1, {{RelationLabel::Cause, 1}}};
  const auto oracle = dense_pagerank(g, 0.85);
  const auto r = pagerank(g);
  for (const auto& ra : r) EXPECT_NEAR(ra.score, oracle.at(ra.aspect), 1e-8);
  EXPECT_EQ(r[0].aspect, "c");
}

TEST(PageRank, RandomGraphsMatchDenseOracle) {
  std::mt19937 rng(314);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const ARRG g = random_graph(rng, 1 + static_cast<std::size_t>(trial % 10));
    const auto oracle = dense_pagerank(g, 0.85);
    const auto r = pagerank(g);
    double total = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      total += r[i].score;
      EXPECT_GT(r[i].score, 0.0);
      worst = std::max(worst, std::fabs(r[i].score - oracle.at(r[i].aspect)));
      if (i > 0) {
        const bool ordered = std::llround(r[i - 1].score * 1e12) > std::llround(r[i].score * 1e12) ||
                             (std::llround(r[i - 1].score * 1e12) == std::llround(r[i].score * 1e12) &&
                              r[i - 1].aspect < r[i].aspect);
        EXPECT_TRUE(ordered);
      }
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(PageRank, UncappedIterationReachesFixedPoint) {
  std::mt19937 rng(314);
  PageRankOptions uncapped;
  uncapped.max_iter = 1000000;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const ARRG g = random_graph(rng, 1 + static_cast<std::size_t>(trial % 10));
    const auto fixed_point = dense_pagerank(g, 0.85, 1e-15, 1000000);
    for (const auto& r : pagerank(g, uncapped)) worst = std::max(worst, std::fabs(r.score - fixed_point.at(r.aspect)));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Filter, CeilingRule) {
  std::vector<RankedAspect> ranked;
  for (int i = 0; i < 10; ++i) ranked.push_back({"a" + std::to_string(i), 0.1});
  EXPECT_EQ(filter_by_importance(ranked, 1.0).size(), 10u);
  EXPECT_EQ(filter_by_importance(ranked, 0.25), (std::vector<std::string>{"a0", "a1", "a2"}));
  EXPECT_EQ(filter_by_importance(ranked, 0.05).size(), 1u);
  EXPECT_THROW(filter_by_importance(ranked, 0.0), std::invalid_argument);
  EXPECT_THROW(filter_by_importance(ranked, 1.5), std::invalid_argument);
}

TEST(Filter, SizeIsMonotoneInFactor) {
  for (std::size_t n : {1u, 7u, 20u, 53u}) {
    std::vector<RankedAspect> ranked(n);
    std::size_t prev = 0;
    for (int k = 1; k <= 100; ++k) {
      const std::size_t size = filter_by_importance(ranked, k / 100.0).size();
      EXPECT_GE(size, prev);
      EXPECT_EQ(size, std::min<std::size_t>(n, std::max<std::size_t>(1, static_cast<std::size_t>(
                                                                        std::ceil(k * n / 100.0 - 1e-9)))));
      prev = size;
    }
    EXPECT_EQ(prev, n);
  }
}

namespace {

using UEdge = std::pair<std::string, std::string>;

std::set<UEdge> tree_edges(const AspectHierarchyTree& t) {
  std::set<UEdge> out;
  for (const auto& [parent, kids] : t.children)
    if (parent != AspectHierarchyTree::kSyntheticRoot)
      for (const auto& k : kids) out.insert(std::minmax(parent, k));
  return out;
}

// Exhaustive search over every edge subset for the best spanning forest under
// (weight desc, endpoint pair asc).
std::set<UEdge> brute_force_forest(const ARRG& g, const std::vector<std::string>& kept) {
  std::map<UEdge, std::size_t> undirected;
  const std::set<std::string> keep(kept.begin(), kept.end());
  for (const auto& [key, e] : g.edges)
    if (keep.contains(key.first) && keep.contains(key.second)) undirected[std::minmax(key.first, key.second)] += e.weight;
  std::vector<std::pair<UEdge, long long>> edges;
  long long rank = 0;
  for (const auto& [k, w] : undirected) edges.push_back({k, static_cast<long long>(w) * 1000 - rank++});

  std::set<UEdge> best;
  long long best_score = -1;
  std::size_t best_size = 0;
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    std::map<std::string, std::string> parent;
    for (const auto& v : kept) parent[v] = v;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
      return parent[x] == x ? x : find(parent[x]);
    };
    bool acyclic = true;
    long long score = 0;
    std::set<UEdge> chosen;
    for (std::size_t i = 0; i < edges.size() && acyclic; ++i) {
      if (!(mask >> i & 1u)) continue;
      const auto a = find(edges[i].first.first), b = find(edges[i].first.second);
      if (a == b) acyclic = false;
      parent[a] = b;
      score += edges[i].second;
      chosen.insert(edges[i].first);
    }
    if (!acyclic) continue;
    if (chosen.size() > best_size || (chosen.size() == best_size && score > best_score)) {
      best = chosen;
      best_score = score;
      best_size = chosen.size();
    }
  }
  return best;
}

void check_tree_shape(const AspectHierarchyTree& t, const std::vector<std::string>& kept) {
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < kept.size(); ++i) rank[kept[i]] = i;
  std::multiset<std::string> seen;
  std::size_t roots = 0;
  for (const auto& [parent, kids] : t.children) {
    for (std::size_t i = 0; i < kids.size(); ++i) {
      seen.insert(kids[i]);
      if (i > 0) {
        EXPECT_LT(rank.at(kids[i - 1]), rank.at(kids[i]));
      }
    }
  }
  if (t.root == AspectHierarchyTree::kSyntheticRoot) {
    roots = t.children.at(t.root).size();
    EXPECT_GE(roots, 2u);
    EXPECT_EQ(t.size(), kept.size() + 1);
  } else {
    seen.insert(t.root);
    EXPECT_EQ(t.root, kept.front());
    EXPECT_EQ(t.size(), kept.size());
  }
  EXPECT_EQ(std::set<std::string>(seen.begin(), seen.end()), std::set<std::string>(kept.begin(), kept.end()));
  EXPECT_EQ(seen.size(), kept.size());
}

}  // namespace

TEST(Hierarchy, SingleAspect) {
  ARRG g;
  g.nodes["monitor"];
  const auto t = build_hierarchy(g, {"monitor"});
  EXPECT_EQ(t.root, "monitor");
  EXPECT_EQ(t.size(), 1u);
  EXPECT_TRUE(t.children.at("monitor").empty());
}

TEST(Hierarchy, TwoAspectsOneEdge) {
  ARRG g;
  g.nodes["a"];
  g.nodes["b"];
  g.edges[{"a", "b"}] = {1, {{RelationLabel::Joint, 1}}};
  const auto t = build_hierarchy(g, {"b", "a"});
  EXPECT_EQ(t.root, "b");
  EXPECT_EQ(t.children.at("b"), std::vector<std::string>{"a"});
}

TEST(Hierarchy, DisconnectedUsesSyntheticRoot) {
  ARRG g;
  for (const char* n : {"a", "b", "c"}) g.nodes[n];
  g.edges[{"a", "c"}] = {2, {{RelationLabel::Joint, 2}}};
  const auto t = build_hierarchy(g, {"c", "b", "a"});
  EXPECT_EQ(t.root, "*");
  EXPECT_EQ(t.children.at("*"), (std::vector<std::string>{"c", "b"}));
  EXPECT_EQ(t.children.at("c"), std::vector<std::string>{"a"});
  check_tree_shape(t, {"c", "b", "a"});
}

TEST(Hierarchy, SquareWithHeavyDiagonal) {
  ARRG g;
  for (const char* n : {"a", "b", "c", "d"}) g.nodes[n];
  auto edge = [&](const char* s, const char* t, std::size_t w) { g.edges[{s, t}] = {w, {{RelationLabel::Joint, w}}}; };
  edge("a", "b", 1);
  edge("b", "c", 2);
  edge("c", "d", 1);
  edge("d", "a", 2);
  edge("a", "c", 5);
  const std::vector<std::string> kept{"a", "c", "b", "d"};
  const auto t = build_hierarchy(g, kept);
  EXPECT_EQ(tree_edges(t), brute_force_forest(g, kept));
  EXPECT_TRUE(tree_edges(t).contains({"a", "c"}));
  check_tree_shape(t, kept);
}

TEST(Hierarchy, MatchesBruteForceOnRandomGraphs) {
  std::mt19937 rng(271);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    const ARRG g = random_graph(rng, n);
    const auto ranked = pagerank(g);
    std::uniform_int_distribution<std::size_t> take(1, n);
    const auto kept = filter_by_importance(ranked, static_cast<double>(take(rng)) / static_cast<double>(n));
    const auto t = build_hierarchy(g, kept);
    EXPECT_EQ(tree_edges(t), brute_force_forest(g, kept));
    check_tree_shape(t, kept);
  }
}
