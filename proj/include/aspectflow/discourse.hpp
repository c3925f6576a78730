#pragma once

// RST-lite discourse analysis: deterministic rule-based segmentation into
// elementary discourse units (EDUs) and a connective-driven binary
// nucleus/satellite tree builder.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "aspectflow/corpus_io.hpp"

namespace aspectflow {

enum class RelationLabel { Elaboration, Contrast, Cause, Condition, Temporal, Attribution, Joint, SameUnit };
enum class Nuclearity { NS, SN, NN };

std::string_view to_string(RelationLabel r) noexcept;
std::optional<RelationLabel> parse_relation(std::string_view s) noexcept;
std::string_view to_string(Nuclearity n) noexcept;
std::optional<Nuclearity> parse_nuclearity(std::string_view s) noexcept;

struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const CharSpan&) const = default;
};

struct EDU {
  int id = 0;                      // document-local, dense, text order
  std::size_t sentence_index = 0;  // index into Document::sentences
  std::size_t subsentence = 0;     // sentence within that line, after boundary detection
  CharSpan span;                   // offsets into the sentence line; spans tile the line
  std::string text;                // exact span contents, trailing whitespace included
  bool operator==(const EDU&) const = default;
};

struct Connective {
  RelationLabel relation = RelationLabel::Elaboration;
  bool subordinating = false;
};

// Lowercase single-word connectives. File format, one entry per line:
//   connective<TAB>relation<TAB>sub|coord
// '#' starts a comment line.
class ConnectiveLexicon {
 public:
  static ConnectiveLexicon parse(std::string_view content);
  static const ConnectiveLexicon& builtin();

  const Connective* find(std::string_view lowercase_word) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, Connective, std::less<>> entries_;
};

// Words that open a new EDU even without a preceding comma.
bool is_subordinator(std::string_view lowercase_word) noexcept;

// Word tokens used by the segmenter: runs of letters, digits, apostrophes,
// hyphens, and any non-ASCII bytes.
struct WordToken {
  std::size_t begin = 0;
  std::size_t end = 0;
};
std::vector<WordToken> word_tokens(std::string_view s);

// Sentence boundary offsets inside one line: each returned value starts a
// new sentence. Splits after . ! ? followed by whitespace and an uppercase
// letter or quote, except after known abbreviations.
std::vector<std::size_t> sentence_starts(std::string_view line);

std::vector<EDU> segment_edus(const Document& doc, const ConnectiveLexicon& lexicon = ConnectiveLexicon::builtin());

// Binary tree stored in a flat node array; navigate from `root` through the
// child indices.
template <class Leaf>
struct BinaryDiscourseTree {
  struct Internal {
    RelationLabel relation = RelationLabel::Elaboration;
    Nuclearity nuclearity = Nuclearity::NN;
    std::size_t left = 0;
    std::size_t right = 0;
  };
  using Node = std::variant<Leaf, Internal>;

  std::string doc_id;
  std::vector<Node> nodes;
  std::size_t root = 0;

  const Node& node(std::size_t i) const { return nodes.at(i); }
  bool is_leaf(std::size_t i) const { return std::holds_alternative<Leaf>(nodes.at(i)); }
  const Leaf& leaf(std::size_t i) const { return std::get<Leaf>(nodes.at(i)); }
  const Internal& internal(std::size_t i) const { return std::get<Internal>(nodes.at(i)); }

  std::size_t add_leaf(Leaf leaf) {
    nodes.emplace_back(std::move(leaf));
    return nodes.size() - 1;
  }
  std::size_t add_internal(RelationLabel r, Nuclearity n, std::size_t left, std::size_t right) {
    nodes.emplace_back(Internal{r, n, left, right});
    return nodes.size() - 1;
  }

  // In-order leaves.
  std::vector<const Leaf*> leaves() const {
    std::vector<const Leaf*> out;
    if (nodes.empty()) return out;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      if (is_leaf(i)) {
        out.push_back(&leaf(i));
      } else {
        stack.push_back(internal(i).right);
        stack.push_back(internal(i).left);
      }
    }
    return out;
  }

  // Same shape, leaves transformed by fn(const Leaf&) -> NewLeaf.
  template <class Fn>
  auto map_leaves(Fn&& fn) const -> BinaryDiscourseTree<std::invoke_result_t<Fn&, const Leaf&>> {
    BinaryDiscourseTree<std::invoke_result_t<Fn&, const Leaf&>> out;
    out.doc_id = doc_id;
    out.root = root;
    out.nodes.reserve(nodes.size());
    for (const Node& n : nodes) {
      if (const auto* l = std::get_if<Leaf>(&n))
        out.nodes.emplace_back(fn(*l));
      else {
        const auto& in = std::get<Internal>(n);
        out.nodes.emplace_back(typename decltype(out)::Internal{in.relation, in.nuclearity, in.left, in.right});
      }
    }
    return out;
  }
};

using DiscourseTree = BinaryDiscourseTree<EDU>;

class UnanalyzableDocument : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws UnanalyzableDocument when `edus` is empty.
DiscourseTree build_discourse_tree(const std::vector<EDU>& edus, std::string doc_id = {},
                                   const ConnectiveLexicon& lexicon = ConnectiveLexicon::builtin());

// Leaf reached by following nucleus children (left for NS and NN, right for SN).
template <class Leaf>
const Leaf& head_leaf(const BinaryDiscourseTree<Leaf>& tree, std::size_t node) {
  while (!tree.is_leaf(node)) {
    const auto& in = tree.internal(node);
    node = in.nuclearity == Nuclearity::SN ? in.right : in.left;
  }
  return tree.leaf(node);
}

inline const EDU& head_edu(const DiscourseTree& tree, std::size_t node) { return head_leaf(tree, node); }

nlohmann::json to_json(const EDU& edu);

// Nested JSON: {"kind":"leaf", ...payload} or
// {"kind":"internal","relation":..,"nuclearity":..,"left":..,"right":..}.
template <class Leaf, class LeafToJson>
nlohmann::json tree_to_json(const BinaryDiscourseTree<Leaf>& tree, std::size_t node, LeafToJson&& leaf_json) {
  if (tree.is_leaf(node)) {
    nlohmann::json j = leaf_json(tree.leaf(node));
    j["kind"] = "leaf";
    return j;
  }
  const auto& in = tree.internal(node);
  nlohmann::json j;
  j["kind"] = "internal";
  j["relation"] = to_string(in.relation);
  j["nuclearity"] = to_string(in.nuclearity);
  j["left"] = tree_to_json(tree, in.left, leaf_json);
  j["right"] = tree_to_json(tree, in.right, leaf_json);
  return j;
}

nlohmann::json to_json(const DiscourseTree& tree);

}  // namespace aspectflow
