#include <gtest/gtest.h>

#include <random>
#include <set>

#include "aspectflow/discourse.hpp"
#include "aspectflow/resources.hpp"
#include "aspectflow/text.hpp"
#include "test_support.hpp"

using namespace aspectflow;
using namespace aspectflow::test;

namespace {

Document doc_of(std::vector<std::string> sentences, std::string id = "t:0") {
  Document d;
  d.id = std::move(id);
  for (auto& s : sentences) d.sentences.push_back({std::move(s), {}});
  return d;
}

std::vector<std::string> edu_texts(const std::vector<EDU>& edus) {
  std::vector<std::string> out;
  for (const auto& e : edus) out.push_back(e.text);
  return out;
}

EDU make_edu(int id, std::size_t sentence, std::string text) {
  EDU e;
  e.id = id;
  e.sentence_index = sentence;
  e.text = std::move(text);
  e.span = {0, e.text.size()};
  return e;
}

// Random sentences mixing connectives, subordinators, punctuation,
// abbreviations, digits and irregular spacing.
std::string random_sentence(std::mt19937& rng) {
  static const std::vector<std::string> words{
      "the",   "screen", "is",   "great", "and",      "but",   "because", "which", "when", "so",
      "it",    "works",  "e.g.", "Mr.",   "2008",     "MacBook", "Pro",   "I",     "love", "colors",
      "that",  "if",     "a",    "although", "don't", "-",     "while",   "sound", "quality", "who"};
  static const std::vector<std::string> seps{" ", " ", " ", ", ", "; ", "  ", " - ", ". ", "! ", "? "};
  std::uniform_int_distribution<std::size_t> wn(1, 14), wi(0, words.size() - 1), si(0, seps.size() - 1);
  std::string s;
  const std::size_t n = wn(rng);
  for (std::size_t k = 0; k < n; ++k) {
    std::string w = words[wi(rng)];
    if (k > 0 && s.back() == ' ' && s.size() >= 2 && (s[s.size() - 2] == '.' || s[s.size() - 2] == '!'))
      w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    s += w;
    if (k + 1 < n) s += seps[si(rng)];
  }
  s += ".";
  return s;
}

}  // namespace

TEST(Segmentation, SplitsAtCommaConnective) {
  const auto edus = segment_edus(
      doc_of({"I have this connected to my late 2008 MacBook Pro, and it works flawlessly."}));
  ASSERT_EQ(edus.size(), 2u);
  EXPECT_EQ(edus[0].text, "I have this connected to my late 2008 MacBook Pro, ");
  EXPECT_EQ(edus[1].text, "and it works flawlessly.");
}

TEST(Segmentation, UnknownWordAfterCommaDoesNotSplit) {
  const auto edus = segment_edus(doc_of({"The changing colors help to tell, with a quick glance."}));
  EXPECT_EQ(edus.size(), 1u);
}

TEST(Segmentation, SingleWordSentenceIsOneEdu) {
  const auto edus = segment_edus(doc_of({"Great."}));
  ASSERT_EQ(edus.size(), 1u);
  EXPECT_EQ(edus[0].text, "Great.");
}

TEST(Segmentation, SubordinatorOpensEdu) {
  const auto edus = segment_edus(doc_of({"The router is useless because the signal drops every hour."}));
  EXPECT_EQ(edu_texts(edus),
            (std::vector<std::string>{"The router is useless ", "because the signal drops every hour."}));
}

TEST(Segmentation, ShortSegmentsAreSuppressed) {
  // A cut here would leave a one-token EDU on either side.
  EXPECT_EQ(segment_edus(doc_of({"Fine, but slow."})).size(), 1u);
  EXPECT_EQ(segment_edus(doc_of({"Because it works."})).size(), 1u);
}

TEST(Segmentation, TokenlessSentenceIsSkipped) {
  const auto edus = segment_edus(doc_of({"...", "Works well."}));
  ASSERT_EQ(edus.size(), 1u);
  EXPECT_EQ(edus[0].sentence_index, 1u);
  EXPECT_EQ(edus[0].id, 0);
}

TEST(Segmentation, SentenceSafetyNetHonoursAbbreviations) {
  const auto edus = segment_edus(doc_of({"Ask Mr. Smith about it. It works fine."}));
  ASSERT_EQ(edus.size(), 2u);
  EXPECT_EQ(edus[0].text, "Ask Mr. Smith about it. ");
  EXPECT_EQ(edus[1].subsentence, 1u);
}

TEST(Segmentation, SpansTileAndRoundTripOnRandomText) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::string> sentences{random_sentence(rng), random_sentence(rng)};
    const Document d = doc_of(sentences);
    const auto edus = segment_edus(d);
    std::vector<std::string> joined(sentences.size());
    std::vector<std::size_t> cursor(sentences.size(), 0);
    for (std::size_t k = 0; k < edus.size(); ++k) {
      const auto& e = edus[k];
      EXPECT_EQ(e.id, static_cast<int>(k));
      EXPECT_EQ(e.span.begin, cursor[e.sentence_index]) << sentences[e.sentence_index];
      EXPECT_EQ(e.text, sentences[e.sentence_index].substr(e.span.begin, e.span.end - e.span.begin));
      cursor[e.sentence_index] = e.span.end;
      joined[e.sentence_index] += e.text;
    }
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      if (word_tokens(sentences[s]).empty()) {
        EXPECT_EQ(cursor[s], 0u);  // skipped
        continue;
      }
      EXPECT_EQ(cursor[s], sentences[s].size());
      EXPECT_EQ(text::normalize_whitespace(joined[s]), text::normalize_whitespace(sentences[s]));
    }
  }
}

TEST(DiscourseTree, SingleEduIsLeafRoot) {
  const auto tree = build_discourse_tree({make_edu(0, 0, "Great.")});
  EXPECT_TRUE(tree.is_leaf(tree.root));
  EXPECT_EQ(tree.leaf(tree.root).text, "Great.");
}

TEST(DiscourseTree, BecauseGivesCauseNs) {
  const auto tree = build_discourse_tree({make_edu(0, 0, "It failed "), make_edu(1, 0, "because it overheated.")});
  ASSERT_FALSE(tree.is_leaf(tree.root));
  const auto& in = tree.internal(tree.root);
  EXPECT_EQ(in.relation, RelationLabel::Cause);
  EXPECT_EQ(in.nuclearity, Nuclearity::NS);
  EXPECT_EQ(tree.leaf(in.left).id, 0);
  EXPECT_EQ(tree.leaf(in.right).id, 1);
}

TEST(DiscourseTree, CoordinatingAndUnknownConnectives) {
  auto tree = build_discourse_tree({make_edu(0, 0, "Nice screen, "), make_edu(1, 0, "but weak sound.")});
  EXPECT_EQ(tree.internal(tree.root).relation, RelationLabel::Contrast);
  EXPECT_EQ(tree.internal(tree.root).nuclearity, Nuclearity::NN);
  tree = build_discourse_tree({make_edu(0, 0, "Nice screen "), make_edu(1, 0, "with good sound.")});
  EXPECT_EQ(tree.internal(tree.root).relation, RelationLabel::Elaboration);
  EXPECT_EQ(tree.internal(tree.root).nuclearity, Nuclearity::NN);
}

TEST(DiscourseTree, SentencesCombineLeftToRightUnderJoint) {
  const auto tree = build_discourse_tree({make_edu(0, 0, "One."), make_edu(1, 1, "Two."), make_edu(2, 2, "Three.")});
  const auto& root = tree.internal(tree.root);
  EXPECT_EQ(root.relation, RelationLabel::Joint);
  EXPECT_EQ(root.nuclearity, Nuclearity::NN);
  ASSERT_TRUE(tree.is_leaf(root.right));
  EXPECT_EQ(tree.leaf(root.right).id, 2);
  const auto& inner = tree.internal(root.left);
  EXPECT_EQ(inner.relation, RelationLabel::Joint);
  EXPECT_EQ(tree.leaf(inner.left).id, 0);
  EXPECT_EQ(tree.leaf(inner.right).id, 1);
}

TEST(DiscourseTree, EmptyInputIsUnanalyzable) {
  EXPECT_THROW(build_discourse_tree({}, "d"), UnanalyzableDocument);
}

TEST(DiscourseTree, HeadEduFollowsNuclearity) {
  DiscourseTree t;
  const auto a = t.add_leaf(make_edu(0, 0, "a"));
  const auto b = t.add_leaf(make_edu(1, 0, "b"));
  const auto c = t.add_leaf(make_edu(2, 0, "c"));
  const auto bc = t.add_internal(RelationLabel::Joint, Nuclearity::NN, b, c);
  t.root = t.add_internal(RelationLabel::Contrast, Nuclearity::SN, a, bc);
  EXPECT_EQ(head_edu(t, t.root).text, "b");
  EXPECT_EQ(head_edu(t, a).text, "a");

  DiscourseTree u;
  const auto x = u.add_leaf(make_edu(0, 0, "x"));
  const auto y = u.add_leaf(make_edu(1, 0, "y"));
  u.root = u.add_internal(RelationLabel::Cause, Nuclearity::NS, x, y);
  EXPECT_EQ(head_edu(u, u.root).text, "x");
}

TEST(DiscourseTree, StructuralInvariantsOnRandomDocuments) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> nsent(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> sentences;
    for (int k = nsent(rng); k > 0; --k) sentences.push_back(random_sentence(rng));
    const auto edus = segment_edus(doc_of(sentences));
    if (edus.empty()) continue;
    const auto tree = build_discourse_tree(edus, "t:0");
    const auto leaves = tree.leaves();
    ASSERT_EQ(leaves.size(), edus.size());
    for (std::size_t k = 0; k < edus.size(); ++k) EXPECT_EQ(*leaves[k], edus[k]);
    EXPECT_EQ(tree.nodes.size(), 2 * edus.size() - 1);

    // Left subtree ids precede right subtree ids at every internal node.
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      if (tree.is_leaf(i)) continue;
      DiscourseTree left = tree, right = tree;
      left.root = tree.internal(i).left;
      right.root = tree.internal(i).right;
      EXPECT_LT(left.leaves().back()->id, right.leaves().front()->id);
    }
    const EDU& head = head_edu(tree, tree.root);
    EXPECT_GE(head.id, edus.front().id);
    EXPECT_LE(head.id, edus.back().id);
  }
}

TEST(DiscourseTree, SerializationIsDeterministic) {
  const Document d = doc_of({"The screen is great, but the sound is weak.", "I love it because it works."});
  const std::string a = to_json(build_discourse_tree(segment_edus(d), d.id)).dump();
  const std::string b = to_json(build_discourse_tree(segment_edus(d), d.id)).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"Contrast\""), std::string::npos);
}

TEST(ConnectiveLexicon, ShippedFileMatchesBuiltin) {
  const auto file = ConnectiveLexicon::parse(read_file(data_path("connectives.tsv")));
  EXPECT_EQ(file.size(), ConnectiveLexicon::builtin().size());
  for (const char* w : {"and", "but", "because", "although", "while", "if", "when", "which", "who", "that", "so"})
    ASSERT_NE(file.find(w), nullptr) << w;
  EXPECT_EQ(file.find("and")->relation, RelationLabel::Joint);
  EXPECT_EQ(file.find("but")->relation, RelationLabel::Contrast);
  EXPECT_EQ(file.find("because")->relation, RelationLabel::Cause);
  EXPECT_TRUE(file.find("because")->subordinating);
  EXPECT_EQ(file.find("if")->relation, RelationLabel::Condition);
  EXPECT_EQ(file.find("when")->relation, RelationLabel::Temporal);
  EXPECT_EQ(file.find("which")->relation, RelationLabel::Elaboration);
  EXPECT_EQ(file.find("with"), nullptr);
}

TEST(ConnectiveLexicon, RejectsMalformedLines) {
  EXPECT_THROW(ConnectiveLexicon::parse("and\tJoint\n"), std::runtime_error);
  EXPECT_THROW(ConnectiveLexicon::parse("and\tNope\tcoord\n"), std::runtime_error);
  EXPECT_EQ(ConnectiveLexicon::parse("# c\n\nAND\tJoint\tcoord\n").find("and")->relation, RelationLabel::Joint);
}

TEST(RelationNames, RoundTrip) {
  for (int i = 0; i < 8; ++i) {
    const auto r = static_cast<RelationLabel>(i);
    EXPECT_EQ(parse_relation(to_string(r)), r);
  }
  for (auto n : {Nuclearity::NS, Nuclearity::SN, Nuclearity::NN}) EXPECT_EQ(parse_nuclearity(to_string(n)), n);
  EXPECT_FALSE(parse_relation("Bogus"));
}
