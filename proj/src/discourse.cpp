#include "aspectflow/discourse.hpp"

#include <array>
#include <spdlog/spdlog.h>

#include "aspectflow/resources.hpp"
#include "aspectflow/text.hpp"

namespace aspectflow {
namespace {

constexpr std::array<std::string_view, 8> kRelationNames{"Elaboration", "Contrast", "Cause",  "Condition",
                                                         "Temporal",    "Attribution", "Joint", "SameUnit"};
constexpr std::array<std::string_view, 3> kNuclearityNames{"NS", "SN", "NN"};

constexpr std::array<std::string_view, 9> kSubordinators{"because", "although", "while", "if", "when",
                                                         "which",   "who",      "that",  "so"};

constexpr std::array<std::string_view, 19> kAbbreviations{"mr", "mrs", "ms",  "dr",  "prof", "sr",  "jr",
                                                          "st", "vs",  "etc", "e.g", "i.e",  "inc", "ltd",
                                                          "co", "no",  "approx", "u.s", "fig"};

bool is_word_char(char c) {
  return text::is_alpha(c) || text::is_digit(c) || c == '\'' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_closing(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool is_abbreviation(std::string_view line, std::size_t period) {
  std::size_t start = period;
  while (start > 0 && !text::is_space(line[start - 1])) --start;
  std::string_view word = line.substr(start, period - start);
  while (!word.empty() && (word.front() == '"' || word.front() == '(' || word.front() == '\'')) word.remove_prefix(1);
  if (word.size() == 1 && text::is_alpha(word[0])) return true;  // initials
  const std::string lower = text::to_lower(word);
  for (std::string_view a : kAbbreviations)
    if (lower == a) return true;
  return false;
}

std::size_t count_tokens(std::string_view s) { return word_tokens(s).size(); }

}  // namespace

std::string_view to_string(RelationLabel r) noexcept { return kRelationNames[static_cast<std::size_t>(r)]; }

std::optional<RelationLabel> parse_relation(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kRelationNames.size(); ++i)
    if (kRelationNames[i] == s) return static_cast<RelationLabel>(i);
  return std::nullopt;
}

std::string_view to_string(Nuclearity n) noexcept { return kNuclearityNames[static_cast<std::size_t>(n)]; }

std::optional<Nuclearity> parse_nuclearity(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kNuclearityNames.size(); ++i)
    if (kNuclearityNames[i] == s) return static_cast<Nuclearity>(i);
  return std::nullopt;
}

ConnectiveLexicon ConnectiveLexicon::parse(std::string_view content) {
  ConnectiveLexicon lex;
  std::size_t line_no = 0;
  for (std::string_view raw : text::split_lines(content)) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos)
      throw std::runtime_error("connective lexicon line " + std::to_string(line_no) + ": expected 3 fields");
    const std::string word = text::to_lower(text::trim(line.substr(0, t1)));
    const auto relation = parse_relation(text::trim(line.substr(t1 + 1, t2 - t1 - 1)));
    const std::string_view kind = text::trim(line.substr(t2 + 1));
    if (word.empty() || !relation || (kind != "sub" && kind != "coord"))
      throw std::runtime_error("connective lexicon line " + std::to_string(line_no) + ": bad entry");
    lex.entries_[word] = Connective{*relation, kind == "sub"};
  }
  return lex;
}

const ConnectiveLexicon& ConnectiveLexicon::builtin() {
  static const ConnectiveLexicon lex = parse(embedded::connectives());
  return lex;
}

const Connective* ConnectiveLexicon::find(std::string_view lowercase_word) const {
  auto it = entries_.find(lowercase_word);
  return it == entries_.end() ? nullptr : &it->second;
}

bool is_subordinator(std::string_view lowercase_word) noexcept {
  for (std::string_view s : kSubordinators)
    if (s == lowercase_word) return true;
  return false;
}

std::vector<WordToken> word_tokens(std::string_view s) {
  std::vector<WordToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_word_char(s[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < s.size() && is_word_char(s[i])) ++i;
    // Bare apostrophes and hyphens are punctuation, not words.
    bool has_content = false;
    for (std::size_t k = begin; k < i; ++k)
      if (s[k] != '\'' && s[k] != '-') has_content = true;
    if (has_content) out.push_back({begin, i});
  }
  return out;
}

std::vector<std::size_t> sentence_starts(std::string_view line) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    while (j < line.size() && is_closing(line[j])) ++j;
    if (j >= line.size() || !text::is_space(line[j])) continue;
    while (j < line.size() && text::is_space(line[j])) ++j;
    if (j >= line.size()) continue;
    const char next = line[j];
    if (!(next >= 'A' && next <= 'Z') && next != '"' && next != '\'') continue;
    if (c == '.' && is_abbreviation(line, i)) continue;
    starts.push_back(j);
  }
  return starts;
}

std::vector<EDU> segment_edus(const Document& doc, const ConnectiveLexicon& lexicon) {
  std::vector<EDU> edus;
  int next_id = 0;
  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    const std::string_view line = doc.sentences[si].text;
    if (count_tokens(line) == 0) {
      spdlog::warn("{}: sentence {} has no tokens, skipped", doc.id, si);
      continue;
    }

    // Sentence parts tile the line; token-less parts fold into their neighbour.
    std::vector<std::size_t> bounds{0};
    for (std::size_t s : sentence_starts(line)) bounds.push_back(s);
    bounds.push_back(line.size());
    std::vector<CharSpan> parts;
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
      const CharSpan part{bounds[k], bounds[k + 1]};
      if (count_tokens(line.substr(part.begin, part.end - part.begin)) > 0) {
        // A leading token-less part is absorbed by the first part with words.
        parts.push_back({parts.empty() ? 0 : part.begin, part.end});
      } else if (!parts.empty()) {
        parts.back().end = part.end;
      }
    }

    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
      const CharSpan part = parts[pi];
      const std::string_view part_text = line.substr(part.begin, part.end - part.begin);
      const std::vector<WordToken> tokens = word_tokens(part_text);

      std::vector<std::size_t> cuts;  // token indices that open a new EDU
      std::size_t seg_start = 0;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        const std::string word = text::to_lower(part_text.substr(tokens[k].begin, tokens[k].end - tokens[k].begin));
        const std::string_view gap =
            text::trim(part_text.substr(tokens[k - 1].end, tokens[k].begin - tokens[k - 1].end));
        const bool after_clause_punct = !gap.empty() && (gap.back() == ',' || gap.back() == ';');
        const bool trigger = (after_clause_punct && lexicon.find(word) != nullptr) ||
                             (is_subordinator(word) && k - seg_start >= 2);
        if (!trigger) continue;
        if (k - seg_start < 2 || tokens.size() - k < 2) continue;
        cuts.push_back(k);
        seg_start = k;
      }

      std::vector<std::size_t> starts{0};
      for (std::size_t k : cuts) starts.push_back(tokens[k].begin);
      starts.push_back(part_text.size());
      for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
        EDU edu;
        edu.id = next_id++;
        edu.sentence_index = si;
        edu.subsentence = pi;
        edu.span = {part.begin + starts[k], part.begin + starts[k + 1]};
        edu.text = std::string(line.substr(edu.span.begin, edu.span.end - edu.span.begin));
        edus.push_back(std::move(edu));
      }
    }
  }
  return edus;
}

namespace {

Connective leading_connective(const EDU& edu, const ConnectiveLexicon& lexicon) {
  const auto tokens = word_tokens(edu.text);
  if (!tokens.empty()) {
    const std::string word = text::to_lower(std::string_view(edu.text).substr(tokens[0].begin, tokens[0].end - tokens[0].begin));
    if (const Connective* c = lexicon.find(word)) return *c;
  }
  return Connective{RelationLabel::Elaboration, false};
}

}  // namespace

DiscourseTree build_discourse_tree(const std::vector<EDU>& edus, std::string doc_id, const ConnectiveLexicon& lexicon) {
  if (edus.empty()) throw UnanalyzableDocument("document '" + doc_id + "' has no discourse units");
  DiscourseTree tree;
  tree.doc_id = std::move(doc_id);
  tree.nodes.reserve(2 * edus.size());

  std::vector<std::size_t> sentence_roots;
  std::size_t begin = 0;
  while (begin < edus.size()) {
    std::size_t end = begin + 1;
    while (end < edus.size() && edus[end].sentence_index == edus[begin].sentence_index &&
           edus[end].subsentence == edus[begin].subsentence)
      ++end;
    // Right-to-left: e0 + (e1 + (e2 + ...)).
    std::size_t node = tree.add_leaf(edus[end - 1]);
    for (std::size_t i = end - 1; i-- > begin;) {
      const std::size_t left = tree.add_leaf(edus[i]);
      const Connective c = leading_connective(edus[i + 1], lexicon);
      node = tree.add_internal(c.relation, c.subordinating ? Nuclearity::NS : Nuclearity::NN, left, node);
    }
    sentence_roots.push_back(node);
    begin = end;
  }

  std::size_t root = sentence_roots.front();
  for (std::size_t k = 1; k < sentence_roots.size(); ++k)
    root = tree.add_internal(RelationLabel::Joint, Nuclearity::NN, root, sentence_roots[k]);
  tree.root = root;
  return tree;
}

nlohmann::json to_json(const EDU& edu) {
  return nlohmann::json{{"id", edu.id},
                        {"sentence", edu.sentence_index},
                        {"subsentence", edu.subsentence},
                        {"span", {edu.span.begin, edu.span.end}},
                        {"text", edu.text}};
}

nlohmann::json to_json(const DiscourseTree& tree) {
  nlohmann::json j;
  j["doc_id"] = tree.doc_id;
  j["root"] = tree_to_json(tree, tree.root, [](const EDU& e) { return nlohmann::json{{"edu", to_json(e)}}; });
  return j;
}

}  // namespace aspectflow
