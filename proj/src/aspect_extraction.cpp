#include "aspectflow/aspect_extraction.hpp"

#include <array>
#include <stdexcept>

#include "aspectflow/resources.hpp"
#include "aspectflow/text.hpp"

namespace aspectflow {
namespace {

constexpr std::array<std::string_view, 10> kTagNames{"NOUN", "ADJ", "VERB", "ADV", "DET",
                                                     "PRON", "PREP", "CONJ", "NUM", "OTHER"};

bool is_word_char(char c) {
  return text::is_alpha(c) || text::is_digit(c) || c == '\'' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::optional<PosTag> suffix_tag(std::string_view w, std::optional<PosTag> previous) {
  if (w.size() >= 5 && (ends_with(w, "ous") || ends_with(w, "ful") || ends_with(w, "ive") || ends_with(w, "able")))
    return PosTag::ADJ;
  if (w.size() >= 4 && ends_with(w, "ly")) return PosTag::ADV;
  const bool ing = w.size() >= 5 && ends_with(w, "ing");
  const bool ed = w.size() >= 4 && ends_with(w, "ed") && !ends_with(w, "eed");
  if (ing || ed) {
    if (previous == PosTag::DET || previous == PosTag::ADJ) return PosTag::ADJ;
    return PosTag::VERB;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(PosTag t) noexcept { return kTagNames[static_cast<std::size_t>(t)]; }

std::optional<PosTag> parse_pos_tag(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kTagNames.size(); ++i)
    if (kTagNames[i] == s) return static_cast<PosTag>(i);
  return std::nullopt;
}

PosLexicon PosLexicon::parse(std::string_view content) {
  PosLexicon lex;
  std::size_t line_no = 0;
  for (std::string_view raw : text::split_lines(content)) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    const auto tag = tab == std::string_view::npos ? std::nullopt : parse_pos_tag(text::trim(line.substr(tab + 1)));
    if (!tag) throw std::runtime_error("POS lexicon line " + std::to_string(line_no) + ": expected word<TAB>TAG");
    lex.entries_.emplace(text::to_lower(text::trim(line.substr(0, tab))), *tag);
  }
  return lex;
}

const PosLexicon& PosLexicon::builtin() {
  static const PosLexicon lex = parse(embedded::pos_lexicon());
  return lex;
}

std::optional<PosTag> PosLexicon::find(std::string_view lowercase_word) const {
  auto it = entries_.find(lowercase_word);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

AspectStoplist AspectStoplist::parse(std::string_view content) {
  AspectStoplist list;
  for (std::string_view raw : text::split_lines(content)) {
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    list.entries_.insert(text::normalize_aspect(line));
  }
  return list;
}

const AspectStoplist& AspectStoplist::builtin() {
  static const AspectStoplist list = parse(embedded::aspect_stoplist());
  return list;
}

std::vector<TaggedToken> tag_pos(std::string_view input, const PosLexicon& lexicon) {
  std::vector<TaggedToken> tokens;
  std::size_t i = 0;
  while (i < input.size()) {
    const char c = input[i];
    if (text::is_space(c)) {
      ++i;
      continue;
    }
    if (!is_word_char(c) || ((c == '\'' || c == '-') && (i + 1 >= input.size() || !is_word_char(input[i + 1])))) {
      tokens.push_back({std::string(1, c), PosTag::OTHER, i, i + 1});
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < input.size() && is_word_char(input[end])) ++end;
    std::string_view word = input.substr(i, end - i);
    const std::string lower = text::to_lower(word);
    // Possessive "'s" splits off unless the whole form is a listed contraction.
    if (lower.size() > 2 && ends_with(lower, "'s") && !lexicon.find(lower)) {
      tokens.push_back({std::string(word.substr(0, word.size() - 2)), PosTag::OTHER, i, end - 2});
      tokens.push_back({"'s", PosTag::OTHER, end - 2, end});
    } else {
      tokens.push_back({std::string(word), PosTag::OTHER, i, end});
    }
    i = end;
  }

  std::optional<PosTag> previous;
  for (TaggedToken& t : tokens) {
    const bool punctuation = t.text.size() == 1 && !is_word_char(t.text[0]);
    if (punctuation || t.text == "'s" || t.text == "'" || t.text == "-") {
      t.tag = PosTag::OTHER;
    } else {
      const std::string lower = text::to_lower(t.text);
      if (auto lex = lexicon.find(lower))
        t.tag = *lex;
      else if (auto suffix = suffix_tag(lower, previous))
        t.tag = *suffix;
      else if (text::is_all_digits(lower))
        t.tag = PosTag::NUM;
      else
        t.tag = PosTag::NOUN;
    }
    previous = t.tag;
  }
  return tokens;
}

std::vector<AspectCandidate> extract_aspects(const std::vector<TaggedToken>& tokens, const AspectStoplist& stoplist) {
  std::vector<AspectCandidate> out;
  auto join = [&](std::size_t from, std::size_t to) {
    std::string s;
    for (std::size_t k = from; k <= to; ++k) {
      if (k > from) s.push_back(' ');
      s += tokens[k].text;
    }
    return s;
  };

  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t chunk_start = i;
    while (i < tokens.size() && tokens[i].tag == PosTag::ADJ) ++i;
    const std::size_t noun_start = i;
    while (i < tokens.size() && tokens[i].tag == PosTag::NOUN) ++i;
    if (i == noun_start) {
      // No noun after the adjectives (or not a chunk token at all).
      if (i == chunk_start) ++i;
      continue;
    }
    const std::size_t noun_end = i - 1;
    AspectCandidate cand;
    cand.surface = join(chunk_start, noun_end);
    cand.normalized = text::normalize_aspect(join(noun_start, noun_end));
    cand.head = text::normalize_aspect(tokens[noun_end].text);
    cand.first_token = noun_start;
    cand.last_token = noun_end;
    if (cand.normalized.empty() || stoplist.contains(cand.normalized) || text::is_all_digits(cand.normalized))
      continue;
    bool duplicate = false;
    for (const AspectCandidate& c : out) duplicate = duplicate || c.normalized == cand.normalized;
    if (!duplicate) out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace aspectflow
