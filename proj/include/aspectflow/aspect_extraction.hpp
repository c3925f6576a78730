#pragma once

// Lexicon and suffix-rule part-of-speech tagging and noun-phrase chunking,
// producing normalized aspect candidates from EDU text.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aspectflow {

enum class PosTag { NOUN, ADJ, VERB, ADV, DET, PRON, PREP, CONJ, NUM, OTHER };

std::string_view to_string(PosTag t) noexcept;
std::optional<PosTag> parse_pos_tag(std::string_view s) noexcept;

struct TaggedToken {
  std::string text;
  PosTag tag = PosTag::OTHER;
  std::size_t begin = 0;  // byte offsets into the tagged text
  std::size_t end = 0;
};

// word<TAB>TAG per line, '#' comments; the first listing of a word wins.
class PosLexicon {
 public:
  static PosLexicon parse(std::string_view content);
  static const PosLexicon& builtin();
  std::optional<PosTag> find(std::string_view lowercase_word) const;

 private:
  std::map<std::string, PosTag, std::less<>> entries_;
};

// One normalized entry per line, '#' comments.
class AspectStoplist {
 public:
  static AspectStoplist parse(std::string_view content);
  static const AspectStoplist& builtin();
  bool contains(std::string_view normalized) const { return entries_.contains(normalized); }

 private:
  std::set<std::string, std::less<>> entries_;
};

// Tag priority: lexicon, then suffix rules (-ous/-ful/-ive/-able ADJ, -ly ADV,
// -ing/-ed VERB or ADJ after DET/ADJ), then all-digit tokens NUM, otherwise
// NOUN. Punctuation becomes OTHER tokens.
std::vector<TaggedToken> tag_pos(std::string_view text, const PosLexicon& lexicon = PosLexicon::builtin());

struct AspectCandidate {
  std::string surface;     // adjective-inclusive chunk as written
  std::string normalized;  // noun run, lowercase, single-spaced
  std::string head;        // last noun, normalized
  std::size_t first_token = 0;  // noun run [first_token, last_token] in the input
  std::size_t last_token = 0;
};

// Chunks ADJ* NOUN+ runs (a noun followed by an adjective closes a chunk) and
// emits each chunk's noun run, so "the changing colors" yields "colors".
// Drops stoplisted and numeric candidates; collapses duplicates.
std::vector<AspectCandidate> extract_aspects(const std::vector<TaggedToken>& tokens,
                                             const AspectStoplist& stoplist = AspectStoplist::builtin());

}  // namespace aspectflow
