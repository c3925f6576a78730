#pragma once

// Aspect-based discourse trees: discourse trees whose leaves carry EDU
// polarity and aspect candidates. Neutral EDUs are flagged inactive when
// sentiment filtering is on; they are never removed, so tree shape and EDU
// order survive for relation extraction.

#include <array>
#include <vector>

#include <nlohmann/json.hpp>

#include "aspectflow/aspect_extraction.hpp"
#include "aspectflow/discourse.hpp"
#include "aspectflow/sentiment.hpp"

namespace aspectflow {

struct AspectEDU {
  EDU edu;
  Polarity polarity = Polarity::Neutral;
  std::array<double, kNumLabels> probabilities{};
  std::vector<AspectCandidate> aspects;
  bool active = true;
};

using AspectDiscourseTree = BinaryDiscourseTree<AspectEDU>;

AspectDiscourseTree annotate_tree(const DiscourseTree& tree, const SentimentModel& model, bool sentiment_filter,
                                  const PosLexicon& lexicon = PosLexicon::builtin(),
                                  const AspectStoplist& stoplist = AspectStoplist::builtin());

nlohmann::json to_json(const AspectEDU& leaf);
nlohmann::json to_json(const AspectDiscourseTree& tree);

}  // namespace aspectflow
