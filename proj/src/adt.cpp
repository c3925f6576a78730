#include "aspectflow/adt.hpp"

namespace aspectflow {

AspectDiscourseTree annotate_tree(const DiscourseTree& tree, const SentimentModel& model, bool sentiment_filter,
                                  const PosLexicon& lexicon, const AspectStoplist& stoplist) {
  return tree.map_leaves([&](const EDU& edu) {
    AspectEDU leaf;
    leaf.edu = edu;
    const Prediction p = model.predict(edu.text);
    leaf.polarity = p.label;
    leaf.probabilities = p.probabilities;
    leaf.aspects = extract_aspects(tag_pos(edu.text, lexicon), stoplist);
    leaf.active = !(sentiment_filter && p.label == Polarity::Neutral);
    return leaf;
  });
}

nlohmann::json to_json(const AspectEDU& leaf) {
  nlohmann::json aspects = nlohmann::json::array();
  for (const AspectCandidate& a : leaf.aspects) aspects.push_back(a.normalized);
  return nlohmann::json{{"edu", to_json(leaf.edu)},
                        {"polarity", to_string(leaf.polarity)},
                        {"probabilities", leaf.probabilities},
                        {"aspects", aspects},
                        {"active", leaf.active}};
}

nlohmann::json to_json(const AspectDiscourseTree& tree) {
  nlohmann::json j;
  j["doc_id"] = tree.doc_id;
  j["root"] = tree_to_json(tree, tree.root, [](const AspectEDU& leaf) { return to_json(leaf); });
  return j;
}

}  // namespace aspectflow
