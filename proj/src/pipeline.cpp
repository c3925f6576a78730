#include "aspectflow/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

#include <spdlog/spdlog.h>

namespace aspectflow {

CorpusAnalysis analyze_corpus(const std::vector<Document>& docs, const SentimentModel& model,
                              const PipelineConfig& config) {
  std::vector<std::optional<AspectDiscourseTree>> per_doc(docs.size());
  const ConnectiveLexicon& connectives = config.connectives ? *config.connectives : ConnectiveLexicon::builtin();
  const PosLexicon& pos = config.pos_lexicon ? *config.pos_lexicon : PosLexicon::builtin();
  const AspectStoplist& stoplist = config.stoplist ? *config.stoplist : AspectStoplist::builtin();
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      const std::vector<EDU> edus = segment_edus(docs[i], connectives);
      if (edus.empty()) continue;
      per_doc[i] = annotate_tree(build_discourse_tree(edus, docs[i].id, connectives), model, config.sentiment_filter,
                                 pos, stoplist);
    }
  };

  const unsigned workers = std::clamp<unsigned>(config.workers, 1, static_cast<unsigned>(std::max<std::size_t>(docs.size(), 1)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  CorpusAnalysis result;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!per_doc[i]) {
      spdlog::warn("{}: no analyzable text, document skipped", docs[i].id);
      ++result.skipped_documents;
      continue;
    }
    add_document(result.graph, *per_doc[i]);
    result.adts.push_back(std::move(*per_doc[i]));
  }
  if (!result.graph.empty()) result.ranked = pagerank(result.graph, config.pagerank);
  return result;
}

}  // namespace aspectflow
