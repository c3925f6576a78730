#pragma once

// End-to-end analysis of a document collection: segment, build discourse
// trees, annotate leaves, extract relations, merge the corpus graph, rank.

#include <cstddef>
#include <vector>

#include "aspectflow/adt.hpp"
#include "aspectflow/arrg.hpp"
#include "aspectflow/corpus_io.hpp"
#include "aspectflow/sentiment.hpp"

namespace aspectflow {

struct PipelineConfig {
  bool sentiment_filter = true;
  unsigned workers = 1;
  PageRankOptions pagerank;
  // Null selects the built-in lexicons.
  const ConnectiveLexicon* connectives = nullptr;
  const PosLexicon* pos_lexicon = nullptr;
  const AspectStoplist* stoplist = nullptr;
};

struct CorpusAnalysis {
  std::vector<AspectDiscourseTree> adts;  // input order; unanalyzable documents omitted
  ARRG graph;
  std::vector<RankedAspect> ranked;  // empty when the graph has no nodes
  std::size_t skipped_documents = 0;
};

// Documents are processed by `config.workers` threads; the result does not
// depend on the worker count.
CorpusAnalysis analyze_corpus(const std::vector<Document>& docs, const SentimentModel& model,
                              const PipelineConfig& config = {});

}  // namespace aspectflow
