#pragma once

// Agreement between predicted and gold aspect sets, and precision/recall
// curves over the importance factor for both sentiment-filter settings.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspectflow/arrg.hpp"
#include "aspectflow/corpus_io.hpp"
#include "aspectflow/pipeline.hpp"
#include "aspectflow/sentiment.hpp"

namespace aspectflow {

double jaro(std::string_view a, std::string_view b);
// Jaro plus the Winkler prefix boost (prefix capped at 4, scale 0.1).
double jaro_winkler(std::string_view a, std::string_view b);

struct MatchMode {
  enum class Kind { Exact, JaroWinkler };
  Kind kind = Kind::Exact;
  double threshold = 0.90;  // JaroWinkler only, in (0, 1]

  static MatchMode exact() { return {}; }
  static MatchMode jaro_winkler(double threshold = 0.90) { return {Kind::JaroWinkler, threshold}; }
};

struct SetScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

double f1_score(double precision, double recall) noexcept;

// Empty predicted set scores precision 0. Throws std::invalid_argument when
// gold is empty.
SetScores evaluate_sets(const std::set<std::string>& predicted, const std::set<std::string>& gold,
                        const MatchMode& mode = {});

struct EvalPoint {
  double factor = 0.0;
  std::size_t n_predicted = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool sentiment_filter = true;
};

// "lo:hi:step" -> lo, lo+step, ... <= hi (inclusive within 1e-9).
// Throws std::invalid_argument for bounds outside (0, 1] or step <= 0.
std::vector<double> parse_sweep(std::string_view range);
std::vector<double> default_sweep();  // 0.05 .. 1.00 step 0.05

// One curve from an existing ranking. Factors must be increasing within (0, 1].
std::vector<EvalPoint> evaluate_ranking(const std::vector<RankedAspect>& ranked, const std::set<std::string>& gold,
                                        const std::vector<double>& factors, const MatchMode& mode,
                                        bool sentiment_filter);

struct SweepResult {
  std::vector<EvalPoint> filtered;    // sentiment filter on
  std::vector<EvalPoint> unfiltered;  // sentiment filter off
};

// Runs the pipeline with and without the sentiment filter and scores every
// factor against the corpus-level distinct gold set.
SweepResult sweep_curves(const std::vector<Document>& corpus, const SentimentModel& model,
                         const std::vector<double>& factors, const MatchMode& mode,
                         const PipelineConfig& base = {});

// Header "mode,factor,n_predicted,precision,recall,f1"; rows sorted by
// (mode, factor); reals fixed at 6 decimals.
std::string curves_to_csv(const SweepResult& result);

std::set<std::string> gold_terms(const std::vector<Document>& docs);

}  // namespace aspectflow
