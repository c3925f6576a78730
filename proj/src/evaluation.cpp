#include "aspectflow/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "aspectflow/text.hpp"

namespace aspectflow {

double jaro(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const std::size_t longer = std::max(a.size(), b.size());
  const std::size_t window = longer / 2 > 0 ? longer / 2 - 1 : 0;

  std::vector<bool> a_matched(a.size(), false), b_matched(b.size(), false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(b.size(), i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (b_matched[j] || a[i] != b[j]) continue;
      a_matched[i] = b_matched[j] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;

  std::size_t out_of_order = 0;
  for (std::size_t i = 0, j = 0; i < a.size(); ++i) {
    if (!a_matched[i]) continue;
    while (!b_matched[j]) ++j;
    if (a[i] != b[j]) ++out_of_order;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(out_of_order) / 2.0;
  return (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) + (m - t) / m) / 3.0;
}

double jaro_winkler(std::string_view a, std::string_view b) {
  const double j = jaro(a, b);
  std::size_t prefix = 0;
  while (prefix < 4 && prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

double f1_score(double precision, double recall) noexcept {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

SetScores evaluate_sets(const std::set<std::string>& predicted, const std::set<std::string>& gold,
                        const MatchMode& mode) {
  if (gold.empty()) throw std::invalid_argument("gold aspect set is empty");
  auto matches = [&](const std::string& x, const std::set<std::string>& pool) {
    if (mode.kind == MatchMode::Kind::Exact) return pool.contains(x);
    return std::any_of(pool.begin(), pool.end(),
                       [&](const std::string& y) { return jaro_winkler(x, y) >= mode.threshold; });
  };
  std::size_t hit_p = 0, hit_g = 0;
  for (const std::string& p : predicted) hit_p += matches(p, gold) ? 1 : 0;
  for (const std::string& g : gold) hit_g += matches(g, predicted) ? 1 : 0;

  SetScores s;
  s.precision = predicted.empty() ? 0.0 : static_cast<double>(hit_p) / static_cast<double>(predicted.size());
  s.recall = static_cast<double>(hit_g) / static_cast<double>(gold.size());
  s.f1 = f1_score(s.precision, s.recall);
  return s;
}

namespace {

double parse_real(std::string_view s) {
  s = text::trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

double snap(double x) { return std::round(x * 1e12) / 1e12; }

void check_factors(const std::vector<double>& factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!(factors[i] > 0.0 && factors[i] <= 1.0)) throw std::invalid_argument("sweep factors must lie in (0, 1]");
    if (i > 0 && !(factors[i] > factors[i - 1])) throw std::invalid_argument("sweep factors must increase");
  }
}

}  // namespace

std::vector<double> parse_sweep(std::string_view range) {
  const std::size_t c1 = range.find(':');
  const std::size_t c2 = c1 == std::string_view::npos ? c1 : range.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw std::invalid_argument("sweep must look like lo:hi:step");
  const double lo = parse_real(range.substr(0, c1));
  const double hi = parse_real(range.substr(c1 + 1, c2 - c1 - 1));
  const double step = parse_real(range.substr(c2 + 1));
  if (!(step > 0.0) || !(lo > 0.0) || !(hi <= 1.0) || lo > hi) throw std::invalid_argument("bad sweep bounds");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double f = snap(lo + static_cast<double>(i) * step);
    if (f > hi + 1e-9) break;
    out.push_back(std::min(f, 1.0));
  }
  check_factors(out);
  return out;
}

std::vector<double> default_sweep() { return parse_sweep("0.05:1.0:0.05"); }

std::vector<EvalPoint> evaluate_ranking(const std::vector<RankedAspect>& ranked, const std::set<std::string>& gold,
                                        const std::vector<double>& factors, const MatchMode& mode,
                                        bool sentiment_filter) {
  check_factors(factors);
  std::vector<EvalPoint> points;
  points.reserve(factors.size());
  for (double f : factors) {
    const std::vector<std::string> kept = filter_by_importance(ranked, f);
    const std::set<std::string> predicted(kept.begin(), kept.end());
    const SetScores s = evaluate_sets(predicted, gold, mode);
    points.push_back({f, predicted.size(), s.precision, s.recall, s.f1, sentiment_filter});
  }
  return points;
}

std::set<std::string> gold_terms(const std::vector<Document>& docs) {
  std::set<std::string> out;
  for (const auto& [term, count] : gold_aspect_set(docs)) out.insert(term);
  return out;
}

SweepResult sweep_curves(const std::vector<Document>& corpus, const SentimentModel& model,
                         const std::vector<double>& factors, const MatchMode& mode, const PipelineConfig& base) {
  const std::set<std::string> gold = gold_terms(corpus);
  SweepResult result;
  for (bool filter : {true, false}) {
    PipelineConfig cfg = base;
    cfg.sentiment_filter = filter;
    const CorpusAnalysis analysis = analyze_corpus(corpus, model, cfg);
    (filter ? result.filtered : result.unfiltered) = evaluate_ranking(analysis.ranked, gold, factors, mode, filter);
  }
  return result;
}

std::string curves_to_csv(const SweepResult& result) {
  std::string out = "mode,factor,n_predicted,precision,recall,f1\n";
  auto rows = [&](const std::vector<EvalPoint>& points, std::string_view mode) {
    for (const EvalPoint& p : points)
      out += fmt::format("{},{:.6f},{},{:.6f},{:.6f},{:.6f}\n", mode, p.factor, p.n_predicted, p.precision, p.recall,
                         p.f1);
  };
  rows(result.filtered, "filtered");
  rows(result.unfiltered, "unfiltered");
  return out;
}

}  // namespace aspectflow
