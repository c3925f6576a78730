#include "aspectflow/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "aspectflow/arrg.hpp"
#include "aspectflow/corpus_io.hpp"
#include "aspectflow/evaluation.hpp"
#include "aspectflow/pipeline.hpp"
#include "aspectflow/resources.hpp"
#include "aspectflow/sentiment.hpp"
#include "aspectflow/simd/kernels.hpp"
#include "aspectflow/text.hpp"

namespace aspectflow::cli {
namespace fs = std::filesystem;
namespace {

constexpr int kRuntimeFailure = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainArgs {
  std::string corpus;
  std::string out = "model.json";
  std::size_t vocab_size = 50000;
  int epochs = 200;
  double l2 = 1e-4;
  double learning_rate = 0.5;
};

struct LexiconOverrides {
  std::string dir;
  std::optional<ConnectiveLexicon> connectives;
  std::optional<PosLexicon> pos;
  std::optional<AspectStoplist> stoplist;

  void load() {
    if (dir.empty()) return;
    const fs::path base(dir);
    if (!fs::is_directory(base)) throw UsageError("--lexicons: not a directory: " + dir);
    if (fs::exists(base / "connectives.tsv")) connectives = ConnectiveLexicon::parse(read_file(base / "connectives.tsv"));
    if (fs::exists(base / "pos_lexicon.tsv")) pos = PosLexicon::parse(read_file(base / "pos_lexicon.tsv"));
    if (fs::exists(base / "aspect_stoplist.txt"))
      stoplist = AspectStoplist::parse(read_file(base / "aspect_stoplist.txt"));
  }
  void apply(PipelineConfig& cfg) const {
    cfg.connectives = connectives ? &*connectives : nullptr;
    cfg.pos_lexicon = pos ? &*pos : nullptr;
    cfg.stoplist = stoplist ? &*stoplist : nullptr;
  }
};

struct AnalyzeArgs {
  std::string model;
  std::string input;
  std::string out;
  double factor = 1.0;
  bool no_filter = false;
  unsigned workers = 1;
};

struct EvaluateArgs {
  std::string model;
  std::string gold;
  std::string out;
  std::string sweep = "0.05:1.0:0.05";
  std::string match = "exact";
  double jw_threshold = 0.90;
  unsigned workers = 1;
  bool table = false;
};

struct ReportArgs {
  std::string input;
  std::size_t top = 10;
};

SentimentModel load_model(const std::string& path) {
  return SentimentModel::from_json(nlohmann::json::parse(read_file(path)));
}

std::vector<Document> load_documents(const std::string& input) {
  std::vector<Document> docs;
  for (const fs::path& file : dataset_files(input)) {
    std::vector<Document> part = parse_liu_file(file);
    docs.insert(docs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return docs;
}

int cmd_train(const TrainArgs& a) {
  std::ifstream in(a.corpus);
  if (!in) {
    spdlog::error("cannot read corpus {}", a.corpus);
    return kRuntimeFailure;
  }
  const ReviewLoadResult corpus = load_review_corpus(in);
  Hyperparams hp;
  hp.max_vocab = a.vocab_size;
  hp.epochs = a.epochs;
  hp.l2 = a.l2;
  hp.learning_rate = a.learning_rate;
  const SentimentModel model = train(corpus.reviews, hp);

  write_file_atomic(a.out, model.to_json().dump() + "\n");
  std::string log = "epoch\tloss\n";
  for (std::size_t e = 0; e < model.training_loss().size(); ++e)
    log += fmt::format("{}\t{}\n", e + 1, model.training_loss()[e]);
  write_file_atomic(a.out + ".loss.tsv", log);

  std::cout << fmt::format("trained on {} reviews ({} skipped), vocabulary {} terms, final loss {:.6f}\n",
                           corpus.reviews.size(), corpus.skipped, model.vocab().size(),
                           model.training_loss().empty() ? 0.0 : model.training_loss().back());
  return 0;
}

int cmd_analyze(const AnalyzeArgs& a, const LexiconOverrides& lex) {
  if (!(a.factor > 0.0 && a.factor <= 1.0)) throw UsageError("--factor must lie in (0, 1]");
  const SentimentModel model = load_model(a.model);
  const std::vector<Document> docs = load_documents(a.input);
  if (docs.empty()) {
    spdlog::error("no documents found in {}", a.input);
    return kRuntimeFailure;
  }
  PipelineConfig cfg;
  cfg.sentiment_filter = !a.no_filter;
  cfg.workers = a.workers;
  lex.apply(cfg);
  const CorpusAnalysis analysis = analyze_corpus(docs, model, cfg);

  const fs::path out(a.out);
  write_file_atomic(out / "graph.json", graph_to_json(analysis.graph, analysis.ranked).dump(2) + "\n");

  std::string ranked = "rank\taspect\tpagerank\n";
  for (std::size_t i = 0; i < analysis.ranked.size(); ++i)
    ranked += fmt::format("{}\t{}\t{}\n", i + 1, analysis.ranked[i].aspect, analysis.ranked[i].score);
  write_file_atomic(out / "ranked.tsv", ranked);

  std::vector<std::string> kept;
  if (!analysis.ranked.empty()) kept = filter_by_importance(analysis.ranked, a.factor);
  std::string kept_text;
  for (const std::string& k : kept) kept_text += k + "\n";
  write_file_atomic(out / "kept.txt", kept_text);

  nlohmann::json hierarchy = nullptr;
  if (!kept.empty()) hierarchy = hierarchy_to_json(build_hierarchy(analysis.graph, kept));
  write_file_atomic(out / "hierarchy.json", hierarchy.dump(2) + "\n");

  std::string adts;
  for (const AspectDiscourseTree& t : analysis.adts) adts += to_json(t).dump() + "\n";
  write_file_atomic(out / "adts.jsonl", adts);

  if (analysis.ranked.empty()) spdlog::warn("no aspects found; graph is empty");
  std::cout << fmt::format("{} documents ({} skipped), {} aspects, {} edges, {} kept at factor {}\n", docs.size(),
                           analysis.skipped_documents, analysis.graph.nodes.size(), analysis.graph.edges.size(),
                           kept.size(), a.factor);
  return 0;
}

double mean_precision(const std::vector<EvalPoint>& points) {
  double s = 0.0;
  for (const EvalPoint& p : points) s += p.precision;
  return points.empty() ? 0.0 : s / static_cast<double>(points.size());
}

std::string ratio_text(double num, double den) {
  return den > 0.0 ? fmt::format("{:.3f}", num / den) : std::string("n/a");
}

int cmd_evaluate(const EvaluateArgs& a, const LexiconOverrides& lex) {
  std::vector<double> factors;
  try {
    factors = parse_sweep(a.sweep);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--sweep: ") + e.what());
  }
  MatchMode mode;
  if (a.match == "jw")
    mode = MatchMode::jaro_winkler(a.jw_threshold);
  else if (a.match != "exact")
    throw UsageError("--match must be exact or jw");
  if (!(a.jw_threshold > 0.0 && a.jw_threshold <= 1.0)) throw UsageError("--jw-threshold must lie in (0, 1]");

  const SentimentModel model = load_model(a.model);
  const std::vector<fs::path> files = dataset_files(a.gold);
  if (files.empty()) {
    spdlog::error("no gold datasets in {}", a.gold);
    return kRuntimeFailure;
  }
  const bool many = fs::is_directory(a.gold);
  PipelineConfig cfg;
  cfg.workers = a.workers;
  lex.apply(cfg);

  for (const fs::path& file : files) {
    const std::vector<Document> docs = parse_liu_file(file);
    if (gold_terms(docs).empty()) {
      spdlog::error("{}: gold aspect set is empty", file.string());
      return kRuntimeFailure;
    }
    const SweepResult curves = sweep_curves(docs, model, factors, mode, cfg);
    fs::path out = a.out.empty() ? fs::path(file.stem().string() + ".csv") : fs::path(a.out);
    if (many) out = fs::path(a.out.empty() ? "." : a.out) / (file.stem().string() + ".csv");
    write_file_atomic(out, curves_to_csv(curves));

    const double with = mean_precision(curves.filtered);
    const double without = mean_precision(curves.unfiltered);
    std::cout << fmt::format(
        "{}: {} rows -> {}\n  mean precision with sentiment filter {:.4f}, without {:.4f}, ratio without/with {}\n"
        "  at factor {:.2f}: precision {:.4f} vs {:.4f} (ratio {}), recall {:.4f} vs {:.4f}\n",
        file.stem().string(), curves.filtered.size() + curves.unfiltered.size(), out.string(), with, without,
        ratio_text(without, with), factors.back(), curves.filtered.back().precision,
        curves.unfiltered.back().precision,
        ratio_text(curves.unfiltered.back().precision, curves.filtered.back().precision),
        curves.filtered.back().recall, curves.unfiltered.back().recall);
    if (a.table) {
      std::cout << fmt::format("  {:>7} {:>6} {:>9} {:>9} {:>9} | {:>6} {:>9} {:>9} {:>9}\n", "factor", "n", "prec",
                               "recall", "f1", "n", "prec", "recall", "f1");
      for (std::size_t i = 0; i < factors.size(); ++i) {
        const EvalPoint& f = curves.filtered[i];
        const EvalPoint& u = curves.unfiltered[i];
        std::cout << fmt::format("  {:>7.2f} {:>6} {:>9.4f} {:>9.4f} {:>9.4f} | {:>6} {:>9.4f} {:>9.4f} {:>9.4f}\n",
                                 f.factor, f.n_predicted, f.precision, f.recall, f.f1, u.n_predicted, u.precision,
                                 u.recall, u.f1);
      }
    }
  }
  return 0;
}

std::string distribution_text(const NodeStats& s) {
  std::size_t total = 0;
  for (std::size_t c : s.sentiment_counts) total += c;
  if (total == 0) return "no opinionated mentions";
  std::string out;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    if (c > 0) out += ", ";
    out += fmt::format("{} {:.0f}%", to_string(kLabelOrder[c]),
                       100.0 * static_cast<double>(s.sentiment_counts[c]) / static_cast<double>(total));
  }
  return out;
}

void collect_snippets(const nlohmann::json& node, std::map<std::string, std::vector<std::string>>& snippets,
                      std::size_t& aspectless_opinions) {
  if (node.at("kind") == "internal") {
    collect_snippets(node.at("left"), snippets, aspectless_opinions);
    collect_snippets(node.at("right"), snippets, aspectless_opinions);
    return;
  }
  if (!node.at("active").get<bool>()) return;
  const auto& aspects = node.at("aspects");
  if (aspects.empty() && node.at("polarity") != "neutral") ++aspectless_opinions;
  const std::string text = text::normalize_whitespace(node.at("edu").at("text").get<std::string>());
  for (const auto& a : aspects) {
    auto& list = snippets[a.get<std::string>()];
    if (list.size() < 3) list.push_back(fmt::format("[{}] {}", node.at("polarity").get<std::string>(), text));
  }
}

int cmd_report(const ReportArgs& a) {
  const fs::path dir(a.input);
  std::vector<RankedAspect> ranked;
  const ARRG graph = graph_from_json(nlohmann::json::parse(read_file(dir / "graph.json")), &ranked);
  std::map<std::string, double> score;
  for (const RankedAspect& r : ranked) score[r.aspect] = r.score;

  std::vector<std::string> kept;
  {
    std::istringstream in(read_file(dir / "kept.txt"));
    for (std::string line; std::getline(in, line);)
      if (!text::trim(line).empty()) kept.emplace_back(text::trim(line));
  }
  std::map<std::string, std::vector<std::string>> snippets;
  std::size_t aspectless = 0;
  {
    std::istringstream in(read_file(dir / "adts.jsonl"));
    for (std::string line; std::getline(in, line);)
      if (!text::trim(line).empty()) collect_snippets(nlohmann::json::parse(line).at("root"), snippets, aspectless);
  }

  const std::size_t shown = std::min(a.top, kept.size());
  std::cout << fmt::format("Aspect report: {} kept aspects of {} ranked\n", kept.size(), ranked.size());
  if (a.top > kept.size())
    std::cout << fmt::format("note: requested top {} but only {} aspects were kept; showing all\n", a.top, kept.size());
  for (std::size_t i = 0; i < shown; ++i) {
    const std::string& name = kept[i];
    const auto node = graph.nodes.find(name);
    std::cout << fmt::format("\n{}. {}  (pagerank {:.6f}, mentions {})\n", i + 1, name, score[name],
                             node == graph.nodes.end() ? 0 : node->second.frequency);
    if (node != graph.nodes.end()) std::cout << "   sentiment: " << distribution_text(node->second) << "\n";
    for (const std::string& s : snippets[name]) std::cout << "   - " << s << "\n";
  }
  std::cout << fmt::format("\n{} opinionated EDU(s) mention no aspect.\n", aspectless);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Aspect-based sentiment analysis over rhetorical discourse structure"};
  app.require_subcommand(1);
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off")->capture_default_str();
  LexiconOverrides lex;
  app.add_option("--lexicons", lex.dir,
                 "directory with connectives.tsv, pos_lexicon.tsv and/or aspect_stoplist.txt overriding the defaults");

  TrainArgs ta;
  auto* train_cmd = app.add_subcommand("train", "train the EDU sentiment model on star-labelled reviews");
  train_cmd->add_option("--corpus", ta.corpus, "JSON-lines reviews with text and stars")->required();
  train_cmd->add_option("--out", ta.out, "model file")->capture_default_str();
  train_cmd->add_option("--vocab-size", ta.vocab_size, "vocabulary cap")->capture_default_str()->check(
      CLI::PositiveNumber);
  train_cmd->add_option("--epochs", ta.epochs)->capture_default_str()->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--l2", ta.l2, "L2 strength")->capture_default_str()->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--lr", ta.learning_rate, "learning rate")->capture_default_str()->check(CLI::PositiveNumber);

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "build and rank the aspect graph of a document collection");
  analyze_cmd->add_option("--model", aa.model)->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--input", aa.input, "dataset file or directory")->required()->check(CLI::ExistingPath);
  analyze_cmd->add_option("--out", aa.out, "output directory")->required();
  analyze_cmd->add_option("--factor", aa.factor, "importance factor in (0,1]")->capture_default_str();
  analyze_cmd->add_flag("--no-sentiment-filter", aa.no_filter, "keep neutral EDUs");
  analyze_cmd->add_option("--workers", aa.workers)->capture_default_str()->check(CLI::PositiveNumber);

  EvaluateArgs ea;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "precision/recall sweep against gold annotations");
  evaluate_cmd->add_option("--model", ea.model)->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--gold", ea.gold, "annotated dataset file or directory")->required()->check(
      CLI::ExistingPath);
  evaluate_cmd->add_option("--out", ea.out, "CSV file (directory when --gold is a directory)");
  evaluate_cmd->add_option("--sweep", ea.sweep, "lo:hi:step")->capture_default_str();
  evaluate_cmd->add_option("--match", ea.match, "exact|jw")->capture_default_str();
  evaluate_cmd->add_option("--jw-threshold", ea.jw_threshold)->capture_default_str();
  evaluate_cmd->add_option("--workers", ea.workers)->capture_default_str()->check(CLI::PositiveNumber);
  evaluate_cmd->add_flag("--table", ea.table, "print the curves as a text table");

  ReportArgs ra;
  auto* report_cmd = app.add_subcommand("report", "summarize the output directory of analyze");
  report_cmd->add_option("--input", ra.input, "analyze output directory")->required()->check(CLI::ExistingDirectory);
  report_cmd->add_option("--top", ra.top, "aspects to show")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));
  spdlog::debug("simd kernels: {}", simd::isa_name(simd::active_isa()));

  try {
    lex.load();
    if (*train_cmd) return cmd_train(ta);
    if (*analyze_cmd) return cmd_analyze(aa, lex);
    if (*evaluate_cmd) return cmd_evaluate(ea, lex);
    if (*report_cmd) return cmd_report(ra);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return 2;
}

}  // namespace aspectflow::cli
