#include "aspectflow/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "aspectflow/simd/kernels.hpp"
#include "aspectflow/text.hpp"

namespace aspectflow {

std::vector<std::string> sentiment_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  bool has_letter = false;
  auto flush = [&] {
    if (has_letter) out.push_back(current);
    current.clear();
    has_letter = false;
  };
  for (char c : text) {
    if (text::is_alpha(c)) {
      current.push_back(text::to_lower(c));
      has_letter = true;
    } else if (c == '\'') {
      current.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::size_t max_size)
    : terms_(std::move(terms)), max_size_(max_size) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], static_cast<std::uint32_t>(i)).second)
      throw std::invalid_argument("duplicate vocabulary term '" + terms_[i] + "'");
  }
  if (terms_.size() > max_size_) throw std::invalid_argument("vocabulary larger than its max_size");
}

std::int64_t Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

Vocabulary build_vocabulary(std::span<const LabeledReview> corpus, std::size_t max_size) {
  if (corpus.empty()) throw std::invalid_argument("cannot build a vocabulary from an empty corpus");
  if (max_size == 0) throw std::invalid_argument("vocabulary max_size must be at least 1");
  std::map<std::string, std::size_t> freq;
  for (const LabeledReview& r : corpus)
    for (std::string& t : sentiment_tokens(r.text)) ++freq[std::move(t)];
  if (freq.empty()) throw std::invalid_argument("corpus contains no tokens");

  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  // `freq` iterates lexicographically, so a stable sort on count keeps the tie rule.
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > max_size) ranked.resize(max_size);
  std::vector<std::string> terms;
  terms.reserve(ranked.size());
  for (auto& [term, count] : ranked) terms.push_back(std::move(term));
  return Vocabulary(std::move(terms), max_size);
}

SparseVector vectorize(std::string_view text, const Vocabulary& vocab) {
  std::map<std::uint32_t, double> counts;
  for (const std::string& t : sentiment_tokens(text)) {
    const std::int64_t idx = vocab.index_of(t);
    if (idx >= 0) counts[static_cast<std::uint32_t>(idx)] += 1.0;
  }
  return SparseVector(counts.begin(), counts.end());
}

std::array<double, kNumLabels> softmax(const std::array<double, kNumLabels>& scores) {
  const double top = *std::max_element(scores.begin(), scores.end());
  std::array<double, kNumLabels> p{};
  double z = 0.0;
  for (std::size_t c = 0; c < kNumLabels; ++c) z += (p[c] = std::exp(scores[c] - top));
  for (double& v : p) v /= z;
  return p;
}

namespace {

std::array<double, kNumLabels> scores_for(std::span<const double> w, std::size_t row, const SparseVector& x) {
  std::array<double, kNumLabels> s{};
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    const double* r = w.data() + c * row;
    double acc = r[row - 1];
    for (const auto& [j, v] : x) acc += r[j] * v;
    s[c] = acc;
  }
  return s;
}

}  // namespace

SentimentModel::SentimentModel(Vocabulary vocab, Hyperparams hp)
    : vocab_(std::move(vocab)), hp_(hp), weights_(kNumLabels * (vocab_.size() + 1), 0.0) {}

Prediction SentimentModel::predict(const SparseVector& x) const {
  Prediction p;
  p.probabilities = softmax(scores_for(weights_, row_size(), x));
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumLabels; ++c)
    if (p.probabilities[c] > p.probabilities[best]) best = c;
  p.label = kLabelOrder[best];
  return p;
}

Prediction SentimentModel::predict(std::string_view text) const { return predict(vectorize(text, vocab_)); }

nlohmann::json SentimentModel::to_json() const {
  nlohmann::json j;
  j["format"] = "aspectflow-sentiment";
  j["format_version"] = kModelFormatVersion;
  j["hyperparams"] = {{"learning_rate", hp_.learning_rate},
                      {"l2", hp_.l2},
                      {"epochs", hp_.epochs},
                      {"vocab_size", hp_.max_vocab}};
  j["label_order"] = nlohmann::json::array();
  for (Polarity p : kLabelOrder) j["label_order"].push_back(to_string(p));
  j["vocabulary"] = vocab_.terms();
  j["weights"] = nlohmann::json::array();
  for (std::size_t c = 0; c < kNumLabels; ++c)
    j["weights"].push_back(std::vector<double>(weights_.begin() + static_cast<std::ptrdiff_t>(c * row_size()),
                                               weights_.begin() + static_cast<std::ptrdiff_t>((c + 1) * row_size())));
  j["training_loss"] = training_loss_;
  return j;
}

SentimentModel SentimentModel::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "aspectflow-sentiment") throw std::runtime_error("not a sentiment model file");
  if (j.value("format_version", -1) != kModelFormatVersion)
    throw std::runtime_error("unsupported model format version");
  std::vector<std::string> order = j.at("label_order").get<std::vector<std::string>>();
  if (order.size() != kNumLabels) throw std::runtime_error("model label order has wrong length");
  for (std::size_t c = 0; c < kNumLabels; ++c)
    if (order[c] != to_string(kLabelOrder[c])) throw std::runtime_error("model label order mismatch");

  Hyperparams hp;
  const auto& h = j.at("hyperparams");
  hp.learning_rate = h.at("learning_rate").get<double>();
  hp.l2 = h.at("l2").get<double>();
  hp.epochs = h.at("epochs").get<int>();
  hp.max_vocab = h.at("vocab_size").get<std::size_t>();

  SentimentModel model(Vocabulary(j.at("vocabulary").get<std::vector<std::string>>(), hp.max_vocab), hp);
  const auto& rows = j.at("weights");
  if (rows.size() != kNumLabels) throw std::runtime_error("model weight matrix has wrong row count");
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    const auto row = rows[c].get<std::vector<double>>();
    if (row.size() != model.row_size()) throw std::runtime_error("model weight row does not match vocabulary");
    std::copy(row.begin(), row.end(), model.weights_.begin() + static_cast<std::ptrdiff_t>(c * model.row_size()));
  }
  if (j.contains("training_loss")) model.training_loss_ = j["training_loss"].get<std::vector<double>>();
  return model;
}

TrainingSet make_training_set(std::span<const LabeledReview> corpus, const Vocabulary& vocab) {
  TrainingSet data;
  data.dim = vocab.size();
  data.features.reserve(corpus.size());
  data.labels.reserve(corpus.size());
  for (const LabeledReview& r : corpus) {
    data.features.push_back(vectorize(r.text, vocab));
    data.labels.push_back(static_cast<int>(r.label));
  }
  return data;
}

double loss_and_gradient(std::span<const double> weights, const TrainingSet& data, double l2,
                         std::span<double> gradient) {
  const std::size_t row = data.dim + 1;
  if (weights.size() != kNumLabels * row) throw std::invalid_argument("weight vector does not match training set");
  const bool want_grad = !gradient.empty();
  if (want_grad) std::fill(gradient.begin(), gradient.end(), 0.0);

  const std::size_t n = data.features.size();
  const double inv_n = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const SparseVector& x = data.features[i];
    const auto p = softmax(scores_for(weights, row, x));
    const auto y = static_cast<std::size_t>(data.labels[i]);
    loss -= std::log(p[y]);
    if (!want_grad) continue;
    for (std::size_t c = 0; c < kNumLabels; ++c) {
      const double r = (p[c] - (c == y ? 1.0 : 0.0)) * inv_n;
      double* g = gradient.data() + c * row;
      for (const auto& [j, v] : x) g[j] += r * v;
      g[row - 1] += r;
    }
  }
  loss *= inv_n;

  for (std::size_t c = 0; c < kNumLabels; ++c) {
    const std::span<const double> w = weights.subspan(c * row, data.dim);
    loss += 0.5 * l2 * simd::dot(w, w);
    if (want_grad) simd::axpy(l2, w, gradient.subspan(c * row, data.dim));
  }
  return loss;
}

SentimentModel train(std::span<const LabeledReview> corpus, const Hyperparams& hp) {
  std::set<Polarity> classes;
  for (const LabeledReview& r : corpus) classes.insert(r.label);
  if (classes.size() < 2) throw std::invalid_argument("training corpus needs at least two classes");
  if (hp.epochs < 0 || hp.learning_rate <= 0.0 || hp.l2 < 0.0) throw std::invalid_argument("bad hyperparameters");

  SentimentModel model(build_vocabulary(corpus, hp.max_vocab), hp);
  const TrainingSet data = make_training_set(corpus, model.vocab());
  std::vector<double> gradient(model.weights().size());
  model.training_loss().reserve(static_cast<std::size_t>(hp.epochs));
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    const double loss = loss_and_gradient(model.weights(), data, hp.l2, gradient);
    model.training_loss().push_back(loss);
    simd::axpy(-hp.learning_rate, gradient, model.weights());
  }
  return model;
}

}  // namespace aspectflow
