#pragma once

// Bag-of-words vectorizer with a frequency-capped vocabulary and a
// multinomial logistic-regression classifier over {negative, neutral,
// positive}, trained by full-batch gradient descent.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "aspectflow/corpus_io.hpp"
#include "aspectflow/polarity.hpp"

namespace aspectflow {

inline constexpr std::size_t kNumLabels = 3;

// Lowercased runs of letters and apostrophes that contain at least one letter.
std::vector<std::string> sentiment_tokens(std::string_view text);

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::size_t max_size);

  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t max_size() const noexcept { return max_size_; }
  // -1 when absent.
  std::int64_t index_of(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
  std::size_t max_size_ = 50000;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Descending corpus frequency, ties lexicographic, at most max_size terms.
// Throws std::invalid_argument for an empty corpus, max_size 0, or no tokens.
Vocabulary build_vocabulary(std::span<const LabeledReview> corpus, std::size_t max_size = 50000);

// Sorted by index, no duplicates, raw counts.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;
SparseVector vectorize(std::string_view text, const Vocabulary& vocab);

struct Hyperparams {
  double learning_rate = 0.5;
  double l2 = 1e-4;
  int epochs = 200;
  std::size_t max_vocab = 50000;
};

struct Prediction {
  Polarity label = Polarity::Negative;
  std::array<double, kNumLabels> probabilities{};
};

class SentimentModel {
 public:
  SentimentModel() = default;
  SentimentModel(Vocabulary vocab, Hyperparams hp);

  const Vocabulary& vocab() const noexcept { return vocab_; }
  const Hyperparams& hyperparams() const noexcept { return hp_; }
  std::size_t row_size() const noexcept { return vocab_.size() + 1; }  // last column is the bias

  // Row-major kNumLabels x row_size().
  std::span<double> weights() noexcept { return weights_; }
  std::span<const double> weights() const noexcept { return weights_; }

  std::vector<double>& training_loss() noexcept { return training_loss_; }
  const std::vector<double>& training_loss() const noexcept { return training_loss_; }

  Prediction predict(std::string_view text) const;
  Prediction predict(const SparseVector& x) const;

  nlohmann::json to_json() const;
  // Throws std::runtime_error on unknown format versions or shape mismatches.
  static SentimentModel from_json(const nlohmann::json& j);

 private:
  Vocabulary vocab_;
  Hyperparams hp_;
  std::vector<double> weights_;
  std::vector<double> training_loss_;
};

inline constexpr int kModelFormatVersion = 1;

struct TrainingSet {
  std::vector<SparseVector> features;
  std::vector<int> labels;  // index into kLabelOrder
  std::size_t dim = 0;      // vocabulary size, bias excluded
};

TrainingSet make_training_set(std::span<const LabeledReview> corpus, const Vocabulary& vocab);

// Mean softmax cross-entropy plus (l2/2)·||W||² over non-bias weights.
// Writes the gradient into `gradient` when it is non-empty.
double loss_and_gradient(std::span<const double> weights, const TrainingSet& data, double l2,
                         std::span<double> gradient);

// Softmax with max-shift, in label order.
std::array<double, kNumLabels> softmax(const std::array<double, kNumLabels>& scores);

// Throws std::invalid_argument when the corpus has fewer than two classes.
SentimentModel train(std::span<const LabeledReview> corpus, const Hyperparams& hp = {});

}  // namespace aspectflow
