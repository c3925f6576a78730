#pragma once

// Readers for the annotated review datasets (one file per product domain)
// and for star-labelled review corpora used to train the sentiment model.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspectflow/polarity.hpp"

namespace aspectflow {

struct GoldAspect {
  std::string term;
  int strength = 0;                 // in [-3, 3], never 0
  std::set<std::string> modifiers;  // subset of {u, p, s, cc, cs}

  Polarity polarity() const noexcept { return strength > 0 ? Polarity::Positive : Polarity::Negative; }
  bool operator==(const GoldAspect&) const = default;
};

struct AnnotatedSentence {
  std::string text;
  std::vector<GoldAspect> gold;
  bool operator==(const AnnotatedSentence&) const = default;
};

struct Document {
  std::string id;  // "<dataset>:<ordinal>"
  std::string title;
  std::vector<AnnotatedSentence> sentences;
};

struct LiuParseStats {
  std::size_t sentence_lines = 0;
  std::size_t malformed_annotations = 0;  // lines kept as unannotated sentences
  std::size_t empty_documents = 0;        // title markers with no sentences, dropped
};

// Parses the line-oriented annotation format:
//   [t]<title>                 starts a document
//   <annotations>##<sentence>  sentence line, annotations like "screen[+2],design[-1][u]"
//   blank lines and lines starting with '*' are ignored.
// Never throws on malformed content; bad annotation lists degrade the line to
// an unannotated sentence and log a warning.
std::vector<Document> parse_liu_corpus(std::istream& in, std::string_view dataset_id,
                                       LiuParseStats* stats = nullptr);
std::vector<Document> parse_liu_text(std::string_view content, std::string_view dataset_id,
                                     LiuParseStats* stats = nullptr);

// Reads a dataset file; the dataset id is the file stem.
std::vector<Document> parse_liu_file(const std::filesystem::path& path, LiuParseStats* stats = nullptr);

// A regular file yields itself; a directory yields its non-hidden regular
// files in name order. Throws std::runtime_error when the path is missing.
std::vector<std::filesystem::path> dataset_files(const std::filesystem::path& path);

// Parses one annotation list ("a[+1],b[-2][p]"). Returns false when malformed.
bool parse_annotations(std::string_view field, std::vector<GoldAspect>& out);

// Serializes documents back into the line format, titles and sentences only.
std::string write_liu_sentences(const std::vector<Document>& docs);

// Distinct normalized gold terms with their total occurrence counts.
std::map<std::string, std::size_t> gold_aspect_set(const std::vector<Document>& docs);

struct LabeledReview {
  std::string text;
  Polarity label = Polarity::Neutral;
};

struct ReviewLoadResult {
  std::vector<LabeledReview> reviews;
  std::size_t skipped = 0;  // bad JSON, missing fields, or stars outside {1,3,5}
};

// Line-delimited JSON records {"text": ..., "stars": n}; 1->negative,
// 3->neutral, 5->positive, anything else skipped and counted.
ReviewLoadResult load_review_corpus(std::istream& in);

}  // namespace aspectflow
