#include "aspectflow/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "aspectflow/resources.hpp"
#include "aspectflow/text.hpp"

namespace aspectflow {
namespace {

bool is_modifier_tag(std::string_view tag) {
  return tag == "u" || tag == "p" || tag == "s" || tag == "cc" || tag == "cs";
}

bool parse_strength(std::string_view tag, int& strength) {
  if (tag.size() < 2 || (tag[0] != '+' && tag[0] != '-')) return false;
  int magnitude = 0;
  auto [ptr, ec] = std::from_chars(tag.data() + 1, tag.data() + tag.size(), magnitude);
  if (ec != std::errc{} || ptr != tag.data() + tag.size()) return false;
  if (magnitude < 1 || magnitude > 3) return false;
  strength = tag[0] == '+' ? magnitude : -magnitude;
  return true;
}

bool parse_item(std::string_view item, GoldAspect& aspect) {
  const std::size_t open = item.find('[');
  if (open == std::string_view::npos) return false;
  aspect.term = text::normalize_whitespace(item.substr(0, open));
  if (aspect.term.empty()) return false;

  bool have_strength = false;
  std::string_view rest = item.substr(open);
  while (!rest.empty()) {
    rest = text::trim(rest);
    if (rest.empty()) break;
    if (rest.front() != '[') return false;
    const std::size_t close = rest.find(']');
    if (close == std::string_view::npos) return false;
    const std::string_view tag = text::trim(rest.substr(1, close - 1));
    rest.remove_prefix(close + 1);

    int strength = 0;
    if (parse_strength(tag, strength)) {
      if (have_strength) return false;
      have_strength = true;
      aspect.strength = strength;
    } else if (is_modifier_tag(tag)) {
      aspect.modifiers.emplace(tag);
    } else {
      return false;
    }
  }
  return have_strength;
}

}  // namespace

bool parse_annotations(std::string_view field, std::vector<GoldAspect>& out) {
  std::vector<GoldAspect> parsed;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= field.size(); ++i) {
    const bool end = i == field.size();
    if (!end && field[i] == '[') ++depth;
    if (!end && field[i] == ']') {
      if (--depth < 0) return false;
    }
    if (end || (field[i] == ',' && depth == 0)) {
      const std::string_view item = text::trim(field.substr(start, i - start));
      start = i + 1;
      if (item.empty()) continue;  // trailing or doubled comma
      GoldAspect aspect;
      if (!parse_item(item, aspect)) return false;
      parsed.push_back(std::move(aspect));
    }
  }
  if (depth != 0) return false;
  out = std::move(parsed);
  return true;
}

std::vector<Document> parse_liu_text(std::string_view content, std::string_view dataset_id,
                                     LiuParseStats* stats) {
  LiuParseStats local;
  std::vector<Document> docs;
  bool open_document = false;
  const std::string clean = text::sanitize_utf8(content);

  auto start_document = [&](std::string title) {
    if (open_document && docs.back().sentences.empty()) {
      ++local.empty_documents;
      docs.pop_back();
    }
    Document doc;
    doc.title = std::move(title);
    docs.push_back(std::move(doc));
    open_document = true;
  };

  std::size_t line_no = 0;
  for (std::string_view raw : text::split_lines(clean)) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '*') continue;
    if (line.starts_with("[t]")) {
      start_document(text::normalize_whitespace(line.substr(3)));
      continue;
    }

    AnnotatedSentence sentence;
    const std::size_t sep = line.find("##");
    if (sep == std::string_view::npos) {
      sentence.text = std::string(line);
    } else {
      sentence.text = std::string(text::trim(line.substr(sep + 2)));
      const std::string_view annotations = line.substr(0, sep);
      if (!parse_annotations(annotations, sentence.gold)) {
        ++local.malformed_annotations;
        spdlog::warn("{}:{}: malformed aspect annotation '{}', keeping sentence unannotated", dataset_id,
                     line_no, annotations);
        sentence.gold.clear();
      }
    }
    if (sentence.text.empty()) continue;
    if (!open_document) start_document("");
    docs.back().sentences.push_back(std::move(sentence));
    ++local.sentence_lines;
  }
  if (open_document && docs.back().sentences.empty()) {
    ++local.empty_documents;
    docs.pop_back();
  }
  for (std::size_t i = 0; i < docs.size(); ++i) docs[i].id = std::string(dataset_id) + ":" + std::to_string(i);
  if (stats) *stats = local;
  return docs;
}

std::vector<Document> parse_liu_corpus(std::istream& in, std::string_view dataset_id, LiuParseStats* stats) {
  std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_liu_text(content, dataset_id, stats);
}

std::vector<Document> parse_liu_file(const std::filesystem::path& path, LiuParseStats* stats) {
  return parse_liu_text(read_file(path), path.stem().string(), stats);
}

std::vector<std::filesystem::path> dataset_files(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw std::runtime_error("no such file or directory: " + path.string());
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (!entry.is_regular_file() || entry.path().filename().string().starts_with('.')) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string write_liu_sentences(const std::vector<Document>& docs) {
  std::string out;
  for (const Document& doc : docs) {
    out += "[t]" + doc.title + "\n";
    for (const AnnotatedSentence& s : doc.sentences) out += "##" + s.text + "\n";
  }
  return out;
}

std::map<std::string, std::size_t> gold_aspect_set(const std::vector<Document>& docs) {
  std::map<std::string, std::size_t> counts;
  for (const Document& doc : docs)
    for (const AnnotatedSentence& s : doc.sentences)
      for (const GoldAspect& g : s.gold) {
        std::string key = text::normalize_aspect(g.term);
        if (!key.empty()) ++counts[key];
      }
  return counts;
}

ReviewLoadResult load_review_corpus(std::istream& in) {
  ReviewLoadResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    const nlohmann::json record = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object() || !record.contains("text") || !record.contains("stars") ||
        !record["text"].is_string() || !record["stars"].is_number()) {
      ++result.skipped;
      continue;
    }
    const double stars = record["stars"].get<double>();
    Polarity label;
    if (stars == 1.0)
      label = Polarity::Negative;
    else if (stars == 3.0)
      label = Polarity::Neutral;
    else if (stars == 5.0)
      label = Polarity::Positive;
    else {
      ++result.skipped;
      continue;
    }
    result.reviews.push_back({text::sanitize_utf8(record["text"].get<std::string>()), label});
  }
  if (result.skipped > 0) spdlog::warn("review corpus: skipped {} record(s)", result.skipped);
  return result;
}

}  // namespace aspectflow
