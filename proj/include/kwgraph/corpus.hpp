#pragma once

// Corpus ingestion and preprocessing: documents in, per-sentence token
// sequences out. Tokens are lowercase ASCII words; everything else (digits,
// punctuation, non-ASCII bytes) acts as a separator and is dropped.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kwgraph/default_stopwords.hpp"
#include "kwgraph/error.hpp"
#include "kwgraph/csv.hpp"

namespace kwgraph {

struct Document {
  std::string id;
  std::string title;     // carried as metadata, never tokenized
  std::string abstract;  // raw text; may be empty

  bool has_abstract() const { return !abstract.empty(); }
};

struct TokenizedDocument {
  std::string doc_id;
  // Outer order follows the source text; inner vectors are the surviving
  // tokens of one sentence, in source order.
  std::vector<std::vector<std::string>> sentences;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
  }
};

enum class CorpusFormat { jsonl, csv };

inline CorpusFormat corpus_format_from_string(std::string_view s) {
  if (s == "jsonl") return CorpusFormat::jsonl;
  if (s == "csv") return CorpusFormat::csv;
  throw ConfigError("unknown corpus format \"" + std::string(s) + "\" (expected jsonl or csv)");
}

inline bool is_ascii_letter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline char ascii_lower(unsigned char c) {
  return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
}

inline std::string ascii_lower_copy(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(ascii_lower(c));
  return out;
}

class StopWordSet {
 public:
  StopWordSet() : source_("empty") {}

  static StopWordSet bundled_default() {
    StopWordSet set;
    set.source_ = "bundled-default";
    for (std::string_view w : kDefaultStopWords) set.words_.emplace(w);
    return set;
  }

  template <typename Range>
  static StopWordSet from_words(const Range& words, std::string source = "generated") {
    StopWordSet set;
    set.source_ = std::move(source);
    for (const auto& w : words) set.words_.insert(ascii_lower_copy(w));
    return set;
  }

  // One word per line; '#' starts a comment line; blank lines are skipped.
  static StopWordSet from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stop-word file: " + path.string());
    StopWordSet set;
    set.source_ = path.string();
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::size_t begin = line.find_first_not_of(" \t");
      if (begin == std::string::npos) continue;
      std::size_t end = line.find_last_not_of(" \t");
      std::string_view word(line.data() + begin, end - begin + 1);
      if (word.front() == '#') continue;
      set.words_.insert(ascii_lower_copy(word));
    }
    return set;
  }

  bool contains(std::string_view word) const {
    if (words_.empty()) return false;
    return words_.count(ascii_lower_copy(word)) > 0;
  }

  void insert(std::string_view word) { words_.insert(ascii_lower_copy(word)); }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& source() const { return source_; }

 private:
  std::unordered_set<std::string> words_;
  std::string source_;
};

// A sentence ends at '.', '!' or '?' followed by whitespace or end-of-text.
inline std::vector<std::string_view> split_sentences(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 == text.size() || is_space(text[i + 1]))) {
      if (i > start) out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (start < text.size()) out.push_back(text.substr(start));
  return out;
}

inline std::vector<std::string> tokenize_sentence(std::string_view sentence,
                                                  const StopWordSet& stops) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      if (!stops.contains(current)) tokens.push_back(current);
      current.clear();
    }
  };
  for (unsigned char c : sentence) {
    if (is_ascii_letter(c)) {
      current.push_back(ascii_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

inline TokenizedDocument tokenize(const Document& doc, const StopWordSet& stops) {
  TokenizedDocument out;
  out.doc_id = doc.id;
  for (std::string_view sentence : split_sentences(doc.abstract)) {
    auto tokens = tokenize_sentence(sentence, stops);
    if (!tokens.empty()) out.sentences.push_back(std::move(tokens));
  }
  return out;
}

// Frequency list over already-tokenized documents (tokenize with an empty
// stop set to get the pre-filter counts). Descending by frequency, ties in
// lexicographic order. Meant as a review list for building a stop file, not
// for automatic application.
inline std::vector<std::pair<std::string, std::uint64_t>> generate_stopword_candidates(
    const std::vector<TokenizedDocument>& docs, std::size_t top_n) {
  if (top_n < 1) throw ConfigError("stop-word candidate count must be >= 1");
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& doc : docs)
    for (const auto& sentence : doc.sentences)
      for (const auto& token : sentence) ++counts[token];

  std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > top_n) ranked.resize(top_n);
  return ranked;
}

namespace detail {

inline std::string json_string_field(const nlohmann::json& obj, const char* key,
                                     std::size_t line, bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required)
      throw DataError("line " + std::to_string(line) + ": missing field \"" + key + "\"");
    return {};
  }
  if (!it->is_string())
    throw DataError("line " + std::to_string(line) + ": field \"" + key +
                    "\" must be a string");
  return it->get<std::string>();
}

inline std::vector<Document> load_corpus_jsonl(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      throw DataError("line " + std::to_string(line_no) + ": not a JSON object");
    Document doc;
    doc.id = json_string_field(obj, "id", line_no, true);
    if (doc.id.empty())
      throw DataError("line " + std::to_string(line_no) + ": empty document id");
    doc.title = json_string_field(obj, "title", line_no, false);
    doc.abstract = json_string_field(obj, "abstract", line_no, false);
    if (!seen.insert(doc.id).second)
      throw DataError("duplicate document id \"" + doc.id + "\" at line " +
                      std::to_string(line_no));
    docs.push_back(std::move(doc));
  }
  return docs;
}

inline std::vector<Document> load_corpus_csv(std::istream& in) {
  std::vector<std::string> fields;
  if (!csv::read_record(in, fields))
    return {};  // empty file, no header: treat as empty corpus

  auto column = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (ascii_lower_copy(fields[i]) == name) return i;
    throw DataError("csv header is missing column \"" + std::string(name) + "\"");
  };
  const std::size_t id_col = column("id");
  const std::size_t title_col = column("title");
  const std::size_t abstract_col = column("abstract");
  const std::size_t width = fields.size();

  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::size_t record_no = 0;
  while (csv::read_record(in, fields)) {
    ++record_no;
    if (fields.size() == 1 && fields[0].empty()) continue;  // stray blank line
    if (fields.size() != width)
      throw DataError("record " + std::to_string(record_no) + ": expected " +
                      std::to_string(width) + " fields, got " +
                      std::to_string(fields.size()));
    Document doc{fields[id_col], fields[title_col], fields[abstract_col]};
    if (doc.id.empty())
      throw DataError("record " + std::to_string(record_no) + ": empty document id");
    if (!seen.insert(doc.id).second)
      throw DataError("duplicate document id \"" + doc.id + "\" at record " +
                      std::to_string(record_no));
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace detail

inline std::vector<Document> load_corpus(std::istream& in, CorpusFormat format) {
  return format == CorpusFormat::jsonl ? detail::load_corpus_jsonl(in)
                                       : detail::load_corpus_csv(in);
}

inline std::vector<Document> load_corpus(const std::filesystem::path& path,
                                         CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  return load_corpus(in, format);
}

}  // namespace kwgraph
