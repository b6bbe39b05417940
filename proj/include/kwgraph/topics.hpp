#pragma once

// Topic selection and per-topic reporting. Topics are the anchor word's
// strongest neighbors by global BC; each topic gets its own induced subgraph
// whose members are re-ranked by BC computed inside that subgraph only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kwgraph/centrality.hpp"
#include "kwgraph/csv.hpp"
#include "kwgraph/error.hpp"
#include "kwgraph/graph.hpp"

namespace kwgraph {

// Word -> category assignments with a fallback for everything unassigned.
// Category order is declaration order; the fallback always comes last.
class CategoryLexicon {
 public:
  CategoryLexicon() = default;
  explicit CategoryLexicon(std::string fallback) : fallback_(std::move(fallback)) {
    if (fallback_.empty()) throw ConfigError("fallback category name must be non-empty");
  }

  // CSV with header word,category; duplicate word rows are rejected.
  static CategoryLexicon from_file(const std::filesystem::path& path,
                                   std::string fallback = "miscellaneous") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon file: " + path.string());
    CategoryLexicon lex(std::move(fallback));
    std::vector<std::string> fields;
    if (!csv::read_record(in, fields)) return lex;
    if (fields.size() < 2 || ascii_lower_copy(fields[0]) != "word" ||
        ascii_lower_copy(fields[1]) != "category")
      throw DataError("lexicon header must be word,category in " + path.string());
    std::size_t record_no = 0;
    while (csv::read_record(in, fields)) {
      ++record_no;
      if (fields.size() == 1 && fields[0].empty()) continue;
      if (fields.size() != 2)
        throw DataError("lexicon record " + std::to_string(record_no) +
                        ": expected 2 fields, got " + std::to_string(fields.size()));
      lex.assign(fields[0], fields[1]);
    }
    return lex;
  }

  void assign(std::string_view word, std::string_view category) {
    if (category.empty()) throw DataError("empty category name for word \"" +
                                          std::string(word) + "\"");
    std::string key = ascii_lower_copy(word);
    if (assignments_.count(key))
      throw DataError("duplicate lexicon entry for word \"" + key + "\"");
    std::string cat(category);
    if (cat != fallback_ &&
        std::find(declared_.begin(), declared_.end(), cat) == declared_.end())
      declared_.push_back(cat);
    assignments_.emplace(std::move(key), std::move(cat));
  }

  const std::string& category_of(std::string_view word) const {
    auto it = assignments_.find(ascii_lower_copy(word));
    return it == assignments_.end() ? fallback_ : it->second;
  }

  // Declared categories in first-appearance order, fallback appended last.
  std::vector<std::string> ordered_categories() const {
    std::vector<std::string> out = declared_;
    out.push_back(fallback_);
    return out;
  }

  const std::string& fallback() const { return fallback_; }
  std::size_t size() const { return assignments_.size(); }
  bool empty() const { return assignments_.empty(); }

 private:
  std::unordered_map<std::string, std::string> assignments_;
  std::vector<std::string> declared_;
  std::string fallback_ = "miscellaneous";
};

struct SelectedTopic {
  std::string word;
  double bc = 0.0;                // global-graph BC
  std::optional<double> log_bc;   // ln(bc) when bc > 0
};

// Top-k neighbors of the anchor ranked by global BC (descending, ties by
// word). Fewer than k neighbors returns them all.
inline std::vector<SelectedTopic> select_topics(const WordGraph& g,
                                                const CentralityTable& global_bc,
                                                std::string_view anchor, std::size_t k) {
  if (k < 1) throw ConfigError("topic count k must be >= 1");
  NodeId center = g.require(anchor);

  std::vector<NodeId> neighbor_ids;
  for (const Arc& arc : g.out(center)) neighbor_ids.push_back(arc.node);
  for (const Arc& arc : g.in(center)) neighbor_ids.push_back(arc.node);
  std::sort(neighbor_ids.begin(), neighbor_ids.end());
  neighbor_ids.erase(std::unique(neighbor_ids.begin(), neighbor_ids.end()),
                     neighbor_ids.end());

  std::vector<SelectedTopic> out;
  out.reserve(neighbor_ids.size());
  for (NodeId id : neighbor_ids) {
    const std::string& word = g.word(id);
    double bc = global_bc.at(word).bc;
    out.push_back({word, bc,
                   bc > 0.0 ? std::optional<double>(std::log(bc)) : std::nullopt});
  }
  std::sort(out.begin(), out.end(), [](const SelectedTopic& a, const SelectedTopic& b) {
    if (a.bc != b.bc) return a.bc > b.bc;
    return a.word < b.word;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

struct TopicEntry {
  std::string word;
  std::string category;
  double bc = 0.0;               // BC within the topic subgraph
  std::optional<double> log_bc;
  std::uint32_t rank = 0;        // 1-based over all entries of the report
};

struct TopicReport {
  std::string anchor;
  std::string topic;
  std::size_t node_count = 0;  // subgraph size including the topic word
  std::size_t edge_count = 0;
  std::vector<std::string> categories;  // lexicon order, fallback last
  std::vector<TopicEntry> entries;      // rank order; never contains the topic word
};

// Report plus the intermediate structures, for callers that also need the
// subgraph itself (e.g. to export it).
struct TopicAnalysis {
  Subgraph subgraph;
  CentralityTable centrality;  // within-subgraph, log-transformed
  TopicReport report;
};

// Induces the topic subgraph, recomputes BC inside it, and ranks the members
// (minus the topic word itself) with lexicon categories attached.
inline TopicAnalysis analyze_topic_full(const WordGraph& g, std::string_view anchor,
                                        std::string_view topic,
                                        const CategoryLexicon& lexicon,
                                        const BetweennessOptions& options = {}) {
  TopicAnalysis analysis;
  analysis.subgraph = induce_topic_subgraph(g, topic);
  analysis.centrality = log_transform(betweenness_exact(analysis.subgraph.graph, options));

  TopicReport& report = analysis.report;
  report.anchor = std::string(anchor);
  report.topic = std::string(topic);
  report.node_count = analysis.subgraph.graph.node_count();
  report.edge_count = analysis.subgraph.graph.edge_count();
  report.categories = lexicon.ordered_categories();

  report.entries.reserve(analysis.centrality.size());
  std::uint32_t rank = 0;
  for (const CentralityEntry& e : analysis.centrality.entries()) {
    if (e.word == topic) continue;
    report.entries.push_back({e.word, lexicon.category_of(e.word), e.bc, e.log_bc, ++rank});
  }
  return analysis;
}

inline TopicReport analyze_topic(const WordGraph& g, std::string_view anchor,
                                 std::string_view topic, const CategoryLexicon& lexicon,
                                 const BetweennessOptions& options = {}) {
  return analyze_topic_full(g, anchor, topic, lexicon, options).report;
}

// Splits report entries into per-category lists, preserving rank order inside
// each category. Every category of the report appears, including empty ones.
inline std::vector<std::pair<std::string, std::vector<TopicEntry>>> group_by_category(
    const TopicReport& report) {
  std::vector<std::string> order = report.categories;
  for (const TopicEntry& e : report.entries)
    if (std::find(order.begin(), order.end(), e.category) == order.end())
      order.push_back(e.category);

  std::vector<std::pair<std::string, std::vector<TopicEntry>>> groups;
  groups.reserve(order.size());
  for (const std::string& cat : order) groups.emplace_back(cat, std::vector<TopicEntry>{});
  for (const TopicEntry& e : report.entries) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g_) { return g_.first == e.category; });
    it->second.push_back(e);
  }
  return groups;
}

}  // namespace kwgraph
