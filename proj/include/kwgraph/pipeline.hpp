#pragma once

// End-to-end pipeline: corpus file -> tokenized documents -> word graph ->
// global centrality -> topic selection -> per-topic reports and GEXF graphs,
// plus a JSON run manifest. run_pipeline never throws; every failure is
// reported through the result (and through the manifest when the output
// directory was already usable).

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kwgraph/centrality.hpp"
#include "kwgraph/corpus.hpp"
#include "kwgraph/error.hpp"
#include "kwgraph/export.hpp"
#include "kwgraph/graph.hpp"
#include "kwgraph/topics.hpp"
#include "kwgraph/version.hpp"

namespace kwgraph {

enum class BcMode { exact, sampled };

inline BcMode bc_mode_from_string(std::string_view s) {
  if (s == "exact") return BcMode::exact;
  if (s == "sampled") return BcMode::sampled;
  throw ConfigError("unknown bc mode \"" + std::string(s) + "\" (expected exact or sampled)");
}

inline const char* to_string(BcMode mode) {
  return mode == BcMode::exact ? "exact" : "sampled";
}

struct PipelineConfig {
  std::filesystem::path corpus_path;
  CorpusFormat format = CorpusFormat::jsonl;
  std::optional<std::filesystem::path> stopwords_path;  // bundled default when unset
  std::optional<std::filesystem::path> lexicon_path;    // everything miscellaneous when unset
  std::string anchor;
  std::size_t topic_count = 3;
  BcMode bc_mode = BcMode::exact;
  std::size_t sample_sources = 0;  // sampled mode only
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  unsigned workers = 1;
  bool overwrite = false;

  void validate() const {
    if (corpus_path.empty()) throw ConfigError("corpus path must be set");
    if (out_dir.empty()) throw ConfigError("output directory must be set");
    if (anchor.empty()) throw ConfigError("anchor word must be set");
    if (topic_count < 1) throw ConfigError("topic count k must be >= 1");
    if (workers < 1) throw ConfigError("worker count must be >= 1");
    if (bc_mode == BcMode::sampled && sample_sources < 1)
      throw ConfigError("sampled mode needs a sample count >= 1");
  }
};

struct PipelineResult {
  int exit_code = 0;
  std::string failed_stage;  // empty on success
  std::string error;         // empty on success

  std::size_t documents = 0;
  std::size_t documents_with_abstract = 0;
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::vector<std::string> topics;
  std::vector<std::string> written;  // file names inside out_dir, write order
  double wall_seconds = 0.0;

  bool ok() const { return exit_code == 0; }
};

namespace detail {

inline int exit_code_for(const Error& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 1;
  if (dynamic_cast<const IoError*>(&e)) return 3;
  return 2;
}

inline std::string fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for checksum: " + path.string());
  std::uint64_t hash = 1469598103934665603ull;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

inline std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void check_writable(const std::filesystem::path& path, bool overwrite) {
  if (!overwrite && std::filesystem::exists(path))
    throw ConfigError("output file already exists (pass --overwrite to replace): " +
                      path.string());
}

// Tokenizes documents on `workers` threads; results land in input order.
inline std::vector<TokenizedDocument> tokenize_all(const std::vector<Document>& docs,
                                                   const StopWordSet& stops,
                                                   unsigned workers) {
  std::vector<TokenizedDocument> out(docs.size());
  if (workers <= 1 || docs.size() < 2) {
    for (std::size_t i = 0; i < docs.size(); ++i) out[i] = tokenize(docs[i], stops);
    return out;
  }
  const unsigned w = static_cast<unsigned>(std::min<std::size_t>(workers, docs.size()));
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = t; i < docs.size(); i += w) out[i] = tokenize(docs[i], stops);
    });
  }
  for (auto& th : threads) th.join();
  return out;
}

}  // namespace detail

inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  using clock = std::chrono::steady_clock;

  PipelineResult result;
  const auto started = clock::now();
  std::string stage = "config";
  bool out_dir_ready = false;
  nlohmann::json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kVersion;

  auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - started).count();
  };
  auto dump_manifest = [&](const fs::path& path) {
    manifest["timestamp"] = detail::utc_timestamp();
    manifest["wall_time_seconds"] = elapsed();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write manifest: " + path.string());
    out << manifest.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  };

  try {
    cfg.validate();
    manifest["parameters"] = {
        {"anchor", cfg.anchor},
        {"bc_mode", to_string(cfg.bc_mode)},
        {"format", cfg.format == CorpusFormat::jsonl ? "jsonl" : "csv"},
        {"k", cfg.topic_count},
        {"samples", cfg.sample_sources},
        {"seed", cfg.seed},
        {"workers", cfg.workers},
    };

    stage = "prepare-output";
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.out_dir.string() + ": " +
                          ec.message());
    for (const char* name : {"edges.csv", "centrality.csv", "topics.csv", "manifest.json"})
      detail::check_writable(cfg.out_dir / name, cfg.overwrite);
    out_dir_ready = true;

    auto input_entry = [&](const fs::path& path) {
      return nlohmann::json{{"path", path.string()},
                            {"fnv1a64", detail::fnv1a64_file(path)}};
    };

    stage = "load-stopwords";
    StopWordSet stops = cfg.stopwords_path ? StopWordSet::from_file(*cfg.stopwords_path)
                                           : StopWordSet::bundled_default();
    manifest["inputs"]["stopwords"] =
        cfg.stopwords_path ? input_entry(*cfg.stopwords_path)
                           : nlohmann::json{{"path", "bundled-default"},
                                            {"words", stops.size()}};

    stage = "load-lexicon";
    CategoryLexicon lexicon;
    if (cfg.lexicon_path) {
      lexicon = CategoryLexicon::from_file(*cfg.lexicon_path);
      manifest["inputs"]["lexicon"] = input_entry(*cfg.lexicon_path);
    } else {
      manifest["inputs"]["lexicon"] = nullptr;
    }

    stage = "load-corpus";
    std::vector<Document> docs = load_corpus(cfg.corpus_path, cfg.format);
    manifest["inputs"]["corpus"] = input_entry(cfg.corpus_path);

    stage = "tokenize";
    std::vector<TokenizedDocument> tokenized =
        detail::tokenize_all(docs, stops, cfg.workers);
    result.documents = docs.size();
    for (const Document& d : docs)
      if (d.has_abstract()) ++result.documents_with_abstract;
    for (const TokenizedDocument& d : tokenized) {
      result.sentences += d.sentences.size();
      result.tokens += d.token_count();
    }
    manifest["corpus_stats"] = {
        {"documents", result.documents},
        {"documents_with_abstract", result.documents_with_abstract},
        {"sentences", result.sentences},
        {"tokens", result.tokens},
    };

    stage = "build-graph";
    WordGraph graph = build_graph(tokenized);
    result.nodes = graph.node_count();
    result.edges = graph.edge_count();
    manifest["graph"] = {
        {"nodes", graph.node_count()},
        {"edges", graph.edge_count()},
        {"total_multiplicity", graph.total_multiplicity()},
    };
    auto write_artifact = [&](const std::string& name, const auto& writer) {
      fs::path path = cfg.out_dir / name;
      detail::check_writable(path, cfg.overwrite);
      writer(path);
      result.written.push_back(name);
      manifest["outputs"].push_back(name);
    };
    write_artifact("edges.csv", [&](const fs::path& p) { write_edge_list_csv(graph, p); });

    stage = "centrality";
    BetweennessOptions options{cfg.workers};
    CentralityTable global_bc =
        cfg.bc_mode == BcMode::exact
            ? betweenness_exact(graph, options)
            : betweenness_sampled(graph, cfg.sample_sources, cfg.seed, options);
    global_bc = log_transform(global_bc);
    write_artifact("centrality.csv",
                   [&](const fs::path& p) { write_centrality_csv(global_bc, p); });

    stage = "select-topics";
    std::vector<SelectedTopic> topics =
        select_topics(graph, global_bc, cfg.anchor, cfg.topic_count);
    for (const SelectedTopic& t : topics) result.topics.push_back(t.word);
    manifest["topics"] = result.topics;
    write_artifact("topics.csv", [&](const fs::path& p) { write_topics_csv(topics, p); });

    stage = "analyze-topics";
    for (const SelectedTopic& t : topics) {
      TopicAnalysis analysis = analyze_topic_full(graph, cfg.anchor, t.word, lexicon, options);
      write_artifact("topic_" + t.word + ".csv", [&](const fs::path& p) {
        write_topic_report_csv(analysis.report, p);
      });
      write_artifact("topic_" + t.word + ".gexf", [&](const fs::path& p) {
        export_gexf(analysis.subgraph, analysis.centrality, p);
      });
    }

    stage = "write-manifest";
    manifest["status"] = "ok";
    dump_manifest(cfg.out_dir / "manifest.json");
    result.wall_seconds = elapsed();
    return result;
  } catch (const Error& e) {
    result.exit_code = detail::exit_code_for(e);
    result.failed_stage = stage;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.failed_stage = stage;
    result.error = e.what();
  }

  result.wall_seconds = elapsed();
  if (out_dir_ready) {
    // Mark the run failed so partially written artifacts cannot pass as a
    // completed run. Manifest write errors at this point are unreportable.
    try {
      manifest["status"] = "failed";
      manifest["failed_stage"] = result.failed_stage;
      manifest["error"] = result.error;
      dump_manifest(cfg.out_dir / "manifest.json");
    } catch (const std::exception&) {
    }
  }
  return result;
}

}  // namespace kwgraph
