// kwgraph command line: corpus ingestion stats, graph/centrality/topic
// exports, and the full pipeline run.
//
// Exit codes: 0 success, 1 usage/config error, 2 input data error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kwgraph/kwgraph.hpp"

namespace fs = std::filesystem;
using namespace kwgraph;

namespace {

struct Args {
  std::string corpus;
  std::string format = "jsonl";
  std::string stopwords;
  std::string lexicon;
  std::string anchor;
  std::size_t k = 3;
  std::string bc_mode = "exact";
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out;
  bool overwrite = false;
  std::size_t candidates = 0;  // ingest only
};

StopWordSet load_stops(const Args& args) {
  return args.stopwords.empty() ? StopWordSet::bundled_default()
                                : StopWordSet::from_file(args.stopwords);
}

std::vector<TokenizedDocument> load_and_tokenize(const Args& args, const StopWordSet& stops) {
  auto docs = load_corpus(args.corpus, corpus_format_from_string(args.format));
  return detail::tokenize_all(docs, stops, args.workers);
}

fs::path prepare_out(const Args& args) {
  if (args.out.empty()) throw ConfigError("missing --out directory");
  fs::path dir(args.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

fs::path claim(const fs::path& dir, const std::string& name, const Args& args) {
  fs::path path = dir / name;
  detail::check_writable(path, args.overwrite);
  return path;
}

CentralityTable compute_bc(const WordGraph& graph, const Args& args) {
  BetweennessOptions options{args.workers};
  CentralityTable table = bc_mode_from_string(args.bc_mode) == BcMode::sampled
                              ? betweenness_sampled(graph, args.samples, args.seed, options)
                              : betweenness_exact(graph, options);
  return log_transform(table);
}

int cmd_ingest(const Args& args) {
  StopWordSet stops = load_stops(args);
  auto docs = load_corpus(args.corpus, corpus_format_from_string(args.format));
  auto tokenized = detail::tokenize_all(docs, stops, args.workers);

  std::size_t with_abstract = 0, sentences = 0, tokens = 0;
  for (const auto& d : docs)
    if (d.has_abstract()) ++with_abstract;
  GraphBuilder vocab_counter;
  for (const auto& d : tokenized) {
    sentences += d.sentences.size();
    tokens += d.token_count();
    for (const auto& s : d.sentences)
      for (const auto& t : s) vocab_counter.intern(t);
  }
  std::size_t vocabulary = std::move(vocab_counter).build().node_count();

  std::printf("documents                %zu\n", docs.size());
  std::printf("documents with abstract  %zu\n", with_abstract);
  std::printf("stop words               %zu (%s)\n", stops.size(), stops.source().c_str());
  std::printf("sentences                %zu\n", sentences);
  std::printf("tokens                   %zu\n", tokens);
  std::printf("vocabulary               %zu\n", vocabulary);

  if (args.candidates > 0) {
    // Frequency list before stop-word removal, for building a stop file.
    StopWordSet none;
    auto unfiltered = detail::tokenize_all(docs, none, args.workers);
    std::printf("\nstop-word candidates (pre-filter frequency)\n");
    for (const auto& [word, freq] : generate_stopword_candidates(unfiltered, args.candidates))
      std::printf("%-24s %10llu\n", word.c_str(), static_cast<unsigned long long>(freq));
  }
  return 0;
}

int cmd_build(const Args& args) {
  fs::path dir = prepare_out(args);
  WordGraph graph = build_graph(load_and_tokenize(args, load_stops(args)));
  fs::path path = claim(dir, "edges.csv", args);
  write_edge_list_csv(graph, path);
  std::printf("graph: %zu nodes, %zu edges\n", graph.node_count(), graph.edge_count());
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_centrality(const Args& args) {
  fs::path dir = prepare_out(args);
  WordGraph graph = build_graph(load_and_tokenize(args, load_stops(args)));
  CentralityTable table = compute_bc(graph, args);
  fs::path path = claim(dir, "centrality.csv", args);
  write_centrality_csv(table, path);
  std::printf("wrote %s (%zu words)\n", path.string().c_str(), table.size());
  return 0;
}

int cmd_topics(const Args& args) {
  if (args.anchor.empty()) throw ConfigError("missing --anchor word");
  fs::path dir = prepare_out(args);
  WordGraph graph = build_graph(load_and_tokenize(args, load_stops(args)));
  CentralityTable table = compute_bc(graph, args);
  auto topics = select_topics(graph, table, args.anchor, args.k);
  fs::path path = claim(dir, "topics.csv", args);
  write_topics_csv(topics, path);
  for (const auto& t : topics)
    std::printf("%-24s log_bc %s\n", t.word.c_str(),
                t.log_bc ? csv::format_significant(*t.log_bc).c_str() : "-");
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_report(const Args& args) {
  if (args.anchor.empty()) throw ConfigError("missing --anchor word");
  fs::path dir = prepare_out(args);
  WordGraph graph = build_graph(load_and_tokenize(args, load_stops(args)));
  CentralityTable table = compute_bc(graph, args);
  CategoryLexicon lexicon;
  if (!args.lexicon.empty()) lexicon = CategoryLexicon::from_file(args.lexicon);

  BetweennessOptions options{args.workers};
  for (const auto& t : select_topics(graph, table, args.anchor, args.k)) {
    TopicAnalysis analysis = analyze_topic_full(graph, args.anchor, t.word, lexicon, options);
    fs::path csv_path = claim(dir, "topic_" + t.word + ".csv", args);
    write_topic_report_csv(analysis.report, csv_path);
    fs::path gexf_path = claim(dir, "topic_" + t.word + ".gexf", args);
    export_gexf(analysis.subgraph, analysis.centrality, gexf_path);
    std::printf("topic %-20s %zu nodes, %zu edges -> %s, %s\n", t.word.c_str(),
                analysis.report.node_count, analysis.report.edge_count,
                csv_path.string().c_str(), gexf_path.string().c_str());
  }
  return 0;
}

int cmd_run(const Args& args) {
  PipelineConfig cfg;
  cfg.corpus_path = args.corpus;
  cfg.format = corpus_format_from_string(args.format);
  if (!args.stopwords.empty()) cfg.stopwords_path = fs::path(args.stopwords);
  if (!args.lexicon.empty()) cfg.lexicon_path = fs::path(args.lexicon);
  cfg.anchor = args.anchor;
  cfg.topic_count = args.k;
  cfg.bc_mode = bc_mode_from_string(args.bc_mode);
  cfg.sample_sources = args.samples;
  cfg.seed = args.seed;
  cfg.out_dir = args.out;
  cfg.workers = args.workers;
  cfg.overwrite = args.overwrite;

  PipelineResult result = run_pipeline(cfg);
  if (!result.ok()) {
    std::fprintf(stderr, "error at stage %s: %s\n", result.failed_stage.c_str(),
                 result.error.c_str());
    return result.exit_code;
  }
  std::printf("documents  %zu (%zu with abstract)\n", result.documents,
              result.documents_with_abstract);
  std::printf("graph      %zu nodes, %zu edges\n", result.nodes, result.edges);
  std::printf("topics    ");
  for (const auto& t : result.topics) std::printf(" %s", t.c_str());
  std::printf("\n");
  std::printf("artifacts  %zu files in %s (%.2fs)\n", result.written.size() + 1,
              args.out.c_str(), result.wall_seconds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-adjacency graph analytics: betweenness-ranked keywords and topic subgraphs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Args args;
  auto add_common = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--corpus", args.corpus, "corpus file (JSONL or CSV)")->required();
    cmd->add_option("--format", args.format, "corpus format: jsonl|csv");
    cmd->add_option("--stopwords", args.stopwords,
                    "stop-word file (one word per line; default: bundled list)");
    cmd->add_option("--workers", args.workers, "worker threads (1 = deterministic)");
    if (needs_out) {
      cmd->add_option("--out", args.out, "output directory")->required();
      cmd->add_flag("--overwrite", args.overwrite, "replace existing output files");
    }
  };
  auto add_bc = [&](CLI::App* cmd) {
    cmd->add_option("--bc-mode", args.bc_mode, "betweenness mode: exact|sampled");
    cmd->add_option("--samples", args.samples, "source samples for sampled mode");
    cmd->add_option("--seed", args.seed, "RNG seed for sampled mode");
  };
  auto add_topics = [&](CLI::App* cmd) {
    cmd->add_option("--anchor", args.anchor, "anchor word")->required();
    cmd->add_option("--k", args.k, "number of topics to select");
  };

  CLI::App* ingest = app.add_subcommand("ingest", "tokenize the corpus and print statistics");
  add_common(ingest, false);
  ingest->add_option("--stopword-candidates", args.candidates,
                     "also print the top-N pre-filter frequency list");

  CLI::App* build = app.add_subcommand("build", "build the word graph and export its edge list");
  add_common(build, true);

  CLI::App* centrality =
      app.add_subcommand("centrality", "rank all words by betweenness centrality");
  add_common(centrality, true);
  add_bc(centrality);

  CLI::App* topics = app.add_subcommand("topics", "select the anchor's top topics");
  add_common(topics, true);
  add_bc(topics);
  add_topics(topics);

  CLI::App* report = app.add_subcommand("report", "write per-topic rankings and GEXF subgraphs");
  add_common(report, true);
  add_bc(report);
  add_topics(report);
  report->add_option("--lexicon", args.lexicon, "category lexicon CSV (word,category)");

  CLI::App* run = app.add_subcommand("run", "full pipeline with manifest");
  add_common(run, true);
  add_bc(run);
  add_topics(run);
  run->add_option("--lexicon", args.lexicon, "category lexicon CSV (word,category)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*ingest) return cmd_ingest(args);
    if (*build) return cmd_build(args);
    if (*centrality) return cmd_centrality(args);
    if (*topics) return cmd_topics(args);
    if (*report) return cmd_report(args);
    if (*run) return cmd_run(args);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
