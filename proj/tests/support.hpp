#pragma once

// Shared test helpers: seeded random graphs, a path-enumerating betweenness
// reference that shares no code with the library's two implementations, rank
// correlation, a small XML well-formedness checker, and process/file plumbing
// for the golden-run checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "kwgraph/kwgraph.hpp"

namespace testsupport {

namespace fs = std::filesystem;

// All draws come straight from mt19937_64 so sequences are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

// 0 -> "a", 25 -> "z", 26 -> "aa", ... (bijective base 26, lowercase only).
inline std::string node_name(std::size_t i) {
  std::string name;
  ++i;
  while (i > 0) {
    --i;
    name.push_back(static_cast<char>('a' + i % 26));
    i /= 26;
  }
  std::reverse(name.begin(), name.end());
  return name;
}

// Directed Erdos-Renyi graph: every ordered pair (u, v), u != v, gets an edge
// with probability p. All n nodes exist even when isolated.
inline kwgraph::WordGraph make_er_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  kwgraph::GraphBuilder builder;
  for (std::size_t i = 0; i < n; ++i) builder.intern(node_name(i));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && rng.unit() < p) builder.add_edge(node_name(u), node_name(v), 1);
  return std::move(builder).build();
}

// Betweenness by literally enumerating every shortest path: BFS from each
// source builds predecessor lists, a DFS walks out each individual shortest
// path, and interior nodes are tallied path by path. Exponential in the path
// count, so only for small graphs; its value is independence from both the
// dependency-accumulation and the sigma-product implementations.
inline std::vector<double> bc_by_path_enumeration(const kwgraph::WordGraph& g) {
  using kwgraph::Arc;
  using kwgraph::NodeId;
  const std::size_t n = g.node_count();
  std::vector<double> bc(n, 0.0);

  for (NodeId u = 0; u < n; ++u) {
    std::vector<int> dist(n, -1);
    std::vector<std::vector<NodeId>> preds(n);
    std::vector<NodeId> queue;
    dist[u] = 0;
    queue.push_back(u);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId v = queue[head];
      for (const Arc& arc : g.out(v)) {
        NodeId w = arc.node;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) preds[w].push_back(v);
      }
    }

    for (NodeId v = 0; v < n; ++v) {
      if (v == u || dist[v] < 0) continue;
      std::vector<std::uint64_t> through(n, 0);
      std::uint64_t total = 0;
      std::vector<NodeId> path{v};
      std::function<void(NodeId)> walk = [&](NodeId cur) {
        if (cur == u) {
          ++total;
          for (std::size_t i = 1; i + 1 < path.size(); ++i) ++through[path[i]];
          return;
        }
        for (NodeId p : preds[cur]) {
          path.push_back(p);
          walk(p);
          path.pop_back();
        }
      };
      walk(v);
      for (NodeId w = 0; w < n; ++w)
        if (through[w] > 0)
          bc[w] += static_cast<double>(through[w]) / static_cast<double>(total);
    }
  }
  return bc;
}

// Fractional ranks (ties get the group mean), 1-based, ascending by value.
inline std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return pearson(average_ranks(a), average_ranks(b));
}

// Raw abstract text with the messiness tokenization has to survive: mixed
// case, digits, hyphenated compounds, punctuation, multi-byte characters, and
// sentences of wildly different lengths.
inline std::string random_abstract(Rng& rng) {
  static const std::vector<std::string> pieces = {
      "virus",     "cell",      "Protein",  "RNA",        "SARS-CoV-2", "h1n1",
      "2020",      "3.5",       "spread",   "mutation",   "HOST",       "anti-viral",
      "café",      "(reviewed)", "vaccine,", "dose:",     "x",          "genome",
      "ACE2",      "receptor",  "12%",      "trial",      "Phase-III",  "binding",
      "&",         "in-vitro",  "assay",    "titer",      "B.1.1.7",    "antibody"};
  static const std::vector<std::string> enders = {". ", "! ", "? ", ".", "!", "?\n", ".\t"};

  std::string text;
  const std::size_t sentence_count = rng.below(7);
  for (std::size_t s = 0; s < sentence_count; ++s) {
    const std::size_t word_count = rng.below(13);
    for (std::size_t i = 0; i < word_count; ++i) {
      if (i > 0) text += ' ';
      text += pieces[rng.below(pieces.size())];
    }
    text += enders[rng.below(enders.size())];
  }
  if (sentence_count > 0 && rng.below(4) == 0) text += "trailing fragment without ending";
  return text;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = fs::temp_directory_path() /
            ("kwgraph_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

class CwdGuard {
 public:
  explicit CwdGuard(const fs::path& to) : previous_(fs::current_path()) {
    fs::current_path(to);
  }
  ~CwdGuard() {
    std::error_code ec;
    fs::current_path(previous_, ec);
  }
  CwdGuard(const CwdGuard&) = delete;
  CwdGuard& operator=(const CwdGuard&) = delete;

 private:
  fs::path previous_;
};

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
  int status = ::pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

// Minimal well-formedness check: prolog/comments/PIs skipped, tags balanced
// and properly nested, attributes quoted, exactly one root element, character
// data free of raw '<' and of '&' outside entity references.
inline bool xml_well_formed(std::string_view xml, std::string* why = nullptr) {
  auto fail = [&](const std::string& message) {
    if (why) *why = message;
    return false;
  };
  auto is_name_char = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == ':' || c == '-' || c == '.';
  };

  std::vector<std::string> stack;
  std::size_t roots = 0;
  std::size_t pos = 0;
  while (pos < xml.size()) {
    if (xml[pos] != '<') {
      if (xml[pos] == '&') {
        std::size_t semi = xml.find(';', pos);
        if (semi == std::string_view::npos || semi - pos > 8)
          return fail("bare '&' in character data");
        pos = semi + 1;
        continue;
      }
      if (!stack.empty() || std::isspace(static_cast<unsigned char>(xml[pos])) != 0) {
        ++pos;
        continue;
      }
      return fail("character data outside the root element");
    }
    if (xml.compare(pos, 4, "<!--") == 0) {
      std::size_t end = xml.find("-->", pos + 4);
      if (end == std::string_view::npos) return fail("unterminated comment");
      pos = end + 3;
      continue;
    }
    if (xml.compare(pos, 2, "<?") == 0) {
      std::size_t end = xml.find("?>", pos + 2);
      if (end == std::string_view::npos) return fail("unterminated processing instruction");
      pos = end + 2;
      continue;
    }
    if (xml.compare(pos, 2, "</") == 0) {
      std::size_t start = pos + 2, end = start;
      while (end < xml.size() && is_name_char(xml[end])) ++end;
      if (end == start || end >= xml.size() || xml[end] != '>')
        return fail("malformed closing tag");
      std::string name(xml.substr(start, end - start));
      if (stack.empty() || stack.back() != name)
        return fail("mismatched closing tag </" + name + ">");
      stack.pop_back();
      pos = end + 1;
      continue;
    }

    std::size_t start = pos + 1, end = start;
    while (end < xml.size() && is_name_char(xml[end])) ++end;
    if (end == start) return fail("malformed opening tag");
    std::string name(xml.substr(start, end - start));
    pos = end;
    bool self_closing = false;
    while (true) {
      while (pos < xml.size() && std::isspace(static_cast<unsigned char>(xml[pos])) != 0)
        ++pos;
      if (pos >= xml.size()) return fail("unterminated tag <" + name + ">");
      if (xml[pos] == '>') {
        ++pos;
        break;
      }
      if (xml.compare(pos, 2, "/>") == 0) {
        self_closing = true;
        pos += 2;
        break;
      }
      std::size_t attr_start = pos;
      while (pos < xml.size() && is_name_char(xml[pos])) ++pos;
      if (pos == attr_start) return fail("bad attribute in <" + name + ">");
      if (pos >= xml.size() || xml[pos] != '=')
        return fail("attribute without value in <" + name + ">");
      ++pos;
      if (pos >= xml.size() || (xml[pos] != '"' && xml[pos] != '\''))
        return fail("unquoted attribute value in <" + name + ">");
      const char quote = xml[pos];
      std::size_t close = xml.find(quote, pos + 1);
      if (close == std::string_view::npos)
        return fail("unterminated attribute value in <" + name + ">");
      pos = close + 1;
    }
    if (stack.empty()) {
      if (++roots > 1) return fail("multiple root elements");
    }
    if (!self_closing) stack.push_back(std::move(name));
  }
  if (!stack.empty()) return fail("unclosed element <" + stack.back() + ">");
  if (roots != 1) return fail("no root element");
  return true;
}

// ---- golden mini-corpus run -----------------------------------------------
//
// The frozen outputs live in tests/golden/mini. Runs happen inside a scratch
// directory holding copies of the bundled corpus and lexicon under their
// canonical names, with relative paths in the config, so recorded parameters
// and checksums are location-independent. The manifest's timestamp and wall
// time change run to run and are stripped before comparison.

inline kwgraph::PipelineConfig mini_pipeline_config(const std::string& out_dir) {
  kwgraph::PipelineConfig cfg;
  cfg.corpus_path = "mini_corpus.jsonl";
  cfg.format = kwgraph::CorpusFormat::jsonl;
  cfg.lexicon_path = fs::path("mini_lexicon.csv");
  cfg.anchor = "virus";
  cfg.topic_count = 2;
  cfg.bc_mode = kwgraph::BcMode::exact;
  cfg.out_dir = out_dir;
  cfg.workers = 1;
  return cfg;
}

inline std::string normalized_manifest(const fs::path& path) {
  auto json = nlohmann::json::parse(read_file(path));
  json.erase("timestamp");
  json.erase("wall_time_seconds");
  return json.dump(2);
}

// Returns human-readable problems; empty means the golden contract holds.
inline std::vector<std::string> check_golden_mini(const fs::path& data_dir,
                                                  const fs::path& golden_dir) {
  std::vector<std::string> problems;
  TempDir tmp("golden");
  fs::copy_file(data_dir / "mini_corpus.jsonl", tmp.path() / "mini_corpus.jsonl");
  fs::copy_file(data_dir / "mini_lexicon.csv", tmp.path() / "mini_lexicon.csv");
  CwdGuard cwd(tmp.path());

  kwgraph::PipelineResult first = kwgraph::run_pipeline(mini_pipeline_config("out"));
  kwgraph::PipelineResult second = kwgraph::run_pipeline(mini_pipeline_config("out2"));
  if (!first.ok())
    problems.push_back("first run failed at " + first.failed_stage + ": " + first.error);
  if (!second.ok())
    problems.push_back("second run failed at " + second.failed_stage + ": " + second.error);
  if (!problems.empty()) return problems;

  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(golden_dir))
    names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());
  if (names.empty()) problems.push_back("golden directory is empty: " + golden_dir.string());

  for (const std::string& name : names) {
    const fs::path golden = golden_dir / name;
    const fs::path got = fs::path("out") / name;
    const fs::path got2 = fs::path("out2") / name;
    if (!fs::exists(got)) {
      problems.push_back("missing output file " + name);
      continue;
    }
    if (name == "manifest.json") {
      if (normalized_manifest(got) != normalized_manifest(got2))
        problems.push_back("manifest differs between the two runs");
      if (normalized_manifest(got) != normalized_manifest(golden))
        problems.push_back("manifest differs from the frozen golden");
    } else {
      if (read_file(got) != read_file(got2))
        problems.push_back(name + " differs between the two runs");
      if (read_file(got) != read_file(golden))
        problems.push_back(name + " differs from the frozen golden");
    }
  }

  std::size_t produced = 0;
  for (const auto& entry : fs::directory_iterator("out")) {
    ++produced;
    std::string name = entry.path().filename().string();
    if (!std::binary_search(names.begin(), names.end(), name))
      problems.push_back("unexpected output file " + name);
  }
  (void)produced;
  return problems;
}

}  // namespace testsupport
