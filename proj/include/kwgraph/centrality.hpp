#pragma once

// Betweenness centrality over the word graph. BC(w) sums, over all ordered
// node pairs (u, v) with u != v != w, the fraction of shortest directed u->v
// paths that visit w as an interior node. Edges count as unit length, so
// shortest paths come from BFS.
//
// Three routes are provided:
//   betweenness_exact   - Brandes dependency accumulation, optionally threaded
//   betweenness_oracle  - literal per-pair tally for small graphs (testing)
//   betweenness_sampled - unbiased source-sampled estimate for large graphs

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kwgraph/error.hpp"
#include "kwgraph/graph.hpp"

namespace kwgraph {

struct CentralityEntry {
  std::string word;
  double bc = 0.0;
  std::optional<double> log_bc;  // ln(bc), present only after log_transform and only when bc > 0
  std::uint32_t rank = 0;        // 1-based, descending by bc, ties by word
};

class CentralityTable {
 public:
  CentralityTable() = default;

  static CentralityTable from_scores(const WordGraph& g, std::span<const double> scores) {
    CentralityTable t;
    t.entries_.reserve(scores.size());
    for (NodeId id = 0; id < scores.size(); ++id)
      t.entries_.push_back({g.word(id), scores[id], std::nullopt, 0});
    t.finalize();
    return t;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Entries in rank order.
  const std::vector<CentralityEntry>& entries() const { return entries_; }

  const CentralityEntry* find(std::string_view word) const {
    auto it = index_.find(std::string(word));
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  const CentralityEntry& at(std::string_view word) const {
    const CentralityEntry* e = find(word);
    if (!e) throw DataError("no centrality entry for word \"" + std::string(word) + "\"");
    return *e;
  }

  double bc(std::string_view word) const { return at(word).bc; }

  bool has_logs() const { return has_logs_; }

  friend CentralityTable log_transform(const CentralityTable& table);

 private:
  void finalize() {
    std::sort(entries_.begin(), entries_.end(),
              [](const CentralityEntry& a, const CentralityEntry& b) {
                if (a.bc != b.bc) return a.bc > b.bc;
                return a.word < b.word;
              });
    index_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      entries_[i].rank = static_cast<std::uint32_t>(i + 1);
      index_.emplace(entries_[i].word, i);
    }
  }

  std::vector<CentralityEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  bool has_logs_ = false;
};

// Fills log_bc = ln(bc) wherever bc > 0. Zero-BC entries keep no log score;
// they already sort below every logged entry because ranking is by raw bc.
inline CentralityTable log_transform(const CentralityTable& table) {
  CentralityTable out = table;
  for (CentralityEntry& e : out.entries_)
    e.log_bc = e.bc > 0.0 ? std::optional<double>(std::log(e.bc)) : std::nullopt;
  out.has_logs_ = true;
  return out;
}

struct BetweennessOptions {
  unsigned workers = 1;  // 1 = deterministic reference mode
};

namespace detail {

// Per-source scratch for the BFS + dependency pass.
struct BrandesScratch {
  std::vector<std::int32_t> dist;
  std::vector<double> sigma;   // shortest-path counts from the source
  std::vector<double> delta;   // accumulated dependencies
  std::vector<NodeId> order;   // BFS visit order; doubles as the reverse stack

  explicit BrandesScratch(std::size_t n) : dist(n), sigma(n), delta(n) {
    order.reserve(n);
  }
};

// One Brandes iteration: BFS shortest-path DAG from `source`, then reverse
// accumulation of dependencies. delta[v] over DAG successors w is
// sigma[v]/sigma[w] * (1 + delta[w]); every node other than the source adds
// its delta to bc.
inline void brandes_from_source(const WordGraph& g, NodeId source,
                                BrandesScratch& scr, std::vector<double>& bc) {
  std::fill(scr.dist.begin(), scr.dist.end(), -1);
  std::fill(scr.sigma.begin(), scr.sigma.end(), 0.0);
  std::fill(scr.delta.begin(), scr.delta.end(), 0.0);
  scr.order.clear();

  scr.dist[source] = 0;
  scr.sigma[source] = 1.0;
  scr.order.push_back(source);
  for (std::size_t head = 0; head < scr.order.size(); ++head) {
    NodeId v = scr.order[head];
    std::int32_t next = scr.dist[v] + 1;
    for (const Arc& arc : g.out(v)) {
      NodeId w = arc.node;
      if (scr.dist[w] < 0) {
        scr.dist[w] = next;
        scr.order.push_back(w);
      }
      if (scr.dist[w] == next) scr.sigma[w] += scr.sigma[v];
    }
  }

  for (std::size_t i = scr.order.size(); i-- > 0;) {
    NodeId v = scr.order[i];
    double acc = 0.0;
    std::int32_t next = scr.dist[v] + 1;
    for (const Arc& arc : g.out(v)) {
      NodeId w = arc.node;
      if (scr.dist[w] == next) acc += scr.sigma[v] / scr.sigma[w] * (1.0 + scr.delta[w]);
    }
    scr.delta[v] = acc;
    if (v != source) bc[v] += acc;
  }
}

// Runs Brandes from every listed source. Worker t takes sources t, t+W,
// t+2W, ... and accumulates privately; partial sums merge in worker order, so
// the result depends only on (sources, workers), not on scheduling.
inline std::vector<double> accumulate_sources(const WordGraph& g,
                                              std::span<const NodeId> sources,
                                              unsigned workers) {
  const std::size_t n = g.node_count();
  std::vector<double> bc(n, 0.0);
  if (n == 0 || sources.empty()) return bc;

  if (workers <= 1) {
    BrandesScratch scr(n);
    for (NodeId s : sources) brandes_from_source(g, s, scr, bc);
    return bc;
  }

  const unsigned w = static_cast<unsigned>(
      std::min<std::size_t>(workers, sources.size()));
  std::vector<std::vector<double>> partial(w, std::vector<double>(n, 0.0));
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      BrandesScratch scr(n);
      for (std::size_t i = t; i < sources.size(); i += w)
        brandes_from_source(g, sources[i], scr, partial[t]);
    });
  }
  for (auto& th : threads) th.join();
  for (unsigned t = 0; t < w; ++t)
    for (std::size_t v = 0; v < n; ++v) bc[v] += partial[t][v];
  return bc;
}

inline std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(i);
  return ids;
}

}  // namespace detail

inline CentralityTable betweenness_exact(const WordGraph& g,
                                         const BetweennessOptions& options = {}) {
  auto sources = detail::all_nodes(g.node_count());
  auto bc = detail::accumulate_sources(g, sources, options.workers);
  return CentralityTable::from_scores(g, bc);
}

inline CentralityTable betweenness_exact(const Subgraph& sub,
                                         const BetweennessOptions& options = {}) {
  return betweenness_exact(sub.graph, options);
}

inline constexpr std::size_t kDefaultOracleLimit = 64;

// Literal transcription of the definition: count shortest paths per ordered
// pair via forward and reverse BFS, then add sigma_uv(w)/sigma_uv for every
// pair and interior node separately. Quadratic memory, cubic time; guarded by
// a node limit since it exists to validate the Brandes route on small graphs.
inline CentralityTable betweenness_oracle(const WordGraph& g,
                                          std::size_t node_limit = kDefaultOracleLimit) {
  const std::size_t n = g.node_count();
  if (n > node_limit)
    throw ConfigError("graph has " + std::to_string(n) +
                      " nodes, exceeding the oracle limit of " + std::to_string(node_limit));

  constexpr std::int32_t kUnreached = -1;
  std::vector<std::vector<std::int32_t>> dist_f(n), dist_r(n);
  std::vector<std::vector<double>> sig_f(n), sig_r(n);

  auto bfs = [&](NodeId start, bool forward, std::vector<std::int32_t>& dist,
                 std::vector<double>& sigma) {
    dist.assign(n, kUnreached);
    sigma.assign(n, 0.0);
    std::vector<NodeId> queue;
    queue.reserve(n);
    dist[start] = 0;
    sigma[start] = 1.0;
    queue.push_back(start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId v = queue[head];
      auto arcs = forward ? g.out(v) : g.in(v);
      for (const Arc& arc : arcs) {
        NodeId w = arc.node;
        if (dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
  };

  for (NodeId id = 0; id < n; ++id) {
    bfs(id, true, dist_f[id], sig_f[id]);
    bfs(id, false, dist_r[id], sig_r[id]);
  }

  std::vector<double> bc(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u == v || dist_f[u][v] == kUnreached) continue;
      const double sigma_uv = sig_f[u][v];
      for (NodeId w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        if (dist_f[u][w] == kUnreached || dist_r[v][w] == kUnreached) continue;
        if (dist_f[u][w] + dist_r[v][w] != dist_f[u][v]) continue;
        // sigma_uv(w): shortest u->v paths through w = (paths u->w) * (paths w->v)
        bc[w] += sig_f[u][w] * sig_r[v][w] / sigma_uv;
      }
    }
  }
  return CentralityTable::from_scores(g, bc);
}

inline CentralityTable betweenness_oracle(const Subgraph& sub,
                                          std::size_t node_limit = kDefaultOracleLimit) {
  return betweenness_oracle(sub.graph, node_limit);
}

// Unbiased estimate from `sample_sources` distinct uniformly drawn sources:
// accumulated dependencies scale by node_count / sample_sources. Sources are
// sorted ascending before accumulation, so sampling every node reproduces
// betweenness_exact bitwise in single-worker mode. Fixed seed, fixed output.
inline CentralityTable betweenness_sampled(const WordGraph& g, std::size_t sample_sources,
                                           std::uint64_t seed,
                                           const BetweennessOptions& options = {}) {
  const std::size_t n = g.node_count();
  if (sample_sources < 1 || sample_sources > n)
    throw ConfigError("sample_sources must be between 1 and the node count (" +
                      std::to_string(n) + "), got " + std::to_string(sample_sources));

  auto pool = detail::all_nodes(n);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates; avoids std::uniform_int_distribution so the draw is
  // identical across standard library implementations.
  for (std::size_t i = 0; i < sample_sources; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(sample_sources);
  std::sort(pool.begin(), pool.end());

  auto bc = detail::accumulate_sources(g, pool, options.workers);
  const double scale = static_cast<double>(n) / static_cast<double>(sample_sources);
  for (double& v : bc) v *= scale;
  return CentralityTable::from_scores(g, bc);
}

}  // namespace kwgraph
