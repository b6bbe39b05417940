#pragma once

// Directed word-adjacency graph. Nodes are unique words; an edge u -> v means
// u immediately preceded v inside a sentence somewhere in the corpus. Parallel
// occurrences collapse into one edge carrying a multiplicity count; paths and
// centrality treat every edge as unit length.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kwgraph/corpus.hpp"
#include "kwgraph/error.hpp"

namespace kwgraph {

using NodeId = std::uint32_t;

struct Arc {
  NodeId node;
  std::uint64_t multiplicity;
};

namespace detail {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

using WordIndex = std::unordered_map<std::string, NodeId, StringHash, std::equal_to<>>;

}  // namespace detail

class GraphBuilder;

class WordGraph {
 public:
  WordGraph() = default;

  std::size_t node_count() const { return words_.size(); }

  // Number of distinct directed edges.
  std::size_t edge_count() const { return edge_count_; }

  // Sum of all edge multiplicities (adjacency occurrences minus self-loops).
  std::uint64_t total_multiplicity() const { return total_multiplicity_; }

  bool contains(std::string_view word) const { return index_.find(word) != index_.end(); }

  std::optional<NodeId> find(std::string_view word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId require(std::string_view word) const {
    auto it = index_.find(word);
    if (it == index_.end()) throw DataError("unknown word \"" + std::string(word) + "\"");
    return it->second;
  }

  const std::string& word(NodeId id) const { return words_[id]; }
  const std::vector<std::string>& words() const { return words_; }

  std::span<const Arc> out(NodeId id) const { return out_[id]; }
  std::span<const Arc> in(NodeId id) const { return in_[id]; }

  // Corpus occurrence count of the word; zero when the graph was built from
  // an edge list rather than from tokenized documents.
  std::uint64_t frequency(NodeId id) const { return freq_[id]; }

  struct Edge {
    std::string_view source;
    std::string_view target;
    std::uint64_t multiplicity;
  };

  // All edges in node-id order (stable for a given construction order).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < out_.size(); ++u)
      for (const Arc& arc : out_[u])
        out.push_back({words_[u], words_[arc.node], arc.multiplicity});
    return out;
  }

 private:
  friend class GraphBuilder;

  std::vector<std::string> words_;
  detail::WordIndex index_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::vector<std::uint64_t> freq_;
  std::size_t edge_count_ = 0;
  std::uint64_t total_multiplicity_ = 0;
};

class GraphBuilder {
 public:
  NodeId intern(std::string_view word) {
    auto it = index_.find(word);
    if (it != index_.end()) return it->second;
    NodeId id = static_cast<NodeId>(words_.size());
    words_.emplace_back(word);
    index_.emplace(words_.back(), id);
    out_mult_.emplace_back();
    freq_.push_back(0);
    return id;
  }

  void count_token(std::string_view word) { ++freq_[intern(word)]; }

  void add_frequency(std::string_view word, std::uint64_t count) {
    freq_[intern(word)] += count;
  }

  // One adjacency occurrence u -> v. Self-loops are never stored.
  void add_adjacency(std::string_view u, std::string_view v) {
    if (u == v) return;
    NodeId uid = intern(u), vid = intern(v);
    ++out_mult_[uid][vid];
  }

  // Bulk insertion, e.g. when reloading an exported edge list. Repeated
  // (u, v) pairs accumulate. Self-loops are never stored.
  void add_edge(std::string_view u, std::string_view v, std::uint64_t multiplicity) {
    if (multiplicity < 1) throw DataError("edge multiplicity must be >= 1");
    if (u == v) return;
    NodeId uid = intern(u), vid = intern(v);
    out_mult_[uid][vid] += multiplicity;
  }

  WordGraph build() && {
    WordGraph g;
    const std::size_t n = words_.size();
    g.words_ = std::move(words_);
    g.index_ = std::move(index_);
    g.freq_ = std::move(freq_);
    g.out_.resize(n);
    g.in_.resize(n);

    std::vector<std::vector<Arc>> in_tmp(n);
    for (NodeId u = 0; u < n; ++u) {
      auto& arcs = g.out_[u];
      arcs.reserve(out_mult_[u].size());
      for (const auto& [v, mult] : out_mult_[u]) arcs.push_back({v, mult});
      std::sort(arcs.begin(), arcs.end(),
                [](const Arc& a, const Arc& b) { return a.node < b.node; });
      for (const Arc& arc : arcs) {
        in_tmp[arc.node].push_back({u, arc.multiplicity});
        ++g.edge_count_;
        g.total_multiplicity_ += arc.multiplicity;
      }
    }
    for (NodeId v = 0; v < n; ++v) {
      std::sort(in_tmp[v].begin(), in_tmp[v].end(),
                [](const Arc& a, const Arc& b) { return a.node < b.node; });
      g.in_[v] = std::move(in_tmp[v]);
    }
    return g;
  }

 private:
  std::vector<std::string> words_;
  detail::WordIndex index_;
  std::vector<std::unordered_map<NodeId, std::uint64_t>> out_mult_;
  std::vector<std::uint64_t> freq_;
};

// Builds the global graph. Node set is the tokenized vocabulary; every
// within-sentence adjacency adds one to the multiplicity of its edge.
// Sentence boundaries never produce edges.
inline WordGraph build_graph(const std::vector<TokenizedDocument>& docs) {
  GraphBuilder builder;
  for (const auto& doc : docs) {
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence) builder.count_token(token);
      for (std::size_t i = 0; i + 1 < sentence.size(); ++i)
        builder.add_adjacency(sentence[i], sentence[i + 1]);
    }
  }
  return std::move(builder).build();
}

// Induced subgraph on a word plus its direct in/out neighbors. The copy owns
// its own dense ids; member order follows parent-graph id order.
struct Subgraph {
  WordGraph graph;
  std::string anchor;
};

inline Subgraph induce_topic_subgraph(const WordGraph& g, std::string_view anchor) {
  NodeId center = g.require(anchor);

  std::vector<NodeId> members;
  members.push_back(center);
  for (const Arc& arc : g.out(center)) members.push_back(arc.node);
  for (const Arc& arc : g.in(center)) members.push_back(arc.node);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  GraphBuilder builder;
  for (NodeId id : members) builder.add_frequency(g.word(id), g.frequency(id));
  for (NodeId u : members) {
    for (const Arc& arc : g.out(u)) {
      if (std::binary_search(members.begin(), members.end(), arc.node))
        builder.add_edge(g.word(u), g.word(arc.node), arc.multiplicity);
    }
  }
  return Subgraph{std::move(builder).build(), std::string(anchor)};
}

enum class Direction { in, out, both };

// Adjacent words with edge multiplicities, descending by multiplicity, ties
// in lexicographic order. With Direction::both a word reachable both ways
// appears once with its multiplicities summed.
inline std::vector<std::pair<std::string, std::uint64_t>> neighbors(
    const WordGraph& g, std::string_view word, Direction direction) {
  NodeId id = g.require(word);
  std::unordered_map<NodeId, std::uint64_t> merged;
  if (direction == Direction::out || direction == Direction::both)
    for (const Arc& arc : g.out(id)) merged[arc.node] += arc.multiplicity;
  if (direction == Direction::in || direction == Direction::both)
    for (const Arc& arc : g.in(id)) merged[arc.node] += arc.multiplicity;

  std::vector<std::pair<std::string, std::uint64_t>> out;
  out.reserve(merged.size());
  for (const auto& [node, mult] : merged) out.emplace_back(g.word(node), mult);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace kwgraph
