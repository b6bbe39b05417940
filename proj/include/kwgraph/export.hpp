#pragma once

// File exports: CSV tables for downstream analysis and GEXF for Gephi.
// All numeric output goes through format_significant (12 significant digits)
// so identical inputs produce identical bytes.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kwgraph/centrality.hpp"
#include "kwgraph/csv.hpp"
#include "kwgraph/error.hpp"
#include "kwgraph/graph.hpp"
#include "kwgraph/topics.hpp"

namespace kwgraph {

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  return out;
}

}  // namespace detail

inline void write_edge_list_csv(const WordGraph& g, std::ostream& out) {
  out << "source,target,multiplicity\n";
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (const Arc& arc : g.out(u))
      out << g.word(u) << ',' << g.word(arc.node) << ',' << arc.multiplicity << '\n';
}

inline void write_edge_list_csv(const WordGraph& g, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  write_edge_list_csv(g, out);
}

// Rebuilds a graph from an exported edge list. Node frequencies are not part
// of the edge list, so they come back as zero; structure and multiplicities
// round-trip exactly.
inline WordGraph read_edge_list_csv(std::istream& in) {
  std::vector<std::string> fields;
  if (!csv::read_record(in, fields))
    throw DataError("edge list: missing header record");
  if (fields.size() != 3 || ascii_lower_copy(fields[0]) != "source" ||
      ascii_lower_copy(fields[1]) != "target" ||
      ascii_lower_copy(fields[2]) != "multiplicity")
    throw DataError("edge list header must be source,target,multiplicity");

  GraphBuilder builder;
  std::size_t record_no = 0;
  while (csv::read_record(in, fields)) {
    ++record_no;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 3)
      throw DataError("edge list record " + std::to_string(record_no) +
                      ": expected 3 fields, got " + std::to_string(fields.size()));
    std::uint64_t multiplicity = 0;
    const std::string& raw = fields[2];
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), multiplicity);
    if (ec != std::errc() || ptr != raw.data() + raw.size() || multiplicity < 1)
      throw DataError("edge list record " + std::to_string(record_no) +
                      ": bad multiplicity \"" + raw + "\"");
    if (fields[0] == fields[1])
      throw DataError("edge list record " + std::to_string(record_no) +
                      ": self-loop on \"" + fields[0] + "\"");
    builder.add_edge(fields[0], fields[1], multiplicity);
  }
  return std::move(builder).build();
}

inline WordGraph read_edge_list_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open edge list file: " + path.string());
  return read_edge_list_csv(in);
}

// word,bc,log_bc,rank in rank order; log_bc is empty when BC is zero (or the
// table has not been log-transformed).
inline void write_centrality_csv(const CentralityTable& table, std::ostream& out) {
  out << "word,bc,log_bc,rank\n";
  for (const CentralityEntry& e : table.entries()) {
    out << e.word << ',' << csv::format_significant(e.bc) << ',';
    if (e.log_bc) out << csv::format_significant(*e.log_bc);
    out << ',' << e.rank << '\n';
  }
}

inline void write_centrality_csv(const CentralityTable& table,
                                 const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  write_centrality_csv(table, out);
}

inline void write_topics_csv(const std::vector<SelectedTopic>& topics, std::ostream& out) {
  out << "word,log_bc\n";
  for (const SelectedTopic& t : topics) {
    out << t.word << ',';
    if (t.log_bc) out << csv::format_significant(*t.log_bc);
    out << '\n';
  }
}

inline void write_topics_csv(const std::vector<SelectedTopic>& topics,
                             const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  write_topics_csv(topics, out);
}

inline void write_topic_report_csv(const TopicReport& report, std::ostream& out) {
  out << "topic,word,category,bc,log_bc,rank\n";
  for (const TopicEntry& e : report.entries) {
    csv::write_field(out, report.topic);
    out << ',';
    csv::write_field(out, e.word);
    out << ',';
    csv::write_field(out, e.category);
    out << ',' << csv::format_significant(e.bc) << ',';
    if (e.log_bc) out << csv::format_significant(*e.log_bc);
    out << ',' << e.rank << '\n';
  }
}

inline void write_topic_report_csv(const TopicReport& report,
                                   const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  write_topic_report_csv(report, out);
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// GEXF 1.2, directed, one node per member (label = word, float attribute
// "bc") and one edge per induced edge (float attribute "multiplicity").
// Every member must have an entry in `bc`.
inline void export_gexf(const Subgraph& sub, const CentralityTable& bc, std::ostream& out) {
  const WordGraph& g = sub.graph;
  for (const std::string& word : g.words())
    if (!bc.find(word))
      throw DataError("no centrality entry for subgraph member \"" + word + "\"");

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
  out << "  <graph mode=\"static\" defaultedgetype=\"directed\">\n";
  out << "    <attributes class=\"node\">\n";
  out << "      <attribute id=\"0\" title=\"bc\" type=\"float\"/>\n";
  out << "    </attributes>\n";
  out << "    <attributes class=\"edge\">\n";
  out << "      <attribute id=\"0\" title=\"multiplicity\" type=\"float\"/>\n";
  out << "    </attributes>\n";
  out << "    <nodes>\n";
  for (NodeId id = 0; id < g.node_count(); ++id) {
    out << "      <node id=\"" << id << "\" label=\"" << xml_escape(g.word(id)) << "\">\n";
    out << "        <attvalues><attvalue for=\"0\" value=\""
        << csv::format_significant(bc.at(g.word(id)).bc) << "\"/></attvalues>\n";
    out << "      </node>\n";
  }
  out << "    </nodes>\n";
  out << "    <edges>\n";
  std::size_t edge_id = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const Arc& arc : g.out(u)) {
      out << "      <edge id=\"" << edge_id++ << "\" source=\"" << u << "\" target=\""
          << arc.node << "\">\n";
      out << "        <attvalues><attvalue for=\"0\" value=\"" << arc.multiplicity
          << "\"/></attvalues>\n";
      out << "      </edge>\n";
    }
  }
  out << "    </edges>\n";
  out << "  </graph>\n";
  out << "</gexf>\n";
}

inline void export_gexf(const Subgraph& sub, const CentralityTable& bc,
                        const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  export_gexf(sub, bc, out);
}

}  // namespace kwgraph
