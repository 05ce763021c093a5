#include "bei/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bei {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

Vertex parse_label(std::string_view token, std::size_t line) {
  Vertex value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a vertex label, got '" + std::string(token) + "'");
  }
  if (value < 1) throw ParseError(line, "vertex labels must be positive, got " + std::string(token));
  return value;
}

template <class F>
void for_each_line(std::string_view text, F f) {
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    f(line, text.substr(pos, end - pos));
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Edge lists

EdgeListDocument parse_edge_list(std::string_view text) {
  EdgeListDocument doc;
  std::vector<Vertex> vertices;
  std::set<Edge> edges;
  std::optional<Vertex> declared;

  auto check_declared = [&](Vertex v, std::size_t line) {
    if (declared && v > *declared) {
      throw ParseError(line, "vertex " + std::to_string(v) + " exceeds the declared count " +
                                 std::to_string(*declared));
    }
  };

  for_each_line(text, [&](std::size_t line, std::string_view raw) {
    auto content = raw.substr(0, raw.find('#'));
    auto tokens = split_ws(trim(content));
    if (tokens.empty()) return;
    if (tokens[0] == "n") {
      if (tokens.size() != 2) throw ParseError(line, "header must be 'n <count>'");
      if (declared) throw ParseError(line, "duplicate vertex-count header");
      if (!vertices.empty() || !edges.empty()) {
        throw ParseError(line, "the vertex-count header must precede all vertices and edges");
      }
      Vertex n = 0;
      auto t = tokens[1];
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
      if (ec != std::errc() || ptr != t.data() + t.size() || n < 0) {
        throw ParseError(line, "bad vertex count '" + std::string(t) + "'");
      }
      declared = n;
      for (Vertex v = 1; v <= n; ++v) vertices.push_back(v);
      return;
    }
    if (tokens.size() > 2) throw ParseError(line, "expected 'u v' or a single vertex");
    const Vertex u = parse_label(tokens[0], line);
    check_declared(u, line);
    if (tokens.size() == 1) {
      vertices.push_back(u);
      return;
    }
    const Vertex v = parse_label(tokens[1], line);
    check_declared(v, line);
    if (u == v) throw ParseError(line, "self-loop at vertex " + std::to_string(u));
    if (!edges.insert(Edge::normalized(u, v)).second) {
      doc.warnings.push_back({line, "duplicate edge " + std::to_string(u) + " " +
                                        std::to_string(v) + " ignored"});
    }
    vertices.push_back(u);
    vertices.push_back(v);
  });
  std::vector<Edge> edge_list(edges.begin(), edges.end());
  doc.graph = Graph(vertices, edge_list);
  return doc;
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  for (auto v : g.vertices()) {
    if (g.degree(v) == 0) out << v << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// graph6

Graph parse_graph6_record(std::string_view record) {
  for (char ch : record) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 63 || c > 126) {
      throw ParseError(0, "graph6: byte " + std::to_string(c) + " outside 63..126");
    }
  }
  if (record.empty()) throw ParseError(0, "graph6: empty record");
  auto value = [&](std::size_t i) { return static_cast<std::uint64_t>(record[i] - 63); };

  std::uint64_t n = 0;
  std::size_t pos = 0;
  if (record[0] != '~') {
    n = value(0);
    pos = 1;
  } else if (record.size() >= 2 && record[1] != '~') {
    if (record.size() < 4) throw ParseError(0, "graph6: truncated size field");
    n = (value(1) << 12) | (value(2) << 6) | value(3);
    pos = 4;
  } else {
    if (record.size() < 8) throw ParseError(0, "graph6: truncated size field");
    for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | value(i);
    pos = 8;
  }
  if (n > 100'000) throw ParseError(0, "graph6: " + std::to_string(n) + " vertices is too many");

  const std::uint64_t bits = n * (n - 1) / 2;
  const std::uint64_t bytes = (bits + 5) / 6;
  if (record.size() - pos < bytes) throw ParseError(0, "graph6: truncated adjacency data");
  if (record.size() - pos > bytes) throw ParseError(0, "graph6: trailing bytes after adjacency data");

  std::vector<Vertex> vs(n);
  for (std::uint64_t i = 0; i < n; ++i) vs[i] = static_cast<Vertex>(i + 1);
  std::vector<Edge> es;
  std::uint64_t k = 0;
  for (std::uint64_t j = 1; j < n; ++j) {
    for (std::uint64_t i = 0; i < j; ++i, ++k) {
      if ((value(pos + k / 6) >> (5 - k % 6)) & 1u) {
        es.push_back({static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1)});
      }
    }
  }
  return Graph(vs, es);
}

std::vector<Graph> parse_graph6(std::string_view text) {
  std::vector<Graph> out;
  for_each_line(text, [&](std::size_t line, std::string_view raw) {
    auto record = trim(raw);
    constexpr std::string_view header = ">>graph6<<";
    if (record.starts_with(header)) record.remove_prefix(header.size());
    if (record.empty()) return;
    try {
      out.push_back(parse_graph6_record(record));
    } catch (const ParseError& e) {
      throw ParseError(line, e.what());
    }
  });
  return out;
}

std::string encode_graph6(const Graph& g) {
  const std::uint64_t n = g.order();
  std::string out;
  auto put = [&out](std::uint64_t v) { out.push_back(static_cast<char>(v + 63)); };
  if (n <= 62) {
    put(n);
  } else if (n <= 258'047) {
    out.push_back('~');
    put((n >> 12) & 63);
    put((n >> 6) & 63);
    put(n & 63);
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) put((n >> shift) & 63);
  }
  std::uint64_t acc = 0;
  int filled = 0;
  for (std::uint64_t j = 1; j < n; ++j) {
    for (std::uint64_t i = 0; i < j; ++i) {
      const bool bit = std::binary_search(g.neighbor_indices(j).begin(),
                                          g.neighbor_indices(j).end(), static_cast<std::uint32_t>(i));
      acc = (acc << 1) | (bit ? 1u : 0u);
      if (++filled == 6) {
        put(acc);
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled) put(acc << (6 - filled));
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Graph> read_graph6_file(const std::string& path) {
  return parse_graph6(read_text_file(path));
}

Graph load_graph(const std::string& path, GraphFormat format, std::vector<ParseWarning>* warnings) {
  const auto text = read_text_file(path);
  if (format == GraphFormat::graph6) {
    auto graphs = parse_graph6(text);
    if (graphs.size() != 1) {
      throw ParseError(0, path + " holds " + std::to_string(graphs.size()) +
                              " graph6 records, expected exactly one");
    }
    return std::move(graphs.front());
  }
  auto doc = parse_edge_list(text);
  if (warnings) *warnings = std::move(doc.warnings);
  return std::move(doc.graph);
}

// ---------------------------------------------------------------------------
// JSON

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

Json graph_summary_json(const Graph& g) {
  const auto decomposition = blocks(g);
  return {
      {"n", g.order()},
      {"m", g.size()},
      {"components", connected_components(g)},
      {"cut_vertices", decomposition.cut_vertices},
      {"blocks", decomposition.blocks},
      {"free_vertices", free_vertices(g)},
  };
}

Json cutset_json(const CutSet& c) {
  return {{"members", c.members}, {"components", c.component_count}};
}

namespace {

Json counts_by_size(const std::vector<std::size_t>& sizes) {
  std::map<std::size_t, std::size_t> counts;
  for (auto s : sizes) ++counts[s];
  Json out = Json::object();
  for (auto [size, count] : counts) out[std::to_string(size)] = count;
  return out;
}

}  // namespace

Json family_json(const CutSetFamily& family, bool full) {
  Json out = {{"count", family.size()}};
  if (full || family.size() <= kFamilyElisionThreshold) {
    Json list = Json::array();
    for (const auto& c : family.cutsets()) list.push_back(cutset_json(c));
    out["cutsets"] = std::move(list);
  } else {
    std::vector<std::size_t> sizes;
    for (const auto& c : family.cutsets()) sizes.push_back(c.members.size());
    out["counts_by_size"] = counts_by_size(sizes);
    out["elided"] = true;
  }
  return out;
}

Json decomposition_json(const DecompositionReport& report, bool full) {
  Json out = {
      {"prime_count", report.components.size()},
      {"min_height", report.min_height},
      {"max_height", report.max_height},
      {"unmixed", report.unmixed},
      {"witness", report.witness ? cutset_json(*report.witness) : Json(nullptr)},
  };
  if (full || report.components.size() <= kFamilyElisionThreshold) {
    Json rows = Json::array();
    for (const auto& p : report.components) {
      rows.push_back({{"killed", p.killed},
                      {"components", p.clique_supports.size()},
                      {"clique_supports", p.clique_supports},
                      {"height", p.height}});
    }
    out["primes"] = std::move(rows);
  } else {
    std::vector<std::size_t> sizes;
    for (const auto& p : report.components) sizes.push_back(p.killed.size());
    out["counts_by_size"] = counts_by_size(sizes);
    out["elided"] = true;
  }
  return out;
}

Json accessibility_json(const AccessibilityCertificate& cert, bool full) {
  Json out = {
      {"accessible", cert.verdict},
      {"unmixed_witness", cert.unmixed_witness ? cutset_json(*cert.unmixed_witness) : Json(nullptr)},
      {"stuck", cert.stuck ? Json(*cert.stuck) : Json(nullptr)},
      {"step_count", cert.steps.size()},
  };
  if (full || cert.steps.size() <= kFamilyElisionThreshold) {
    Json steps = Json::array();
    for (const auto& s : cert.steps) steps.push_back({{"cutset", s.cutset}, {"removed", s.removed}});
    out["steps"] = std::move(steps);
  }
  return out;
}

namespace {

Json su_node_json(const SuNode& node, bool with_graph) {
  Json out = {{"kind", to_string(node.kind)}, {"verdict", node.verdict}};
  if (node.pivot) out["pivot"] = *node.pivot;
  if (node.witness) out["witness"] = cutset_json(*node.witness);
  if (!node.children.empty()) out["children"] = node.children;
  if (!node.refutations.empty()) {
    Json refs = Json::array();
    for (const auto& r : node.refutations) refs.push_back({{"pivot", r.pivot}, {"child", r.child}});
    out["refutations"] = std::move(refs);
  }
  if (with_graph) out["graph"] = graph_json(node.graph);
  return out;
}

}  // namespace

Json strongly_unmixed_json(const StronglyUnmixedTrace& trace, bool full) {
  Json out = {{"strongly_unmixed", trace.verdict}, {"node_count", trace.nodes.size()}};
  if (trace.nodes.empty()) return out;
  out["root"] = su_node_json(trace.nodes[trace.root], false);
  if (full) {
    Json nodes = Json::array();
    for (const auto& n : trace.nodes) nodes.push_back(su_node_json(n, true));
    out["nodes"] = std::move(nodes);
  }
  return out;
}

Json block_class_json(const BlockClassification& b) {
  Json out = {{"block", b.block}, {"class", to_string(b.kind)}, {"whiskered", graph_json(b.whiskered)}};
  if (b.star) {
    Json matching = Json::array();
    for (const auto& e : b.star->matching) matching.push_back({e.u, e.v});
    out["star"] = {{"x", b.star->x}, {"y", b.star->y}, {"matching", std::move(matching)}};
  }
  if (b.traceability_unknown) out["traceability_unknown"] = true;
  return out;
}

Json cm_json(const CmVerdict& verdict) {
  Json blocks_out = Json::array();
  for (const auto& b : verdict.blocks) blocks_out.push_back(block_class_json(b));
  return {{"status", to_string(verdict.status)}, {"reasons", verdict.reasons}, {"blocks", std::move(blocks_out)}};
}

namespace {

Json violation_json(const Violation& v) {
  Json out = {
      {"graph_name", v.graph_name},
      {"graph", graph_json(v.graph)},
      {"property", v.property},
      {"expected", v.expected},
      {"got", v.got},
  };
  if (v.accessibility) out["accessibility"] = accessibility_json(*v.accessibility, true);
  if (v.strongly_unmixed) out["strongly_unmixed"] = strongly_unmixed_json(*v.strongly_unmixed, true);
  return out;
}

}  // namespace

Json suite_json(const SuiteReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(violation_json(v));
  Json candidates = Json::array();
  for (const auto& v : report.candidates) candidates.push_back(violation_json(v));
  Json skips = Json::array();
  for (const auto& s : report.skips) skips.push_back(
        {{"graph_name", s.graph_name}, {"reason", s.reason}, {"budget_exceeded", s.budget_exceeded}});
  Json constructed = Json::array();
  for (const auto& c : report.constructed) constructed.push_back({{"name", c.name}, {"graph", graph_json(c.graph)}});
  return {
      {"suite", report.suite},
      {"examined", report.examined},
      {"passed", report.passed()},
      {"violations", std::move(violations)},
      {"candidates", std::move(candidates)},
      {"skips", std::move(skips)},
      {"constructed", std::move(constructed)},
  };
}

}  // namespace bei
