#include <doctest.h>

#include <random>

#include "bei/constructors.hpp"
#include "bei/io.hpp"
#include "oracle.hpp"

using namespace bei;

namespace {

const std::string data_dir = BEI_DATA_DIR;

/// Straight transcription of the graph6 layout for n <= 62, used as a
/// cross-check on the library decoder.
std::vector<Edge> decode_small(const std::string& s) {
  const int n = s[0] - 63;
  std::vector<int> bits;
  for (std::size_t i = 1; i < s.size(); ++i) {
    for (int b = 5; b >= 0; --b) bits.push_back(((s[i] - 63) >> b) & 1);
  }
  std::vector<Edge> es;
  int k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (bits[k++]) es.push_back({i + 1, j + 1});
    }
  }
  std::sort(es.begin(), es.end());
  return es;
}

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_edge_list(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("edge list parsing") {
  const auto doc = parse_edge_list("1 2\n2 3");
  CHECK(doc.graph == Graph::from_edges({{1, 2}, {2, 3}}));
  CHECK(doc.warnings.empty());

  const auto commented = parse_edge_list("# a path\nn 5\n1 2  # first edge\n\n 2   3 \n");
  CHECK(commented.graph.vertices() == VertexSet{1, 2, 3, 4, 5});
  CHECK(commented.graph.size() == 2);

  const auto lonely = parse_edge_list("1 2\n7\n");
  CHECK(lonely.graph.vertices() == VertexSet{1, 2, 7});

  const auto dup = parse_edge_list("1 2\n2 1\n");
  CHECK(dup.graph.size() == 1);
  REQUIRE(dup.warnings.size() == 1);
  CHECK(dup.warnings[0].line == 2);
}

TEST_CASE("edge list errors carry line numbers") {
  CHECK(parse_error_line("1 2\n1 1\n") == 2);
  CHECK(parse_error_line("1 2\n2 x\n") == 2);
  CHECK(parse_error_line("1 2 3\n") == 1);
  CHECK(parse_error_line("\n\n0 4\n") == 3);
  CHECK(parse_error_line("-1 4\n") == 1);
  CHECK(parse_error_line("n 3\n1 4\n") == 2);
  CHECK(parse_error_line("1 2\nn 3\n") == 2);
  CHECK(parse_error_line("n 3\nn 3\n") == 2);
  CHECK(parse_error_line("n three\n") == 1);
  CHECK_THROWS_WITH_AS(parse_edge_list("1 1"), "line 1: self-loop at vertex 1", ParseError);
}

TEST_CASE("edge list round trip") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_graph(rng, 1 + trial % 12, 0.3);
    const auto text = serialize_edge_list(g);
    CHECK(parse_edge_list(text).graph == g);
    CHECK(serialize_edge_list(parse_edge_list(text).graph) == text);
  }
  CHECK(serialize_edge_list(Graph({1, 2, 3}, {{2, 3}})) == "2 3\n1\n");
}

TEST_CASE("fixture files match the corpus") {
  for (const auto& [name, g] : reference_corpus()) {
    INFO(name);
    std::vector<ParseWarning> warnings;
    CHECK(load_graph(data_dir + "/" + name + ".edges", GraphFormat::edgelist, &warnings) == g);
    CHECK(warnings.empty());
  }
  CHECK_THROWS_AS(read_text_file(data_dir + "/missing.edges"), ParseError);
}

TEST_CASE("graph6 frozen cases") {
  CHECK(parse_graph6_record("@") == Graph({1}, {}));
  CHECK(parse_graph6_record("A_") == Graph::from_edges({{1, 2}}));
  CHECK(parse_graph6_record("A?") == Graph({1, 2}, {}));
  CHECK(parse_graph6_record("D?{") == Graph::from_edges({{1, 5}, {2, 5}, {3, 5}, {4, 5}}));
  CHECK(parse_graph6_record("DQc") == Graph::from_edges({{1, 3}, {1, 5}, {2, 4}, {4, 5}}));
  CHECK(parse_graph6_record("E?Bw") ==
        Graph::from_edges({{1, 6}, {2, 6}, {3, 6}, {4, 6}, {5, 6}}));
  CHECK(parse_graph6_record("?") == Graph());

  std::vector<Vertex> vs(64);
  for (int i = 0; i < 64; ++i) vs[i] = i + 1;
  const auto sparse64 = Graph(vs, std::vector<Edge>{{1, 64}});
  const auto encoded = encode_graph6(sparse64);
  CHECK(encoded.substr(0, 4) == "~?@?");
  CHECK(parse_graph6_record(encoded) == sparse64);
}

TEST_CASE("graph6 agrees with an independent decoder on five vertices") {
  for (std::uint32_t mask = 0; mask < (1u << 10); mask += 7) {
    std::string record = "D";
    record.push_back(static_cast<char>(63 + ((mask >> 4) & 63)));
    record.push_back(static_cast<char>(63 + ((mask & 15) << 2)));
    const auto g = parse_graph6_record(record);
    CHECK(g.order() == 5);
    CHECK(g.edges() == decode_small(record));
    CHECK(encode_graph6(g) == record);
  }
}

TEST_CASE("graph6 round trip") {
  std::mt19937_64 rng(67);
  std::string batch = ">>graph6<<";
  std::vector<Graph> expected;
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = oracle::random_graph(rng, 1 + trial % 12, (trial % 5 + 1) / 6.0);
    const auto code = encode_graph6(g);
    CHECK(parse_graph6_record(code) == g);
    batch += code + "\n";
    expected.push_back(g);
  }
  CHECK(parse_graph6(batch) == expected);
  const auto relabeled = shift_labels(Graph::from_edges({{1, 2}, {2, 3}}), 10);
  CHECK(parse_graph6_record(encode_graph6(relabeled)) == Graph::from_edges({{1, 2}, {2, 3}}));
}

TEST_CASE("graph6 errors") {
  CHECK_THROWS_AS(parse_graph6_record("D?"), ParseError);
  CHECK_THROWS_AS(parse_graph6_record("D?{?"), ParseError);
  CHECK_THROWS_AS(parse_graph6_record("D ?{"), ParseError);
  CHECK_THROWS_AS(parse_graph6_record("~?"), ParseError);
  CHECK_THROWS_AS(parse_graph6_record(std::string("D?\x7f")), ParseError);
  try {
    parse_graph6("A_\n@\nD?\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(load_graph(data_dir + "/connected7.g6", GraphFormat::graph6), ParseError);
}

TEST_CASE("JSON reports are deterministic") {
  const auto& g = corpus_graph("fig3");
  const auto a = graph_summary_json(g).dump();
  CHECK(a == graph_summary_json(g).dump());
  const auto fam = family_json(enumerate_cutsets(g), false);
  CHECK(fam.at("count") == 17);
  CHECK(fam.at("cutsets").size() == 17);
  CHECK(fam.at("cutsets")[16].at("members") == Json::array({1, 3, 4, 7}));
  CHECK(fam.dump() == family_json(enumerate_cutsets(g), false).dump());

  const auto trace = is_strongly_unmixed(g);
  CHECK(strongly_unmixed_json(trace, true).dump() == strongly_unmixed_json(is_strongly_unmixed(g), true).dump());
  CHECK(accessibility_json(is_accessible(g), true).at("accessible") == true);
  CHECK(cm_json(cm_verdict(corpus_graph("fig2a_L"))).at("status") == "NOT_CM");

  const auto parsed = Json::parse(graph_json(g).dump());
  CHECK(parsed.at("vertices").size() == 10);
  CHECK(parsed.at("edges").size() == 15);
}

TEST_CASE("large families are summarized") {
  Graph many;
  for (int i = 0; i < 14; ++i) {
    many = graph_union(many, Graph::from_edges({{3 * i + 1, 3 * i + 2}, {3 * i + 2, 3 * i + 3}}));
  }
  const auto family = enumerate_cutsets(many);
  REQUIRE(family.size() == 16384);
  const auto brief = family_json(family, false);
  CHECK(brief.at("elided") == true);
  CHECK(brief.at("counts_by_size").at("7") == 3432);
  CHECK_FALSE(brief.contains("cutsets"));
  CHECK(family_json(family, true).at("cutsets").size() == 16384);
}
