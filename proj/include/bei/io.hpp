#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bei/cutsets.hpp"
#include "bei/harness.hpp"
#include "bei/properties.hpp"

namespace bei {

/// Malformed input; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseWarning {
  std::size_t line = 0;
  std::string message;
};

struct EdgeListDocument {
  Graph graph;
  std::vector<ParseWarning> warnings;
};

/// Edge-list text: '#' starts a comment, "n N" declares vertices 1..N, a line
/// "u v" is an edge and a line "v" an isolated vertex. Labels are positive.
/// Duplicate edges are merged with a warning; self-loops are errors.
EdgeListDocument parse_edge_list(std::string_view text);

/// Sorted "u v" lines, then one line per isolated vertex.
std::string serialize_edge_list(const Graph& g);

/// One graph6 record (no newline). Vertices are labeled 1..n.
Graph parse_graph6_record(std::string_view record);
/// One record per line; blank lines and a leading ">>graph6<<" are ignored.
std::vector<Graph> parse_graph6(std::string_view text);
/// Encodes with vertices numbered by ascending label.
std::string encode_graph6(const Graph& g);

std::string read_text_file(const std::string& path);
std::vector<Graph> read_graph6_file(const std::string& path);

enum class GraphFormat { edgelist, graph6 };

/// Loads a single graph; for graph6 the file must hold exactly one record.
Graph load_graph(const std::string& path, GraphFormat format,
                 std::vector<ParseWarning>* warnings = nullptr);

// ---------------------------------------------------------------------------
// JSON reports. Objects use sorted keys, so dumps are byte-stable.

using Json = nlohmann::json;

/// Families larger than this are summarized as counts per size.
inline constexpr std::size_t kFamilyElisionThreshold = 10'000;

Json graph_json(const Graph& g);
Json graph_summary_json(const Graph& g);
Json cutset_json(const CutSet& c);
Json family_json(const CutSetFamily& family, bool full);
Json decomposition_json(const DecompositionReport& report, bool full);
Json accessibility_json(const AccessibilityCertificate& certificate, bool full);
/// With `full`, every node with its graph; otherwise the root decision only.
Json strongly_unmixed_json(const StronglyUnmixedTrace& trace, bool full);
Json block_class_json(const BlockClassification& b);
Json cm_json(const CmVerdict& verdict);
Json suite_json(const SuiteReport& report);

}  // namespace bei
