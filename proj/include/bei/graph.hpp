#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bei {

using Vertex = int;

/// Sorted, duplicate-free list of vertex labels. Every function in this
/// library that returns a VertexSet returns it in canonical (ascending) order.
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  /// Orders the endpoints so that u < v.
  static Edge normalized(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  auto operator<=>(const Edge&) const = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact labeled identity of a graph (vertex labels plus sorted edge list).
/// Used as the memoization key: two graphs have equal keys iff they are equal
/// as labeled graphs.
class GraphKey {
 public:
  GraphKey() = default;
  explicit GraphKey(std::vector<std::int32_t> words);

  const std::vector<std::int32_t>& words() const { return words_; }
  std::size_t hash() const { return hash_; }

  bool operator==(const GraphKey& other) const {
    return hash_ == other.hash_ && words_ == other.words_;
  }
  auto operator<=>(const GraphKey& other) const { return words_ <=> other.words_; }

 private:
  std::vector<std::int32_t> words_;
  std::size_t hash_ = 0;
};

struct GraphKeyHash {
  std::size_t operator()(const GraphKey& k) const noexcept { return k.hash(); }
};

/// Immutable finite simple graph over arbitrary integer labels.
///
/// Vertices are kept in ascending label order and addressed internally by
/// their position in that order ("index"). Adjacency is stored as sorted
/// neighbor-index lists; graphs with at most 64 vertices additionally carry
/// one 64-bit neighbor mask per vertex so that subset enumeration can run on
/// machine words.
class Graph {
 public:
  static constexpr std::size_t kMaskLimit = 64;

  Graph() = default;

  /// Builds a graph on `vertices` (duplicates allowed, they are merged).
  /// Every edge endpoint must be listed in `vertices`. Parallel edges are
  /// merged; a self-loop throws GraphError.
  Graph(std::span<const Vertex> vertices, std::span<const Edge> edges);
  Graph(std::initializer_list<Vertex> vertices, std::initializer_list<Edge> edges);

  /// Graph whose vertex set is exactly the set of edge endpoints.
  static Graph from_edges(std::span<const Edge> edges);
  static Graph from_edges(std::initializer_list<Edge> edges);

  std::size_t order() const { return labels_.size(); }
  std::size_t size() const { return edge_count_; }
  bool empty() const { return labels_.empty(); }

  const VertexSet& vertices() const { return labels_; }
  bool has_vertex(Vertex v) const;
  bool adjacent(Vertex a, Vertex b) const;
  VertexSet neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return adj_[index_of(v)].size(); }
  Vertex max_label() const;

  /// All edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Position of `v` in vertices(); throws GraphError for unknown labels.
  std::size_t index_of(Vertex v) const;
  std::optional<std::size_t> find_index(Vertex v) const;
  Vertex label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::uint32_t>& neighbor_indices(std::size_t i) const { return adj_[i]; }

  bool has_masks() const { return !masks_.empty() || labels_.empty(); }
  std::uint64_t neighbor_mask(std::size_t i) const { return masks_[i]; }
  std::uint64_t full_mask() const;

  GraphKey key() const;

  bool operator==(const Graph& other) const;

 private:
  void build(std::vector<Vertex> vertices, std::vector<Edge> edges);

  VertexSet labels_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint64_t> masks_;
  std::size_t edge_count_ = 0;
};

/// Renders "{1,2,3}".
std::string to_string(std::span<const Vertex> set);
/// Renders the edge list "1-2 2-3 ..." (diagnostics only).
std::string to_string(const Graph& g);

VertexSet make_set(std::vector<Vertex> items);
bool contains(const VertexSet& set, Vertex v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);

// ---------------------------------------------------------------------------
// Structural primitives

/// Connected components, each sorted, ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);
std::size_t component_count(const Graph& g);
bool is_connected(const Graph& g);
bool is_complete(const Graph& g);

/// Articulation points, computed per connected component.
VertexSet cut_vertices(const Graph& g);

struct BlockDecomposition {
  /// Maximal 2-connected vertex sets, bridges, and isolated vertices, sorted
  /// by smallest member.
  std::vector<VertexSet> blocks;
  VertexSet cut_vertices;
  /// Graph on block indices 0..k-1; two blocks are adjacent iff they share a
  /// vertex.
  Graph block_graph;
};

BlockDecomposition blocks(const Graph& g);

bool is_free_vertex(const Graph& g, Vertex v);
VertexSet free_vertices(const Graph& g);

/// The graph G_v: N_G(v) completed into a clique. Labels are unchanged.
Graph clique_close(const Graph& g, Vertex v);

Graph induced_subgraph(const Graph& g, const VertexSet& keep);
/// G \ S. Throws GraphError if S names an unknown vertex.
Graph delete_vertices(const Graph& g, const VertexSet& remove);
Graph delete_vertex(const Graph& g, Vertex v);

/// Disjoint union / overlay: vertex and edge sets are merged.
Graph graph_union(const Graph& a, const Graph& b);

bool is_chordal(const Graph& g);

enum class Traceability { no, yes, unknown };

struct HamiltonianPathOptions {
  std::uint64_t node_budget = 10'000'000;
};

/// Backtracking search for a spanning path. Returns `unknown` when the search
/// exhausts its node budget.
Traceability has_hamiltonian_path(const Graph& g, HamiltonianPathOptions options = {});

/// If some cut vertex v is free on both sides of a two-way split at v, returns
/// the two sides (sharing v); the first such v in ascending order is used.
/// Returns nullopt for disconnected input.
std::optional<std::pair<Graph, Graph>> split_decomposable(const Graph& g);

/// Exact isomorphism test by degree-refined backtracking (desk-scale graphs).
bool are_isomorphic(const Graph& a, const Graph& b);

/// Copy of g with every label l replaced by mapping(l).
Graph relabel(const Graph& g, const std::function<Vertex(Vertex)>& mapping);

}  // namespace bei
