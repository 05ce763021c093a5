#pragma once

#include <map>
#include <optional>
#include <memory>
#include <string>
#include <vector>

#include "bei/graph.hpp"

namespace bei {

/// Adds a pendant vertex labeled max_label()+1 adjacent only to v.
Graph add_whisker(const Graph& g, Vertex v);

/// The block with whiskers B̄^W: the block, the full branches hanging off its
/// cut vertices outside W, and a whisker at each cut vertex in W. Whisker
/// labels are allocated above g's largest label in ascending order of W.
/// Throws GraphError if `block` is not a block of g or W contains a vertex
/// that is not a cut vertex of g inside the block.
Graph block_with_whiskers(const Graph& g, const VertexSet& block, const VertexSet& w);

/// B̄: whiskers at every cut vertex of g lying in the block.
Graph block_with_whiskers(const Graph& g, const VertexSet& block);

/// K_m ⋆_r K_n on x_i = i (1..m) and y_i = m+i (1..n), with the matching
/// x_i y_i for i <= r. Throws GraphError unless 1 <= r <= min(m, n).
Graph star_product(int m, int n, int r);

/// star_product plus whiskers at x_2..x_r and then y_2..y_r, labeled from
/// m+n+1 upward.
Graph whiskered_star_product(int m, int n, int r);

/// Union of g1 and g2 with w renamed to v. All other labels are kept and must
/// not collide.
Graph glue(const Graph& g1, Vertex v, const Graph& g2, Vertex w);

/// The two sides G[C_1 ∪ {v}] and G[C_2 ∪ {v}] of a cut vertex v whose
/// deletion leaves exactly two components; nullopt otherwise.
std::optional<std::pair<Graph, Graph>> split_at(const Graph& g, Vertex v);

/// Shifts every label of g by `offset`.
Graph shift_labels(const Graph& g, Vertex offset);

/// The named figure graphs: fig1a_G, fig1b_H, fig2a_L, fig2b_F, fig3, fig4,
/// fig5.
const std::map<std::string, Graph>& reference_corpus();
/// Looks up a corpus graph by name; throws GraphError for unknown names.
const Graph& corpus_graph(const std::string& name);

enum class RecipeKind { whisker, block_whiskers, star, whiskered_star, glue, corpus };

/// Declarative description of a build. Replaying it always yields the same
/// labeled graph.
struct ConstructionRecipe {
  RecipeKind kind = RecipeKind::corpus;
  std::shared_ptr<const ConstructionRecipe> base;
  std::shared_ptr<const ConstructionRecipe> other;
  /// whisker: {v}; glue: {v, w}.
  std::vector<Vertex> at;
  VertexSet block;
  VertexSet whiskers;
  int m = 0, n = 0, r = 0;
  std::string name;

  static ConstructionRecipe corpus(std::string name);
  static ConstructionRecipe star(int m, int n, int r, bool whiskered);
  static ConstructionRecipe whisker(ConstructionRecipe base, Vertex v);
  static ConstructionRecipe block_whiskers(ConstructionRecipe base, VertexSet block, VertexSet w);
  static ConstructionRecipe glue(ConstructionRecipe left, Vertex v, ConstructionRecipe right, Vertex w);

  Graph build() const;
};

}  // namespace bei
