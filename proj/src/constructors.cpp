#include "bei/constructors.hpp"

#include <algorithm>

namespace bei {

namespace {

Graph with_edges(const Graph& g, const std::vector<Vertex>& extra_vertices,
                 const std::vector<Edge>& extra_edges) {
  auto vs = g.vertices();
  vs.insert(vs.end(), extra_vertices.begin(), extra_vertices.end());
  auto es = g.edges();
  es.insert(es.end(), extra_edges.begin(), extra_edges.end());
  return Graph(vs, es);
}

Vertex next_label(const Graph& g) { return g.empty() ? 1 : g.max_label() + 1; }

}  // namespace

Graph add_whisker(const Graph& g, Vertex v) {
  g.index_of(v);
  const Vertex f = next_label(g);
  return with_edges(g, {f}, {Edge{v, f}});
}

Graph block_with_whiskers(const Graph& g, const VertexSet& block, const VertexSet& w) {
  const auto decomposition = blocks(g);
  const auto target = make_set(block);
  if (std::find(decomposition.blocks.begin(), decomposition.blocks.end(), target) ==
      decomposition.blocks.end()) {
    throw GraphError("not a block of the graph: " + to_string(target));
  }
  const auto inner_cuts = set_intersection(target, decomposition.cut_vertices);
  const auto chosen = make_set(w);
  if (!is_subset(chosen, inner_cuts)) {
    throw GraphError("whisker set " + to_string(chosen) + " is not among the block's cut vertices " +
                     to_string(inner_cuts));
  }

  VertexSet keep = target;
  for (auto v : set_difference(inner_cuts, chosen)) {
    // The branch at v: components of g \ v that avoid the block.
    for (const auto& part : connected_components(delete_vertex(g, v))) {
      if (set_intersection(part, target).empty()) keep = set_union(keep, part);
    }
  }
  auto core = induced_subgraph(g, keep);
  std::vector<Vertex> fresh;
  std::vector<Edge> pendant;
  Vertex label = next_label(g);
  for (auto v : chosen) {
    fresh.push_back(label);
    pendant.push_back(Edge{v, label});
    ++label;
  }
  return with_edges(core, fresh, pendant);
}

Graph block_with_whiskers(const Graph& g, const VertexSet& block) {
  return block_with_whiskers(g, block, set_intersection(make_set(block), cut_vertices(g)));
}

Graph star_product(int m, int n, int r) {
  if (m < 1 || n < 1 || r < 1 || r > std::min(m, n)) {
    throw GraphError("star product needs 1 <= r <= min(m, n), got m=" + std::to_string(m) +
                     " n=" + std::to_string(n) + " r=" + std::to_string(r));
  }
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (int i = 1; i <= m + n; ++i) vs.push_back(i);
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) es.push_back({i, j});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) es.push_back({m + i, m + j});
  }
  for (int i = 1; i <= r; ++i) es.push_back({i, m + i});
  return Graph(vs, es);
}

Graph whiskered_star_product(int m, int n, int r) {
  auto g = star_product(m, n, r);
  std::vector<Vertex> fresh;
  std::vector<Edge> pendant;
  Vertex label = m + n + 1;
  for (int side = 0; side < 2; ++side) {
    for (int i = 2; i <= r; ++i) {
      const Vertex anchor = side == 0 ? i : m + i;
      fresh.push_back(label);
      pendant.push_back({anchor, label});
      ++label;
    }
  }
  return with_edges(g, fresh, pendant);
}

Graph glue(const Graph& g1, Vertex v, const Graph& g2, Vertex w) {
  g1.index_of(v);
  g2.index_of(w);
  auto renamed = relabel(g2, [v, w](Vertex x) { return x == w ? v : x; });
  const auto shared = set_intersection(g1.vertices(), renamed.vertices());
  if (shared != VertexSet{v}) {
    throw GraphError("glue: labels collide outside the identified vertex: " +
                     to_string(set_difference(shared, VertexSet{v})));
  }
  return graph_union(g1, renamed);
}

std::optional<std::pair<Graph, Graph>> split_at(const Graph& g, Vertex v) {
  const auto parts = connected_components(delete_vertex(g, v));
  if (parts.size() != 2) return std::nullopt;
  return std::make_pair(induced_subgraph(g, set_union(parts[0], VertexSet{v})),
                        induced_subgraph(g, set_union(parts[1], VertexSet{v})));
}

Graph shift_labels(const Graph& g, Vertex offset) {
  return relabel(g, [offset](Vertex x) { return x + offset; });
}

const std::map<std::string, Graph>& reference_corpus() {
  static const std::map<std::string, Graph> corpus = [] {
    std::map<std::string, Graph> c;
    c.emplace("fig1a_G", Graph::from_edges({{1, 3}, {1, 4}, {1, 7}, {2, 3}, {2, 4}, {2, 6},
                                            {2, 8}, {3, 5}, {3, 6}, {3, 9}, {4, 5}, {5, 6}}));
    c.emplace("fig1b_H", Graph::from_edges({{1, 2}, {1, 4}, {2, 3}, {3, 4}, {3, 5}, {4, 6}}));
    c.emplace("fig2a_L",
              Graph::from_edges({{1, 7}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {2, 6}, {2, 8}, {3, 5},
                                 {3, 6}, {3, 9}, {4, 5}, {5, 6}, {7, 10}, {10, 11}, {1, 11},
                                 {11, 12}}));
    c.emplace("fig2b_F",
              Graph::from_edges({{1, 7}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {2, 6}, {2, 8}, {3, 5},
                                 {3, 6}, {3, 9}, {4, 5}, {5, 6}, {9, 10}, {10, 11}, {3, 11},
                                 {9, 12}}));
    c.emplace("fig3", Graph::from_edges({{1, 2}, {1, 5}, {1, 4}, {1, 8}, {2, 3}, {2, 4}, {2, 7},
                                         {2, 9}, {3, 5}, {3, 6}, {3, 7}, {3, 10}, {4, 5}, {5, 7},
                                         {6, 7}}));
    c.emplace("fig4", Graph::from_edges({{1, 2}, {1, 3}, {1, 7}, {1, 4}, {2, 3}, {2, 9}, {2, 5},
                                         {3, 6}, {4, 5}, {4, 6}, {5, 6}, {5, 10}, {4, 8}}));
    c.emplace("fig5",
              Graph::from_edges({{1, 2},   {2, 3},   {2, 5},   {3, 4},   {4, 5},   {5, 6},
                                 {5, 7},   {5, 10},  {6, 10},  {6, 7},   {7, 9},   {7, 13},
                                 {8, 9},   {8, 13},  {9, 10},  {9, 13},  {10, 11}, {10, 12},
                                 {10, 13}, {11, 12}, {13, 14}, {13, 17}, {14, 15}, {15, 17},
                                 {13, 16}, {14, 16}, {17, 18}, {17, 20}, {17, 21}, {18, 19},
                                 {18, 21}, {18, 23}, {19, 20}, {19, 22}, {19, 24}, {20, 22},
                                 {20, 25}, {21, 22}}));
    return c;
  }();
  return corpus;
}

const Graph& corpus_graph(const std::string& name) {
  const auto& corpus = reference_corpus();
  auto it = corpus.find(name);
  if (it == corpus.end()) throw GraphError("unknown corpus graph: " + name);
  return it->second;
}

ConstructionRecipe ConstructionRecipe::corpus(std::string name) {
  ConstructionRecipe r;
  r.kind = RecipeKind::corpus;
  r.name = std::move(name);
  return r;
}

ConstructionRecipe ConstructionRecipe::star(int m, int n, int r, bool whiskered) {
  ConstructionRecipe out;
  out.kind = whiskered ? RecipeKind::whiskered_star : RecipeKind::star;
  out.m = m;
  out.n = n;
  out.r = r;
  return out;
}

ConstructionRecipe ConstructionRecipe::whisker(ConstructionRecipe base, Vertex v) {
  ConstructionRecipe out;
  out.kind = RecipeKind::whisker;
  out.base = std::make_shared<const ConstructionRecipe>(std::move(base));
  out.at = {v};
  return out;
}

ConstructionRecipe ConstructionRecipe::block_whiskers(ConstructionRecipe base, VertexSet block,
                                                      VertexSet w) {
  ConstructionRecipe out;
  out.kind = RecipeKind::block_whiskers;
  out.base = std::make_shared<const ConstructionRecipe>(std::move(base));
  out.block = make_set(std::move(block));
  out.whiskers = make_set(std::move(w));
  return out;
}

ConstructionRecipe ConstructionRecipe::glue(ConstructionRecipe left, Vertex v,
                                            ConstructionRecipe right, Vertex w) {
  ConstructionRecipe out;
  out.kind = RecipeKind::glue;
  out.base = std::make_shared<const ConstructionRecipe>(std::move(left));
  out.other = std::make_shared<const ConstructionRecipe>(std::move(right));
  out.at = {v, w};
  return out;
}

Graph ConstructionRecipe::build() const {
  switch (kind) {
    case RecipeKind::corpus:
      return corpus_graph(name);
    case RecipeKind::star:
      return star_product(m, n, r);
    case RecipeKind::whiskered_star:
      return whiskered_star_product(m, n, r);
    case RecipeKind::whisker:
      return add_whisker(base->build(), at.at(0));
    case RecipeKind::block_whiskers:
      return block_with_whiskers(base->build(), block, whiskers);
    case RecipeKind::glue:
      return bei::glue(base->build(), at.at(0), other->build(), at.at(1));
  }
  throw GraphError("unknown recipe kind");
}

}  // namespace bei
