#include "bei/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace bei {

namespace {

constexpr std::uint32_t kNone = ~std::uint32_t{0};

std::size_t hash_words(const std::vector<std::int32_t>& words) {
  // FNV-1a over the 32-bit words.
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : words) {
    auto x = static_cast<std::uint32_t>(w);
    for (int b = 0; b < 4; ++b) {
      h ^= (x >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

}  // namespace

GraphKey::GraphKey(std::vector<std::int32_t> words)
    : words_(std::move(words)), hash_(hash_words(words_)) {}

// ---------------------------------------------------------------------------

Graph::Graph(std::span<const Vertex> vertices, std::span<const Edge> edges) {
  build({vertices.begin(), vertices.end()}, {edges.begin(), edges.end()});
}

Graph::Graph(std::initializer_list<Vertex> vertices, std::initializer_list<Edge> edges) {
  build(vertices, edges);
}

Graph Graph::from_edges(std::span<const Edge> edges) {
  std::vector<Vertex> vs;
  vs.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    vs.push_back(e.u);
    vs.push_back(e.v);
  }
  Graph g;
  g.build(std::move(vs), {edges.begin(), edges.end()});
  return g;
}

Graph Graph::from_edges(std::initializer_list<Edge> edges) {
  return from_edges(std::span<const Edge>(edges.begin(), edges.size()));
}

void Graph::build(std::vector<Vertex> vertices, std::vector<Edge> edges) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  labels_ = std::move(vertices);
  adj_.assign(labels_.size(), {});
  for (auto& e : edges) {
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    e = Edge::normalized(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& e : edges) {
    auto a = find_index(e.u);
    auto b = find_index(e.v);
    if (!a || !b) {
      throw GraphError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                       " uses a vertex outside the vertex set");
    }
    adj_[*a].push_back(static_cast<std::uint32_t>(*b));
    adj_[*b].push_back(static_cast<std::uint32_t>(*a));
  }
  for (auto& row : adj_) std::sort(row.begin(), row.end());
  edge_count_ = edges.size();
  masks_.clear();
  if (labels_.size() <= kMaskLimit) {
    masks_.assign(labels_.size(), 0);
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      for (auto j : adj_[i]) masks_[i] |= std::uint64_t{1} << j;
    }
  }
}

bool Graph::has_vertex(Vertex v) const { return find_index(v).has_value(); }

std::optional<std::size_t> Graph::find_index(Vertex v) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), v);
  if (it == labels_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Graph::index_of(Vertex v) const {
  if (auto i = find_index(v)) return *i;
  throw GraphError("unknown vertex " + std::to_string(v));
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  auto i = index_of(a);
  auto j = static_cast<std::uint32_t>(index_of(b));
  return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
}

VertexSet Graph::neighbors(Vertex v) const {
  VertexSet out;
  for (auto j : adj_[index_of(v)]) out.push_back(labels_[j]);
  return out;
}

Vertex Graph::max_label() const { return labels_.empty() ? 0 : labels_.back(); }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < adj_.size(); ++i) {
    for (auto j : adj_[i]) {
      if (j > i) out.push_back({labels_[i], labels_[j]});
    }
  }
  return out;
}

std::uint64_t Graph::full_mask() const {
  auto n = labels_.size();
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

GraphKey Graph::key() const {
  std::vector<std::int32_t> words;
  words.reserve(1 + labels_.size() + 2 * edge_count_);
  words.push_back(static_cast<std::int32_t>(labels_.size()));
  words.insert(words.end(), labels_.begin(), labels_.end());
  for (const auto& e : edges()) {
    words.push_back(e.u);
    words.push_back(e.v);
  }
  return GraphKey(std::move(words));
}

bool Graph::operator==(const Graph& other) const {
  return labels_ == other.labels_ && adj_ == other.adj_;
}

// ---------------------------------------------------------------------------

std::string to_string(std::span<const Vertex> set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set[i];
  os << '}';
  return os.str();
}

std::string to_string(const Graph& g) {
  std::ostringstream os;
  bool first = true;
  for (const auto& e : g.edges()) {
    os << (first ? "" : " ") << e.u << '-' << e.v;
    first = false;
  }
  for (auto v : g.vertices()) {
    if (g.degree(v) == 0) os << (first ? "" : " ") << v;
    first = false;
  }
  return os.str();
}

VertexSet make_set(std::vector<Vertex> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

bool contains(const VertexSet& set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------------------

namespace {

/// Component id per vertex index; returns the number of components.
std::size_t label_components(const Graph& g, std::vector<std::uint32_t>& comp) {
  const auto n = g.order();
  comp.assign(n, kNone);
  std::vector<std::uint32_t> stack;
  std::uint32_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != kNone) continue;
    comp[s] = next;
    stack.push_back(static_cast<std::uint32_t>(s));
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto y : g.neighbor_indices(x)) {
        if (comp[y] == kNone) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return next;
}

}  // namespace

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<std::uint32_t> comp;
  auto k = label_components(g, comp);
  std::vector<VertexSet> parts(k);
  for (std::size_t i = 0; i < g.order(); ++i) parts[comp[i]].push_back(g.label(i));
  return parts;
}

std::size_t component_count(const Graph& g) {
  std::vector<std::uint32_t> comp;
  return label_components(g, comp);
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

bool is_complete(const Graph& g) {
  auto n = g.order();
  return g.size() == n * (n - (n > 0 ? 1 : 0)) / 2;
}

namespace {

/// Iterative Hopcroft-Tarjan. Fills articulation flags and, when `blocks` is
/// non-null, the vertex sets of the biconnected components (bridges included,
/// isolated vertices excluded).
void biconnected(const Graph& g, std::vector<char>& articulation,
                 std::vector<std::vector<std::uint32_t>>* blocks) {
  const auto n = g.order();
  articulation.assign(n, 0);
  std::vector<std::uint32_t> disc(n, kNone), low(n, 0), parent(n, kNone);
  std::vector<std::size_t> next_edge(n, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_stack;
  std::vector<std::uint32_t> stack;
  std::uint32_t time = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (disc[root] != kNone) continue;
    disc[root] = low[root] = time++;
    std::size_t root_children = 0;
    stack.push_back(root);
    while (!stack.empty()) {
      auto x = stack.back();
      const auto& nb = g.neighbor_indices(x);
      if (next_edge[x] < nb.size()) {
        auto y = nb[next_edge[x]++];
        if (disc[y] == kNone) {
          parent[y] = x;
          disc[y] = low[y] = time++;
          edge_stack.emplace_back(x, y);
          stack.push_back(y);
          if (x == root) ++root_children;
        } else if (y != parent[x] && disc[y] < disc[x]) {
          low[x] = std::min(low[x], disc[y]);
          edge_stack.emplace_back(x, y);
        }
        continue;
      }
      stack.pop_back();
      auto p = parent[x];
      if (p == kNone) continue;
      low[p] = std::min(low[p], low[x]);
      if (low[x] >= disc[p]) {
        if (p != root) articulation[p] = 1;
        if (blocks) {
          std::vector<std::uint32_t> members;
          while (!edge_stack.empty()) {
            auto e = edge_stack.back();
            edge_stack.pop_back();
            members.push_back(e.first);
            members.push_back(e.second);
            if (e.first == p && e.second == x) break;
          }
          std::sort(members.begin(), members.end());
          members.erase(std::unique(members.begin(), members.end()), members.end());
          blocks->push_back(std::move(members));
        }
      }
    }
    if (root_children >= 2) articulation[root] = 1;
  }
}

}  // namespace

VertexSet cut_vertices(const Graph& g) {
  std::vector<char> art;
  biconnected(g, art, nullptr);
  VertexSet out;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (art[i]) out.push_back(g.label(i));
  }
  return out;
}

BlockDecomposition blocks(const Graph& g) {
  std::vector<char> art;
  std::vector<std::vector<std::uint32_t>> raw;
  biconnected(g, art, &raw);
  BlockDecomposition out;
  for (const auto& b : raw) {
    VertexSet s;
    for (auto i : b) s.push_back(g.label(i));
    out.blocks.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (g.neighbor_indices(i).empty()) out.blocks.push_back({g.label(i)});
    if (art[i]) out.cut_vertices.push_back(g.label(i));
  }
  std::sort(out.blocks.begin(), out.blocks.end());

  std::vector<Vertex> ids(out.blocks.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<Edge> shared;
  for (std::size_t a = 0; a < out.blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < out.blocks.size(); ++b) {
      if (!set_intersection(out.blocks[a], out.blocks[b]).empty()) {
        shared.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
      }
    }
  }
  out.block_graph = Graph(ids, shared);
  return out;
}

bool is_free_vertex(const Graph& g, Vertex v) {
  const auto& nb = g.neighbor_indices(g.index_of(v));
  for (std::size_t a = 0; a < nb.size(); ++a) {
    const auto& row = g.neighbor_indices(nb[a]);
    for (std::size_t b = a + 1; b < nb.size(); ++b) {
      if (!std::binary_search(row.begin(), row.end(), nb[b])) return false;
    }
  }
  return true;
}

VertexSet free_vertices(const Graph& g) {
  VertexSet out;
  for (auto v : g.vertices()) {
    if (is_free_vertex(g, v)) out.push_back(v);
  }
  return out;
}

Graph clique_close(const Graph& g, Vertex v) {
  auto nb = g.neighbors(v);
  auto edges = g.edges();
  for (std::size_t a = 0; a < nb.size(); ++a) {
    for (std::size_t b = a + 1; b < nb.size(); ++b) edges.push_back({nb[a], nb[b]});
  }
  return Graph(g.vertices(), edges);
}

Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
  std::vector<char> in(g.order(), 0);
  for (auto v : keep) in[g.index_of(v)] = 1;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (!in[i]) continue;
    for (auto j : g.neighbor_indices(i)) {
      if (j > i && in[j]) edges.push_back({g.label(i), g.label(j)});
    }
  }
  return Graph(keep, edges);
}

Graph delete_vertices(const Graph& g, const VertexSet& remove) {
  for (auto v : remove) g.index_of(v);
  return induced_subgraph(g, set_difference(g.vertices(), make_set(remove)));
}

Graph delete_vertex(const Graph& g, Vertex v) { return delete_vertices(g, {v}); }

Graph graph_union(const Graph& a, const Graph& b) {
  auto vs = set_union(a.vertices(), b.vertices());
  auto es = a.edges();
  auto eb = b.edges();
  es.insert(es.end(), eb.begin(), eb.end());
  return Graph(vs, es);
}

bool is_chordal(const Graph& g) {
  // Maximum cardinality search, then verify the reverse visit order is a
  // perfect elimination ordering.
  const auto n = g.order();
  std::vector<std::size_t> weight(n, 0), order;
  std::vector<char> visited(n, 0);
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!visited[i] && (best == n || weight[i] > weight[best])) best = i;
    }
    visited[best] = 1;
    order.push_back(best);
    for (auto j : g.neighbor_indices(best)) {
      if (!visited[j]) ++weight[j];
    }
  }
  // position in MCS order; a vertex's earlier-visited neighbors must form a
  // clique, which it suffices to check against the latest such neighbor.
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = order[i];
    std::vector<std::uint32_t> earlier;
    for (auto y : g.neighbor_indices(x)) {
      if (pos[y] < i) earlier.push_back(y);
    }
    if (earlier.size() < 2) continue;
    auto parent = *std::max_element(earlier.begin(), earlier.end(),
                                    [&](auto a, auto b) { return pos[a] < pos[b]; });
    const auto& prow = g.neighbor_indices(parent);
    for (auto y : earlier) {
      if (y != parent && !std::binary_search(prow.begin(), prow.end(), y)) return false;
    }
  }
  return true;
}

namespace {

class PathSearch {
 public:
  PathSearch(const Graph& g, std::uint64_t budget) : g_(g), budget_(budget), used_(g.order(), 0) {}

  Traceability run() {
    const auto n = g_.order();
    if (n <= 1) return Traceability::yes;
    if (!is_connected(g_)) return Traceability::no;
    std::vector<std::uint32_t> leaves;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (g_.neighbor_indices(i).size() == 1) leaves.push_back(i);
    }
    if (leaves.size() > 2) return Traceability::no;
    std::vector<std::uint32_t> starts;
    if (!leaves.empty()) {
      starts.push_back(leaves.front());
    } else {
      for (std::uint32_t i = 0; i < n; ++i) starts.push_back(i);
    }
    for (auto s : starts) {
      used_[s] = 1;
      bool found = extend(s, 1);
      used_[s] = 0;
      if (found) return Traceability::yes;
      if (exhausted_) return Traceability::unknown;
    }
    return Traceability::no;
  }

 private:
  bool extend(std::uint32_t x, std::size_t depth) {
    if (depth == g_.order()) return true;
    if (++expansions_ > budget_) {
      exhausted_ = true;
      return false;
    }
    // Warnsdorff order: try the most constrained neighbor first.
    std::vector<std::uint32_t> candidates;
    for (auto y : g_.neighbor_indices(x)) {
      if (!used_[y]) candidates.push_back(y);
    }
    std::sort(candidates.begin(), candidates.end(), [&](auto a, auto b) {
      return free_degree(a) < free_degree(b);
    });
    for (auto y : candidates) {
      used_[y] = 1;
      bool ok = extend(y, depth + 1);
      used_[y] = 0;
      if (ok) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  std::size_t free_degree(std::uint32_t y) const {
    std::size_t d = 0;
    for (auto z : g_.neighbor_indices(y)) d += used_[z] ? 0 : 1;
    return d;
  }

  const Graph& g_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  bool exhausted_ = false;
  std::vector<char> used_;
};

}  // namespace

Traceability has_hamiltonian_path(const Graph& g, HamiltonianPathOptions options) {
  return PathSearch(g, options.node_budget).run();
}

std::optional<std::pair<Graph, Graph>> split_decomposable(const Graph& g) {
  if (!is_connected(g)) return std::nullopt;
  auto is_clique = [&](const VertexSet& s) {
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        if (!g.adjacent(s[a], s[b])) return false;
      }
    }
    return true;
  };
  for (auto v : cut_vertices(g)) {
    auto parts = connected_components(delete_vertex(g, v));
    // v free on both sides forces N(v) to meet exactly two components, each
    // in a clique.
    if (parts.size() != 2) continue;
    auto nb = g.neighbors(v);
    if (!is_clique(set_intersection(nb, parts[0])) || !is_clique(set_intersection(nb, parts[1]))) {
      continue;
    }
    auto side = [&](const VertexSet& part) {
      auto keep = part;
      keep.push_back(v);
      return induced_subgraph(g, make_set(std::move(keep)));
    };
    return std::make_pair(side(parts[0]), side(parts[1]));
  }
  return std::nullopt;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Graph& a, const Graph& b) : a_(a), b_(b) {}

  bool run() {
    const auto n = a_.order();
    if (n != b_.order() || a_.size() != b_.size()) return false;
    auto sig_a = signatures(a_);
    auto sig_b = signatures(b_);
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    sig_a_ = std::move(sig_a);
    sig_b_ = std::move(sig_b);
    // Map vertices of a with the rarest signatures first.
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](auto x, auto y) {
      auto cx = std::count(sa.begin(), sa.end(), sig_a_[x]);
      auto cy = std::count(sa.begin(), sa.end(), sig_a_[y]);
      return cx != cy ? cx < cy : x < y;
    });
    map_.assign(n, kNone);
    used_.assign(n, 0);
    return extend(0);
  }

 private:
  static std::vector<std::vector<std::size_t>> signatures(const Graph& g) {
    // degree plus sorted multiset of neighbor degrees
    std::vector<std::vector<std::size_t>> out(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) {
      out[i].push_back(g.neighbor_indices(i).size());
      std::vector<std::size_t> nd;
      for (auto j : g.neighbor_indices(i)) nd.push_back(g.neighbor_indices(j).size());
      std::sort(nd.begin(), nd.end());
      out[i].insert(out[i].end(), nd.begin(), nd.end());
    }
    return out;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    auto x = order_[depth];
    for (std::uint32_t y = 0; y < b_.order(); ++y) {
      if (used_[y] || sig_b_[y] != sig_a_[x]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        auto px = order_[d];
        bool ea = std::binary_search(a_.neighbor_indices(x).begin(), a_.neighbor_indices(x).end(),
                                     static_cast<std::uint32_t>(px));
        bool eb = std::binary_search(b_.neighbor_indices(y).begin(), b_.neighbor_indices(y).end(),
                                     map_[px]);
        ok = ea == eb;
      }
      if (!ok) continue;
      map_[x] = y;
      used_[y] = 1;
      if (extend(depth + 1)) return true;
      used_[y] = 0;
      map_[x] = kNone;
    }
    return false;
  }

  const Graph& a_;
  const Graph& b_;
  std::vector<std::vector<std::size_t>> sig_a_, sig_b_;
  std::vector<std::size_t> order_;
  std::vector<std::uint32_t> map_;
  std::vector<char> used_;
};

}  // namespace

bool are_isomorphic(const Graph& a, const Graph& b) { return IsoSearch(a, b).run(); }

Graph relabel(const Graph& g, const std::function<Vertex(Vertex)>& mapping) {
  std::vector<Vertex> vs;
  for (auto v : g.vertices()) vs.push_back(mapping(v));
  auto sorted = make_set(vs);
  if (sorted.size() != vs.size()) throw GraphError("relabeling is not injective");
  std::vector<Edge> es;
  for (const auto& e : g.edges()) es.push_back(Edge::normalized(mapping(e.u), mapping(e.v)));
  return Graph(sorted, es);
}

}  // namespace bei
