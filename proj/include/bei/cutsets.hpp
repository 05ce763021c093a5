#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bei/budget.hpp"
#include "bei/graph.hpp"

namespace bei {

/// A set T in which every member is a cut vertex of G \ (T \ {t}), together
/// with c_G(T), the number of components of G \ T.
struct CutSet {
  VertexSet members;
  std::size_t component_count = 0;

  bool operator==(const CutSet&) const = default;
};

/// Canonical family order: by size, then lexicographically.
bool canonical_less(const VertexSet& a, const VertexSet& b);

/// The family of all cutsets of a graph, sorted canonically.
class CutSetFamily {
 public:
  CutSetFamily() = default;
  CutSetFamily(Graph graph, std::vector<CutSet> cutsets);

  const Graph& graph() const { return graph_; }
  const std::vector<CutSet>& cutsets() const { return cutsets_; }
  std::size_t size() const { return cutsets_.size(); }

  const CutSet* find(const VertexSet& members) const;
  bool contains(const VertexSet& members) const { return find(members) != nullptr; }
  std::vector<VertexSet> member_sets() const;

 private:
  Graph graph_;
  std::vector<CutSet> cutsets_;
};

struct EnumerationOptions {
  Budget budget;
  /// Worker threads sharding the subset space; the result does not depend on it.
  unsigned workers = 1;
};

/// c_G(T): number of connected components of G \ T.
std::size_t components_without(const Graph& g, const VertexSet& t);

/// Membership test: every t in T has neighbors in at least two distinct
/// components of G \ T. Throws GraphError for unknown vertices.
bool is_cutset(const Graph& g, const VertexSet& t);

/// Enumerates every cutset by ranging over subsets of the non-free vertices of
/// each connected component and combining components by cartesian union.
/// Throws BudgetExceeded when a component has more than
/// `options.budget.max_nonfree` non-free vertices or the deadline passes.
CutSetFamily enumerate_cutsets(const Graph& g, const EnumerationOptions& options = {});

/// Combinatorial description of the minimal prime P_T(G).
struct PrimeComponent {
  VertexSet killed;
  /// Vertex sets of the components of G \ T; each carries the 2-minors of
  /// the complete graph on it.
  std::vector<VertexSet> clique_supports;
  /// |V| + |T| - c(T)
  std::size_t height = 0;
};

struct DecompositionReport {
  std::vector<PrimeComponent> components;
  std::size_t min_height = 0;
  std::size_t max_height = 0;
  bool unmixed = true;
  /// First cutset (canonical order) with c(T) != |T| + c.
  std::optional<CutSet> witness;
};

DecompositionReport primary_decomposition(const Graph& g, const EnumerationOptions& options = {});

struct UnmixedResult {
  bool unmixed = true;
  std::optional<CutSet> witness;
};

/// Decides c(T) = |T| + c for every cutset, stopping after the first cutset
/// size at which a violation appears. The witness is the canonically first
/// violating cutset; it agrees with primary_decomposition's witness.
UnmixedResult is_unmixed(const Graph& g, const EnumerationOptions& options = {});

/// Cutsets of g1 ∪ g2 (sharing exactly the vertex v) assembled from the
/// families of g1, g2, g1 \ v and g2 \ v. Component counts refer to the union.
CutSetFamily cutsets_of_glued(const Graph& g1, const Graph& g2, Vertex v,
                              const EnumerationOptions& options = {});

/// Cutsets of G_v obtained from those of G: exactly the members avoiding v,
/// recounted on G_v.
CutSetFamily cutsets_after_clique_close(const CutSetFamily& family, Vertex v);

}  // namespace bei
