#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bei/cutsets.hpp"

namespace bei {

// ---------------------------------------------------------------------------
// Accessibility

/// One nonempty cutset T with the element t chosen so that T \ {t} is again a
/// cutset (the smallest such t).
struct AccessibilityStep {
  VertexSet cutset;
  Vertex removed = 0;
};

struct AccessibilityCertificate {
  bool verdict = false;
  /// Set when unmixedness fails; no chain steps are recorded then.
  std::optional<CutSet> unmixed_witness;
  /// One step per nonempty cutset in canonical order, up to the first failure.
  std::vector<AccessibilityStep> steps;
  /// First nonempty cutset (canonical order) with no removable element.
  std::optional<VertexSet> stuck;
};

AccessibilityCertificate is_accessible(const Graph& g, const EnumerationOptions& options = {});

/// Re-checks a certificate against g from scratch. Every recorded set is
/// tested with is_cutset, the witness is recounted, and for a positive
/// verdict the steps must cover the freshly enumerated family exactly.
bool replay_accessibility(const Graph& g, const AccessibilityCertificate& certificate,
                          const EnumerationOptions& options = {});

// ---------------------------------------------------------------------------
// Strong unmixedness

enum class SuNodeKind {
  /// Every connected component is a complete graph.
  complete_components,
  /// Disconnected, not all complete: children are the components.
  split_components,
  /// Unmixed, and the pivot cut vertex has three strongly unmixed children
  /// G \ v, G_v and G_v \ v.
  cut_vertex,
  /// Some cutset violates c(T) = |T| + c.
  not_unmixed,
  /// Unmixed, but every cut vertex has a child that is not strongly unmixed
  /// (or there is no cut vertex).
  no_cut_vertex,
};

std::string to_string(SuNodeKind kind);

struct SuRefutation {
  Vertex pivot = 0;
  /// Index (into the trace) of the first child that failed.
  std::size_t child = 0;
};

struct SuNode {
  Graph graph;
  SuNodeKind kind = SuNodeKind::complete_components;
  bool verdict = false;
  std::optional<CutSet> witness;
  std::optional<Vertex> pivot;
  /// cut_vertex: G \ v, G_v, G_v \ v. split_components: one per component.
  std::vector<std::size_t> children;
  std::vector<SuRefutation> refutations;
};

/// A DAG of recursion nodes; shared subgraphs appear once.
struct StronglyUnmixedTrace {
  bool verdict = false;
  std::size_t root = 0;
  std::vector<SuNode> nodes;
};

struct SuOptions {
  EnumerationOptions enumeration;
  /// Reuse verdicts for labeled graphs seen before.
  bool memoize = true;
  /// Decide disconnected graphs component by component. When false the
  /// recursion runs on the whole graph literally.
  bool split_components = true;
};

/// Strong unmixedness with a memo keyed on labeled graphs. A checker may be
/// shared between threads; calls are serialized internally.
class StronglyUnmixedChecker {
 public:
  explicit StronglyUnmixedChecker(SuOptions options = {});

  StronglyUnmixedTrace check(const Graph& g);
  bool holds(const Graph& g) { return check(g).verdict; }

  std::size_t memo_size() const;
  void clear();

 private:
  std::size_t visit(const Graph& g);
  std::size_t add(SuNode node);

  SuOptions options_;
  mutable std::mutex mutex_;
  std::vector<SuNode> nodes_;
  std::unordered_map<GraphKey, std::size_t, GraphKeyHash> memo_;
};

StronglyUnmixedTrace is_strongly_unmixed(const Graph& g, const SuOptions& options = {});

/// Re-derives every node of the trace (children graphs, cut vertices,
/// completeness, unmixedness, witnesses) and checks the verdicts compose.
bool replay_strongly_unmixed(const StronglyUnmixedTrace& trace,
                             const EnumerationOptions& options = {});

// ---------------------------------------------------------------------------
// r-cut-connectivity

/// No cut vertex, or for every cut vertex v every component of g \ v has at
/// most r cut vertices of its own. Evaluated per connected component.
/// Throws GraphError if r < 1.
bool is_r_cut_connected(const Graph& g, int r);

/// r-cut-connected, and g \ v strongly r-cut-connected for every cut vertex v.
bool is_strongly_r_cut_connected(const Graph& g, int r);

// ---------------------------------------------------------------------------
// Block classes and the Cohen-Macaulay verdict

enum class BlockClass { chordal, star_product, strongly_three_cut_connected, traceable, unrecognized };

std::string to_string(BlockClass c);

/// A decomposition V = X ⊔ Y into cliques with a matching of size r between
/// them. X contains the smallest vertex.
struct StarMatch {
  VertexSet x;
  VertexSet y;
  std::vector<Edge> matching;
};

/// Recognizes K_m ⋆_r K_n up to relabeling (r >= 1).
std::optional<StarMatch> match_star_product(const Graph& b);

struct BlockClassification {
  VertexSet block;
  BlockClass kind = BlockClass::unrecognized;
  /// B̄ with respect to the whole graph.
  Graph whiskered;
  std::optional<StarMatch> star;
  /// Traceability search ran out of budget.
  bool traceability_unknown = false;
};

BlockClassification classify_block(const Graph& g, const VertexSet& block);

enum class CmStatus { cm, not_cm, unknown };

std::string to_string(CmStatus s);

struct CmVerdict {
  CmStatus status = CmStatus::unknown;
  std::vector<std::string> reasons;
  std::vector<BlockClassification> blocks;
};

CmVerdict cm_verdict(const Graph& g, const SuOptions& options = {});

}  // namespace bei
