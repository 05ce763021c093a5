#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bei/properties.hpp"

namespace bei {

struct NamedGraph {
  std::string name;
  Graph graph;
};

enum class FamilySource { exhaustive_connected, graph6_file, random_block_trees, star_family, corpus };

/// Block shapes available to the block-tree generator.
enum class BlockShape { k2, k3, k4, k5, c4, c5, star_2_3_2, star_3_3_2, star_3_3_3 };

struct BlockTreeOptions {
  std::size_t count = 0;
  int max_n = 12;
  std::uint64_t seed = 0;
  std::vector<BlockShape> shapes = {BlockShape::k2, BlockShape::k3, BlockShape::k4,
                                    BlockShape::k5, BlockShape::c4, BlockShape::c5,
                                    BlockShape::star_2_3_2, BlockShape::star_3_3_2,
                                    BlockShape::star_3_3_3};
};

/// Where a suite's graphs come from. Identical specs give identical families.
struct FamilySpec {
  FamilySource source = FamilySource::corpus;
  /// exhaustive_connected: vertex counts min_n..max_n (max_n <= 6).
  int min_n = 1;
  int max_n = 6;
  std::string path;
  BlockTreeOptions trees;
  int r_max = 0;
  std::function<bool(const Graph&)> filter;

  static FamilySpec exhaustive_connected(int min_n, int max_n);
  static FamilySpec graph6_file(std::string path);
  static FamilySpec random_block_trees(std::size_t count, int max_n, std::uint64_t seed);
  static FamilySpec star_family(int r_max);
  static FamilySpec corpus();
};

std::vector<NamedGraph> materialize(const FamilySpec& spec);

/// All connected graphs on exactly n vertices (n <= 6) up to isomorphism,
/// labeled 1..n, ordered by canonical code.
std::vector<Graph> connected_graphs(int n);

/// Canonical adjacency code: the minimum upper-triangle bit string over all
/// orderings that sort vertices by degree (n <= 8).
std::uint64_t canonical_code(const Graph& g);

/// Random trees of small blocks glued at vertices that lie in a single block,
/// so every output is connected and its block graph is a tree.
std::vector<Graph> generate_block_trees(const BlockTreeOptions& options);

struct Violation {
  std::string graph_name;
  Graph graph;
  std::string property;
  std::string expected;
  std::string got;
  std::optional<AccessibilityCertificate> accessibility;
  std::optional<StronglyUnmixedTrace> strongly_unmixed;
};

struct Skip {
  std::string graph_name;
  std::string reason;
  /// Skipped for running out of budget rather than for a failed hypothesis.
  bool budget_exceeded = false;
};

struct SuiteReport {
  std::string suite;
  std::size_t examined = 0;
  /// Failed checks of proven statements.
  std::vector<Violation> violations;
  /// Open-conjecture counterexample candidates; never a failure.
  std::vector<Violation> candidates;
  std::vector<Skip> skips;
  /// Graphs a suite built on the way (e.g. the glued F_ij).
  std::vector<NamedGraph> constructed;
  double elapsed_seconds = 0;

  bool passed() const { return violations.empty(); }
};

struct HarnessOptions {
  unsigned workers = 1;
  /// Per-graph wall-clock budget.
  double graph_seconds = 5.0;
  int max_nonfree = 24;
};

/// Strongly unmixed ⟺ unmixed and every B̄ strongly unmixed, and accessible ⟺
/// unmixed and every B̄ accessible, on every graph of the family.
SuiteReport verify_block_theorem(const FamilySpec& family, const HarnessOptions& options = {});

struct StarParameters {
  int m = 0, n = 0, r = 0;
};

/// whiskered_star_product(r,r,r) is accessible and strongly unmixed for
/// r = 2..r_max, and every listed whiskered K_m ⋆_r K_n is strongly unmixed.
SuiteReport verify_star_theorem(int r_max, const std::vector<StarParameters>& extra,
                                const HarnessOptions& options = {});

/// For every r-regular r-connected non-complete graph B of the family with at
/// most n_max vertices, and every whisker placement W ⊆ V(B): B with whiskers
/// at W may be accessible only if it is the whiskered K_r ⋆ K_r. Also checks
/// that the whiskered K_r ⋆ K_r itself is accessible.
SuiteReport verify_regular_classification(const FamilySpec& family, int n_max, int r,
                                          const HarnessOptions& options = {});

/// Reports accessible graphs that are not strongly unmixed as candidates and
/// fails on strongly unmixed graphs that are not accessible.
SuiteReport search_conjecture(const FamilySpec& family, const HarnessOptions& options = {});

struct GluingPair {
  std::string name;
  Graph g;
  Vertex v = 0;
  Graph h;
  Vertex w = 0;
};

/// For each pair meeting the hypotheses (G, H, G \ v, H \ w unmixed; v, w cut
/// vertices) builds the four F_ij and checks accessibility and strong
/// unmixedness are inherited. Pairs failing the hypotheses are skipped.
SuiteReport verify_gluing_theorem(const std::vector<GluingPair>& pairs,
                                  const HarnessOptions& options = {});

/// The built-in pairs: fig1a_G/fig1b_H at (3, 4), the same graphs at (1, 4),
/// and two whiskered triangles.
std::vector<GluingPair> default_gluing_pairs();

/// r-regular (every degree r) and r-connected (no set of r-1 vertices
/// disconnects it).
bool is_regular_connected(const Graph& g, int r);

}  // namespace bei
