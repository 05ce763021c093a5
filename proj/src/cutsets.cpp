#include "bei/cutsets.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <thread>

namespace bei {

bool canonical_less(const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

CutSetFamily::CutSetFamily(Graph graph, std::vector<CutSet> cutsets)
    : graph_(std::move(graph)), cutsets_(std::move(cutsets)) {
  std::sort(cutsets_.begin(), cutsets_.end(),
            [](const CutSet& a, const CutSet& b) { return canonical_less(a.members, b.members); });
}

const CutSet* CutSetFamily::find(const VertexSet& members) const {
  auto it = std::lower_bound(
      cutsets_.begin(), cutsets_.end(), members,
      [](const CutSet& c, const VertexSet& m) { return canonical_less(c.members, m); });
  if (it == cutsets_.end() || it->members != members) return nullptr;
  return &*it;
}

std::vector<VertexSet> CutSetFamily::member_sets() const {
  std::vector<VertexSet> out;
  out.reserve(cutsets_.size());
  for (const auto& c : cutsets_) out.push_back(c.members);
  return out;
}

std::size_t components_without(const Graph& g, const VertexSet& t) {
  return component_count(delete_vertices(g, t));
}

namespace {

/// Word-parallel evaluation for graphs with at most 64 vertices.
class MaskEvaluator {
 public:
  explicit MaskEvaluator(const Graph& g) : g_(g), full_(g.full_mask()) {}

  std::optional<std::size_t> evaluate(std::span<const std::uint32_t> chosen) const {
    std::uint64_t t = 0;
    for (auto i : chosen) t |= std::uint64_t{1} << i;
    const std::uint64_t alive = full_ & ~t;
    for (auto i : chosen) {
      if (std::popcount(g_.neighbor_mask(i) & alive) < 2) return std::nullopt;
    }
    std::array<std::uint64_t, 64> comps{};
    std::size_t k = 0;
    std::uint64_t rest = alive;
    while (rest) {
      std::uint64_t comp = rest & (~rest + 1);
      std::uint64_t frontier = comp;
      while (frontier) {
        std::uint64_t grow = 0;
        for (auto f = frontier; f; f &= f - 1) grow |= g_.neighbor_mask(std::countr_zero(f));
        grow &= rest & ~comp;
        comp |= grow;
        frontier = grow;
      }
      comps[k++] = comp;
      rest &= ~comp;
    }
    for (auto i : chosen) {
      const auto nb = g_.neighbor_mask(i);
      int touched = 0;
      for (std::size_t c = 0; c < k && touched < 2; ++c) touched += (comps[c] & nb) ? 1 : 0;
      if (touched < 2) return std::nullopt;
    }
    return k;
  }

 private:
  const Graph& g_;
  std::uint64_t full_;
};

/// Fallback for graphs beyond the mask limit.
class ListEvaluator {
 public:
  explicit ListEvaluator(const Graph& g) : g_(g) {}

  std::optional<std::size_t> evaluate(std::span<const std::uint32_t> chosen) const {
    const auto n = g_.order();
    constexpr std::uint32_t kRemoved = std::numeric_limits<std::uint32_t>::max();
    constexpr std::uint32_t kUnseen = kRemoved - 1;
    std::vector<std::uint32_t> comp(n, kUnseen);
    for (auto i : chosen) comp[i] = kRemoved;
    std::vector<std::uint32_t> stack;
    std::uint32_t k = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
      if (comp[s] != kUnseen) continue;
      comp[s] = k;
      stack.push_back(s);
      while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto y : g_.neighbor_indices(x)) {
          if (comp[y] == kUnseen) {
            comp[y] = k;
            stack.push_back(y);
          }
        }
      }
      ++k;
    }
    for (auto i : chosen) {
      std::uint32_t first = kUnseen;
      bool two = false;
      for (auto y : g_.neighbor_indices(i)) {
        if (comp[y] == kRemoved) continue;
        if (first == kUnseen) {
          first = comp[y];
        } else if (comp[y] != first) {
          two = true;
          break;
        }
      }
      if (!two) return std::nullopt;
    }
    return k;
  }

 private:
  const Graph& g_;
};

enum class ScanMode { all, first_violation };

std::uint64_t next_combination(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

/// Scans subsets of the non-free vertices of a connected graph by increasing
/// size. In first_violation mode it returns only the violating cutsets of the
/// smallest size at which any violation occurs (c(T) != |T| + 1).
template <class Evaluator>
std::vector<CutSet> scan_levels(const Graph& h, const Evaluator& eval,
                                const std::vector<std::uint32_t>& pool, ScanMode mode,
                                const EnumerationOptions& options) {
  const auto k = pool.size();
  const unsigned workers = std::max(1u, options.workers);
  std::vector<CutSet> found;

  auto run_level = [&](std::size_t size, unsigned worker, std::vector<CutSet>& out) {
    std::vector<std::uint32_t> chosen;
    chosen.reserve(size);
    const std::uint64_t end = std::uint64_t{1} << k;
    std::uint64_t x = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
    std::uint64_t counter = 0;
    while (x < end) {
      if (counter % workers == worker) {
        if ((counter / workers & 1023) == 0) options.budget.deadline.check();
        chosen.clear();
        for (auto bits = x; bits; bits &= bits - 1) chosen.push_back(pool[std::countr_zero(bits)]);
        if (auto c = eval.evaluate(chosen)) {
          if (mode == ScanMode::all || *c != size + 1) {
            VertexSet members;
            for (auto i : chosen) members.push_back(h.label(i));
            out.push_back({std::move(members), *c});
          }
        }
      }
      ++counter;
      if (size == 0) break;
      x = next_combination(x);
    }
  };

  for (std::size_t size = 0; size <= k; ++size) {
    if (workers == 1) {
      run_level(size, 0, found);
    } else {
      std::vector<std::vector<CutSet>> parts(workers);
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
          try {
            run_level(size, w, parts[w]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      for (auto& p : parts) found.insert(found.end(), p.begin(), p.end());
    }
    if (mode == ScanMode::first_violation && !found.empty()) break;
  }
  return found;
}

std::vector<CutSet> scan_connected(const Graph& h, ScanMode mode, const EnumerationOptions& options) {
  std::vector<std::uint32_t> pool;
  for (std::uint32_t i = 0; i < h.order(); ++i) {
    if (!is_free_vertex(h, h.label(i))) pool.push_back(i);
  }
  if (pool.size() > static_cast<std::size_t>(std::max(0, options.budget.max_nonfree))) {
    const auto candidates = pool.size() >= 64 ? std::numeric_limits<std::uint64_t>::max()
                                              : std::uint64_t{1} << pool.size();
    throw BudgetExceeded(BudgetKind::nonfree_vertices,
                         "cutset enumeration needs " + std::to_string(candidates) +
                             " candidate subsets (" + std::to_string(pool.size()) +
                             " non-free vertices, budget " +
                             std::to_string(options.budget.max_nonfree) + ")",
                         candidates);
  }
  if (h.has_masks()) return scan_levels(h, MaskEvaluator(h), pool, mode, options);
  return scan_levels(h, ListEvaluator(h), pool, mode, options);
}

std::vector<Graph> component_graphs(const Graph& g) {
  auto parts = connected_components(g);
  std::vector<Graph> out;
  if (parts.size() == 1) {
    out.push_back(g);
    return out;
  }
  for (const auto& p : parts) out.push_back(induced_subgraph(g, p));
  return out;
}

}  // namespace

bool is_cutset(const Graph& g, const VertexSet& t) {
  std::vector<std::uint32_t> chosen;
  for (auto v : make_set(t)) chosen.push_back(static_cast<std::uint32_t>(g.index_of(v)));
  if (g.has_masks()) return MaskEvaluator(g).evaluate(chosen).has_value();
  return ListEvaluator(g).evaluate(chosen).has_value();
}

CutSetFamily enumerate_cutsets(const Graph& g, const EnumerationOptions& options) {
  std::vector<CutSet> acc{CutSet{{}, 0}};
  for (const auto& h : component_graphs(g)) {
    auto local = scan_connected(h, ScanMode::all, options);
    std::vector<CutSet> next;
    next.reserve(acc.size() * local.size());
    for (const auto& a : acc) {
      for (const auto& b : local) {
        next.push_back({set_union(a.members, b.members), a.component_count + b.component_count});
      }
    }
    acc = std::move(next);
  }
  return CutSetFamily(g, std::move(acc));
}

DecompositionReport primary_decomposition(const Graph& g, const EnumerationOptions& options) {
  auto family = enumerate_cutsets(g, options);
  const auto n = g.order();
  const auto c = component_count(g);
  DecompositionReport report;
  report.min_height = std::numeric_limits<std::size_t>::max();
  for (const auto& cs : family.cutsets()) {
    PrimeComponent p;
    p.killed = cs.members;
    p.clique_supports = connected_components(delete_vertices(g, cs.members));
    p.height = n + cs.members.size() - p.clique_supports.size();
    report.min_height = std::min(report.min_height, p.height);
    report.max_height = std::max(report.max_height, p.height);
    if (!report.witness && cs.component_count != cs.members.size() + c) report.witness = cs;
    report.components.push_back(std::move(p));
  }
  report.unmixed = !report.witness.has_value();
  return report;
}

UnmixedResult is_unmixed(const Graph& g, const EnumerationOptions& options) {
  const auto c = component_count(g);
  std::optional<CutSet> best;
  for (const auto& h : component_graphs(g)) {
    for (auto& v : scan_connected(h, ScanMode::first_violation, options)) {
      v.component_count += c - 1;
      if (!best || canonical_less(v.members, best->members)) best = std::move(v);
    }
  }
  return {!best.has_value(), best};
}

CutSetFamily cutsets_of_glued(const Graph& g1, const Graph& g2, Vertex v,
                              const EnumerationOptions& options) {
  if (set_intersection(g1.vertices(), g2.vertices()) != VertexSet{v}) {
    throw GraphError("glued graphs must share exactly the vertex " + std::to_string(v));
  }
  const auto whole = graph_union(g1, g2);
  const auto f1 = enumerate_cutsets(g1, options);
  const auto f2 = enumerate_cutsets(g2, options);
  const auto f1v = enumerate_cutsets(delete_vertex(g1, v), options);
  const auto f2v = enumerate_cutsets(delete_vertex(g2, v), options);
  const auto n1 = g1.neighbors(v);
  const auto n2 = g2.neighbors(v);

  std::set<VertexSet> members;
  // avoiding v on both sides
  for (const auto& s1 : f1.cutsets()) {
    if (contains(s1.members, v)) continue;
    for (const auto& s2 : f2.cutsets()) {
      if (!contains(s2.members, v)) members.insert(set_union(s1.members, s2.members));
    }
  }
  // v inside a cutset of one side, paired with a cutset of the other side minus v
  auto one_sided = [&](const CutSetFamily& with_v, const CutSetFamily& without) {
    for (const auto& s : with_v.cutsets()) {
      if (!contains(s.members, v)) continue;
      for (const auto& t : without.cutsets()) members.insert(set_union(s.members, t.members));
    }
  };
  one_sided(f2, f1v);
  one_sided(f1, f2v);
  // v added on top of cutsets of both sides that leave a neighbor of v alive
  for (const auto& t1 : f1v.cutsets()) {
    if (is_subset(n1, t1.members)) continue;
    for (const auto& t2 : f2v.cutsets()) {
      if (is_subset(n2, t2.members)) continue;
      members.insert(set_union(set_union(t1.members, t2.members), VertexSet{v}));
    }
  }

  std::vector<CutSet> out;
  for (const auto& m : members) out.push_back({m, components_without(whole, m)});
  return CutSetFamily(whole, std::move(out));
}

CutSetFamily cutsets_after_clique_close(const CutSetFamily& family, Vertex v) {
  auto closed = clique_close(family.graph(), v);
  std::vector<CutSet> out;
  for (const auto& cs : family.cutsets()) {
    if (!contains(cs.members, v)) out.push_back({cs.members, components_without(closed, cs.members)});
  }
  return CutSetFamily(std::move(closed), std::move(out));
}

}  // namespace bei
