#include "bei/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "bei/constructors.hpp"
#include "bei/io.hpp"

namespace bei {

// ---------------------------------------------------------------------------
// Families

FamilySpec FamilySpec::exhaustive_connected(int min_n, int max_n) {
  FamilySpec s;
  s.source = FamilySource::exhaustive_connected;
  s.min_n = min_n;
  s.max_n = max_n;
  return s;
}

FamilySpec FamilySpec::graph6_file(std::string path) {
  FamilySpec s;
  s.source = FamilySource::graph6_file;
  s.path = std::move(path);
  return s;
}

FamilySpec FamilySpec::random_block_trees(std::size_t count, int max_n, std::uint64_t seed) {
  FamilySpec s;
  s.source = FamilySource::random_block_trees;
  s.trees.count = count;
  s.trees.max_n = max_n;
  s.trees.seed = seed;
  return s;
}

FamilySpec FamilySpec::star_family(int r_max) {
  FamilySpec s;
  s.source = FamilySource::star_family;
  s.r_max = r_max;
  return s;
}

FamilySpec FamilySpec::corpus() { return FamilySpec{}; }

namespace {

/// Adjacency rows as bit masks over vertex indices.
std::vector<std::uint32_t> adjacency_rows(const Graph& g) {
  std::vector<std::uint32_t> rows(g.order(), 0);
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (auto j : g.neighbor_indices(i)) rows[i] |= 1u << j;
  }
  return rows;
}

std::uint64_t code_for(const std::vector<std::uint32_t>& rows, const std::vector<int>& order) {
  std::uint64_t code = 0;
  const auto n = order.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      code = (code << 1) | ((rows[order[i]] >> order[j]) & 1u);
    }
  }
  return code;
}

Graph graph_from_code(int n, std::uint64_t code) {
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), 1);
  std::vector<Edge> es;
  int bit = n * (n - 1) / 2 - 1;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, --bit) {
      if ((code >> bit) & 1u) es.push_back({i + 1, j + 1});
    }
  }
  return Graph(vs, es);
}

Graph shape_graph(BlockShape shape) {
  auto clique = [](int k) {
    std::vector<Vertex> vs(k);
    std::iota(vs.begin(), vs.end(), 1);
    std::vector<Edge> es;
    for (int i = 1; i <= k; ++i) {
      for (int j = i + 1; j <= k; ++j) es.push_back({i, j});
    }
    return Graph(vs, es);
  };
  auto cycle = [](int k) {
    std::vector<Edge> es;
    for (int i = 1; i <= k; ++i) es.push_back(Edge::normalized(i, i % k + 1));
    return Graph::from_edges(es);
  };
  switch (shape) {
    case BlockShape::k2: return clique(2);
    case BlockShape::k3: return clique(3);
    case BlockShape::k4: return clique(4);
    case BlockShape::k5: return clique(5);
    case BlockShape::c4: return cycle(4);
    case BlockShape::c5: return cycle(5);
    case BlockShape::star_2_3_2: return star_product(2, 3, 2);
    case BlockShape::star_3_3_2: return star_product(3, 3, 2);
    case BlockShape::star_3_3_3: return star_product(3, 3, 3);
  }
  throw GraphError("unknown block shape");
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const auto n = g.order();
  if (n > 8) throw GraphError("canonical_code supports at most 8 vertices");
  const auto rows = adjacency_rows(g);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.neighbor_indices(a).size() < g.neighbor_indices(b).size(); });
  // Degree classes are contiguous runs of `order`; permute within each run.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t s = 0; s < n;) {
    std::size_t e = s;
    while (e < n && g.neighbor_indices(order[e]).size() == g.neighbor_indices(order[s]).size()) ++e;
    runs.emplace_back(s, e);
    s = e;
  }
  std::uint64_t best = code_for(rows, order);
  while (true) {
    std::size_t k = 0;
    for (; k < runs.size(); ++k) {
      auto [s, e] = runs[k];
      if (std::next_permutation(order.begin() + s, order.begin() + e)) break;
    }
    if (k == runs.size()) break;
    best = std::min(best, code_for(rows, order));
  }
  return best;
}

std::vector<Graph> connected_graphs(int n) {
  if (n < 1 || n > 6) throw GraphError("the in-repo generator covers 1 <= n <= 6");
  const int pairs = n * (n - 1) / 2;
  std::set<std::uint64_t> codes;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
    auto g = graph_from_code(n, bits);
    if (is_connected(g)) codes.insert(canonical_code(g));
  }
  std::vector<Graph> out;
  for (auto c : codes) out.push_back(graph_from_code(n, c));
  return out;
}

std::vector<Graph> generate_block_trees(const BlockTreeOptions& options) {
  if (options.shapes.empty()) throw GraphError("block-tree generator needs at least one shape");
  std::mt19937_64 rng(options.seed);
  auto pick = [&rng](std::size_t k) { return static_cast<std::size_t>(rng() % k); };

  std::vector<Graph> shapes;
  for (auto s : options.shapes) shapes.push_back(shape_graph(s));
  auto fitting = [&](int room) {
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      if (static_cast<int>(shapes[i].order()) <= room) ok.push_back(i);
    }
    return ok;
  };

  std::vector<Graph> out;
  for (std::size_t made = 0; made < options.count; ++made) {
    const int max_n = std::max(2, options.max_n);
    const int target = max_n <= 3 ? max_n : 3 + static_cast<int>(pick(max_n - 2));
    auto first = fitting(target);
    if (first.empty()) first = fitting(max_n);
    if (first.empty()) throw GraphError("no block shape fits max_n");
    Graph g = shapes[first[pick(first.size())]];
    std::vector<int> block_count(g.order() + 1, 1);
    block_count[0] = 0;

    while (true) {
      const int n = static_cast<int>(g.order());
      // A new block adds its order minus the shared vertex.
      auto next = fitting(target - n + 1);
      if (next.empty()) break;
      const auto& shape = shapes[next[pick(next.size())]];
      std::vector<Vertex> anchors;
      for (auto v : g.vertices()) {
        if (block_count[v] == 1) anchors.push_back(v);
      }
      const Vertex anchor = anchors[pick(anchors.size())];
      const Vertex joint = shape.vertices()[pick(shape.order())];
      auto attached = relabel(shape, [&](Vertex x) {
        if (x == joint) return anchor;
        return x < joint ? n + x : n + x - 1;
      });
      g = graph_union(g, attached);
      block_count.resize(g.order() + 1, 1);
      ++block_count[anchor];
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<NamedGraph> materialize(const FamilySpec& spec) {
  std::vector<NamedGraph> out;
  switch (spec.source) {
    case FamilySource::exhaustive_connected:
      for (int n = spec.min_n; n <= spec.max_n; ++n) {
        auto graphs = connected_graphs(n);
        for (std::size_t i = 0; i < graphs.size(); ++i) {
          out.push_back({"n" + std::to_string(n) + "#" + std::to_string(i), std::move(graphs[i])});
        }
      }
      break;
    case FamilySource::graph6_file: {
      auto graphs = read_graph6_file(spec.path);
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        out.push_back({spec.path + "#" + std::to_string(i), std::move(graphs[i])});
      }
      break;
    }
    case FamilySource::random_block_trees: {
      auto graphs = generate_block_trees(spec.trees);
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        out.push_back({"tree" + std::to_string(spec.trees.seed) + "#" + std::to_string(i),
                       std::move(graphs[i])});
      }
      break;
    }
    case FamilySource::star_family:
      for (int r = 2; r <= spec.r_max; ++r) {
        out.push_back({"whiskered_star_" + std::to_string(r), whiskered_star_product(r, r, r)});
      }
      break;
    case FamilySource::corpus:
      for (const auto& [name, g] : reference_corpus()) out.push_back({name, g});
      break;
  }
  if (spec.filter) {
    std::erase_if(out, [&](const NamedGraph& ng) { return !spec.filter(ng.graph); });
  }
  return out;
}

bool is_regular_connected(const Graph& g, int r) {
  if (r < 1 || g.order() <= static_cast<std::size_t>(r)) return false;
  for (auto v : g.vertices()) {
    if (g.degree(v) != static_cast<std::size_t>(r)) return false;
  }
  if (!is_connected(g)) return false;
  // Every (r-1)-subset must leave the graph connected.
  const auto& vs = g.vertices();
  std::vector<bool> pick(vs.size(), false);
  std::fill(pick.begin(), pick.begin() + (r - 1), true);
  do {
    VertexSet removed;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (pick[i]) removed.push_back(vs[i]);
    }
    if (!is_connected(delete_vertices(g, removed))) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

// ---------------------------------------------------------------------------
// Suite runner

namespace {

struct Outcome {
  std::vector<Violation> violations;
  std::vector<Violation> candidates;
  std::optional<Skip> skip;
  std::vector<NamedGraph> constructed;
};

SuOptions su_options_for(const HarnessOptions& options) {
  SuOptions su;
  su.enumeration.budget.max_nonfree = options.max_nonfree;
  su.enumeration.budget.deadline =
      Deadline::after(std::chrono::duration<double>(options.graph_seconds));
  return su;
}

/// Runs `check` on every item with a fresh per-item budget; merges in item
/// order so the report does not depend on the worker count.
template <class Item, class Check>
SuiteReport run_suite(std::string name, const std::vector<Item>& items,
                      const HarnessOptions& options, Check check) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Outcome> outcomes(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const auto i = next.fetch_add(1);
      if (i >= items.size()) return;
      const auto su = su_options_for(options);
      try {
        check(items[i], su, outcomes[i]);
      } catch (const BudgetExceeded& e) {
        outcomes[i] = Outcome{};
        outcomes[i].skip = Skip{items[i].name, e.what(), true};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SuiteReport report;
  report.suite = std::move(name);
  report.examined = items.size();
  for (auto& o : outcomes) {
    std::move(o.violations.begin(), o.violations.end(), std::back_inserter(report.violations));
    std::move(o.candidates.begin(), o.candidates.end(), std::back_inserter(report.candidates));
    std::move(o.constructed.begin(), o.constructed.end(), std::back_inserter(report.constructed));
    if (o.skip) report.skips.push_back(std::move(*o.skip));
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

Violation make_violation(const NamedGraph& item, std::string property, bool expected, bool got) {
  Violation v;
  v.graph_name = item.name;
  v.graph = item.graph;
  v.property = std::move(property);
  v.expected = yes_no(expected);
  v.got = yes_no(got);
  return v;
}

/// The proven direction of the conjecture chain.
void check_chain(const NamedGraph& item, const AccessibilityCertificate& acc,
                 const StronglyUnmixedTrace& su, Outcome& out) {
  if (su.verdict && !acc.verdict) {
    auto v = make_violation(item, "strongly unmixed implies accessible", true, false);
    v.accessibility = acc;
    v.strongly_unmixed = su;
    out.violations.push_back(std::move(v));
  }
}

}  // namespace

SuiteReport verify_block_theorem(const FamilySpec& family, const HarnessOptions& options) {
  const auto items = materialize(family);
  return run_suite("block_theorem", items, options,
                   [](const NamedGraph& item, const SuOptions& su_opts, Outcome& out) {
    const auto& g = item.graph;
    StronglyUnmixedChecker checker(su_opts);
    const bool unmixed = is_unmixed(g, su_opts.enumeration).unmixed;
    const auto acc = is_accessible(g, su_opts.enumeration);
    const auto su = checker.check(g);
    bool bars_su = true;
    bool bars_acc = true;
    for (const auto& block : blocks(g).blocks) {
      const auto bar = block_with_whiskers(g, block);
      bars_su = checker.holds(bar) && bars_su;
      bars_acc = is_accessible(bar, su_opts.enumeration).verdict && bars_acc;
    }
    if (su.verdict != (unmixed && bars_su)) {
      auto v = make_violation(item, "strongly unmixed iff unmixed and every whiskered block is",
                              unmixed && bars_su, su.verdict);
      v.strongly_unmixed = su;
      out.violations.push_back(std::move(v));
    }
    if (acc.verdict != (unmixed && bars_acc)) {
      auto v = make_violation(item, "accessible iff unmixed and every whiskered block is",
                              unmixed && bars_acc, acc.verdict);
      v.accessibility = acc;
      out.violations.push_back(std::move(v));
    }
    check_chain(item, acc, su, out);
  });
}

SuiteReport verify_star_theorem(int r_max, const std::vector<StarParameters>& extra,
                                const HarnessOptions& options) {
  if (r_max < 2) throw GraphError("r_max must be at least 2");
  struct Item {
    std::string name;
    Graph graph;
    bool needs_accessible;
  };
  std::vector<Item> items;
  for (int r = 2; r <= r_max; ++r) {
    items.push_back({"whiskered_star_" + std::to_string(r), whiskered_star_product(r, r, r), true});
  }
  for (const auto& p : extra) {
    items.push_back({"whiskered_star_" + std::to_string(p.m) + "_" + std::to_string(p.n) + "_" +
                         std::to_string(p.r),
                     whiskered_star_product(p.m, p.n, p.r), false});
  }
  return run_suite("star_theorem", items, options,
                   [](const Item& item, const SuOptions& su_opts, Outcome& out) {
    const NamedGraph named{item.name, item.graph};
    const auto acc = is_accessible(item.graph, su_opts.enumeration);
    const auto su = is_strongly_unmixed(item.graph, su_opts);
    if (!su.verdict) {
      auto v = make_violation(named, "strongly unmixed", true, false);
      v.strongly_unmixed = su;
      out.violations.push_back(std::move(v));
    }
    if (item.needs_accessible && !acc.verdict) {
      auto v = make_violation(named, "accessible", true, false);
      v.accessibility = acc;
      out.violations.push_back(std::move(v));
    }
    check_chain(named, acc, su, out);
  });
}

SuiteReport verify_regular_classification(const FamilySpec& family, int n_max, int r,
                                          const HarnessOptions& options) {
  if (r < 2) throw GraphError("r must be at least 2");
  const auto core = star_product(r, r, r);
  const auto decorated = whiskered_star_product(r, r, r);

  std::vector<NamedGraph> items;
  for (auto& ng : materialize(family)) {
    const auto& b = ng.graph;
    if (static_cast<int>(b.order()) <= n_max && !is_complete(b) && is_regular_connected(b, r)) {
      items.push_back(std::move(ng));
    }
  }
  if (2 * r <= n_max &&
      std::none_of(items.begin(), items.end(),
                   [&](const NamedGraph& ng) { return are_isomorphic(ng.graph, core); })) {
    items.push_back({"star_product_" + std::to_string(r), core});
  }

  auto report = run_suite("regular_classification", items, options,
                          [&](const NamedGraph& item, const SuOptions& su_opts, Outcome& out) {
    const auto& b = item.graph;
    const bool is_core = are_isomorphic(b, core);
    const auto& vs = b.vertices();
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << vs.size()); ++w) {
      Graph bar = b;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if ((w >> i) & 1u) bar = add_whisker(bar, vs[i]);
      }
      const auto acc = is_accessible(bar, su_opts.enumeration);
      if (!acc.verdict) continue;
      if (!is_core || !are_isomorphic(bar, decorated)) {
        auto v = make_violation({item.name + " whiskered", bar},
                                "accessible only as the whiskered K_r star K_r", false, true);
        v.accessibility = acc;
        out.violations.push_back(std::move(v));
      }
    }
  });

  const auto acc = is_accessible(decorated);
  ++report.examined;
  if (!acc.verdict) {
    auto v = make_violation({"whiskered_star_" + std::to_string(r), decorated}, "accessible", true,
                            false);
    v.accessibility = acc;
    report.violations.push_back(std::move(v));
  }
  return report;
}

SuiteReport search_conjecture(const FamilySpec& family, const HarnessOptions& options) {
  const auto items = materialize(family);
  return run_suite("conjecture_search", items, options,
                   [](const NamedGraph& item, const SuOptions& su_opts, Outcome& out) {
    const auto acc = is_accessible(item.graph, su_opts.enumeration);
    const auto su = is_strongly_unmixed(item.graph, su_opts);
    check_chain(item, acc, su, out);
    if (acc.verdict && !su.verdict) {
      auto v = make_violation(item, "accessible implies strongly unmixed", true, false);
      v.accessibility = acc;
      v.strongly_unmixed = su;
      out.candidates.push_back(std::move(v));
    }
  });
}

SuiteReport verify_gluing_theorem(const std::vector<GluingPair>& pairs,
                                  const HarnessOptions& options) {
  return run_suite("gluing_theorem", pairs, options,
                   [](const GluingPair& pair, const SuOptions& su_opts, Outcome& out) {
    const auto& enumeration = su_opts.enumeration;
    // Shift H so its labels sit above G's.
    const Vertex offset = pair.g.max_label();
    const auto h = shift_labels(pair.h, offset);
    const Vertex w = pair.w + offset;

    auto hypothesis = [&]() -> std::optional<std::string> {
      if (!is_connected(pair.g) || !is_connected(h)) return "G and H must be connected";
      if (!contains(cut_vertices(pair.g), pair.v)) return "v is not a cut vertex of G";
      if (!contains(cut_vertices(h), w)) return "w is not a cut vertex of H";
      if (!is_unmixed(pair.g, enumeration).unmixed) return "G is not unmixed";
      if (!is_unmixed(h, enumeration).unmixed) return "H is not unmixed";
      if (auto u = is_unmixed(delete_vertex(pair.g, pair.v), enumeration); !u.unmixed) {
        return "G \\ v is not unmixed: cutset " + to_string(u.witness->members) + " leaves " +
               std::to_string(u.witness->component_count) + " components";
      }
      if (auto u = is_unmixed(delete_vertex(h, w), enumeration); !u.unmixed) {
        return "H \\ w is not unmixed: cutset " + to_string(u.witness->members) + " leaves " +
               std::to_string(u.witness->component_count) + " components";
      }
      return std::nullopt;
    }();
    if (hypothesis) {
      out.skip = Skip{pair.name, *hypothesis};
      return;
    }

    const auto g_sides = split_at(pair.g, pair.v);
    const auto h_sides = split_at(h, w);
    const bool g_acc = is_accessible(pair.g, enumeration).verdict;
    const bool h_acc = is_accessible(h, enumeration).verdict;
    StronglyUnmixedChecker checker(su_opts);
    const bool g_su = checker.holds(pair.g);
    const bool h_su = checker.holds(h);

    const Graph* gi[] = {&g_sides->first, &g_sides->second};
    const Graph* hj[] = {&h_sides->first, &h_sides->second};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const NamedGraph f{pair.name + " F" + std::to_string(i + 1) + std::to_string(j + 1),
                           glue(*gi[i], pair.v, *hj[j], w)};
        out.constructed.push_back(f);
        const auto acc = is_accessible(f.graph, enumeration);
        const auto su = checker.check(f.graph);
        if (g_acc && h_acc && !acc.verdict) {
          auto v = make_violation(f, "accessible", true, false);
          v.accessibility = acc;
          out.violations.push_back(std::move(v));
        }
        if (g_su && h_su && !su.verdict) {
          auto v = make_violation(f, "strongly unmixed", true, false);
          v.strongly_unmixed = su;
          out.violations.push_back(std::move(v));
        }
        check_chain(f, acc, su, out);
      }
    }
  });
}

std::vector<GluingPair> default_gluing_pairs() {
  const auto& g = corpus_graph("fig1a_G");
  const auto& h = corpus_graph("fig1b_H");
  const auto paw = Graph::from_edges({{1, 2}, {1, 3}, {2, 3}, {1, 4}});
  return {
      {"fig1a_G@3+fig1b_H@4", g, 3, h, 4},
      {"fig1a_G@1+fig1b_H@4", g, 1, h, 4},
      {"paw@1+paw@1", paw, 1, paw, 1},
  };
}

}  // namespace bei
