#include "bei/properties.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "bei/constructors.hpp"

namespace bei {

namespace {

bool all_components_complete(const Graph& g) {
  for (const auto& part : connected_components(g)) {
    if (!is_complete(induced_subgraph(g, part))) return false;
  }
  return true;
}

std::optional<Vertex> removable_element(const CutSetFamily& family, const VertexSet& t) {
  for (auto x : t) {
    if (family.contains(set_difference(t, VertexSet{x}))) return x;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Accessibility

AccessibilityCertificate is_accessible(const Graph& g, const EnumerationOptions& options) {
  AccessibilityCertificate cert;
  auto unmixed = is_unmixed(g, options);
  if (!unmixed.unmixed) {
    cert.unmixed_witness = unmixed.witness;
    return cert;
  }
  const auto family = enumerate_cutsets(g, options);
  for (const auto& cs : family.cutsets()) {
    if (cs.members.empty()) continue;
    if (auto t = removable_element(family, cs.members)) {
      cert.steps.push_back({cs.members, *t});
    } else {
      cert.stuck = cs.members;
      return cert;
    }
  }
  cert.verdict = true;
  return cert;
}

bool replay_accessibility(const Graph& g, const AccessibilityCertificate& cert,
                          const EnumerationOptions& options) {
  const auto c = component_count(g);
  for (const auto& step : cert.steps) {
    if (!contains(step.cutset, step.removed)) return false;
    if (!is_cutset(g, step.cutset)) return false;
    if (!is_cutset(g, set_difference(step.cutset, VertexSet{step.removed}))) return false;
  }
  if (cert.unmixed_witness) {
    const auto& w = *cert.unmixed_witness;
    return !cert.verdict && is_cutset(g, w.members) &&
           components_without(g, w.members) == w.component_count &&
           w.component_count != w.members.size() + c;
  }
  if (cert.stuck) {
    if (cert.verdict || cert.stuck->empty() || !is_cutset(g, *cert.stuck)) return false;
    for (auto x : *cert.stuck) {
      if (is_cutset(g, set_difference(*cert.stuck, VertexSet{x}))) return false;
    }
    return true;
  }
  if (!cert.verdict) return false;
  const auto family = enumerate_cutsets(g, options);
  std::vector<VertexSet> expected;
  for (const auto& cs : family.cutsets()) {
    if (cs.component_count != cs.members.size() + c) return false;
    if (!cs.members.empty()) expected.push_back(cs.members);
  }
  std::vector<VertexSet> recorded;
  for (const auto& step : cert.steps) recorded.push_back(step.cutset);
  return recorded == expected;
}

// ---------------------------------------------------------------------------
// Strong unmixedness

std::string to_string(SuNodeKind kind) {
  switch (kind) {
    case SuNodeKind::complete_components: return "complete_components";
    case SuNodeKind::split_components: return "split_components";
    case SuNodeKind::cut_vertex: return "cut_vertex";
    case SuNodeKind::not_unmixed: return "not_unmixed";
    case SuNodeKind::no_cut_vertex: return "no_cut_vertex";
  }
  return "unknown";
}

StronglyUnmixedChecker::StronglyUnmixedChecker(SuOptions options) : options_(std::move(options)) {}

std::size_t StronglyUnmixedChecker::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

void StronglyUnmixedChecker::clear() {
  std::lock_guard lock(mutex_);
  nodes_.clear();
  memo_.clear();
}

std::size_t StronglyUnmixedChecker::add(SuNode node) {
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

std::size_t StronglyUnmixedChecker::visit(const Graph& g) {
  options_.enumeration.budget.deadline.check();
  std::optional<GraphKey> key;
  if (options_.memoize) {
    key = g.key();
    if (auto it = memo_.find(*key); it != memo_.end()) return it->second;
  }

  SuNode node;
  node.graph = g;
  const auto parts = connected_components(g);
  if (all_components_complete(g)) {
    node.kind = SuNodeKind::complete_components;
    node.verdict = true;
  } else if (parts.size() > 1 && options_.split_components) {
    node.kind = SuNodeKind::split_components;
    node.verdict = true;
    for (const auto& part : parts) {
      auto child = visit(induced_subgraph(g, part));
      node.children.push_back(child);
      if (!nodes_[child].verdict) {
        node.verdict = false;
        break;
      }
    }
  } else if (auto unmixed = is_unmixed(g, options_.enumeration); !unmixed.unmixed) {
    node.kind = SuNodeKind::not_unmixed;
    node.witness = unmixed.witness;
  } else {
    node.kind = SuNodeKind::no_cut_vertex;
    for (auto v : cut_vertices(g)) {
      const auto closed = clique_close(g, v);
      const Graph derived[] = {delete_vertex(g, v), closed, delete_vertex(closed, v)};
      std::vector<std::size_t> children;
      std::optional<std::size_t> failed;
      for (const auto& d : derived) {
        auto child = visit(d);
        children.push_back(child);
        if (!nodes_[child].verdict) {
          failed = child;
          break;
        }
      }
      if (!failed) {
        node.kind = SuNodeKind::cut_vertex;
        node.verdict = true;
        node.pivot = v;
        node.children = std::move(children);
        node.refutations.clear();
        break;
      }
      node.refutations.push_back({v, *failed});
    }
  }

  auto index = add(std::move(node));
  if (key) memo_.emplace(std::move(*key), index);
  return index;
}

StronglyUnmixedTrace StronglyUnmixedChecker::check(const Graph& g) {
  std::lock_guard lock(mutex_);
  const auto root = visit(g);

  // Copy the nodes reachable from the root, renumbered in discovery order.
  StronglyUnmixedTrace trace;
  std::unordered_map<std::size_t, std::size_t> renumber;
  std::vector<std::size_t> order{root};
  renumber[root] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& node = nodes_[order[i]];
    auto reach = [&](std::size_t child) {
      if (renumber.emplace(child, order.size()).second) order.push_back(child);
    };
    for (auto c : node.children) reach(c);
    for (const auto& r : node.refutations) reach(r.child);
  }
  trace.nodes.reserve(order.size());
  for (auto idx : order) {
    SuNode copy = nodes_[idx];
    for (auto& c : copy.children) c = renumber.at(c);
    for (auto& r : copy.refutations) r.child = renumber.at(r.child);
    trace.nodes.push_back(std::move(copy));
  }
  trace.root = 0;
  trace.verdict = trace.nodes[0].verdict;
  if (!options_.memoize) {
    nodes_.clear();
  }
  return trace;
}

StronglyUnmixedTrace is_strongly_unmixed(const Graph& g, const SuOptions& options) {
  return StronglyUnmixedChecker(options).check(g);
}

bool replay_strongly_unmixed(const StronglyUnmixedTrace& trace, const EnumerationOptions& options) {
  const auto& nodes = trace.nodes;
  if (trace.root >= nodes.size() || nodes[trace.root].verdict != trace.verdict) return false;
  auto child_ok = [&](std::size_t i) { return i < nodes.size(); };

  for (const auto& node : nodes) {
    const auto& g = node.graph;
    const bool complete = all_components_complete(g);
    switch (node.kind) {
      case SuNodeKind::complete_components:
        if (!complete || !node.verdict) return false;
        break;
      case SuNodeKind::split_components: {
        const auto parts = connected_components(g);
        if (complete || parts.size() < 2 || node.children.empty() ||
            node.children.size() > parts.size()) {
          return false;
        }
        bool all = true;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
          if (!child_ok(node.children[i])) return false;
          const auto& child = nodes[node.children[i]];
          if (!(child.graph == induced_subgraph(g, parts[i]))) return false;
          all = all && child.verdict;
          // Evaluation stops at the first failing component.
          if (!child.verdict && i + 1 != node.children.size()) return false;
        }
        if (all && node.children.size() != parts.size()) return false;
        if (node.verdict != all) return false;
        break;
      }
      case SuNodeKind::not_unmixed: {
        if (complete || node.verdict || !node.witness) return false;
        const auto& w = *node.witness;
        if (!is_cutset(g, w.members) || components_without(g, w.members) != w.component_count ||
            w.component_count == w.members.size() + component_count(g)) {
          return false;
        }
        break;
      }
      case SuNodeKind::cut_vertex: {
        if (complete || !node.verdict || !node.pivot || node.children.size() != 3) return false;
        const auto v = *node.pivot;
        if (!contains(cut_vertices(g), v) || !is_unmixed(g, options).unmixed) return false;
        const auto closed = clique_close(g, v);
        const Graph derived[] = {delete_vertex(g, v), closed, delete_vertex(closed, v)};
        for (int i = 0; i < 3; ++i) {
          if (!child_ok(node.children[i])) return false;
          const auto& child = nodes[node.children[i]];
          if (!child.verdict || !(child.graph == derived[i])) return false;
        }
        break;
      }
      case SuNodeKind::no_cut_vertex: {
        if (complete || node.verdict || !is_unmixed(g, options).unmixed) return false;
        VertexSet pivots;
        for (const auto& r : node.refutations) {
          if (!child_ok(r.child)) return false;
          const auto& child = nodes[r.child];
          const auto closed = clique_close(g, r.pivot);
          if (child.verdict) return false;
          if (!(child.graph == delete_vertex(g, r.pivot) || child.graph == closed ||
                child.graph == delete_vertex(closed, r.pivot))) {
            return false;
          }
          pivots.push_back(r.pivot);
        }
        if (make_set(pivots) != cut_vertices(g) || pivots.size() != node.refutations.size()) {
          return false;
        }
        break;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// r-cut-connectivity

namespace {

void require_positive(int r) {
  if (r < 1) throw GraphError("r must be at least 1, got " + std::to_string(r));
}

bool connected_r_cut(const Graph& h, int r) {
  for (auto v : cut_vertices(h)) {
    for (const auto& part : connected_components(delete_vertex(h, v))) {
      if (cut_vertices(induced_subgraph(h, part)).size() > static_cast<std::size_t>(r)) return false;
    }
  }
  return true;
}

bool strongly_r_cut(const Graph& g, int r,
                    std::unordered_set<GraphKey, GraphKeyHash>& known_good) {
  auto key = g.key();
  if (known_good.count(key)) return true;
  for (const auto& part : connected_components(g)) {
    if (!connected_r_cut(induced_subgraph(g, part), r)) return false;
  }
  for (auto v : cut_vertices(g)) {
    if (!strongly_r_cut(delete_vertex(g, v), r, known_good)) return false;
  }
  known_good.insert(std::move(key));
  return true;
}

}  // namespace

bool is_r_cut_connected(const Graph& g, int r) {
  require_positive(r);
  for (const auto& part : connected_components(g)) {
    if (!connected_r_cut(induced_subgraph(g, part), r)) return false;
  }
  return true;
}

bool is_strongly_r_cut_connected(const Graph& g, int r) {
  require_positive(r);
  std::unordered_set<GraphKey, GraphKeyHash> known_good;
  return strongly_r_cut(g, r, known_good);
}

// ---------------------------------------------------------------------------
// Block classes

std::string to_string(BlockClass c) {
  switch (c) {
    case BlockClass::chordal: return "chordal";
    case BlockClass::star_product: return "star_product";
    case BlockClass::strongly_three_cut_connected: return "strongly_3_cut_connected";
    case BlockClass::traceable: return "traceable";
    case BlockClass::unrecognized: return "unrecognized";
  }
  return "unknown";
}

std::string to_string(CmStatus s) {
  switch (s) {
    case CmStatus::cm: return "CM";
    case CmStatus::not_cm: return "NOT_CM";
    case CmStatus::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<StarMatch> match_star_product(const Graph& b) {
  if (b.order() < 2) return std::nullopt;
  const Vertex a = b.vertices().front();
  const auto closed = set_union(b.neighbors(a), VertexSet{a});
  // In K_m ⋆_r K_n the clique through a is N[a] or N[a] minus a's partner.
  std::vector<VertexSet> candidates{closed};
  for (auto y : b.neighbors(a)) candidates.push_back(set_difference(closed, VertexSet{y}));

  for (const auto& x : candidates) {
    const auto y = set_difference(b.vertices(), x);
    if (y.empty()) continue;
    if (!is_complete(induced_subgraph(b, x)) || !is_complete(induced_subgraph(b, y))) continue;
    std::vector<Edge> matching;
    bool ok = true;
    for (auto u : b.vertices()) {
      const auto& other = contains(x, u) ? y : x;
      const auto across = set_intersection(b.neighbors(u), other);
      if (across.size() > 1) {
        ok = false;
        break;
      }
      if (!across.empty() && contains(x, u)) matching.push_back({u, across.front()});
    }
    if (ok && !matching.empty()) return StarMatch{x, y, std::move(matching)};
  }
  return std::nullopt;
}

BlockClassification classify_block(const Graph& g, const VertexSet& block) {
  BlockClassification out;
  out.block = make_set(block);
  out.whiskered = block_with_whiskers(g, out.block);
  const auto b = induced_subgraph(g, out.block);
  if (is_chordal(b)) {
    out.kind = BlockClass::chordal;
    return out;
  }
  if (auto star = match_star_product(b)) {
    out.kind = BlockClass::star_product;
    out.star = std::move(star);
    return out;
  }
  if (set_intersection(out.block, cut_vertices(g)).size() <= 3 &&
      is_strongly_r_cut_connected(out.whiskered, 3)) {
    out.kind = BlockClass::strongly_three_cut_connected;
    return out;
  }
  switch (has_hamiltonian_path(out.whiskered)) {
    case Traceability::yes:
      out.kind = BlockClass::traceable;
      break;
    case Traceability::unknown:
      out.traceability_unknown = true;
      break;
    case Traceability::no:
      break;
  }
  return out;
}

CmVerdict cm_verdict(const Graph& g, const SuOptions& options) {
  CmVerdict verdict;
  for (const auto& block : blocks(g).blocks) verdict.blocks.push_back(classify_block(g, block));

  const auto acc = is_accessible(g, options.enumeration);
  if (!acc.verdict) {
    verdict.status = CmStatus::not_cm;
    if (acc.unmixed_witness) {
      verdict.reasons.push_back("not unmixed: cutset " + to_string(acc.unmixed_witness->members) +
                                " leaves " + std::to_string(acc.unmixed_witness->component_count) +
                                " components");
    } else {
      verdict.reasons.push_back("not accessible: cutset " + to_string(*acc.stuck) +
                                " has no removable element");
    }
    return verdict;
  }

  if (is_strongly_unmixed(g, options).verdict) {
    verdict.status = CmStatus::cm;
    verdict.reasons.push_back("strongly unmixed");
    return verdict;
  }

  bool all_classified = true;
  bool all_accessible = true;
  for (const auto& b : verdict.blocks) {
    if (b.kind == BlockClass::unrecognized) {
      all_classified = false;
      verdict.reasons.push_back("block " + to_string(b.block) + " is in no recognized class");
    } else if (!is_accessible(b.whiskered, options.enumeration).verdict) {
      all_accessible = false;
      verdict.reasons.push_back("whiskered block " + to_string(b.block) + " is not accessible");
    }
  }
  if (all_classified && all_accessible) {
    verdict.status = CmStatus::cm;
    verdict.reasons.push_back(
        "unmixed, every block is in a recognized class and every whiskered block is accessible");
  } else {
    verdict.status = CmStatus::unknown;
    verdict.reasons.insert(verdict.reasons.begin(), "accessible but not strongly unmixed");
  }
  return verdict;
}

}  // namespace bei
