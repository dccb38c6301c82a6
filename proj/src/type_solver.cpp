#include "ghcfix/type_solver.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>

namespace ghcfix {

namespace {
std::atomic<std::uint64_t> next_graph_id{1u << 20};
}

TypeGraph::TypeGraph() : id_(next_graph_id++) {}

TypeGraph::NodeId TypeGraph::find(NodeId n) const {
  while (state_.nodes[n].parent != n) n = state_.nodes[n].parent;
  return n;
}

TypeGraph::NodeId TypeGraph::new_node() {
  auto id = static_cast<NodeId>(state_.nodes.size());
  Node n;
  n.parent = id;
  state_.nodes.push_back(std::move(n));
  return id;
}

const TypeGraph::Edge* TypeGraph::find_child(NodeId rep, Feature f) const {
  for (const auto& e : state_.nodes[rep].children)
    if (e.feature == f) return &e;
  return nullptr;
}

TypeGraph::NodeId TypeGraph::resolve(const Path& p) {
  if (p.empty()) throw std::invalid_argument("empty path");
  NodeId n;
  if (auto it = state_.roots.find(p.front()); it != state_.roots.end()) {
    n = it->second;
  } else {
    n = new_node();
    state_.roots.emplace(p.front(), n);
  }
  for (std::size_t i = 1; i < p.size(); ++i) {
    NodeId rep = find(n);
    if (const Edge* e = find_child(rep, p[i])) {
      n = e->target;
    } else {
      NodeId c = new_node();
      state_.nodes[rep].children.push_back(Edge{p[i], c});
      n = c;
    }
  }
  return n;
}

std::optional<TypeGraph::NodeId> TypeGraph::resolve_existing(const Path& p) const {
  if (p.empty()) return std::nullopt;
  auto it = state_.roots.find(p.front());
  if (it == state_.roots.end()) return std::nullopt;
  NodeId n = it->second;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const Edge* e = find_child(find(n), p[i]);
    if (!e) return std::nullopt;
    n = e->target;
  }
  return find(n);
}

void TypeGraph::assign(NodeId n, int cls, int cause) {
  Node& node = state_.nodes[find(n)];
  if (node.cls >= 0) {
    if (node.cls != cls) throw Clash{cause, node.cause};
    return;
  }
  node.cls = static_cast<std::int8_t>(cls);
  node.cause = cause;
}

void TypeGraph::unite(NodeId a, NodeId b, int cause) {
  std::vector<std::pair<NodeId, NodeId>> work{{a, b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    NodeId root = find(x);
    NodeId sub = find(y);
    if (root == sub) continue;
    if (state_.nodes[root].size < state_.nodes[sub].size) std::swap(root, sub);
    state_.nodes[sub].parent = root;
    state_.nodes[root].size += state_.nodes[sub].size;
    std::vector<Edge> moved = std::move(state_.nodes[sub].children);
    state_.nodes[sub].children.clear();
    for (const auto& e : moved) {
      if (const Edge* mine = find_child(root, e.feature))
        work.emplace_back(mine->target, e.target);
      else
        state_.nodes[root].children.push_back(e);
    }
    const Node& s = state_.nodes[sub];
    Node& r = state_.nodes[root];
    if (s.cls >= 0) {
      if (r.cls >= 0 && r.cls != s.cls) throw Clash{cause, s.cause};
      if (r.cls < 0) {
        r.cls = s.cls;
        r.cause = s.cause;
      }
    }
  }
}

SolveOutcome TypeGraph::add(const TypeConstraint& c) {
  if (state_.contradiction) return outcome();
  const int cause = static_cast<int>(state_.causes.size());
  state_.causes.push_back(c.provenance);
  try {
    if (const auto* pc = std::get_if<PointClass>(&c.body)) {
      assign(resolve(pc->path), static_cast<int>(pc->cls), cause);
    } else {
      const auto& eq = std::get<PathEq>(c.body);
      NodeId a = resolve(eq.first);
      NodeId b = resolve(eq.second);
      unite(a, b, cause);
    }
  } catch (const Clash& clash) {
    state_.contradiction = true;
    state_.trace.clear();
    for (int idx : {clash.cause, clash.other})
      if (idx >= 0 && (state_.trace.empty() || !(state_.trace.back() == state_.causes[idx])))
        state_.trace.push_back(state_.causes[idx]);
  }
  return outcome();
}

SolveOutcome TypeGraph::add_all(std::span<const TypeConstraint> cs) {
  for (const auto& c : cs)
    if (!add(c).consistent()) break;
  return outcome();
}

SolveOutcome TypeGraph::outcome() const {
  SolveOutcome o;
  if (state_.contradiction) {
    o.status = SolveStatus::contradiction;
    o.trace = state_.trace;
  }
  return o;
}

GraphSnapshot TypeGraph::snapshot() {
  saved_.push_back(state_);
  return GraphSnapshot{id_, saved_.size() - 1};
}

void TypeGraph::rollback(GraphSnapshot token) {
  if (token.graph != id_ || token.depth >= saved_.size()) throw StaleSnapshot("stale type-graph snapshot");
  state_ = saved_[token.depth];
  saved_.resize(token.depth + 1);
}

std::vector<TypeEntry> TypeGraph::principal_type() const {
  if (state_.contradiction) throw std::logic_error("principal type of a contradictory graph");
  std::vector<TypeEntry> out;
  std::set<NodeId> on_stack;
  std::function<void(NodeId, Path&)> walk = [&](NodeId n, Path& path) {
    NodeId rep = find(n);
    std::optional<TypeClass> cls;
    if (state_.nodes[rep].cls >= 0) cls = static_cast<TypeClass>(state_.nodes[rep].cls);
    out.push_back(TypeEntry{path, cls});
    if (!on_stack.insert(rep).second) return;
    for (const auto& e : state_.nodes[rep].children) {
      path.push_back(e.feature);
      walk(e.target, path);
      path.pop_back();
    }
    on_stack.erase(rep);
  };
  for (const auto& [f, node] : state_.roots) {
    Path path{f};
    walk(node, path);
  }
  std::sort(out.begin(), out.end(), [](const TypeEntry& a, const TypeEntry& b) { return path_display_less(a.path, b.path); });
  return out;
}

std::optional<TypeClass> TypeGraph::class_at(const Path& p) const {
  auto n = resolve_existing(p);
  if (!n || state_.nodes[*n].cls < 0) return std::nullopt;
  return static_cast<TypeClass>(state_.nodes[*n].cls);
}

bool TypeGraph::same_class(const Path& a, const Path& b) const {
  auto x = resolve_existing(a);
  auto y = resolve_existing(b);
  return x && y && *x == *y;
}

SolveOutcome check_type_consistency(std::span<const TypeConstraint> cs) {
  TypeGraph g;
  return g.add_all(cs);
}

TypeGraph solve_types(std::span<const TypeConstraint> cs) {
  TypeGraph g;
  g.add_all(cs);
  return g;
}

}  // namespace ghcfix
