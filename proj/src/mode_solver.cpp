#include "ghcfix/mode_solver.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <set>

namespace ghcfix {

namespace {
std::atomic<std::uint64_t> next_graph_id{1};

constexpr int kNoCause = -1;
}  // namespace

const char* mode_fact_name(ModeFact f) {
  switch (f) {
    case ModeFact::unknown: return "unknown";
    case ModeFact::in: return "in";
    case ModeFact::out: return "out";
    case ModeFact::IN: return "IN";
    case ModeFact::OUT: return "OUT";
  }
  return "?";
}

ModeGraph::ModeGraph() : id_(next_graph_id++) {}

// ---------------------------------------------------------------------------
// union-find primitives

ModeGraph::Ref ModeGraph::find(Ref r) const {
  NodeId n = r.node;
  bool p = r.parity;
  while (state_.nodes[n].parent != n) {
    p ^= state_.nodes[n].parity;
    n = state_.nodes[n].parent;
  }
  return Ref{n, p};
}

ModeGraph::NodeId ModeGraph::new_node(std::int8_t constant) {
  auto id = static_cast<NodeId>(state_.nodes.size());
  Node n;
  n.parent = id;
  n.constant = constant;
  state_.nodes.push_back(std::move(n));
  ++version_;
  return id;
}

const ModeGraph::Edge* ModeGraph::find_child(NodeId rep, Feature f) const {
  for (const auto& e : state_.nodes[rep].children)
    if (e.feature == f) return &e;
  return nullptr;
}

ModeGraph::Ref ModeGraph::child(Ref r, Feature f) {
  Ref rr = find(r);
  if (const Edge* e = find_child(rr.node, f)) return Ref{e->target, static_cast<bool>(e->parity ^ rr.parity)};
  std::int8_t inherited = state_.nodes[rr.node].constant;
  int cause = state_.nodes[rr.node].constant_cause;
  NodeId n = new_node(inherited);
  state_.nodes[n].constant_cause = cause;
  state_.nodes[rr.node].children.push_back(Edge{f, n, false});
  return Ref{n, rr.parity};
}

ModeGraph::Ref ModeGraph::resolve(const Path& p) {
  if (p.empty()) throw std::invalid_argument("empty path");
  NodeId root;
  if (auto it = state_.roots.find(p.front()); it != state_.roots.end()) {
    root = it->second;
  } else {
    root = new_node(-1);
    state_.roots.emplace(p.front(), root);
  }
  Ref r{root, false};
  for (std::size_t i = 1; i < p.size(); ++i) r = child(r, p[i]);
  return r;
}

std::optional<ModeGraph::Ref> ModeGraph::resolve_existing(const Path& p) const {
  if (p.empty()) return std::nullopt;
  auto it = state_.roots.find(p.front());
  if (it == state_.roots.end()) return std::nullopt;
  Ref r{it->second, false};
  for (std::size_t i = 1; i < p.size(); ++i) {
    Ref rr = find(r);
    const Edge* e = find_child(rr.node, p[i]);
    if (!e) return std::nullopt;
    r = Ref{e->target, static_cast<bool>(e->parity ^ rr.parity)};
  }
  return r;
}

int ModeGraph::constant_of(Ref r) const {
  Ref rr = find(r);
  int c = state_.nodes[rr.node].constant;
  return c < 0 ? -1 : (c ^ static_cast<int>(rr.parity));
}

int ModeGraph::fact_value(Ref r) const {
  Ref rr = find(r);
  const Node& n = state_.nodes[rr.node];
  if (n.constant >= 0) return n.constant ^ static_cast<int>(rr.parity);
  if (n.value >= 0) return n.value ^ static_cast<int>(rr.parity);
  return -1;
}

void ModeGraph::assign_value(Ref r, int value, int cause) {
  Ref rr = find(r);
  int target = value ^ static_cast<int>(rr.parity);
  Node& n = state_.nodes[rr.node];
  if (n.constant >= 0 && n.constant != target) throw Clash{cause, n.constant_cause};
  if (n.value >= 0) {
    if (n.value != target) throw Clash{cause, n.value_cause};
    return;
  }
  n.value = static_cast<std::int8_t>(target);
  n.value_cause = cause;
  ++version_;
}

void ModeGraph::assign_constant(Ref r, int value, int cause) {
  std::vector<std::pair<Ref, int>> work{{r, value}};
  while (!work.empty()) {
    auto [ref, v] = work.back();
    work.pop_back();
    Ref rr = find(ref);
    int target = v ^ static_cast<int>(rr.parity);
    Node& n = state_.nodes[rr.node];
    if (n.constant == target) continue;
    if (n.constant >= 0) throw Clash{cause, n.constant_cause};
    if (n.value >= 0 && n.value != target) throw Clash{cause, n.value_cause};
    n.constant = static_cast<std::int8_t>(target);
    n.constant_cause = cause;
    ++version_;
    for (const auto& e : n.children) work.emplace_back(Ref{e.target, e.parity}, target);
  }
}

void ModeGraph::unite(Ref a, Ref b, bool inverted, int cause) {
  struct Pending {
    Ref x;
    Ref y;
    bool rel;  // m/x = m/y xor rel
  };
  std::vector<Pending> work{{a, b, inverted}};
  while (!work.empty()) {
    Pending w = work.back();
    work.pop_back();
    Ref rx = find(w.x);
    Ref ry = find(w.y);
    bool t = rx.parity ^ ry.parity ^ w.rel;  // m/rx = m/ry xor t
    if (rx.node == ry.node) {
      if (t) throw Clash{cause, kNoCause};
      continue;
    }
    NodeId root = rx.node;
    NodeId sub = ry.node;
    if (state_.nodes[root].size < state_.nodes[sub].size) std::swap(root, sub);
    state_.nodes[sub].parent = root;
    state_.nodes[sub].parity = t;
    state_.nodes[root].size += state_.nodes[sub].size;
    ++version_;

    std::vector<Edge> moved = std::move(state_.nodes[sub].children);
    state_.nodes[sub].children.clear();
    const std::int8_t sub_value = state_.nodes[sub].value;
    const std::int8_t sub_constant = state_.nodes[sub].constant;
    const int sub_value_cause = state_.nodes[sub].value_cause;
    const int sub_constant_cause = state_.nodes[sub].constant_cause;

    for (const auto& e : moved) {
      bool p = e.parity ^ t;  // m/root⟨f⟩ = m/e.target xor p
      if (const Edge* mine = find_child(root, e.feature)) {
        work.push_back(Pending{Ref{mine->target, mine->parity}, Ref{e.target, p}, false});
      } else {
        state_.nodes[root].children.push_back(Edge{e.feature, e.target, p});
        if (int c = state_.nodes[root].constant; c >= 0)
          assign_constant(Ref{e.target, p}, c, state_.nodes[root].constant_cause);
      }
    }
    try {
      if (sub_value >= 0) assign_value(Ref{root, false}, sub_value ^ static_cast<int>(t), sub_value_cause);
      if (sub_constant >= 0)
        assign_constant(Ref{root, false}, sub_constant ^ static_cast<int>(t), sub_constant_cause);
    } catch (Clash& c) {
      // the clash is between two stored facts, brought together by this link
      throw Clash{cause, c.cause == sub_value_cause || c.cause == sub_constant_cause ? c.other : c.cause};
    }
  }
}

// ---------------------------------------------------------------------------
// residual R constraints

void ModeGraph::propagate_residuals() {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < state_.residuals.size();) {
      auto before = version_;
      if (reduce_residual(i)) {
        state_.residuals.erase(state_.residuals.begin() + static_cast<std::ptrdiff_t>(i));
        again = true;
        continue;
      }
      if (version_ != before) again = true;
      ++i;
    }
  }
}

// Returns true when the residual is discharged.
bool ModeGraph::reduce_residual(std::size_t index) {
  const int cause = state_.residuals[index].cause;
  std::vector<Ref> ms;
  for (const auto& m : state_.residuals[index].members) ms.push_back(find(m));

  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (constant_of(ms[i]) == 1) {
      for (std::size_t j = 0; j < ms.size(); ++j)
        if (j != i) assign_constant(ms[j], 0, cause);
      return true;
    }
  }
  std::size_t before = ms.size();
  std::erase_if(ms, [&](const Ref& r) { return constant_of(r) == 0; });
  if (ms.size() != before) ++version_;

  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (ms[i].node != ms[j].node) continue;
      if (ms[i].parity == ms[j].parity) {
        // two equal submodes cannot both be out anywhere
        assign_constant(ms[i], 0, cause);
        state_.residuals[index].members = ms;
        return false;
      }
      // s and ¬s already supply exactly one out everywhere
      for (std::size_t k = 0; k < ms.size(); ++k)
        if (k != i && k != j) assign_constant(ms[k], 0, cause);
      return true;
    }
  }

  switch (ms.size()) {
    case 0:
      throw Clash{cause, kNoCause};
    case 1:
      assign_constant(ms[0], 1, cause);
      return true;
    case 2:
      unite(ms[0], ms[1], true, cause);
      return true;
    default:
      break;
  }
  state_.residuals[index].members = ms;
  point_propagate(state_.residuals[index]);
  return false;
}

// Pointwise propagation over paths materialized in every member (or
// determined by an inherited constant).
void ModeGraph::point_propagate(const Residual& res) {
  struct Member {
    bool real;
    Ref ref;
    int constant;  // for virtual members
  };
  using Key = std::vector<std::pair<std::uint32_t, bool>>;
  auto key_of = [&](const std::vector<Member>& ms) {
    Key k;
    for (const auto& m : ms) {
      if (m.real) {
        Ref r = find(m.ref);
        k.emplace_back(r.node, r.parity);
      } else {
        k.emplace_back(UINT32_MAX - static_cast<std::uint32_t>(m.constant), false);
      }
    }
    return k;
  };

  std::vector<Member> start;
  for (const auto& r : res.members) start.push_back(Member{true, r, -1});
  std::set<Key> visited{key_of(start)};
  std::deque<std::vector<Member>> queue{start};

  while (!queue.empty()) {
    auto tuple = std::move(queue.front());
    queue.pop_front();
    int outs = 0;
    std::vector<std::size_t> unknown;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      int v = tuple[i].real ? fact_value(tuple[i].ref) : tuple[i].constant;
      if (v == 1) ++outs;
      if (v < 0) unknown.push_back(i);
    }
    if (outs >= 2) throw Clash{res.cause, kNoCause};
    if (outs == 1) {
      for (auto i : unknown) assign_value(tuple[i].ref, 0, res.cause);
    } else if (unknown.empty()) {
      throw Clash{res.cause, kNoCause};
    } else if (unknown.size() == 1) {
      assign_value(tuple[unknown.front()].ref, 1, res.cause);
    }

    std::vector<Feature> features;
    for (const auto& m : tuple) {
      if (!m.real) continue;
      Ref r = find(m.ref);
      for (const auto& e : state_.nodes[r.node].children) features.push_back(e.feature);
    }
    std::sort(features.begin(), features.end());
    features.erase(std::unique(features.begin(), features.end()), features.end());

    for (const auto& f : features) {
      std::vector<Member> next;
      bool ok = true;
      for (const auto& m : tuple) {
        if (!m.real) {
          next.push_back(m);
          continue;
        }
        Ref r = find(m.ref);
        if (const Edge* e = find_child(r.node, f)) {
          next.push_back(Member{true, Ref{e->target, static_cast<bool>(e->parity ^ r.parity)}, -1});
        } else if (int c = constant_of(r); c >= 0) {
          next.push_back(Member{false, r, c});
        } else {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (visited.insert(key_of(next)).second) queue.push_back(std::move(next));
    }
  }
}

// ---------------------------------------------------------------------------
// public interface

SolveOutcome ModeGraph::add(const ModeConstraint& c) {
  if (state_.contradiction) return outcome();
  const int cause = static_cast<int>(state_.causes.size());
  state_.causes.push_back(c.provenance);
  try {
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, PointValue>) {
            assign_value(resolve(b.path), b.value == ModeValue::in ? 0 : 1, cause);
          } else if constexpr (std::is_same_v<T, ConstantSubmode>) {
            assign_constant(resolve(b.path), b.value == ModeValue::in ? 0 : 1, cause);
          } else if constexpr (std::is_same_v<T, SubmodeLink>) {
            Ref x = resolve(b.first);
            Ref y = resolve(b.second);
            unite(x, y, b.inverted, cause);
          } else {
            Residual r{{}, cause};
            for (const auto& m : b.members) {
              Ref x = resolve(m.path);
              x.parity ^= m.inverted;
              r.members.push_back(x);
            }
            state_.residuals.push_back(std::move(r));
          }
        },
        c.body);
    propagate_residuals();
  } catch (const Clash& clash) {
    state_.contradiction = true;
    state_.trace.clear();
    for (int idx : {clash.cause, clash.other})
      if (idx >= 0 && (state_.trace.empty() || !(state_.trace.back() == state_.causes[idx])))
        state_.trace.push_back(state_.causes[idx]);
  }
  return outcome();
}

SolveOutcome ModeGraph::add_all(std::span<const ModeConstraint> cs) {
  for (const auto& c : cs)
    if (!add(c).consistent()) break;
  return outcome();
}

SolveOutcome ModeGraph::outcome() const {
  SolveOutcome o;
  if (state_.contradiction) {
    o.status = SolveStatus::contradiction;
    o.trace = state_.trace;
  }
  return o;
}

GraphSnapshot ModeGraph::snapshot() {
  saved_.push_back(state_);
  return GraphSnapshot{id_, saved_.size() - 1};
}

void ModeGraph::rollback(GraphSnapshot token) {
  if (token.graph != id_ || token.depth >= saved_.size()) throw StaleSnapshot("stale mode-graph snapshot");
  state_ = saved_[token.depth];
  saved_.resize(token.depth + 1);
}

std::vector<ModeEntry> ModeGraph::principal_mode() const {
  if (state_.contradiction) throw std::logic_error("principal mode of a contradictory graph");
  std::vector<ModeEntry> out;
  std::set<NodeId> expanded;
  auto fact_of = [&](Ref r) {
    Ref rr = find(r);
    const Node& n = state_.nodes[rr.node];
    if (n.constant >= 0) return (n.constant ^ rr.parity) ? ModeFact::OUT : ModeFact::IN;
    if (n.value >= 0) return (n.value ^ rr.parity) ? ModeFact::out : ModeFact::in;
    return ModeFact::unknown;
  };
  std::function<void(Ref, Path&)> walk = [&](Ref r, Path& path) {
    out.push_back(ModeEntry{path, fact_of(r)});
    Ref rr = find(r);
    if (!expanded.insert(rr.node).second) return;
    for (const auto& e : state_.nodes[rr.node].children) {
      path.push_back(e.feature);
      walk(Ref{e.target, static_cast<bool>(e.parity ^ rr.parity)}, path);
      path.pop_back();
    }
    expanded.erase(rr.node);
  };
  for (const auto& [f, node] : state_.roots) {
    Path path{f};
    walk(Ref{node, false}, path);
  }
  std::sort(out.begin(), out.end(), [](const ModeEntry& a, const ModeEntry& b) { return path_display_less(a.path, b.path); });
  return out;
}

ModeFact ModeGraph::fact_at(const Path& p) const {
  if (p.empty()) return ModeFact::unknown;
  auto it = state_.roots.find(p.front());
  if (it == state_.roots.end()) return ModeFact::unknown;
  Ref r{it->second, false};
  for (std::size_t i = 1; i < p.size(); ++i) {
    Ref rr = find(r);
    const Edge* e = find_child(rr.node, p[i]);
    if (!e) {
      int c = constant_of(rr);
      if (c < 0) return ModeFact::unknown;
      return c ? ModeFact::OUT : ModeFact::IN;
    }
    r = Ref{e->target, static_cast<bool>(e->parity ^ rr.parity)};
  }
  Ref rr = find(r);
  const Node& n = state_.nodes[rr.node];
  if (n.constant >= 0) return (n.constant ^ rr.parity) ? ModeFact::OUT : ModeFact::IN;
  if (n.value >= 0) return (n.value ^ rr.parity) ? ModeFact::out : ModeFact::in;
  return ModeFact::unknown;
}

SolveOutcome check_mode_consistency(std::span<const ModeConstraint> cs) {
  ModeGraph g;
  return g.add_all(cs);
}

ModeGraph solve_modes(std::span<const ModeConstraint> cs) {
  ModeGraph g;
  g.add_all(cs);
  return g;
}

}  // namespace ghcfix
