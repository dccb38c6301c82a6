#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ghcfix/constraints.hpp"
#include "ghcfix/mode_solver.hpp"

namespace ghcfix {

struct TypeEntry {
  Path path;
  std::optional<TypeClass> cls;
};

/// Principal-type solver: plain union-find over a feature graph, each class
/// carrying at most one TypeClass.
class TypeGraph {
 public:
  TypeGraph();

  SolveOutcome add(const TypeConstraint& c);
  SolveOutcome add_all(std::span<const TypeConstraint> cs);

  bool contradictory() const { return state_.contradiction; }
  SolveOutcome outcome() const;

  GraphSnapshot snapshot();
  void rollback(GraphSnapshot token);

  /// Materialized paths with their classes, sorted by path.
  /// Throws std::logic_error on a contradictory graph.
  std::vector<TypeEntry> principal_type() const;

  std::optional<TypeClass> class_at(const Path& p) const;

  /// True when both paths are materialized and lie in the same class.
  bool same_class(const Path& a, const Path& b) const;

  std::size_t node_count() const { return state_.nodes.size(); }

 private:
  using NodeId = std::uint32_t;

  struct Edge {
    Feature feature;
    NodeId target;
  };

  struct Node {
    NodeId parent;
    std::uint32_t size = 1;
    std::int8_t cls = -1;
    int cause = -1;
    std::vector<Edge> children;
  };

  struct State {
    std::vector<Node> nodes;
    std::map<Feature, NodeId> roots;
    std::vector<Provenance> causes;
    bool contradiction = false;
    std::vector<Provenance> trace;
  };

  struct Clash {
    int cause;
    int other;
  };

  NodeId find(NodeId n) const;
  NodeId new_node();
  NodeId resolve(const Path& p);
  std::optional<NodeId> resolve_existing(const Path& p) const;
  const Edge* find_child(NodeId rep, Feature f) const;
  void assign(NodeId n, int cls, int cause);
  void unite(NodeId a, NodeId b, int cause);

  State state_;
  std::vector<State> saved_;
  std::uint64_t id_;
};

SolveOutcome check_type_consistency(std::span<const TypeConstraint> cs);
TypeGraph solve_types(std::span<const TypeConstraint> cs);

}  // namespace ghcfix
