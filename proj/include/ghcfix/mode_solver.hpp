#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghcfix/constraints.hpp"

namespace ghcfix {

enum class SolveStatus : std::uint8_t { consistent, contradiction };

struct SolveOutcome {
  SolveStatus status = SolveStatus::consistent;
  std::vector<Provenance> trace;  // nonempty iff contradiction

  bool consistent() const { return status == SolveStatus::consistent; }
};

/// Solved information at one materialized path of a mode graph.
enum class ModeFact : std::uint8_t { unknown, in, out, IN, OUT };

const char* mode_fact_name(ModeFact f);

struct ModeEntry {
  Path path;
  ModeFact fact = ModeFact::unknown;
};

/// Token returned by snapshot(); valid until a rollback to an earlier token.
struct GraphSnapshot {
  std::uint64_t graph = 0;
  std::size_t depth = 0;
};

class StaleSnapshot : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Principal-mode solver. Nodes are submodes; a polarity-carrying union-find
/// relates them (m/a = m/b or m/a = ¬m/b) and merging two classes merges
/// their same-feature children. R constraints over three or more members are
/// kept residual and propagated to a fixpoint.
class ModeGraph {
 public:
  ModeGraph();

  /// Integrates one constraint. After a contradiction the graph is frozen
  /// and further adds return the same outcome.
  SolveOutcome add(const ModeConstraint& c);
  SolveOutcome add_all(std::span<const ModeConstraint> cs);

  bool contradictory() const { return state_.contradiction; }
  SolveOutcome outcome() const;

  GraphSnapshot snapshot();
  void rollback(GraphSnapshot token);

  /// Every materialized path with its solved value, sorted by path.
  /// Throws std::logic_error on a contradictory graph.
  std::vector<ModeEntry> principal_mode() const;

  /// Solved fact at a path; unknown if the path is not materialized.
  ModeFact fact_at(const Path& p) const;

  std::size_t node_count() const { return state_.nodes.size(); }
  std::size_t residual_count() const { return state_.residuals.size(); }

 private:
  using NodeId = std::uint32_t;

  struct Ref {
    NodeId node;
    bool parity;  // the submode is m/node xor parity
  };

  struct Edge {
    Feature feature;
    NodeId target;
    bool parity;
  };

  struct Node {
    NodeId parent;
    bool parity = false;  // m/this = m/parent xor parity
    std::uint32_t size = 1;
    std::int8_t value = -1;     // at a representative: 0 in, 1 out
    std::int8_t constant = -1;  // at a representative: 0 IN, 1 OUT
    int value_cause = -1;
    int constant_cause = -1;
    std::vector<Edge> children;  // at a representative
  };

  struct Residual {
    std::vector<Ref> members;
    int cause;
  };

  struct State {
    std::vector<Node> nodes;
    std::map<Feature, NodeId> roots;
    std::vector<Residual> residuals;
    std::vector<Provenance> causes;
    bool contradiction = false;
    std::vector<Provenance> trace;
  };

  struct Clash {
    int cause;
    int other;
  };

  Ref find(Ref r) const;
  NodeId new_node(std::int8_t constant);
  Ref resolve(const Path& p);
  std::optional<Ref> resolve_existing(const Path& p) const;
  Ref child(Ref r, Feature f);
  const Edge* find_child(NodeId rep, Feature f) const;

  void assign_value(Ref r, int value, int cause);
  void assign_constant(Ref r, int value, int cause);
  void unite(Ref a, Ref b, bool inverted, int cause);
  void propagate_residuals();
  bool reduce_residual(std::size_t index);
  void point_propagate(const Residual& res);

  int fact_value(Ref r) const;   // 0 in, 1 out, -1 unknown (includes constants)
  int constant_of(Ref r) const;  // 0 IN, 1 OUT, -1 none

  State state_;
  std::vector<State> saved_;
  std::uint64_t id_;
  std::uint64_t version_ = 0;
};

SolveOutcome check_mode_consistency(std::span<const ModeConstraint> cs);

/// Solves the constraints and returns the graph (for listings).
ModeGraph solve_modes(std::span<const ModeConstraint> cs);

}  // namespace ghcfix
