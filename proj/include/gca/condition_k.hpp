#pragma once

#include <optional>

#include "gca/graph.hpp"
#include "gca/walks.hpp"

namespace gca {

struct ConditionKVerdict {
  bool holds = true;
  /// First vertex (id order) on a cycle with exactly one return path.
  std::optional<VertexIndex> witness;
};

/// Return paths at v are walks v -> v whose interior avoids v.
inline WalkClass return_path_class(const Graph& g, VertexIndex v) {
  WalkQuery q;
  q.start = v;
  q.end = v;
  q.forbidden_interior = VertexSet(g.vertex_count(), {v});
  return walk_class(g, q);
}

/// Every vertex on a cycle must have at least two distinct return paths.
inline ConditionKVerdict condition_k(const Graph& g) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (return_path_class(g, v) == WalkClass::one) return {false, v};
  }
  return {true, std::nullopt};
}

}  // namespace gca
