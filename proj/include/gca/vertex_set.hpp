#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gca/graph.hpp"

namespace gca {

/// Subset of the vertices {0, ..., n-1} of some graph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe, false) {}
  VertexSet(std::size_t universe, const std::vector<VertexIndex>& members) : bits_(universe, false) {
    for (VertexIndex v : members) bits_.at(v) = true;
  }

  static VertexSet all(std::size_t universe) {
    VertexSet s(universe);
    s.bits_.assign(universe, true);
    return s;
  }
  /// Bit i of `mask` selects vertex i; only for universes of at most 64.
  static VertexSet from_mask(std::size_t universe, std::uint64_t mask) {
    VertexSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.bits_[i] = (mask >> i) & 1U;
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(VertexIndex v) const { return bits_.at(v); }
  void insert(VertexIndex v) { bits_.at(v) = true; }
  void erase(VertexIndex v) { bits_.at(v) = false; }

  std::size_t size() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }
  bool empty() const { return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; }); }

  std::vector<VertexIndex> members() const {
    std::vector<VertexIndex> out;
    for (VertexIndex v = 0; v < bits_.size(); ++v) {
      if (bits_[v]) out.push_back(v);
    }
    return out;
  }

  bool subset_of(const VertexSet& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] && !other.bits_.at(i)) return false;
    }
    return true;
  }
  bool intersects(const VertexSet& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] && other.bits_.at(i)) return true;
    }
    return false;
  }

  VertexSet operator|(const VertexSet& o) const {
    VertexSet r(*this);
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] || o.bits_.at(i);
    return r;
  }
  VertexSet operator&(const VertexSet& o) const {
    VertexSet r(*this);
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] && o.bits_.at(i);
    return r;
  }
  VertexSet operator-(const VertexSet& o) const {
    VertexSet r(*this);
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] && !o.bits_.at(i);
    return r;
  }

  const std::vector<bool>& mask() const { return bits_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Lexicographic order on ascending member lists; {a} < {a,b} < {b}.
inline bool lex_less(const VertexSet& a, const VertexSet& b) {
  auto ma = a.members();
  auto mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

inline std::vector<std::string> vertex_ids_of(const Graph& g, const VertexSet& s) {
  std::vector<std::string> out;
  for (VertexIndex v : s.members()) out.push_back(g.vertex_id(v));
  return out;
}

inline VertexSet vertex_set_of(const Graph& g, const std::vector<std::string>& ids) {
  VertexSet s(g.vertex_count());
  for (const auto& id : ids) s.insert(g.vertex(id));
  return s;
}

}  // namespace gca
