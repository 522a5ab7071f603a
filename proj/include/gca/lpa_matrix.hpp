#pragma once

// Path-space representation of L(E) for a finite acyclic graph. Block w has
// the paths with source w as its basis; s_e sends mu to e mu when
// s(e) = r(mu), and p_v projects onto paths with range v. The representation
// is faithful on acyclic graphs, which makes it an independent equality oracle.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gca/graph.hpp"
#include "gca/lpa.hpp"
#include "gca/walks.hpp"

namespace gca {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_.at(r * cols_ + c); }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RepresentationBlock {
  VertexIndex source = 0;
  std::vector<Path> basis;
  RationalMatrix matrix;  // column j = image of basis[j]

  friend bool operator==(const RepresentationBlock&, const RepresentationBlock&) = default;
};

/// Basis paths of every block, keyed by source. Throws on a cycle.
inline std::map<VertexIndex, std::vector<Path>> path_space_basis(const Graph& g) {
  if (has_cycle(g)) throw PreconditionError("represent_acyclic: graph has a cycle");
  std::map<VertexIndex, std::vector<Path>> out;
  for (VertexIndex w : sources(g)) {
    std::vector<Path>& basis = out[w];
    std::vector<Path> stack{Path::trivial(w)};
    while (!stack.empty()) {
      Path mu = std::move(stack.back());
      stack.pop_back();
      for (EdgeIndex e : g.out_edges(mu.range)) {
        Path longer{{e}, mu.source, g.dst(e)};
        longer.edges.insert(longer.edges.end(), mu.edges.begin(), mu.edges.end());
        stack.push_back(std::move(longer));
      }
      basis.push_back(std::move(mu));
    }
    std::sort(basis.begin(), basis.end());
  }
  return out;
}

/// Matrix of `a` on each block. A term s_mu s_nu^* sends rho = nu rho' to
/// mu rho' and kills every basis path that does not factor through nu.
inline std::vector<RepresentationBlock> represent_acyclic(const Graph& g, const LpaElement& a) {
  if (a.graph_ptr() && !(a.graph() == g)) throw LpaError("represent_acyclic: element lives over another graph");
  std::vector<RepresentationBlock> blocks;
  for (auto& [w, basis] : path_space_basis(g)) {
    RepresentationBlock blk;
    blk.source = w;
    blk.matrix = RationalMatrix(basis.size(), basis.size());
    std::map<std::vector<EdgeIndex>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i].edges, i);
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const Path& rho = basis[col];
      for (const auto& [t, c] : a.terms()) {
        if (detail::range_of(g, t.nu, t.source) != rho.range) continue;
        if (!detail::is_prefix(t.nu, rho.edges)) continue;
        std::vector<EdgeIndex> image = detail::joined(t.mu, rho.edges, t.nu.size());
        auto it = index.find(image);
        if (it == index.end()) throw InternalError("represent_acyclic: image left the block basis");
        blk.matrix(it->second, col) += c;
      }
    }
    blk.basis = std::move(basis);
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

inline bool represents_zero(const std::vector<RepresentationBlock>& blocks) {
  return std::all_of(blocks.begin(), blocks.end(), [](const RepresentationBlock& b) { return b.matrix.is_zero(); });
}

}  // namespace gca
