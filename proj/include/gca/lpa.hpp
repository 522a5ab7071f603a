#pragma once

// Leavitt path algebra L(E) over the rationals.
//
// Elements are finite rational combinations of terms s_mu s_nu^* with
// s(mu) = s(nu). Products follow the path-factorization rule, and equality is
// decided by rewriting to the canonical basis in which no term has mu and nu
// ending (at the source side) in the same special edge, where the special
// edge of a receiving vertex v is the least-id edge of r^{-1}(v).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gca/graph.hpp"

namespace gca {

using Rational = boost::multiprecision::cpp_rational;

class LpaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// s_mu s_nu^*; both paths share `source`. Paths are edge sequences in written
/// order (first edge at the range end).
struct LpaTerm {
  std::vector<EdgeIndex> mu;
  std::vector<EdgeIndex> nu;
  VertexIndex source = 0;

  friend auto operator<=>(const LpaTerm&, const LpaTerm&) = default;
  friend bool operator==(const LpaTerm&, const LpaTerm&) = default;
};

namespace detail {

inline VertexIndex range_of(const Graph& g, const std::vector<EdgeIndex>& p, VertexIndex source) {
  return p.empty() ? source : g.dst(p.front());
}

inline bool is_prefix(const std::vector<EdgeIndex>& a, const std::vector<EdgeIndex>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

inline std::vector<EdgeIndex> joined(const std::vector<EdgeIndex>& a, const std::vector<EdgeIndex>& b,
                                     std::size_t from = 0) {
  std::vector<EdgeIndex> out = a;
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(from), b.end());
  return out;
}

}  // namespace detail

/// (s_mu s_nu^*)(s_gamma s_lambda^*): s_{mu gamma'} s_lambda^* if gamma = nu gamma',
/// s_mu s_{lambda nu'}^* if nu = gamma nu', zero otherwise.
inline std::optional<LpaTerm> multiply_terms(const Graph& g, const LpaTerm& a, const LpaTerm& b) {
  if (detail::range_of(g, a.nu, a.source) != detail::range_of(g, b.mu, b.source)) return std::nullopt;
  if (detail::is_prefix(a.nu, b.mu)) {
    return LpaTerm{detail::joined(a.mu, b.mu, a.nu.size()), b.nu, b.source};
  }
  if (detail::is_prefix(b.mu, a.nu)) {
    return LpaTerm{a.mu, detail::joined(b.nu, a.nu, b.mu.size()), a.source};
  }
  return std::nullopt;
}

class LpaElement {
 public:
  using TermMap = std::map<LpaTerm, Rational>;

  LpaElement() = default;
  explicit LpaElement(std::shared_ptr<const Graph> g) : graph_(std::move(g)) {}

  static LpaElement vertex(std::shared_ptr<const Graph> g, VertexIndex v) {
    LpaElement x(std::move(g));
    x.add(LpaTerm{{}, {}, v}, 1);
    return x;
  }
  /// s_mu for a path mu.
  static LpaElement path(std::shared_ptr<const Graph> g, const Path& mu) {
    LpaElement x(std::move(g));
    x.add(LpaTerm{mu.edges, {}, mu.source}, 1);
    return x;
  }
  /// s_mu^*.
  static LpaElement path_star(std::shared_ptr<const Graph> g, const Path& mu) {
    LpaElement x(std::move(g));
    x.add(LpaTerm{{}, mu.edges, mu.source}, 1);
    return x;
  }
  static LpaElement edge(std::shared_ptr<const Graph> g, EdgeIndex e) {
    Path p = edge_path(*g, e);
    return path(std::move(g), p);
  }
  static LpaElement edge_star(std::shared_ptr<const Graph> g, EdgeIndex e) {
    Path p = edge_path(*g, e);
    return path_star(std::move(g), p);
  }
  /// s_mu s_nu^* for paths with a common source.
  static LpaElement monomial(std::shared_ptr<const Graph> g, const Path& mu, const Path& nu, Rational c = 1) {
    if (mu.source != nu.source) throw LpaError("monomial: s(mu) != s(nu)");
    LpaElement x(std::move(g));
    x.add(LpaTerm{mu.edges, nu.edges, mu.source}, std::move(c));
    return x;
  }

  const Graph& graph() const {
    if (!graph_) throw LpaError("element has no ambient graph");
    return *graph_;
  }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * term, dropping the entry if it cancels.
  void add(const LpaTerm& t, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LpaElement& operator+=(const LpaElement& o) {
    adopt(o);
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
  }
  LpaElement& operator-=(const LpaElement& o) {
    adopt(o);
    for (const auto& [t, c] : o.terms_) add(t, -c);
    return *this;
  }
  LpaElement& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [t, v] : terms_) v *= c;
    return *this;
  }

  friend LpaElement operator+(LpaElement a, const LpaElement& b) { return a += b; }
  friend LpaElement operator-(LpaElement a, const LpaElement& b) { return a -= b; }
  friend LpaElement operator-(LpaElement a) { return a *= Rational(-1); }
  friend LpaElement operator*(const Rational& c, LpaElement a) { return a *= c; }
  friend LpaElement operator*(const LpaElement& a, const LpaElement& b);

  /// Syntactic equality of stored terms; algebraic equality is lpa_equal.
  friend bool operator==(const LpaElement& a, const LpaElement& b) { return a.terms_ == b.terms_; }

 private:
  // Zero elements built without a graph take the other operand's graph.
  void adopt(const LpaElement& o) {
    if (!graph_) {
      graph_ = o.graph_;
      return;
    }
    if (o.graph_ && o.graph_ != graph_ && !(*o.graph_ == *graph_)) {
      throw LpaError("elements live over different graphs");
    }
  }

  std::shared_ptr<const Graph> graph_;
  TermMap terms_;
};

inline LpaElement lpa_mul(const LpaElement& a, const LpaElement& b) {
  LpaElement out = LpaElement(a.graph_ptr() ? a.graph_ptr() : b.graph_ptr());
  if (a.graph_ptr() && b.graph_ptr() && a.graph_ptr() != b.graph_ptr() && !(a.graph() == b.graph())) {
    throw LpaError("lpa_mul: elements live over different graphs");
  }
  if (a.is_zero() || b.is_zero()) return out;
  const Graph& g = out.graph();
  for (const auto& [ta, ca] : a.terms()) {
    for (const auto& [tb, cb] : b.terms()) {
      if (auto t = multiply_terms(g, ta, tb)) out.add(*t, ca * cb);
    }
  }
  return out;
}

inline LpaElement operator*(const LpaElement& a, const LpaElement& b) { return lpa_mul(a, b); }

/// Involution: (c s_mu s_nu^*)^* = conj(c) s_nu s_mu^*; rationals are self-conjugate.
inline LpaElement lpa_star(const LpaElement& a) {
  LpaElement out(a.graph_ptr());
  for (const auto& [t, c] : a.terms()) out.add(LpaTerm{t.nu, t.mu, t.source}, c);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form

inline bool is_special_edge(const Graph& g, EdgeIndex e) { return g.in_edges(g.dst(e)).front() == e; }

/// A term is reducible when mu and nu both end in the same special edge.
inline bool is_reducible(const Graph& g, const LpaTerm& t) {
  return !t.mu.empty() && !t.nu.empty() && t.mu.back() == t.nu.back() && is_special_edge(g, t.mu.back());
}

namespace detail {

// s_{mu' gamma} s_{nu' gamma}^* = s_mu' s_nu'^* - sum_{f in r^{-1}(v), f != gamma} s_{mu' f} s_{nu' f}^*
// where gamma is special for v = r(gamma).
inline void rewrite_once(const Graph& g, LpaTerm t, const Rational& c, LpaElement& out) {
  EdgeIndex gamma = t.mu.back();
  VertexIndex v = g.dst(gamma);
  t.mu.pop_back();
  t.nu.pop_back();
  for (EdgeIndex f : g.in_edges(v)) {
    if (f == gamma) continue;
    LpaTerm side{t.mu, t.nu, g.src(f)};
    side.mu.push_back(f);
    side.nu.push_back(f);
    out.add(side, -c);
  }
  t.source = v;
  out.add(t, c);
}

}  // namespace detail

/// Rewrites to the canonical basis. Each rewrite strips a shared special
/// tail edge, so it terminates; the basis is linearly independent, so the
/// result is unique.
inline LpaElement normal_form(const LpaElement& a) {
  LpaElement out(a.graph_ptr());
  if (a.is_zero()) return out;
  const Graph& g = a.graph();
  for (const auto& [term, c] : a.terms()) {
    LpaTerm t = term;
    // Peel reducible tails; every side term produced is already irreducible.
    while (is_reducible(g, t)) {
      EdgeIndex gamma = t.mu.back();
      VertexIndex v = g.dst(gamma);
      t.mu.pop_back();
      t.nu.pop_back();
      for (EdgeIndex f : g.in_edges(v)) {
        if (f == gamma) continue;
        LpaTerm side{t.mu, t.nu, g.src(f)};
        side.mu.push_back(f);
        side.nu.push_back(f);
        out.add(side, -c);
      }
      t.source = v;
    }
    out.add(t, c);
  }
  return out;
}

/// Normal form reached by rewriting one randomly chosen reducible term at a
/// time. Used to exercise confluence; results must match normal_form.
template <class Rng>
LpaElement normal_form_randomized(const LpaElement& a, Rng& rng) {
  LpaElement cur = a;
  if (cur.is_zero()) return cur;
  const Graph& g = cur.graph();
  for (;;) {
    std::vector<LpaElement::TermMap::const_iterator> reducible;
    for (auto it = cur.terms().begin(); it != cur.terms().end(); ++it) {
      if (is_reducible(g, it->first)) reducible.push_back(it);
    }
    if (reducible.empty()) return cur;
    std::uniform_int_distribution<std::size_t> pick(0, reducible.size() - 1);
    auto it = reducible[pick(rng)];
    LpaTerm t = it->first;
    Rational c = it->second;
    cur.add(t, -c);
    LpaElement step(cur.graph_ptr());
    detail::rewrite_once(g, t, c, step);
    cur += step;
  }
}

inline bool lpa_equal(const LpaElement& a, const LpaElement& b) { return normal_form(a - b).is_zero(); }

// ---------------------------------------------------------------------------
// Text form: 2·s_[e1.e2]·s*_[f] - p_[v] + 1/2·s_[g]

namespace detail {

inline std::string render_edges(const Graph& g, const std::vector<EdgeIndex>& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += g.edge(p[i]).id;
  }
  return out;
}

inline std::string render_term(const Graph& g, const LpaTerm& t) {
  if (t.mu.empty() && t.nu.empty()) return "p_[" + g.vertex_id(t.source) + "]";
  std::string out;
  if (!t.mu.empty()) out += "s_[" + render_edges(g, t.mu) + "]";
  if (!t.nu.empty()) {
    if (!out.empty()) out += "·";
    out += "s*_[" + render_edges(g, t.nu) + "]";
  }
  return out;
}

}  // namespace detail

inline std::string render(const LpaElement& a) {
  if (a.is_zero()) return "0";
  const Graph& g = a.graph();
  std::string out;
  bool first = true;
  for (const auto& [t, c] : a.terms()) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += mag.str() + "·";
    out += detail::render_term(g, t);
    first = false;
  }
  return out;
}

namespace detail {

class ElementParser {
 public:
  ElementParser(std::shared_ptr<const Graph> g, std::string_view text) : g_(std::move(g)), s_(text) {}

  LpaElement parse() {
    skip_ws();
    LpaElement total(g_);
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    } else if (peek() == '+') {
      ++pos_;
    }
    for (;;) {
      LpaElement t = term();
      if (negate) t = -t;
      total += t;
      skip_ws();
      if (pos_ >= s_.size()) break;
      char op = s_[pos_];
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      ++pos_;
      negate = op == '-';
    }
    return total;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw LpaError("parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n')) ++pos_;
  }
  bool eat(std::string_view tok) {
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool eat_separator() {
    skip_ws();
    if (eat("·") || eat("*")) {
      skip_ws();
      return true;
    }
    return false;
  }

  LpaElement term() {
    LpaElement acc = factor();
    while (eat_separator()) acc = lpa_mul(acc, factor());
    return acc;
  }

  std::vector<std::string> bracket_ids() {
    if (!eat("[")) fail("expected '['");
    std::vector<std::string> ids;
    std::string cur;
    for (;;) {
      if (pos_ >= s_.size()) fail("unterminated '['");
      char ch = s_[pos_++];
      if (ch == ']') break;
      if (ch == '.') {
        ids.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    ids.push_back(cur);
    for (const auto& id : ids) {
      if (id.empty()) fail("empty id inside brackets");
    }
    return ids;
  }

  Path path_from(const std::vector<std::string>& ids) {
    try {
      return make_path(*g_, ids);
    } catch (const GraphError& e) {
      fail(e.what());
    }
  }

  LpaElement factor() {
    skip_ws();
    if (eat("s*_")) return LpaElement::path_star(g_, path_from(bracket_ids()));
    if (eat("s_")) return LpaElement::path(g_, path_from(bracket_ids()));
    if (eat("p_")) {
      auto ids = bracket_ids();
      if (ids.size() != 1) fail("p_[...] takes a single vertex id");
      auto v = g_->find_vertex(ids[0]);
      if (!v) fail("unknown vertex id \"" + ids[0] + "\"");
      return LpaElement::vertex(g_, *v);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    if (start == pos_) fail("expected a factor");
    std::string num(s_.substr(start, pos_ - start));
    Rational c;
    try {
      c = Rational(num);
    } catch (const std::exception&) {
      fail("bad rational \"" + num + "\"");
    }
    // A bare scalar times nothing is not an element of a non-unital algebra.
    if (!eat_separator()) {
      if (c == 0) return LpaElement(g_);
      fail("a scalar must multiply a generator");
    }
    LpaElement rest = term();
    return c * rest;
  }

  std::shared_ptr<const Graph> g_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the text form produced by render(); '*' is accepted in place of '·'.
/// Juxtaposed factors are multiplied with lpa_mul, so "s*_[e]·s_[e]" is valid.
inline LpaElement parse_element(std::shared_ptr<const Graph> g, std::string_view text) {
  return detail::ElementParser(std::move(g), text).parse();
}

}  // namespace gca
