#pragma once

// Single-copy discrimination power. A state sum_i p_i |i> separates f_i from
// f_j exactly when |p_i|^2 + |p_j|^2 = 1/2; the set of such pairs forms its
// discrimination graph. Three canonical blocks dominate every nontrivial
// single-copy state:
//
//   K4{a,b,c,d} = (|a>+|b>+|c>+|d>)/2            six internal pairs
//   <i,j>       = (|i>+|j>)/sqrt(2)              (i,k), (j,k) for k != i,j
//   E(i)        = a|i> + b sum_{k!=i} |k>        (i,k) for all k != i
//
// with a^2 = (N-3)/(2(N-2)) and b^2 = 1/(2(N-2)).

#include <paradisc/oracle.hpp>

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace paradisc {

using IndexPair = std::pair<Index, Index>;

/// A one-copy state indexed by label. Exact states carry every amplitude
/// as sign * sqrt(rational mass).
class SingleCopyState {
 public:
  static SingleCopyState exact(std::vector<ExactAmplitude> amps) {
    SingleCopyState s(amps.size());
    Rational total = 0;
    for (const auto& a : amps) {
      if (sgn(a.mass) < 0) throw std::invalid_argument("negative squared amplitude");
      if (a.sign != 1 && a.sign != -1) throw std::invalid_argument("sign must be +1 or -1");
      total += a.mass;
    }
    if (total != 1)
      throw std::invalid_argument("exact state not normalized: total mass " + to_string(total));
    s.exact_ = std::move(amps);
    s.values_.reserve(s.exact_.size());
    for (const auto& a : s.exact_) s.values_.push_back(a.value());
    return s;
  }

  /// Non-negative real amplitudes sqrt(mass_i).
  static SingleCopyState from_masses(const std::vector<Rational>& masses) {
    std::vector<ExactAmplitude> amps;
    amps.reserve(masses.size());
    for (const auto& m : masses) amps.push_back({m, 1});
    return exact(std::move(amps));
  }

  static SingleCopyState numeric(std::vector<Complex> amps) {
    SingleCopyState s(amps.size());
    double total = 0.0;
    for (const auto& v : amps) total += std::norm(v);
    if (std::abs(total - 1.0) > kFloatTolerance)
      throw std::invalid_argument("state not normalized: norm^2 = " + std::to_string(total));
    s.values_ = std::move(amps);
    return s;
  }

  std::size_t dimension() const { return values_.size(); }
  bool is_exact() const { return !exact_.empty(); }

  Complex amplitude(Index i) const {
    detail::check_index(i, dimension(), "state");
    return values_[i - 1];
  }
  /// Exact |p_i|^2; only valid on exact states.
  const Rational& mass(Index i) const {
    detail::check_index(i, dimension(), "state");
    if (!is_exact()) throw std::logic_error("mass() on a numeric state");
    return exact_[i - 1].mass;
  }
  double norm2(Index i) const { return std::norm(amplitude(i)); }

  /// The same state as a one-copy AmpState.
  AmpState to_amp_state() const {
    if (is_exact()) {
      std::map<BasisTuple, ExactAmplitude> amps;
      for (std::size_t k = 0; k < exact_.size(); ++k) amps.emplace(BasisTuple{k + 1}, exact_[k]);
      return AmpState::exact(dimension(), 1, std::move(amps));
    }
    std::map<BasisTuple, Complex> amps;
    for (std::size_t k = 0; k < values_.size(); ++k) amps.emplace(BasisTuple{k + 1}, values_[k]);
    return AmpState::numeric(dimension(), 1, amps);
  }

 private:
  explicit SingleCopyState(std::size_t n) {
    if (n < 1) throw std::invalid_argument("state needs N >= 1");
  }

  std::vector<Complex> values_;
  std::vector<ExactAmplitude> exact_;
};

/// Undirected graph on 1..N; edges stored as (i,j) with i < j in sorted order.
class DiscriminationGraph {
 public:
  explicit DiscriminationGraph(std::size_t n) : n_(n) {}

  std::size_t vertex_count() const { return n_; }
  const std::set<IndexPair>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  void add_edge(Index i, Index j) {
    detail::check_pair(i, j, n_);
    edges_.emplace(std::min(i, j), std::max(i, j));
  }
  bool has_edge(Index i, Index j) const {
    return edges_.count({std::min(i, j), std::max(i, j)}) > 0;
  }
  bool is_subgraph_of(const DiscriminationGraph& other) const {
    return n_ == other.n_ &&
           std::includes(other.edges_.begin(), other.edges_.end(), edges_.begin(), edges_.end());
  }
  bool is_complete() const { return edges_.size() == n_ * (n_ - 1) / 2; }

  friend bool operator==(const DiscriminationGraph& a, const DiscriminationGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::set<IndexPair> edges_;
};

inline bool copy_discriminates(const SingleCopyState& s, Index i, Index j) {
  detail::check_pair(i, j, s.dimension());
  if (s.is_exact()) return s.mass(i) + s.mass(j) == Rational(1, 2);
  return std::abs(s.norm2(i) + s.norm2(j) - 0.5) <= kFloatTolerance;
}

inline DiscriminationGraph discrimination_graph(const SingleCopyState& s) {
  DiscriminationGraph g(s.dimension());
  for (Index i = 1; i <= s.dimension(); ++i)
    for (Index j = i + 1; j <= s.dimension(); ++j)
      if (copy_discriminates(s, i, j)) g.add_edge(i, j);
  return g;
}

/// One of K4{a,b,c,d}, <i,j>, E(i) on an N-dimensional register. Indices are
/// kept sorted; blocks order as Pair < Quad < Star, then lexicographically.
class CanonicalBlock {
 public:
  enum class Kind { Pair = 0, Quad = 1, Star = 2 };

  static CanonicalBlock pair(std::size_t n, Index i, Index j) {
    return CanonicalBlock(Kind::Pair, n, {i, j});
  }
  static CanonicalBlock quad(std::size_t n, Index a, Index b, Index c, Index d) {
    return CanonicalBlock(Kind::Quad, n, {a, b, c, d});
  }
  static CanonicalBlock star(std::size_t n, Index i) { return CanonicalBlock(Kind::Star, n, {i}); }

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return n_; }
  const std::vector<Index>& indices() const { return indices_; }

  bool contains(Index x) const {
    return std::find(indices_.begin(), indices_.end(), x) != indices_.end();
  }

  std::string describe() const {
    std::ostringstream os;
    auto join = [&] {
      for (std::size_t k = 0; k < indices_.size(); ++k) os << (k ? "," : "") << indices_[k];
    };
    switch (kind_) {
      case Kind::Pair: os << '<'; join(); os << '>'; break;
      case Kind::Quad: os << "K4{"; join(); os << '}'; break;
      case Kind::Star: os << "E("; join(); os << ')'; break;
    }
    return os.str();
  }

  friend bool operator==(const CanonicalBlock& a, const CanonicalBlock& b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_ && a.indices_ == b.indices_;
  }
  friend bool operator<(const CanonicalBlock& a, const CanonicalBlock& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.indices_ < b.indices_;
  }

 private:
  CanonicalBlock(Kind kind, std::size_t n, std::vector<Index> idx)
      : kind_(kind), n_(n), indices_(std::move(idx)) {
    for (Index x : indices_) detail::check_index(x, n_, "block");
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
      throw IndexError("block indices must be distinct: " + describe());
    if (kind_ == Kind::Quad && n_ < 4) throw std::invalid_argument("K4 block needs N >= 4");
    if (kind_ == Kind::Star && n_ < 3) throw std::invalid_argument("E(i) block needs N >= 3");
  }

  Kind kind_;
  std::size_t n_;
  std::vector<Index> indices_;
};

inline SingleCopyState block_state(const CanonicalBlock& b) {
  const std::size_t n = b.dimension();
  std::vector<Rational> masses(n, Rational(0));
  switch (b.kind()) {
    case CanonicalBlock::Kind::Pair:
      for (Index x : b.indices()) masses[x - 1] = Rational(1, 2);
      break;
    case CanonicalBlock::Kind::Quad:
      for (Index x : b.indices()) masses[x - 1] = Rational(1, 4);
      break;
    case CanonicalBlock::Kind::Star: {
      const Rational rest = make_rational(1, 2 * static_cast<long>(n - 2));
      for (auto& m : masses) m = rest;
      masses[b.indices()[0] - 1] = make_rational(static_cast<long>(n - 3), 2 * static_cast<long>(n - 2));
      break;
    }
  }
  return SingleCopyState::from_masses(masses);
}

/// Whether `b` separates (i,j), decided combinatorially. E(i) at N = 4 has
/// all four masses equal to 1/4 and so behaves as the full K4.
inline bool block_discriminates(const CanonicalBlock& b, Index i, Index j) {
  detail::check_pair(i, j, b.dimension());
  switch (b.kind()) {
    case CanonicalBlock::Kind::Pair:
      return b.contains(i) != b.contains(j);
    case CanonicalBlock::Kind::Quad:
      return b.contains(i) && b.contains(j);
    case CanonicalBlock::Kind::Star:
      return b.dimension() == 4 || b.contains(i) || b.contains(j);
  }
  return false;
}

inline DiscriminationGraph block_graph(const CanonicalBlock& b) {
  DiscriminationGraph g(b.dimension());
  for (Index i = 1; i <= b.dimension(); ++i)
    for (Index j = i + 1; j <= b.dimension(); ++j)
      if (block_discriminates(b, i, j)) g.add_edge(i, j);
  return g;
}

/// Every canonical block that separates (i,j), in block order.
inline std::vector<CanonicalBlock> blocks_covering(std::size_t n, Index i, Index j) {
  detail::check_pair(i, j, n);
  std::vector<CanonicalBlock> out;
  for (Index a = 1; a <= n; ++a)
    for (Index b = a + 1; b <= n; ++b) {
      auto p = CanonicalBlock::pair(n, a, b);
      if (block_discriminates(p, i, j)) out.push_back(p);
    }
  if (n >= 4) {
    std::vector<Index> rest;
    for (Index k = 1; k <= n; ++k)
      if (k != i && k != j) rest.push_back(k);
    std::vector<CanonicalBlock> quads;
    for (std::size_t x = 0; x < rest.size(); ++x)
      for (std::size_t y = x + 1; y < rest.size(); ++y)
        quads.push_back(CanonicalBlock::quad(n, i, j, rest[x], rest[y]));
    std::sort(quads.begin(), quads.end());
    out.insert(out.end(), quads.begin(), quads.end());
  }
  if (n >= 3) {
    for (Index k = 1; k <= n; ++k) {
      auto s = CanonicalBlock::star(n, k);
      if (block_discriminates(s, i, j)) out.push_back(s);
    }
  }
  return out;
}

/// Replaces a nontrivial single-copy state by the first canonical block (in
/// block order) whose graph contains the state's graph. Such a block always
/// exists: pairwise-intersecting discriminated pairs form a single pair, a
/// triangle (inside some K4) or a star (inside E(i)); two disjoint pairs
/// (a,b), (c,d) force all mass onto {a,b,c,d}, where <a,c> or K4 applies.
inline CanonicalBlock canonicalize(const SingleCopyState& s) {
  const DiscriminationGraph g = discrimination_graph(s);
  if (g.edge_count() == 0) throw TrivialState();
  const auto [i, j] = *g.edges().begin();
  for (const auto& b : blocks_covering(s.dimension(), i, j)) {
    const bool contains_all = std::all_of(g.edges().begin(), g.edges().end(), [&](const IndexPair& e) {
      return block_discriminates(b, e.first, e.second);
    });
    if (contains_all) return b;
  }
  throw std::logic_error("no canonical block dominates the state");
}

inline bool is_complete_cover(const std::vector<DiscriminationGraph>& graphs, std::size_t n) {
  std::set<IndexPair> all;
  for (const auto& g : graphs) {
    if (g.vertex_count() != n)
      throw DimensionMismatch("graph on " + std::to_string(g.vertex_count()) +
                              " vertices in a cover of K_" + std::to_string(n));
    all.insert(g.edges().begin(), g.edges().end());
  }
  return all.size() == n * (n - 1) / 2;
}

}  // namespace paradisc
