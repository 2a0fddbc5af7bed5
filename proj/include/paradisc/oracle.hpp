#pragma once

// Phase oracles f_x = sum_j (-1)^{[j == x]} |j><j| on an N-dimensional
// register, multi-copy basis tuples, compositions (label multiplicities) and
// the parity bookkeeping that decides every pairwise overlap.
//
// Indices are 1-based in every public signature, matching the usual
// labelling 1..N of database items. Containers indexed by label store label
// k at position k-1; that conversion happens only inside this header.

#include <paradisc/errors.hpp>
#include <paradisc/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace paradisc {

using Index = std::size_t;
using BasisTuple = std::vector<Index>;
using Complex = std::complex<double>;

/// Tolerance for normalization and orthogonality tests on floating-point states.
inline constexpr double kFloatTolerance = 1e-9;

/// Resource caps shared by the expansion and enumeration routines.
struct Limits {
  std::size_t max_tuples = 1'000'000;
  std::size_t max_compositions = 1'000'000;
};

namespace detail {

inline void check_index(Index i, std::size_t n, const char* what) {
  if (i < 1 || i > n)
    throw IndexError(std::string(what) + " index " + std::to_string(i) + " outside 1.." +
                     std::to_string(n));
}

inline void check_pair(Index i, Index j, std::size_t n) {
  check_index(i, n, "pair");
  check_index(j, n, "pair");
  if (i == j) throw IndexError("pair indices must differ, got (" + std::to_string(i) + "," +
                               std::to_string(i) + ")");
}

/// C(n, k), saturating at SIZE_MAX.
inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  if (!r.fits_ulong_p()) return SIZE_MAX;
  return r.get_ui();
}

}  // namespace detail

/// Multiplicities c_1..c_N of a basis tuple. Since the sign a pair (i,j)
/// puts on a tuple depends only on (c_i + c_j) mod 2, the composition is a
/// sufficient statistic for every discrimination condition.
class Composition {
 public:
  Composition() = default;

  explicit Composition(std::vector<unsigned> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw std::invalid_argument("composition needs N >= 1");
    for (unsigned c : counts_) {
      copies_ += c;
      if (c % 2 == 1) ++odd_;
    }
    if (copies_ == 0) throw std::invalid_argument("composition needs t >= 1");
  }

  std::size_t dimension() const { return counts_.size(); }
  std::size_t copies() const { return copies_; }
  const std::vector<unsigned>& counts() const { return counts_; }

  unsigned count(Index i) const {
    detail::check_index(i, counts_.size(), "composition");
    return counts_[i - 1];
  }
  bool is_odd(Index i) const { return count(i) % 2 == 1; }

  /// l1: number of labels with odd multiplicity.
  std::size_t odd_count() const { return odd_; }
  /// l2: number of labels with even (possibly zero) multiplicity.
  std::size_t even_count() const { return counts_.size() - odd_; }

  /// The sorted tuple (1,..,1,2,..,2,...) with this composition.
  BasisTuple representative() const {
    BasisTuple out;
    out.reserve(copies_);
    for (std::size_t k = 0; k < counts_.size(); ++k) out.insert(out.end(), counts_[k], k + 1);
    return out;
  }

  friend bool operator==(const Composition& a, const Composition& b) {
    return a.counts_ == b.counts_;
  }
  friend bool operator!=(const Composition& a, const Composition& b) { return !(a == b); }
  /// Order of representative tuples: (1,0) sorts before (0,1).
  friend bool operator<(const Composition& a, const Composition& b) {
    return std::lexicographical_compare(b.counts_.begin(), b.counts_.end(), a.counts_.begin(),
                                        a.counts_.end());
  }

 private:
  std::vector<unsigned> counts_;
  std::size_t copies_ = 0;
  std::size_t odd_ = 0;
};

inline Composition composition_of(const BasisTuple& a, std::size_t n) {
  if (a.empty()) throw std::invalid_argument("basis tuple must have at least one entry");
  std::vector<unsigned> counts(n, 0);
  for (Index x : a) {
    detail::check_index(x, n, "tuple");
    ++counts[x - 1];
  }
  return Composition(std::move(counts));
}

/// (c_i + c_j) mod 2: 1 when the pair (i,j) flips the sign of tuples with
/// this composition.
inline int tau_parity(const Composition& c, Index i, Index j) {
  detail::check_pair(i, j, c.dimension());
  return static_cast<int>((c.count(i) + c.count(j)) % 2);
}

/// Number of unordered pairs with odd parity: l1 * (N - l1).
inline std::size_t odd_pair_count(const Composition& c) {
  return c.odd_count() * c.even_count();
}

/// All compositions of t copies over N labels, ordered by their sorted
/// representative tuple (lexicographic), e.g. N=2, t=1 gives (1,0), (0,1).
inline std::vector<Composition> enumerate_compositions(std::size_t n, std::size_t t,
                                                       const Limits& limits = {}) {
  if (n < 1 || t < 1) throw std::invalid_argument("enumerate_compositions needs n >= 1, t >= 1");
  const std::size_t total = detail::binomial(n + t - 1, n - 1);
  if (total > limits.max_compositions)
    throw ResourceCapExceeded("composition count C(" + std::to_string(n + t - 1) + "," +
                              std::to_string(n - 1) + ") exceeds cap " +
                              std::to_string(limits.max_compositions));
  std::vector<Composition> out;
  out.reserve(total);
  std::vector<unsigned> counts(n, 0);
  // Depth-first over label k: take as many copies of k as possible first.
  auto rec = [&](auto&& self, std::size_t k, unsigned remaining) -> void {
    if (k + 1 == n) {
      counts[k] = remaining;
      out.emplace_back(counts);
      counts[k] = 0;
      return;
    }
    for (unsigned take = remaining + 1; take-- > 0;) {
      counts[k] = take;
      self(self, k + 1, remaining - take);
    }
    counts[k] = 0;
  };
  rec(rec, 0, static_cast<unsigned>(t));
  return out;
}

/// sign * sqrt(mass): an amplitude with an exact rational squared modulus.
struct ExactAmplitude {
  Rational mass;
  int sign = 1;

  Complex value() const { return Complex(sign * std::sqrt(to_double(mass)), 0.0); }
};

/// Sparse multi-copy state sum_a p_a |a>, keyed by basis tuple in
/// lexicographic order. Exact states carry every amplitude as an
/// ExactAmplitude and are normalized exactly; numeric states are normalized
/// within kFloatTolerance.
class AmpState {
 public:
  struct Entry {
    Complex value;
    std::optional<ExactAmplitude> exact;
  };
  using Map = std::map<BasisTuple, Entry>;

  static AmpState exact(std::size_t n, std::size_t t, std::map<BasisTuple, ExactAmplitude> amps) {
    AmpState s(n, t);
    s.exact_ = true;
    Rational total = 0;
    for (auto& [tuple, amp] : amps) {
      s.check_tuple(tuple);
      if (sgn(amp.mass) < 0) throw std::invalid_argument("negative squared amplitude");
      if (amp.sign != 1 && amp.sign != -1) throw std::invalid_argument("sign must be +1 or -1");
      if (sgn(amp.mass) == 0) continue;
      total += amp.mass;
      const Complex v = amp.value();
      s.amps_.emplace(tuple, Entry{v, std::move(amp)});
    }
    if (total != 1)
      throw std::invalid_argument("exact state not normalized: total mass " + to_string(total));
    return s;
  }

  static AmpState numeric(std::size_t n, std::size_t t, const std::map<BasisTuple, Complex>& amps) {
    AmpState s(n, t);
    double total = 0.0;
    for (const auto& [tuple, v] : amps) {
      s.check_tuple(tuple);
      if (v == Complex(0.0, 0.0)) continue;
      total += std::norm(v);
      s.amps_.emplace(tuple, Entry{v, std::nullopt});
    }
    if (std::abs(total - 1.0) > kFloatTolerance)
      throw std::invalid_argument("state not normalized: norm^2 = " + std::to_string(total));
    return s;
  }

  std::size_t dimension() const { return n_; }
  std::size_t copies() const { return t_; }
  bool is_exact() const { return exact_; }
  const Map& entries() const { return amps_; }
  std::size_t size() const { return amps_.size(); }

  /// Returns a copy with the sign of every entry selected by `flip` negated.
  template <class Pred>
  AmpState with_flipped_signs(Pred flip) const {
    AmpState out(*this);
    for (auto& [tuple, e] : out.amps_) {
      if (!flip(tuple)) continue;
      e.value = -e.value;
      if (e.exact) e.exact->sign = -e.exact->sign;
    }
    return out;
  }

  friend AmpState tensor(const AmpState& a, const AmpState& b, const Limits& limits = {}) {
    if (a.n_ != b.n_) throw DimensionMismatch("tensor of states with different N");
    if (a.amps_.size() * b.amps_.size() > limits.max_tuples)
      throw ResourceCapExceeded("tensor product exceeds tuple cap " +
                                std::to_string(limits.max_tuples));
    AmpState out(a.n_, a.t_ + b.t_);
    out.exact_ = a.exact_ && b.exact_;
    for (const auto& [ta, ea] : a.amps_) {
      for (const auto& [tb, eb] : b.amps_) {
        BasisTuple key = ta;
        key.insert(key.end(), tb.begin(), tb.end());
        Entry e{ea.value * eb.value, std::nullopt};
        if (out.exact_)
          e.exact = ExactAmplitude{Rational(ea.exact->mass * eb.exact->mass),
                                   ea.exact->sign * eb.exact->sign};
        out.amps_.emplace_hint(out.amps_.end(), std::move(key), std::move(e));
      }
    }
    return out;
  }

 private:
  AmpState(std::size_t n, std::size_t t) : n_(n), t_(t) {
    if (n < 1 || t < 1) throw std::invalid_argument("state needs N >= 1 and t >= 1");
  }

  void check_tuple(const BasisTuple& tuple) const {
    if (tuple.size() != t_)
      throw DimensionMismatch("tuple length " + std::to_string(tuple.size()) + " != t=" +
                              std::to_string(t_));
    for (Index x : tuple) detail::check_index(x, n_, "tuple");
  }

  std::size_t n_;
  std::size_t t_;
  bool exact_ = false;
  Map amps_;
};

/// <x|y>, with an exact rational value when both states are exact and every
/// product of matching squared moduli is a rational square (always the case
/// for two oracle images of one input state).
struct Overlap {
  Complex value;
  std::optional<Rational> exact;

  double magnitude() const { return exact ? std::abs(to_double(*exact)) : std::abs(value); }
  bool is_zero() const { return exact ? sgn(*exact) == 0 : std::abs(value) <= kFloatTolerance; }
};

inline Overlap overlap(const AmpState& x, const AmpState& y) {
  if (x.dimension() != y.dimension() || x.copies() != y.copies())
    throw DimensionMismatch("overlap of states with different shape");
  Overlap out{Complex(0.0, 0.0), std::nullopt};
  bool exact = x.is_exact() && y.is_exact();
  Rational exact_sum = 0;
  auto it = x.entries().begin();
  auto jt = y.entries().begin();
  while (it != x.entries().end() && jt != y.entries().end()) {
    if (it->first < jt->first) {
      ++it;
    } else if (jt->first < it->first) {
      ++jt;
    } else {
      out.value += std::conj(it->second.value) * jt->second.value;
      if (exact) {
        const ExactAmplitude& ax = *it->second.exact;
        const ExactAmplitude& ay = *jt->second.exact;
        std::optional<Rational> root;
        if (ax.mass == ay.mass)
          root = ax.mass;
        else
          root = exact_sqrt(Rational(ax.mass * ay.mass));
        if (root)
          exact_sum += ax.sign * ay.sign * *root;
        else
          exact = false;
      }
      ++it;
      ++jt;
    }
  }
  if (exact) {
    out.exact = exact_sum;
    out.value = Complex(to_double(exact_sum), 0.0);
  }
  return out;
}

/// Black-box access to an unknown phase oracle: the only operation is a
/// single query on one register of a multi-copy state.
class OracleBox {
 public:
  virtual ~OracleBox() = default;
  virtual std::size_t dimension() const = 0;
  /// Applies the oracle to register `copy` (0-based) of `state`.
  virtual AmpState query(const AmpState& state, std::size_t copy) const = 0;
};

/// f_x: the diagonal operator flipping the sign of |x>.
class GroverOracle final : public OracleBox {
 public:
  GroverOracle(std::size_t n, Index target) : n_(n), target_(target) {
    if (n < 1) throw std::invalid_argument("oracle needs N >= 1");
    detail::check_index(target, n, "oracle target");
  }

  std::size_t dimension() const override { return n_; }
  Index target() const { return target_; }

  AmpState query(const AmpState& state, std::size_t copy) const override {
    check_dimension(state);
    if (copy >= state.copies())
      throw IndexError("copy " + std::to_string(copy) + " outside 0.." +
                       std::to_string(state.copies() - 1));
    return state.with_flipped_signs(
        [&](const BasisTuple& a) { return a[copy] == target_; });
  }

  void check_dimension(const AmpState& state) const {
    if (state.dimension() != n_)
      throw DimensionMismatch("oracle on N=" + std::to_string(n_) + " applied to state with N=" +
                              std::to_string(state.dimension()));
  }

 private:
  std::size_t n_;
  Index target_;
};

/// f^{(x)t}: every tuple picks up (-1)^{number of occurrences of the target}.
inline AmpState apply_oracle(const GroverOracle& oracle, const AmpState& state) {
  oracle.check_dimension(state);
  const Index x = oracle.target();
  return state.with_flipped_signs(
      [x](const BasisTuple& a) { return std::count(a.begin(), a.end(), x) % 2 == 1; });
}

}  // namespace paradisc
