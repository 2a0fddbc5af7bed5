#pragma once

// Generators and brute-force reference computations shared by the test
// suites. Nothing here calls the parity or graph shortcuts under test.

#include <paradisc/paradisc.hpp>

#include <random>
#include <vector>

namespace paradisc::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline std::size_t uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng());
}

inline BasisTuple random_tuple(std::size_t n, std::size_t t) {
  BasisTuple a(t);
  for (auto& x : a) x = uniform(1, n);
  return a;
}

/// Splits `total` into `parts` non-negative rationals with random weights.
inline std::vector<Rational> random_split(const Rational& total, std::size_t parts, bool allow_zero = true) {
  std::vector<long> w(parts);
  long sum = 0;
  for (auto& x : w) {
    x = static_cast<long>(uniform(allow_zero ? 0 : 1, 9));
    sum += x;
  }
  if (sum == 0) {
    w[0] = 1;
    sum = 1;
  }
  std::vector<Rational> out;
  for (long x : w) out.push_back(Rational(total * make_rational(x, sum)));
  return out;
}

inline int random_sign() { return uniform(0, 1) ? 1 : -1; }

/// Random exact state on t copies with up to `support` terms.
inline AmpState random_exact_state(std::size_t n, std::size_t t, std::size_t support) {
  std::map<BasisTuple, ExactAmplitude> amps;
  const auto masses = random_split(Rational(1), support, false);
  for (const auto& m : masses) {
    auto& slot = amps[random_tuple(n, t)];
    slot.mass += m;
    slot.sign = random_sign();
  }
  return AmpState::exact(n, t, std::move(amps));
}

inline AmpState random_numeric_state(std::size_t n, std::size_t t, std::size_t support) {
  std::normal_distribution<double> g;
  std::map<BasisTuple, Complex> amps;
  for (std::size_t k = 0; k < support; ++k) amps[random_tuple(n, t)] += Complex(g(rng()), g(rng()));
  double norm = 0;
  for (const auto& [a, v] : amps) norm += std::norm(v);
  for (auto& [a, v] : amps) v /= std::sqrt(norm);
  return AmpState::numeric(n, t, amps);
}

/// Single-copy states that satisfy |p_i|^2 + |p_j|^2 = 1/2 on at least one
/// pair, covering the shapes a nontrivial state can take: one pair with the
/// rest spread, two disjoint pairs, a star around one label, and a triangle.
inline SingleCopyState sample_nontrivial_state(std::size_t n) {
  std::vector<Rational> m(n, Rational(0));
  std::vector<Index> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng());
  const Rational half(1, 2);
  switch (uniform(0, n >= 4 ? 3 : 2)) {
    case 0: {  // one pair at 1/2, remainder spread over the others
      auto head = random_split(half, 2);
      m[perm[0]] = head[0];
      m[perm[1]] = head[1];
      auto rest = random_split(half, n - 2, false);
      for (std::size_t k = 2; k < n; ++k) m[perm[k]] = rest[k - 2];
      break;
    }
    case 1: {  // star: x on the centre, 1/2 - x on s leaves, rest elsewhere
      const Rational x = make_rational(static_cast<long>(uniform(0, 11)), 24);
      const Rational leaf = half - x;
      std::size_t s = uniform(1, n - 2);
      while (s > 1 && Rational(x + s * leaf) > 1) --s;
      m[perm[0]] = x;
      for (std::size_t k = 1; k <= s; ++k) m[perm[k]] = leaf;
      const Rational left = 1 - x - s * leaf;
      auto rest = random_split(left, n - s - 1);
      for (std::size_t k = s + 1; k < n; ++k) m[perm[k]] = rest[k - s - 1];
      break;
    }
    case 2: {  // two disjoint pairs (or a pair and the rest when n = 3)
      if (n < 4) {
        m[perm[0]] = half;
        auto rest = random_split(half, 2);
        m[perm[1]] = rest[0];
        m[perm[2]] = rest[1];
        break;
      }
      auto p = random_split(half, 2);
      auto q = random_split(half, 2);
      m[perm[0]] = p[0];
      m[perm[1]] = p[1];
      m[perm[2]] = q[0];
      m[perm[3]] = q[1];
      break;
    }
    default: {  // triangle at 1/4 each, last quarter anywhere else
      for (std::size_t k = 0; k < 3; ++k) m[perm[k]] = Rational(1, 4);
      auto rest = random_split(Rational(1, 4), n - 3, false);
      for (std::size_t k = 3; k < n; ++k) m[perm[k]] = rest[k - 3];
      break;
    }
  }
  std::vector<ExactAmplitude> amps;
  for (const auto& x : m) amps.push_back({x, random_sign()});
  return SingleCopyState::exact(std::move(amps));
}

/// Pair parity evaluated literally on a tuple: sum_k ([a_k = i] + [a_k = j]) mod 2.
inline int brute_tau(const BasisTuple& a, Index i, Index j) {
  int s = 0;
  for (Index x : a) s += (x == i) + (x == j);
  return s % 2;
}

/// <psi| f_i^dag f_j |psi> on a one-copy state via the oracle operators.
inline Overlap direct_pair_overlap(const SingleCopyState& s, Index i, Index j) {
  const AmpState psi = s.to_amp_state();
  return overlap(apply_oracle(GroverOracle(s.dimension(), i), psi),
                 apply_oracle(GroverOracle(s.dimension(), j), psi));
}

/// Pairs whose output overlap vanishes, from the full multi-copy state.
inline std::vector<IndexPair> orthogonal_pairs(const AmpState& psi) {
  const std::size_t n = psi.dimension();
  std::vector<AmpState> out;
  for (Index k = 1; k <= n; ++k) out.push_back(apply_oracle(GroverOracle(n, k), psi));
  std::vector<IndexPair> pairs;
  for (Index i = 1; i <= n; ++i)
    for (Index j = i + 1; j <= n; ++j)
      if (overlap(out[i - 1], out[j - 1]).is_zero()) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace paradisc::testing
