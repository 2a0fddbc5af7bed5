#pragma once

// Parallel discrimination schemes: product schemes (a tensor product of
// single-copy blocks) and entangled schemes summarized by their weight
// profile, the exact squared-amplitude mass on each composition. A scheme is
// valid when f_i^{(x)t}|psi> and f_j^{(x)t}|psi> are orthogonal for all i < j.

#include <paradisc/discrimination.hpp>
#include <paradisc/oracle.hpp>

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace paradisc {

class ProductScheme {
 public:
  using Factor = std::variant<CanonicalBlock, SingleCopyState>;

  ProductScheme(std::size_t n, std::vector<Factor> factors) : n_(n), factors_(std::move(factors)) {
    if (n < 1) throw std::invalid_argument("scheme needs N >= 1");
    if (factors_.empty() && n != 1) throw std::invalid_argument("product scheme needs t >= 1");
    for (const auto& f : factors_)
      if (factor_dimension(f) != n_)
        throw DimensionMismatch("factor of dimension " + std::to_string(factor_dimension(f)) +
                                " in a scheme on N=" + std::to_string(n_));
  }

  ProductScheme(std::size_t n, const std::vector<CanonicalBlock>& blocks)
      : ProductScheme(n, std::vector<Factor>(blocks.begin(), blocks.end())) {}

  std::size_t dimension() const { return n_; }
  std::size_t copies() const { return factors_.size(); }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Whether every factor is a canonical block.
  bool is_canonical() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const Factor& f) { return std::holds_alternative<CanonicalBlock>(f); });
  }

  SingleCopyState factor_state(std::size_t k) const {
    const Factor& f = factors_.at(k);
    if (const auto* b = std::get_if<CanonicalBlock>(&f)) return block_state(*b);
    return std::get<SingleCopyState>(f);
  }

  bool factor_discriminates(std::size_t k, Index i, Index j) const {
    const Factor& f = factors_.at(k);
    if (const auto* b = std::get_if<CanonicalBlock>(&f)) return block_discriminates(*b, i, j);
    return copy_discriminates(std::get<SingleCopyState>(f), i, j);
  }

 private:
  static std::size_t factor_dimension(const Factor& f) {
    return std::visit([](const auto& x) { return x.dimension(); }, f);
  }

  std::size_t n_;
  std::vector<Factor> factors_;
};

/// Exact masses q_c >= 0 on compositions of t copies, summing to 1.
class WeightProfile {
 public:
  using Map = std::map<Composition, Rational>;

  WeightProfile(std::size_t n, std::size_t t, Map weights) : n_(n), t_(t), weights_(std::move(weights)) {
    if (n < 1 || t < 1) throw std::invalid_argument("profile needs N >= 1 and t >= 1");
    Rational total = 0;
    for (const auto& [c, q] : weights_) {
      if (c.dimension() != n_ || c.copies() != t_)
        throw DimensionMismatch("composition shape does not match profile (N=" +
                                std::to_string(n_) + ", t=" + std::to_string(t_) + ")");
      if (sgn(q) < 0) throw std::invalid_argument("negative mass " + to_string(q));
      total += q;
    }
    if (total != 1) throw std::invalid_argument("profile masses sum to " + to_string(total) + ", not 1");
  }

  std::size_t dimension() const { return n_; }
  std::size_t copies() const { return t_; }
  const Map& weights() const { return weights_; }

  /// Aggregates any exact state into its profile.
  static WeightProfile of(const AmpState& state) {
    if (!state.is_exact()) throw std::invalid_argument("profile of a numeric state");
    Map w;
    for (const auto& [tuple, e] : state.entries()) w[composition_of(tuple, state.dimension())] += e.exact->mass;
    return WeightProfile(state.dimension(), state.copies(), std::move(w));
  }

 private:
  std::size_t n_;
  std::size_t t_;
  Map weights_;
};

using Scheme = std::variant<ProductScheme, WeightProfile>;

inline std::size_t scheme_dimension(const Scheme& s) {
  return std::visit([](const auto& x) { return x.dimension(); }, s);
}
inline std::size_t scheme_copies(const Scheme& s) {
  return std::visit([](const auto& x) { return x.copies(); }, s);
}

struct FailingPair {
  IndexPair pair;
  /// Product schemes: the pair's output overlap. Profiles: odd-parity mass - 1/2.
  std::optional<Rational> defect;
  double defect_value = 0.0;
};

struct SchemeReport {
  enum class Method { CoverageCheck, ParityMass, FullTensor };

  bool valid = false;
  std::vector<FailingPair> failing_pairs;
  Method method = Method::CoverageCheck;
};

inline const char* method_name(SchemeReport::Method m) {
  switch (m) {
    case SchemeReport::Method::CoverageCheck: return "coverage-check";
    case SchemeReport::Method::ParityMass: return "parity-mass";
    case SchemeReport::Method::FullTensor: return "full-tensor";
  }
  return "?";
}

// --- construction and bounds ------------------------------------------------

/// Groups {3g+1,3g+2,3g+3} contribute <3g+1,3g+2> and <3g+1,3g+3>; a
/// leftover {N} adds <1,N>; a leftover {N-1,N} adds <1,N-1> and <1,N>.
inline ProductScheme construct_product_scheme(std::size_t n) {
  if (n < 1) throw std::invalid_argument("construct_product_scheme needs N >= 1");
  if (n == 2) throw Indistinguishable();
  if (n == 1) return ProductScheme(1, std::vector<CanonicalBlock>{});
  std::vector<CanonicalBlock> blocks;
  for (std::size_t g = 0; g < n / 3; ++g) {
    blocks.push_back(CanonicalBlock::pair(n, 3 * g + 1, 3 * g + 2));
    blocks.push_back(CanonicalBlock::pair(n, 3 * g + 1, 3 * g + 3));
  }
  if (n % 3 == 2) blocks.push_back(CanonicalBlock::pair(n, 1, n - 1));
  if (n % 3 != 0) blocks.push_back(CanonicalBlock::pair(n, 1, n));
  return ProductScheme(n, blocks);
}

inline std::size_t construction_size(std::size_t n) {
  if (n < 1) throw std::invalid_argument("construction_size needs N >= 1");
  if (n == 2) throw Indistinguishable();
  if (n == 1) return 0;
  return 2 * (n / 3) + n % 3;
}

/// Smallest t >= 0 with t >= (N - sqrt N)/2, i.e. N - 2t <= 0 or (N - 2t)^2 <= N.
inline std::size_t general_lower_bound(std::size_t n) {
  if (n < 1) throw std::invalid_argument("general_lower_bound needs N >= 1");
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), mpz_class(static_cast<unsigned long>(n)).get_mpz_t());
  const std::size_t s = root.get_ui();
  // N - 2t <= floor(sqrt N)  <=>  t >= (N - s) / 2
  return (n - s + 1) / 2;
}

// --- verification -------------------------------------------------------------

struct VerifyOptions {
  /// Cross-check by expanding the full tensor state and computing all overlaps.
  bool full_tensor = false;
  Limits limits{};
};

inline AmpState expand_to_state(const ProductScheme& s, const Limits& limits = {});
inline AmpState expand_to_state(const WeightProfile& w, const Limits& limits = {});

inline SchemeReport verify_product(const ProductScheme& s, const VerifyOptions& opts = {}) {
  const std::size_t n = s.dimension();
  SchemeReport report;
  report.method = SchemeReport::Method::CoverageCheck;

  if (opts.full_tensor && s.copies() > 0) {
    report.method = SchemeReport::Method::FullTensor;
    const AmpState psi = expand_to_state(s, opts.limits);
    std::vector<AmpState> outputs;
    outputs.reserve(n);
    for (Index k = 1; k <= n; ++k) outputs.push_back(apply_oracle(GroverOracle(n, k), psi));
    for (Index i = 1; i <= n; ++i)
      for (Index j = i + 1; j <= n; ++j) {
        const Overlap ov = overlap(outputs[i - 1], outputs[j - 1]);
        if (!ov.is_zero()) report.failing_pairs.push_back({{i, j}, ov.exact, ov.value.real()});
      }
    report.valid = report.failing_pairs.empty();
    return report;
  }

  std::vector<SingleCopyState> states;
  for (Index i = 1; i <= n; ++i)
    for (Index j = i + 1; j <= n; ++j) {
      bool covered = false;
      for (std::size_t k = 0; k < s.copies() && !covered; ++k) covered = s.factor_discriminates(k, i, j);
      if (covered) continue;
      if (states.empty())
        for (std::size_t k = 0; k < s.copies(); ++k) states.push_back(s.factor_state(k));
      // Uncovered: the overlap is the product of single-copy overlaps 1 - 2(|p_i|^2 + |p_j|^2).
      FailingPair fp{{i, j}, Rational(1), 1.0};
      for (const auto& st : states) {
        fp.defect_value *= 1.0 - 2.0 * (st.norm2(i) + st.norm2(j));
        if (st.is_exact() && fp.defect)
          *fp.defect *= Rational(1 - 2 * (st.mass(i) + st.mass(j)));
        else
          fp.defect.reset();
      }
      if (fp.defect) fp.defect_value = to_double(*fp.defect);
      report.failing_pairs.push_back(std::move(fp));
    }
  report.valid = report.failing_pairs.empty();
  return report;
}

/// For every pair, the mass on compositions with odd (c_i + c_j) must be 1/2.
inline SchemeReport verify_entangled(const WeightProfile& w) {
  const std::size_t n = w.dimension();
  SchemeReport report;
  report.method = SchemeReport::Method::ParityMass;
  std::vector<std::vector<bool>> odd;
  std::vector<const Rational*> mass;
  for (const auto& [c, q] : w.weights()) {
    std::vector<bool> o(n);
    for (Index k = 1; k <= n; ++k) o[k - 1] = c.is_odd(k);
    odd.push_back(std::move(o));
    mass.push_back(&q);
  }
  const Rational half(1, 2);
  for (Index i = 1; i <= n; ++i)
    for (Index j = i + 1; j <= n; ++j) {
      Rational pair_mass = 0;
      for (std::size_t k = 0; k < odd.size(); ++k)
        if (odd[k][i - 1] != odd[k][j - 1]) pair_mass += *mass[k];
      if (pair_mass != half) {
        Rational defect = pair_mass - half;
        report.failing_pairs.push_back({{i, j}, defect, to_double(defect)});
      }
    }
  report.valid = report.failing_pairs.empty();
  return report;
}

inline SchemeReport verify(const Scheme& s, const VerifyOptions& opts = {}) {
  if (const auto* p = std::get_if<ProductScheme>(&s)) return verify_product(*p, opts);
  return verify_entangled(std::get<WeightProfile>(s));
}

// --- expansion ----------------------------------------------------------------

inline AmpState expand_to_state(const ProductScheme& s, const Limits& limits) {
  if (s.copies() == 0) throw std::invalid_argument("cannot expand a scheme with zero copies");
  AmpState state = s.factor_state(0).to_amp_state();
  for (std::size_t k = 1; k < s.copies(); ++k)
    state = tensor(state, s.factor_state(k).to_amp_state(), limits);
  return state;
}

/// One representative tuple (the sorted one) per composition, with amplitude
/// sqrt(q_c). Pair signs depend on a tuple only through its composition, so
/// this state has the same verdict as any state aggregating to the profile.
inline AmpState expand_to_state(const WeightProfile& w, const Limits& limits) {
  if (w.weights().size() > limits.max_tuples)
    throw ResourceCapExceeded("profile support exceeds tuple cap " + std::to_string(limits.max_tuples));
  std::map<BasisTuple, ExactAmplitude> amps;
  for (const auto& [c, q] : w.weights()) amps.emplace(c.representative(), ExactAmplitude{q, 1});
  return AmpState::exact(w.dimension(), w.copies(), std::move(amps));
}

inline AmpState expand_to_state(const Scheme& s, const Limits& limits = {}) {
  return std::visit([&](const auto& x) { return expand_to_state(x, limits); }, s);
}

// --- built-in schemes -------------------------------------------------------

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"n4-single", "n5-product", "n6-entangled"};
  return names;
}

/// n4-single: K4{1,2,3,4} on N=4, one copy.
/// n5-product: E(1) (x) K4{2,3,4,5} on N=5.
/// n6-entangled: (1/4)(sum_{i<j} |ij> + |kk>) on N=6 with k = `diagonal`.
inline Scheme builtin(const std::string& name, Index diagonal = 3) {
  if (name == "n4-single") return ProductScheme(4, std::vector<CanonicalBlock>{CanonicalBlock::quad(4, 1, 2, 3, 4)});
  if (name == "n5-product")
    return ProductScheme(
        5, std::vector<CanonicalBlock>{CanonicalBlock::star(5, 1), CanonicalBlock::quad(5, 2, 3, 4, 5)});
  if (name == "n6-entangled") {
    detail::check_index(diagonal, 6, "diagonal");
    WeightProfile::Map w;
    for (Index i = 1; i <= 6; ++i)
      for (Index j = i + 1; j <= 6; ++j) w[composition_of({i, j}, 6)] = Rational(1, 16);
    w[composition_of({diagonal, diagonal}, 6)] = Rational(1, 16);
    return WeightProfile(6, 2, std::move(w));
  }
  throw std::invalid_argument("unknown builtin scheme '" + name + "'");
}

}  // namespace paradisc
