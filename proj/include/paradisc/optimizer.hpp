#pragma once

// Exact optima at small N.
//
//  * min_product_cover: fewest canonical blocks whose graphs cover K_N,
//    found by iterative-deepening branch and bound over edge bitmasks.
//  * entangled_feasible: whether some t-copy input state satisfies every
//    pair condition. Masses aggregate by composition, so this is the linear
//    system  sum_c q_c = 1,  sum_{c : c_i + c_j odd} q_c = 1/2  (all i < j),
//    q >= 0, decided by an exact rational phase-1 simplex with Bland's rule.

#include <paradisc/schemes.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace paradisc {

// --- product schemes: exact set cover -----------------------------------------

struct CoverOptions {
  std::size_t max_n = 9;
};

struct CoverSolution {
  std::size_t t = 0;
  std::vector<CanonicalBlock> blocks;
  std::uint64_t nodes_explored = 0;
};

/// All canonical blocks on N labels with their edge sets as bitmasks over
/// the lexicographically ordered pairs. Candidate order: Pair < Quad < Star.
class CoverInstance {
 public:
  static constexpr std::size_t kMaxN = 11;  // C(11,2) = 55 edges fit in 64 bits

  explicit CoverInstance(std::size_t n) : n_(n) {
    if (n < 2 || n > kMaxN)
      throw std::invalid_argument("cover instance needs 2 <= N <= " + std::to_string(kMaxN));
    for (Index i = 1; i <= n; ++i)
      for (Index j = i + 1; j <= n; ++j) edges_.emplace_back(i, j);
    for (Index a = 1; a <= n; ++a)
      for (Index b = a + 1; b <= n; ++b) add(CanonicalBlock::pair(n, a, b));
    if (n >= 4)
      for (Index a = 1; a <= n; ++a)
        for (Index b = a + 1; b <= n; ++b)
          for (Index c = b + 1; c <= n; ++c)
            for (Index d = c + 1; d <= n; ++d) add(CanonicalBlock::quad(n, a, b, c, d));
    if (n >= 3)
      for (Index a = 1; a <= n; ++a) add(CanonicalBlock::star(n, a));
    covering_.resize(edges_.size());
    for (std::size_t c = 0; c < candidates_.size(); ++c)
      for (std::size_t e = 0; e < edges_.size(); ++e)
        if (masks_[c] >> e & 1U) covering_[e].push_back(c);
  }

  std::size_t dimension() const { return n_; }
  const std::vector<IndexPair>& universe() const { return edges_; }
  const std::vector<CanonicalBlock>& candidates() const { return candidates_; }
  const std::vector<std::uint64_t>& masks() const { return masks_; }
  /// Candidate ids covering edge `e`, in candidate order.
  const std::vector<std::size_t>& covering(std::size_t e) const { return covering_[e]; }

  std::uint64_t full_mask() const {
    return edges_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << edges_.size()) - 1;
  }
  /// Largest edge count of a single block: max(6, 2(N-2), N-1), capped by |K_N|.
  std::size_t max_block_coverage() const {
    std::size_t best = 0;
    for (auto m : masks_) best = std::max<std::size_t>(best, std::popcount(m));
    return best;
  }

 private:
  void add(const CanonicalBlock& b) {
    std::uint64_t mask = 0;
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (block_discriminates(b, edges_[e].first, edges_[e].second)) mask |= std::uint64_t{1} << e;
    candidates_.push_back(b);
    masks_.push_back(mask);
  }

  std::size_t n_;
  std::vector<IndexPair> edges_;
  std::vector<CanonicalBlock> candidates_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::size_t>> covering_;
};

namespace detail {

class CoverSearch {
 public:
  explicit CoverSearch(const CoverInstance& inst)
      : inst_(inst), max_cov_(inst.max_block_coverage()) {}

  bool run(std::size_t depth) {
    chosen_.clear();
    return dfs(inst_.full_mask(), depth);
  }

  const std::vector<std::size_t>& chosen() const { return chosen_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool dfs(std::uint64_t uncovered, std::size_t depth) {
    ++nodes_;
    if (uncovered == 0) return true;
    const std::size_t left = std::popcount(uncovered);
    if (depth == 0 || (left + max_cov_ - 1) / max_cov_ > depth) return false;
    // Branch on the uncovered edge with the fewest covering candidates.
    std::size_t best_edge = 0, best_count = SIZE_MAX;
    for (std::uint64_t rest = uncovered; rest != 0; rest &= rest - 1) {
      const std::size_t e = std::countr_zero(rest);
      const std::size_t cnt = inst_.covering(e).size();
      if (cnt < best_count) {
        best_count = cnt;
        best_edge = e;
      }
    }
    for (std::size_t c : inst_.covering(best_edge)) {
      chosen_.push_back(c);
      if (dfs(uncovered & ~inst_.masks()[c], depth - 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const CoverInstance& inst_;
  std::size_t max_cov_;
  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Exact minimum number of canonical blocks covering K_N, with the first
/// witness found under the fixed candidate order.
inline CoverSolution min_product_cover(std::size_t n, const CoverOptions& opts = {}) {
  if (n == 2) throw Indistinguishable();
  if (n < 3) throw std::invalid_argument("min_product_cover needs N >= 3");
  if (n > opts.max_n || n > CoverInstance::kMaxN)
    throw ResourceCapExceeded("min_product_cover: N=" + std::to_string(n) + " exceeds cap " +
                              std::to_string(std::min(opts.max_n, CoverInstance::kMaxN)));
  const CoverInstance inst(n);
  detail::CoverSearch search(inst);
  const std::size_t edges = inst.universe().size();
  const std::size_t cov = inst.max_block_coverage();
  for (std::size_t depth = (edges + cov - 1) / cov;; ++depth) {
    if (search.run(depth)) {
      CoverSolution sol;
      sol.t = depth;
      for (std::size_t c : search.chosen()) sol.blocks.push_back(inst.candidates()[c]);
      sol.nodes_explored = search.nodes();
      return sol;
    }
  }
}

// --- entangled schemes: exact LP feasibility ----------------------------------

struct LpStats {
  std::size_t variables = 0;    // compositions of t copies over N labels
  std::size_t columns = 0;      // distinct constraint columns (odd-label patterns)
  std::size_t constraints = 0;  // 1 + C(N,2)
  std::size_t pivots = 0;
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<WeightProfile> witness;
  Rational phase1_objective;
  LpStats stats;
};

namespace detail {

/// Phase-1 simplex on A x = b, x >= 0, b >= 0, over exact rationals, with
/// one artificial variable per row. Bland's rule on both the entering
/// column (smallest index with negative reduced cost) and the leaving row
/// (smallest basic index among ratio ties) rules out cycling.
class Phase1Simplex {
 public:
  Phase1Simplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
      : rows_(a.size()), structural_(rows_ ? a[0].size() : 0) {
    cols_ = structural_ + rows_;
    tab_.assign(rows_ + 1, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (sgn(b[r]) < 0) throw std::invalid_argument("phase-1 simplex needs b >= 0");
      for (std::size_t c = 0; c < structural_; ++c) tab_[r][c] = a[r][c];
      tab_[r][structural_ + r] = 1;
      tab_[r][cols_] = b[r];
      basis_[r] = structural_ + r;
    }
    // Objective row holds reduced costs of min sum(artificials), and -z in the rhs.
    auto& obj = tab_[rows_];
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < structural_; ++c)
        if (sgn(tab_[r][c]) != 0) obj[c] -= tab_[r][c];
    for (std::size_t r = 0; r < rows_; ++r) obj[cols_] -= tab_[r][cols_];
  }

  void solve() {
    for (;;) {
      const auto& obj = tab_[rows_];
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c)
        if (sgn(obj[c]) < 0) {
          enter = c;
          break;
        }
      if (enter == cols_) return;
      std::size_t leave = rows_;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (sgn(tab_[r][enter]) <= 0) continue;
        Rational ratio = tab_[r][cols_] / tab_[r][enter];
        if (leave == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      // Phase 1 is bounded below by 0, so an improving column always has a pivot row.
      if (leave == rows_) throw std::logic_error("phase-1 simplex unbounded");
      pivot(leave, enter);
    }
  }

  /// Sum of the artificial variables at the current basis.
  Rational objective() const { return -tab_[rows_][cols_]; }
  std::size_t pivots() const { return pivots_; }

  std::vector<Rational> structural_values() const {
    std::vector<Rational> x(structural_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] < structural_) x[basis_[r]] = tab_[r][cols_];
    return x;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    const Rational p = tab_[row][col];
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c <= cols_; ++c)
      if (sgn(tab_[row][c]) != 0) {
        tab_[row][c] /= p;
        nz.push_back(c);
      }
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == row || sgn(tab_[r][col]) == 0) continue;
      const Rational f = tab_[r][col];
      for (std::size_t c : nz) tab_[r][c] -= f * tab_[row][c];
    }
    basis_[row] = col;
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t cols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

/// Decides whether a t-copy parallel scheme exists for N oracles.
/// Compositions sharing the same set of odd labels have identical constraint
/// columns; each such class is one LP column, represented by its first
/// composition in enumeration order (the one Bland's rule would pick anyway).
inline FeasibilityResult entangled_feasible(std::size_t n, std::size_t t, const Limits& limits = {}) {
  if (n < 2 || t < 1) throw std::invalid_argument("entangled_feasible needs N >= 2 and t >= 1");
  const std::vector<Composition> comps = enumerate_compositions(n, t, limits);

  std::map<std::vector<bool>, std::size_t> class_of;
  std::vector<std::size_t> representative;  // column -> composition index
  std::vector<std::vector<bool>> patterns;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    std::vector<bool> odd(n);
    for (Index i = 1; i <= n; ++i) odd[i - 1] = comps[k].is_odd(i);
    if (class_of.emplace(odd, representative.size()).second) {
      representative.push_back(k);
      patterns.push_back(std::move(odd));
    }
  }

  const std::size_t cols = representative.size();
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  a.emplace_back(cols, Rational(1));
  b.emplace_back(1);
  for (Index i = 1; i <= n; ++i)
    for (Index j = i + 1; j <= n; ++j) {
      std::vector<Rational> row(cols, Rational(0));
      for (std::size_t c = 0; c < cols; ++c)
        if (patterns[c][i - 1] != patterns[c][j - 1]) row[c] = 1;
      a.push_back(std::move(row));
      b.emplace_back(1, 2);
    }

  FeasibilityResult result;
  result.stats.variables = comps.size();
  result.stats.columns = cols;
  result.stats.constraints = a.size();

  detail::Phase1Simplex lp(std::move(a), std::move(b));
  lp.solve();
  result.stats.pivots = lp.pivots();
  result.phase1_objective = lp.objective();
  result.feasible = sgn(result.phase1_objective) == 0;
  if (result.feasible) {
    const std::vector<Rational> x = lp.structural_values();
    WeightProfile::Map w;
    for (std::size_t c = 0; c < cols; ++c)
      if (sgn(x[c]) != 0) w.emplace(comps[representative[c]], x[c]);
    WeightProfile profile(n, t, std::move(w));
    if (!verify_entangled(profile).valid) throw std::logic_error("LP witness failed exact verification");
    result.witness = std::move(profile);
  }
  return result;
}

struct EntangledSearch {
  std::optional<std::size_t> min_t;
  std::optional<FeasibilityResult> result;  // at min_t
  std::size_t tried_from = 0;
};

/// Scans t upward from max(1, general_lower_bound(N)) to t_max.
inline EntangledSearch search_min_entangled(std::size_t n, std::size_t t_max, const Limits& limits = {}) {
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  EntangledSearch out;
  out.tried_from = std::max<std::size_t>(1, general_lower_bound(n));
  for (std::size_t t = out.tried_from; t <= t_max; ++t) {
    FeasibilityResult r = entangled_feasible(n, t, limits);
    if (r.feasible) {
      out.min_t = t;
      out.result = std::move(r);
      break;
    }
  }
  return out;
}

inline std::optional<std::size_t> min_entangled_t(std::size_t n, std::size_t t_max, const Limits& limits = {}) {
  return search_min_entangled(n, t_max, limits).min_t;
}

}  // namespace paradisc
