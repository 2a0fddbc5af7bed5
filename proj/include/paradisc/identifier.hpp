#pragma once

// Runs a parallel scheme against a hidden oracle. The hidden oracle is only
// reachable through OracleBox::query, one register at a time, so the query
// count is exactly the number of calls made here.

#include <paradisc/schemes.hpp>

#include <optional>
#include <vector>

namespace paradisc {

/// Acceptance and rejection thresholds for |overlap| on numeric states.
inline constexpr double kClassifyTolerance = 1e-6;

struct IdentificationRun {
  std::size_t n = 0;
  std::size_t queries = 0;
  Index identified = 0;
  /// |<f_k^{(x)t} psi | out>| for k = 1..N.
  std::vector<double> overlaps;
  /// The same overlaps as exact signed rationals when the states are exact.
  std::vector<std::optional<Rational>> exact_overlaps;
};

/// Holds the expanded input state and the N candidate outputs so many hidden
/// oracles can be classified against one precomputation.
class Identifier {
 public:
  explicit Identifier(const Scheme& scheme, const Limits& limits = {})
      : n_(scheme_dimension(scheme)), t_(scheme_copies(scheme)) {
    if (t_ == 0) return;  // N = 1: nothing to distinguish
    input_ = expand_to_state(scheme, limits);
    candidates_.reserve(n_);
    for (Index k = 1; k <= n_; ++k) candidates_.push_back(apply_oracle(GroverOracle(n_, k), *input_));
  }

  std::size_t dimension() const { return n_; }
  std::size_t copies() const { return t_; }
  const std::vector<AmpState>& candidate_outputs() const { return candidates_; }

  IdentificationRun run(const OracleBox& hidden) const {
    if (hidden.dimension() != n_)
      throw DimensionMismatch("hidden oracle has N=" + std::to_string(hidden.dimension()) +
                              ", scheme has N=" + std::to_string(n_));
    IdentificationRun result;
    result.n = n_;
    if (t_ == 0) {
      result.identified = 1;
      return result;
    }
    AmpState out = *input_;
    for (std::size_t copy = 0; copy < t_; ++copy) {
      out = hidden.query(out, copy);
      ++result.queries;
    }
    std::vector<Index> matches;
    for (Index k = 1; k <= n_; ++k) {
      const Overlap ov = overlap(candidates_[k - 1], out);
      const double mag = ov.magnitude();
      result.overlaps.push_back(mag);
      result.exact_overlaps.push_back(ov.exact);
      if (ov.exact) {
        const Rational a = abs(*ov.exact);
        if (a == 1)
          matches.push_back(k);
        else if (sgn(a) != 0)
          throw AmbiguousClassification("candidate " + std::to_string(k) + " has overlap " +
                                        to_string(*ov.exact));
      } else if (mag >= 1.0 - kClassifyTolerance) {
        matches.push_back(k);
      } else if (mag > kClassifyTolerance) {
        throw AmbiguousClassification("candidate " + std::to_string(k) + " has |overlap| " +
                                      std::to_string(mag));
      }
    }
    if (matches.size() != 1)
      throw AmbiguousClassification(std::to_string(matches.size()) +
                                    " candidates match the output state");
    result.identified = matches.front();
    return result;
  }

 private:
  std::size_t n_;
  std::size_t t_;
  std::optional<AmpState> input_;
  std::vector<AmpState> candidates_;
};

inline IdentificationRun run_identification(const Scheme& scheme, const OracleBox& hidden,
                                            const Limits& limits = {}) {
  return Identifier(scheme, limits).run(hidden);
}

/// True iff every pair of candidate outputs is orthogonal.
inline bool exhaustive_check(const Scheme& scheme, const Limits& limits = {}) {
  const Identifier id(scheme, limits);
  const auto& outs = id.candidate_outputs();
  for (std::size_t i = 0; i < outs.size(); ++i)
    for (std::size_t j = i + 1; j < outs.size(); ++j)
      if (!overlap(outs[i], outs[j]).is_zero()) return false;
  return true;
}

}  // namespace paradisc
