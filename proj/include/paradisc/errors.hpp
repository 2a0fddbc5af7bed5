#pragma once

#include <stdexcept>
#include <string>

namespace paradisc {

/// Sizes of two operands disagree (dimension N or copy count t).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An index lies outside 1..N, or two indices that must differ coincide.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A single-copy state discriminates no pair at all.
class TrivialState : public std::invalid_argument {
 public:
  TrivialState() : std::invalid_argument("trivial state: discrimination graph is empty") {}
};

/// N = 2: f_1 = -f_2, so the two oracles differ only by a global phase and
/// no parallel scheme of any size separates them.
class Indistinguishable : public std::invalid_argument {
 public:
  Indistinguishable()
      : std::invalid_argument(
            "N=2 is indistinguishable: f_1 = -f_2 differ by a global phase, "
            "(f_1^dag f_2)^{(x)t} = (-1)^t I is never orthogonal") {}
};

/// An enumeration or expansion would exceed its configured size cap.
class ResourceCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Zero or several candidate outputs matched the observed output state.
class AmbiguousClassification : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paradisc
