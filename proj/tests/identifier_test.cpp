#include <paradisc/identifier.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace paradisc {
namespace {

/// Wraps a Grover oracle and records every register it is asked to act on.
class CountingOracle : public OracleBox {
 public:
  CountingOracle(std::size_t n, Index target) : inner_(n, target) {}
  std::size_t dimension() const override { return inner_.dimension(); }
  AmpState query(const AmpState& state, std::size_t copy) const override {
    calls_.push_back(copy);
    return inner_.query(state, copy);
  }
  const std::vector<std::size_t>& calls() const { return calls_; }

 private:
  GroverOracle inner_;
  mutable std::vector<std::size_t> calls_;
};

TEST(Identify, Examples) {
  const auto run = run_identification(builtin("n6-entangled"), GroverOracle(6, 4));
  EXPECT_EQ(run.identified, 4u);
  EXPECT_EQ(run.queries, 2u);
  ASSERT_EQ(run.exact_overlaps.size(), 6u);
  for (Index k = 1; k <= 6; ++k) {
    ASSERT_TRUE(run.exact_overlaps[k - 1].has_value());
    EXPECT_EQ(abs(*run.exact_overlaps[k - 1]), k == 4 ? 1 : 0);
    EXPECT_DOUBLE_EQ(run.overlaps[k - 1], k == 4 ? 1.0 : 0.0);
  }

  const auto single = run_identification(builtin("n4-single"), GroverOracle(4, 3));
  EXPECT_EQ(single.identified, 3u);
  EXPECT_EQ(single.queries, 1u);

  const auto trivial = run_identification(construct_product_scheme(1), GroverOracle(1, 1));
  EXPECT_EQ(trivial.identified, 1u);
  EXPECT_EQ(trivial.queries, 0u);
}

TEST(Identify, ConstructionRecoversEveryTarget) {
  for (std::size_t n = 3; n <= 9; ++n) {
    const ProductScheme s = construct_product_scheme(n);
    const Identifier id(s);
    for (Index x = 1; x <= n; ++x) {
      const auto run = id.run(GroverOracle(n, x));
      ASSERT_EQ(run.identified, x) << n;
      ASSERT_EQ(run.queries, s.copies());
    }
  }
}

TEST(Identify, SearchWitnessesRecoverEveryTarget) {
  for (std::size_t n = 3; n <= 7; ++n) {
    const auto ent = search_min_entangled(n, construction_size(n));
    ASSERT_TRUE(ent.min_t);
    const Identifier id(Scheme(*ent.result->witness));
    for (Index x = 1; x <= n; ++x) ASSERT_EQ(id.run(GroverOracle(n, x)).identified, x);
    EXPECT_TRUE(exhaustive_check(*ent.result->witness));
  }
}

TEST(Identify, BuiltinsRecoverEveryTarget) {
  for (const auto& name : builtin_names()) {
    const Scheme s = builtin(name);
    const Identifier id(s);
    for (Index x = 1; x <= id.dimension(); ++x) EXPECT_EQ(id.run(GroverOracle(id.dimension(), x)).identified, x);
    EXPECT_TRUE(exhaustive_check(s)) << name;
  }
}

TEST(Identify, QueriesEachRegisterOnce) {
  const ProductScheme s = construct_product_scheme(8);
  CountingOracle box(8, 5);
  const auto run = run_identification(s, box);
  EXPECT_EQ(run.identified, 5u);
  EXPECT_EQ(run.queries, s.copies());
  std::vector<std::size_t> expect(s.copies());
  for (std::size_t k = 0; k < expect.size(); ++k) expect[k] = k;
  EXPECT_EQ(box.calls(), expect);
}

TEST(Identify, InvalidSchemeIsAmbiguous) {
  const ProductScheme bad(3, std::vector<CanonicalBlock>{CanonicalBlock::pair(3, 1, 2)});
  EXPECT_FALSE(exhaustive_check(bad));
  // f_1 and f_2 give outputs differing by a global phase.
  EXPECT_THROW(run_identification(bad, GroverOracle(3, 1)), AmbiguousClassification);
  // f_3 alone still stands out.
  EXPECT_EQ(run_identification(bad, GroverOracle(3, 3)).identified, 3u);

  const WeightProfile skewed(4, 1,
                             {{Composition({1, 0, 0, 0}), Rational(1, 2)},
                              {Composition({0, 1, 0, 0}), Rational(1, 2)}});
  EXPECT_FALSE(exhaustive_check(skewed));
  EXPECT_THROW(run_identification(skewed, GroverOracle(4, 3)), AmbiguousClassification);
}

TEST(Identify, NumericFactors) {
  const double h = 0.5;
  const ProductScheme s(4, {ProductScheme::Factor(SingleCopyState::numeric({h, Complex(0, h), -h, h}))});
  const Identifier id(s);
  for (Index x = 1; x <= 4; ++x) {
    const auto run = id.run(GroverOracle(4, x));
    EXPECT_EQ(run.identified, x);
    EXPECT_FALSE(run.exact_overlaps[0].has_value());
    EXPECT_NEAR(run.overlaps[x - 1], 1.0, 1e-12);
  }
  EXPECT_TRUE(exhaustive_check(s));

  const ProductScheme off(4, {ProductScheme::Factor(SingleCopyState::numeric({0.6, 0.48, 0.48, std::sqrt(1 - 0.36 - 2 * 0.2304)}))});
  EXPECT_FALSE(exhaustive_check(off));
  EXPECT_THROW(run_identification(off, GroverOracle(4, 1)), AmbiguousClassification);
}

TEST(Identify, DimensionMismatch) {
  EXPECT_THROW(run_identification(builtin("n5-product"), GroverOracle(6, 1)), DimensionMismatch);
}

}  // namespace
}  // namespace paradisc
