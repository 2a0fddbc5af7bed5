#include <paradisc/json_io.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace paradisc {
namespace {

Scheme round_trip(const Scheme& s) { return scheme_from_json(Json::parse(to_json(s).dump())); }

bool same(const Scheme& a, const Scheme& b) {
  if (a.index() != b.index()) return false;
  if (const auto* p = std::get_if<ProductScheme>(&a)) {
    const auto& q = std::get<ProductScheme>(b);
    if (p->dimension() != q.dimension() || p->copies() != q.copies()) return false;
    for (std::size_t k = 0; k < p->copies(); ++k)
      if (std::get<CanonicalBlock>(p->factors()[k]) != std::get<CanonicalBlock>(q.factors()[k])) return false;
    return true;
  }
  const auto& x = std::get<WeightProfile>(a);
  const auto& y = std::get<WeightProfile>(b);
  return x.dimension() == y.dimension() && x.copies() == y.copies() && x.weights() == y.weights();
}

Json parse(const char* text) { return Json::parse(text); }

TEST(JsonIo, EncodingExamples) {
  EXPECT_EQ(to_json(CanonicalBlock::pair(5, 2, 4)).dump(), R"({"i":2,"j":4,"type":"pair"})");
  EXPECT_EQ(to_json(CanonicalBlock::quad(6, 6, 1, 3, 2)).dump(), R"({"a":1,"b":2,"c":3,"d":6,"type":"quad"})");
  EXPECT_EQ(to_json(CanonicalBlock::star(5, 3)).dump(), R"({"i":3,"type":"star"})");
  EXPECT_EQ(to_json(builtin("n5-product")).dump(),
            R"({"blocks":[{"i":1,"type":"star"},{"a":2,"b":3,"c":4,"d":5,"type":"quad"}],"kind":"product","n":5})");
  const Json phi = to_json(builtin("n6-entangled"));
  EXPECT_EQ(phi["kind"], "entangled");
  EXPECT_EQ(phi["t"], 2);
  ASSERT_EQ(phi["weights"].size(), 16u);  // 15 off-diagonal pairs and one diagonal term
  for (const auto& w : phi["weights"]) EXPECT_EQ(w["composition"].size(), 6u);

  DiscriminationGraph g(3);
  g.add_edge(1, 3);
  EXPECT_EQ(to_json(g).dump(), R"({"edges":[[1,3]],"n":3})");

  const auto r = verify(ProductScheme(3, std::vector<CanonicalBlock>{CanonicalBlock::pair(3, 1, 2)}));
  EXPECT_EQ(to_json(r).dump(),
            R"({"defects":[{"defect":"-1/1","pair":[1,2]}],"failing_pairs":[[1,2]],"method":"coverage-check","valid":false})");
}

TEST(JsonIo, RoundTripBuiltinsAndConstructions) {
  for (const auto& name : builtin_names()) EXPECT_TRUE(same(round_trip(builtin(name)), builtin(name))) << name;
  for (std::size_t n = 1; n <= 40; ++n) {
    if (n == 2) continue;
    const Scheme s = construct_product_scheme(n);
    EXPECT_TRUE(same(round_trip(s), s)) << n;
  }
}

TEST(JsonIo, RoundTripRandomSchemes) {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform(3, 9), t = testing::uniform(1, 4);
    Scheme s = ProductScheme(1, std::vector<CanonicalBlock>{});
    if (trial % 2) {
      std::vector<CanonicalBlock> bl;
      for (std::size_t k = 0; k < t; ++k) bl.push_back(canonicalize(testing::sample_nontrivial_state(n)));
      s = ProductScheme(n, bl);
    } else {
      const auto comps = enumerate_compositions(n, t);
      const std::size_t support = testing::uniform(1, std::min<std::size_t>(20, comps.size()));
      WeightProfile::Map w;
      for (const auto& m : testing::random_split(Rational(1), support, false))
        w[comps[testing::uniform(0, comps.size() - 1)]] += m;
      s = WeightProfile(n, t, std::move(w));
    }
    const Scheme back = round_trip(s);
    ASSERT_TRUE(same(back, s));
    ASSERT_EQ(to_json(back).dump(), to_json(s).dump());
    ASSERT_EQ(verify(back).valid, verify(s).valid);
  }
}

TEST(JsonIo, SchemaErrors) {
  const char* bad[] = {
      R"([1,2])",
      R"({"n":3,"blocks":[]})",
      R"({"kind":"product","blocks":[]})",
      R"({"kind":"product","n":0,"blocks":[]})",
      R"({"kind":"product","n":3.5,"blocks":[]})",
      R"({"kind":"product","n":3,"blocks":{}})",
      R"({"kind":"product","n":3,"blocks":[{"type":"pair","i":1,"j":1}]})",
      R"({"kind":"product","n":3,"blocks":[{"type":"pair","i":1,"j":4}]})",
      R"({"kind":"product","n":3,"blocks":[{"type":"quad","a":1,"b":2,"c":3,"d":4}]})",
      R"({"kind":"product","n":3,"blocks":[{"type":"hexagon"}]})",
      R"({"kind":"product","n":3,"blocks":[{"type":"pair","i":1}]})",
      R"({"kind":"product","n":3,"blocks":[{"type":"pair","i":-1,"j":2}]})",
      R"({"kind":"product","n":3,"blocks":[]})",
      R"({"kind":"mixed","n":3})",
      R"({"kind":7,"n":3})",
      R"({"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1],"q":"1/1"}]})",
      R"({"kind":"entangled","n":2,"t":1,"weights":[{"composition":[2,0],"q":"1/1"}]})",
      R"({"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":"1/2"}]})",
      R"({"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":0.5},{"composition":[0,1],"q":"1/2"}]})",
      R"({"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":"3/2"},{"composition":[0,1],"q":"-1/2"}]})",
      R"({"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":"1/2"},{"composition":[1,0],"q":"1/2"}]})",
      R"({"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":"1/0"},{"composition":[0,1],"q":"1/2"}]})",
      R"({"kind":"entangled","n":2,"t":0,"weights":[]})",
      R"({"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,-1],"q":"1/1"}]})",
      R"({"kind":"entangled","n":2,"t":1,"weights":[{"q":"1/1"}]})",
  };
  for (const char* text : bad) EXPECT_THROW(scheme_from_json(parse(text)), SchemaError) << text;

  EXPECT_NO_THROW(scheme_from_json(parse(R"({"kind":"product","n":1,"blocks":[]})")));
  EXPECT_NO_THROW(scheme_from_json(
      parse(R"({"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":"1/2"},{"composition":[0,1],"q":"2/4"}]})")));
}

TEST(JsonIo, States) {
  const auto exact = state_from_json(parse(R"({"n":4,"masses":["1/4","1/4","1/4","1/4"]})"));
  EXPECT_TRUE(exact.is_exact());
  EXPECT_EQ(discrimination_graph(exact).edges().size(), 6u);

  const auto num = state_from_json(parse(R"({"n":2,"amplitudes":[0.6,[0,0.8]]})"));
  EXPECT_FALSE(num.is_exact());
  EXPECT_NEAR(num.amplitude(2).imag(), 0.8, 1e-15);

  const char* bad[] = {
      R"({"masses":["1/1"]})",
      R"({"n":2,"masses":["1/1"]})",
      R"({"n":2,"masses":["1/2","1/4"]})",
      R"({"n":2,"masses":[0.5,0.5]})",
      R"({"n":2,"amplitudes":[1,[0,1,2]]})",
      R"({"n":2,"amplitudes":[1,1]})",
      R"({"n":2})",
      R"({"n":0,"masses":[]})",
  };
  for (const char* text : bad) EXPECT_THROW(state_from_json(parse(text)), SchemaError) << text;
}

TEST(JsonIo, OutputIsByteStable) {
  const auto a = entangled_feasible(7, 3), b = entangled_feasible(7, 3);
  EXPECT_EQ(to_json(*a.witness).dump(2), to_json(*b.witness).dump(2));
  EXPECT_THROW(to_json(ProductScheme(4, {ProductScheme::Factor(SingleCopyState::numeric({0.5, 0.5, 0.5, 0.5}))})),
               std::invalid_argument);
}

}  // namespace
}  // namespace paradisc
