#pragma once

// JSON encoding of schemes, states, graphs and reports. Rationals are always
// "num/den" strings so files round-trip exactly. Objects use sorted keys, so
// identical values serialize to identical bytes.
//
// Product scheme:
//   {"kind":"product","n":5,"blocks":[{"type":"star","i":1},
//                                     {"type":"quad","a":2,"b":3,"c":4,"d":5}]}
// Entangled scheme:
//   {"kind":"entangled","n":6,"t":2,
//    "weights":[{"composition":[1,1,0,0,0,0],"q":"1/16"}, ...]}
// Single-copy state: {"n":5,"masses":["1/2","1/4","1/4","0/1","0/1"]}
//                 or {"n":2,"amplitudes":[[0.7071,0],[0,0.7071]]}

#include <paradisc/optimizer.hpp>
#include <paradisc/schemes.hpp>

#include <json.hpp>

#include <set>
#include <stdexcept>
#include <string>

namespace paradisc {

using Json = nlohmann::json;

/// A document that does not match the scheme or state schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- encoding -------------------------------------------------------------------

inline Json to_json(const CanonicalBlock& b) {
  const auto& x = b.indices();
  switch (b.kind()) {
    case CanonicalBlock::Kind::Pair: return {{"type", "pair"}, {"i", x[0]}, {"j", x[1]}};
    case CanonicalBlock::Kind::Quad:
      return {{"type", "quad"}, {"a", x[0]}, {"b", x[1]}, {"c", x[2]}, {"d", x[3]}};
    case CanonicalBlock::Kind::Star: return {{"type", "star"}, {"i", x[0]}};
  }
  return {};
}

inline Json to_json(const ProductScheme& s) {
  if (!s.is_canonical()) throw std::invalid_argument("only canonical-block product schemes serialize");
  Json blocks = Json::array();
  for (const auto& f : s.factors()) blocks.push_back(to_json(std::get<CanonicalBlock>(f)));
  return {{"kind", "product"}, {"n", s.dimension()}, {"blocks", std::move(blocks)}};
}

inline Json to_json(const WeightProfile& w) {
  Json weights = Json::array();
  for (const auto& [c, q] : w.weights())
    weights.push_back({{"composition", c.counts()}, {"q", to_string(q)}});
  return {{"kind", "entangled"}, {"n", w.dimension()}, {"t", w.copies()}, {"weights", std::move(weights)}};
}

inline Json to_json(const Scheme& s) {
  return std::visit([](const auto& x) { return to_json(x); }, s);
}

inline Json to_json(const DiscriminationGraph& g) {
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
  return {{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

inline Json to_json(const SchemeReport& r) {
  Json failing = Json::array();
  Json defects = Json::array();
  for (const auto& f : r.failing_pairs) {
    failing.push_back({f.pair.first, f.pair.second});
    Json d = {{"pair", {f.pair.first, f.pair.second}}};
    if (f.defect)
      d["defect"] = to_string(*f.defect);
    else
      d["defect"] = f.defect_value;
    defects.push_back(std::move(d));
  }
  return {{"valid", r.valid},
          {"method", method_name(r.method)},
          {"failing_pairs", std::move(failing)},
          {"defects", std::move(defects)}};
}

// --- decoding -------------------------------------------------------------------

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t uint_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw SchemaError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

inline Rational rational_value(const Json& v) {
  if (!v.is_string()) throw SchemaError("rational values must be \"num/den\" strings");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace detail

inline CanonicalBlock block_from_json(const Json& j, std::size_t n) {
  const Json& type = detail::field(j, "type");
  if (!type.is_string()) throw SchemaError("block 'type' must be a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "pair") return CanonicalBlock::pair(n, detail::uint_field(j, "i"), detail::uint_field(j, "j"));
    if (t == "quad")
      return CanonicalBlock::quad(n, detail::uint_field(j, "a"), detail::uint_field(j, "b"),
                                  detail::uint_field(j, "c"), detail::uint_field(j, "d"));
    if (t == "star") return CanonicalBlock::star(n, detail::uint_field(j, "i"));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(std::string("invalid ") + t + " block: " + e.what());
  }
  throw SchemaError("unknown block type '" + t + "'");
}

inline Scheme scheme_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("scheme document must be a JSON object");
  const Json& kind = detail::field(j, "kind");
  if (!kind.is_string()) throw SchemaError("'kind' must be a string");
  const std::size_t n = detail::uint_field(j, "n");
  if (n < 1) throw SchemaError("'n' must be >= 1");

  if (kind == "product") {
    const Json& blocks = detail::field(j, "blocks");
    if (!blocks.is_array()) throw SchemaError("'blocks' must be an array");
    std::vector<CanonicalBlock> out;
    for (const auto& b : blocks) out.push_back(block_from_json(b, n));
    try {
      return ProductScheme(n, out);
    } catch (const std::exception& e) {
      throw SchemaError(e.what());
    }
  }

  if (kind == "entangled") {
    const std::size_t t = detail::uint_field(j, "t");
    if (t < 1) throw SchemaError("'t' must be >= 1");
    const Json& weights = detail::field(j, "weights");
    if (!weights.is_array()) throw SchemaError("'weights' must be an array");
    WeightProfile::Map w;
    Rational total = 0;
    for (const auto& entry : weights) {
      const Json& comp = detail::field(entry, "composition");
      if (!comp.is_array() || comp.size() != n)
        throw SchemaError("composition must be an array of length n=" + std::to_string(n));
      std::vector<unsigned> counts;
      std::size_t sum = 0;
      for (const auto& c : comp) {
        if (!c.is_number_integer() || c.get<long long>() < 0)
          throw SchemaError("composition entries must be non-negative integers");
        counts.push_back(c.get<unsigned>());
        sum += counts.back();
      }
      if (sum != t)
        throw SchemaError("composition sums to " + std::to_string(sum) + ", expected t=" + std::to_string(t));
      const Rational q = detail::rational_value(detail::field(entry, "q"));
      if (sgn(q) < 0) throw SchemaError("negative mass " + to_string(q));
      total += q;
      if (!w.emplace(Composition(std::move(counts)), q).second)
        throw SchemaError("duplicate composition " + comp.dump());
    }
    if (total != 1) throw SchemaError("masses sum to " + to_string(total) + ", expected 1/1");
    return WeightProfile(n, t, std::move(w));
  }

  throw SchemaError("unknown scheme kind " + kind.dump());
}

inline SingleCopyState state_from_json(const Json& j) {
  const std::size_t n = detail::uint_field(j, "n");
  if (n < 1) throw SchemaError("'n' must be >= 1");
  try {
    if (j.contains("masses")) {
      const Json& m = j.at("masses");
      if (!m.is_array() || m.size() != n) throw SchemaError("'masses' must be an array of length n");
      std::vector<Rational> masses;
      for (const auto& v : m) masses.push_back(detail::rational_value(v));
      return SingleCopyState::from_masses(masses);
    }
    if (j.contains("amplitudes")) {
      const Json& a = j.at("amplitudes");
      if (!a.is_array() || a.size() != n) throw SchemaError("'amplitudes' must be an array of length n");
      std::vector<Complex> amps;
      for (const auto& v : a) {
        if (v.is_number())
          amps.emplace_back(v.get<double>(), 0.0);
        else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
          amps.emplace_back(v[0].get<double>(), v[1].get<double>());
        else
          throw SchemaError("amplitude must be a number or a [re, im] pair");
      }
      return SingleCopyState::numeric(std::move(amps));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(e.what());
  }
  throw SchemaError("state needs 'masses' or 'amplitudes'");
}

}  // namespace paradisc
