#pragma once

// The `paradisc` command line. Every command writes exactly one JSON
// document to `out` and diagnostics to `err`, and returns
//   0  success / valid / feasible
//   1  a legitimate negative answer (invalid scheme, infeasible, N = 2)
//   2  usage error or resource cap exceeded
//   3  malformed input file

#include <paradisc/identifier.hpp>
#include <paradisc/json_io.hpp>
#include <paradisc/optimizer.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace paradisc::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kMalformed = 3 };

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// A builtin name, or otherwise a path to a scheme file.
inline Scheme load_scheme(const std::string& ref, Index diagonal = 3) {
  for (const auto& name : builtin_names())
    if (ref == name) return builtin(name, diagonal);
  return scheme_from_json(read_json_file(ref));
}

/// "pair 1 2", "quad 1 2 3 4" or "star 1".
inline CanonicalBlock parse_block_spec(const std::string& spec, std::size_t n) {
  std::istringstream is(spec);
  std::string type;
  is >> type;
  std::vector<Index> idx;
  long long v = 0;
  while (is >> v) {
    if (v < 1) throw UsageError("block index must be >= 1 in '" + spec + "'");
    idx.push_back(static_cast<Index>(v));
  }
  if (!is.eof()) throw UsageError("malformed block spec '" + spec + "'");
  try {
    if (type == "pair" && idx.size() == 2) return CanonicalBlock::pair(n, idx[0], idx[1]);
    if (type == "quad" && idx.size() == 4) return CanonicalBlock::quad(n, idx[0], idx[1], idx[2], idx[3]);
    if (type == "star" && idx.size() == 1) return CanonicalBlock::star(n, idx[0]);
  } catch (const std::exception& e) {
    throw UsageError(std::string("invalid block '") + spec + "': " + e.what());
  }
  throw UsageError("block spec must be 'pair i j', 'quad a b c d' or 'star i', got '" + spec + "'");
}

inline Json lp_stats_json(const FeasibilityResult& r) {
  return {{"variables", r.stats.variables},
          {"columns", r.stats.columns},
          {"constraints", r.stats.constraints},
          {"pivots", r.stats.pivots},
          {"phase1_objective", to_string(r.phase1_objective)}};
}

}  // namespace detail

struct Options {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t t_max = 0;
  std::size_t hidden = 0;
  std::size_t diagonal = 3;
  std::size_t max_n = CoverOptions{}.max_n;
  std::string mode = "product";
  std::string scheme;
  std::string state;
  std::string block;
  std::string builtin_name;
  bool entangled = false;
  bool full_tensor = false;
  Limits limits{};
};

inline int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.n < 1) throw detail::UsageError("--n must be >= 1");
  if (o.n == 2) {
    err << "N=2: f_1 = -f_2 differ by a global phase; no scheme exists\n";
    detail::emit(out, {{"n", 2}, {"indistinguishable", true}});
    return kOk;
  }
  detail::emit(out, {{"n", o.n},
                     {"general_lower", general_lower_bound(o.n)},
                     {"construction_size", construction_size(o.n)}});
  return kOk;
}

inline int cmd_build(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.builtin_name.empty()) {
    detail::emit(out, to_json(builtin(o.builtin_name, o.diagonal)));
    return kOk;
  }
  if (o.n < 1) throw detail::UsageError("--n must be >= 1 (or use --builtin)");
  if (o.n == 2) {
    err << Indistinguishable().what() << '\n';
    return kNegative;
  }
  if (!o.entangled) {
    detail::emit(out, to_json(construct_product_scheme(o.n)));
    return kOk;
  }
  if (o.n == 1) throw detail::UsageError("--entangled needs --n >= 3");
  if (o.t > 0) {
    const FeasibilityResult r = entangled_feasible(o.n, o.t, o.limits);
    if (!r.feasible) {
      err << "no " << o.t << "-copy scheme exists for N=" << o.n
          << " (phase-1 objective " << to_string(r.phase1_objective) << ")\n";
      return kNegative;
    }
    detail::emit(out, to_json(*r.witness));
    return kOk;
  }
  const EntangledSearch s = search_min_entangled(o.n, construction_size(o.n), o.limits);
  if (!s.min_t) {
    err << "no entangled scheme found up to t=" << construction_size(o.n) << '\n';
    return kNegative;
  }
  err << "smallest feasible t = " << *s.min_t << '\n';
  detail::emit(out, to_json(*s.result->witness));
  return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  const Scheme s = detail::load_scheme(o.scheme, o.diagonal);
  VerifyOptions vo;
  vo.full_tensor = o.full_tensor;
  vo.limits = o.limits;
  const SchemeReport r = verify(s, vo);
  Json j = to_json(r);
  j["n"] = scheme_dimension(s);
  j["t"] = scheme_copies(s);
  detail::emit(out, j);
  return r.valid ? kOk : kNegative;
}

inline int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.n < 1) throw detail::UsageError("--n must be >= 1");
  if (o.mode == "product") {
    if (o.n == 2) {
      err << Indistinguishable().what() << '\n';
      return kNegative;
    }
    if (o.n < 3) throw detail::UsageError("product search needs --n >= 3");
    const CoverSolution sol = min_product_cover(o.n, CoverOptions{o.max_n});
    detail::emit(out, {{"mode", "product"},
                       {"n", o.n},
                       {"min_t", sol.t},
                       {"witness", to_json(ProductScheme(o.n, sol.blocks))},
                       {"nodes_explored", sol.nodes_explored}});
    return kOk;
  }
  if (o.mode == "entangled") {
    if (o.n < 2) throw detail::UsageError("entangled search needs --n >= 2");
    const std::size_t t_max = o.t_max > 0 ? o.t_max : (o.n == 2 ? 6 : construction_size(o.n));
    const EntangledSearch s = search_min_entangled(o.n, t_max, o.limits);
    Json j = {{"mode", "entangled"}, {"n", o.n}, {"t_max", t_max}, {"searched_from", s.tried_from}};
    if (!s.min_t) {
      j["min_t"] = nullptr;
      detail::emit(out, j);
      err << "no entangled scheme with t <= " << t_max << '\n';
      return kNegative;
    }
    j["min_t"] = *s.min_t;
    j["witness"] = to_json(*s.result->witness);
    j["lp_stats"] = detail::lp_stats_json(*s.result);
    detail::emit(out, j);
    return kOk;
  }
  throw detail::UsageError("--mode must be 'product' or 'entangled'");
}

inline int cmd_identify(const Options& o, std::ostream& out, std::ostream& err) {
  std::optional<Scheme> scheme;
  if (!o.scheme.empty()) scheme = detail::load_scheme(o.scheme, o.diagonal);
  std::size_t n = o.n;
  if (scheme) {
    if (n == 0) n = scheme_dimension(*scheme);
    if (n != scheme_dimension(*scheme))
      throw detail::UsageError("--n " + std::to_string(n) + " does not match the scheme's N=" +
                               std::to_string(scheme_dimension(*scheme)));
  }
  if (n < 1) throw detail::UsageError("--n must be >= 1");
  if (o.hidden < 1 || o.hidden > n)
    throw detail::UsageError("--hidden must lie in 1.." + std::to_string(n));
  if (!scheme) {
    if (n == 2) {
      err << Indistinguishable().what() << '\n';
      return kNegative;
    }
    scheme = construct_product_scheme(n);
  }
  const GroverOracle hidden(n, o.hidden);
  try {
    const IdentificationRun run = run_identification(*scheme, hidden, o.limits);
    detail::emit(out, {{"n", n}, {"identified", run.identified}, {"queries", run.queries}});
  } catch (const AmbiguousClassification& e) {
    err << "ambiguous classification: " << e.what() << '\n';
    return kNegative;
  }
  return kOk;
}

inline int cmd_graph(const Options& o, std::ostream& out, std::ostream&) {
  if (o.state.empty() == o.block.empty()) throw detail::UsageError("give exactly one of --state or --block");
  if (!o.block.empty()) {
    if (o.n < 1) throw detail::UsageError("--block needs --n");
    const CanonicalBlock b = detail::parse_block_spec(o.block, o.n);
    Json j = to_json(block_graph(b));
    j["block"] = b.describe();
    detail::emit(out, j);
    return kOk;
  }
  const SingleCopyState s = state_from_json(detail::read_json_file(o.state));
  if (o.n != 0 && o.n != s.dimension())
    throw detail::UsageError("--n does not match the state's dimension");
  detail::emit(out, to_json(discrimination_graph(s)));
  return kOk;
}

/// Parses `argv` and dispatches to a command.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact parallel discrimination schemes for Grover phase oracles", "paradisc"};
  app.require_subcommand(1);
  Options o;

  auto add_caps = [&o](CLI::App* c) {
    c->add_option("--max-tuples", o.limits.max_tuples, "Cap on basis tuples in expanded states");
    c->add_option("--max-compositions", o.limits.max_compositions, "Cap on LP compositions");
  };

  auto* bounds = app.add_subcommand("bounds", "Entangled lower bound and construction size");
  bounds->add_option("--n", o.n, "Database size N")->required();

  auto* build = app.add_subcommand("build", "Emit a scheme file");
  build->add_option("--n", o.n, "Database size N");
  build->add_flag("--entangled", o.entangled, "Emit an LP witness instead of the product construction");
  build->add_option("--t", o.t, "Copy count for --entangled (default: smallest feasible)");
  build->add_option("--builtin", o.builtin_name, "n4-single | n5-product | n6-entangled");
  build->add_option("--diagonal", o.diagonal, "Diagonal term |kk> of n6-entangled");
  add_caps(build);

  auto* verify_cmd = app.add_subcommand("verify", "Verify a scheme file or builtin");
  verify_cmd->add_option("--scheme", o.scheme, "Scheme file or builtin name")->required();
  verify_cmd->add_flag("--full-tensor", o.full_tensor, "Cross-check product schemes on the full tensor state");
  verify_cmd->add_option("--diagonal", o.diagonal, "Diagonal term |kk> of n6-entangled");
  add_caps(verify_cmd);

  auto* search = app.add_subcommand("search", "Exact minimal schemes at small N");
  search->add_option("--n", o.n, "Database size N")->required();
  search->add_option("--mode", o.mode, "product | entangled");
  search->add_option("--t-max", o.t_max, "Largest copy count to try (entangled)");
  search->add_option("--max-n", o.max_n, "Largest N accepted by the product search");
  add_caps(search);

  auto* identify = app.add_subcommand("identify", "Identify a hidden oracle with a scheme");
  identify->add_option("--n", o.n, "Database size N");
  identify->add_option("--hidden", o.hidden, "Hidden oracle index")->required();
  identify->add_option("--scheme", o.scheme, "Scheme file or builtin name (default: construction)");
  identify->add_option("--diagonal", o.diagonal, "Diagonal term |kk> of n6-entangled");
  add_caps(identify);

  auto* graph = app.add_subcommand("graph", "Discrimination graph of a state or block");
  graph->add_option("--state", o.state, "Single-copy state file");
  graph->add_option("--block", o.block, "'pair i j' | 'quad a b c d' | 'star i'");
  graph->add_option("--n", o.n, "Dimension for --block");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(o, out, err);
    if (build->parsed()) return cmd_build(o, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (search->parsed()) return cmd_search(o, out, err);
    if (identify->parsed()) return cmd_identify(o, out, err);
    if (graph->parsed()) return cmd_graph(o, out, err);
  } catch (const SchemaError& e) {
    err << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const Indistinguishable& e) {
    err << e.what() << '\n';
    return kNegative;
  } catch (const ResourceCapExceeded& e) {
    err << "resource cap: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace paradisc::cli
