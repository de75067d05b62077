#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "lasgap/artifact.hpp"
#include "lasgap/certificates.hpp"
#include "lasgap/gadgets.hpp"
#include "lasgap/gram.hpp"
#include "lasgap/graph.hpp"
#include "lasgap/lifted_sdp.hpp"
#include "lasgap/oracles.hpp"
#include "lasgap/prng.hpp"
#include "lasgap/rational.hpp"
#include "lasgap/sdp/sdpa.hpp"
#include "lasgap/sdp/solve.hpp"
#include "lasgap/subset.hpp"
#include "lasgap/xor3.hpp"
#include "lasgap/xor_lasserre.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lasgap;

namespace {

constexpr const char* kSchema = "v1";
constexpr const char* kWorkEnv = "LASGAP_WORK";

constexpr int kExitOk = 0;
constexpr int kExitIdentity = 2;
constexpr int kExitSolver = 3;

struct Store {
  fs::path dir;
};

Store open_store(const std::string& flag) {
  fs::path dir;
  if (!flag.empty()) {
    dir = flag;
  } else if (const char* env = std::getenv(kWorkEnv); env != nullptr && *env != '\0') {
    dir = env;
  } else {
    dir = "lasgap-work";
  }
  fs::create_directories(dir);
  return Store{dir};
}

std::string write_artifact(const Store& store, const json& doc) {
  const std::string id = content_id(doc);
  const fs::path path = store.dir / (doc.at("kind").get<std::string>() + "-" + id + ".json");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
  std::cout << "wrote " << path.string() << "\n";
  return id;
}

json load_artifact(const Store& store, const std::string& ref, const std::string& kind) {
  fs::path path = ref;
  if (!fs::exists(path)) path = store.dir / ref;
  if (!fs::exists(path)) path = store.dir / (kind + "-" + ref + ".json");
  if (!fs::exists(path)) {
    throw std::runtime_error("missing artifact: " + ref + " (kind " + kind + ")");
  }
  std::ifstream in(path);
  json doc = json::parse(in);
  if (doc.value("schema", "") != kSchema) {
    throw std::runtime_error("schema mismatch in " + path.string() + ": expected " +
                             std::string(kSchema));
  }
  if (doc.value("kind", "") != kind) {
    throw std::runtime_error(path.string() + " holds kind '" + doc.value("kind", "") +
                             "', expected '" + kind + "'");
  }
  return doc;
}

// Accepts "p/q", plain integers, and decimal literals such as 0.45.
Rational parse_ratio(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_fraction_or_throw(text);
  const std::string head = dot == 0 ? "0" : text.substr(0, dot);
  const std::string tail = text.substr(dot + 1);
  if (tail.empty()) return parse_fraction_or_throw(head);
  std::string denom = "1";
  denom.append(tail.size(), '0');
  const Rational whole = parse_fraction_or_throw(head);
  const Rational frac = parse_fraction_or_throw(tail + "/" + denom);
  return whole < 0 ? Rational(whole - frac) : Rational(whole + frac);
}

Graph parse_fixture(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::runtime_error("fixture must look like path:8, cycle:6, or complete:5");
  }
  const std::string family = text.substr(0, colon);
  const uint32_t n = static_cast<uint32_t>(std::stoul(text.substr(colon + 1)));
  if (family == "path") return Graph::path(n);
  if (family == "cycle") return Graph::cycle(n);
  if (family == "complete") return Graph::complete(n);
  throw std::runtime_error("unknown fixture family: " + family);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct LoadedInstance {
  json doc;
  std::string id;
  Xor3Instance inst;
  std::optional<std::vector<uint8_t>> planted;
};

LoadedInstance load_instance(const Store& store, const std::string& ref) {
  LoadedInstance out;
  out.doc = load_artifact(store, ref, "instance");
  out.id = content_id(out.doc);
  out.inst = instance_from_json(out.doc.at("instance"));
  if (out.doc.contains("planted") && !out.doc.at("planted").is_null()) {
    out.planted = out.doc.at("planted").get<std::vector<uint8_t>>();
  }
  return out;
}

struct LoadedGadget {
  json doc;
  std::string id;
  GadgetGraph g;
};

LoadedGadget load_gadget(const Store& store, const std::string& ref) {
  LoadedGadget out;
  out.doc = load_artifact(store, ref, "gadget");
  out.id = content_id(out.doc);
  out.g = gadget_from_json(out.doc.at("gadget"));
  return out;
}

json instance_artifact(const Xor3Instance& inst, const std::string& mode,
                       const std::optional<std::vector<uint8_t>>& planted) {
  json doc{{"schema", kSchema}, {"kind", "instance"}, {"mode", mode},
           {"n", inst.n},       {"m", inst.m()},      {"seed", inst.seed},
           {"prng", inst.prng}, {"instance", instance_to_json(inst)}};
  doc["planted"] = planted ? json(*planted) : json(nullptr);
  return doc;
}

json balance_block(const BalanceSummary<Rational>& bal) {
  return json{{"delta", to_fraction_string(bal.delta)},
              {"residual_sq", to_fraction_string(bal.residual_sq)},
              {"implied_tau", to_fraction_string(bal.implied_tau)}};
}

size_t count_tag(const GadgetGraph& g, EdgeTag tag) {
  size_t c = 0;
  for (const TaggedEdge& e : g.edges) c += e.tag == tag ? 1 : 0;
  return c;
}

IdentityCheck cap_check(const std::string& name, const Rational& cap, const Rational& observed) {
  IdentityCheck c;
  c.name = name;
  c.expected = to_fraction_string(cap);
  c.observed = to_fraction_string(observed);
  c.residual = to_fraction_string(observed - cap);
  c.accepted = observed <= cap;
  return c;
}

// Identity set for a planted lift on any gadget stage. Reduced cores keep the
// balance identities exact; their edge sums are only capped.
std::vector<IdentityCheck> planted_checks(const ImplicitLiftedSolution<PlantedXorSolution>& sol) {
  const GadgetGraph& g = sol.host();
  const uint64_t m = g.m();
  const uint64_t big = g.params.M;
  if (g.stage == GadgetStage::bs) return check_bs_identities(sol);
  if (g.stage == GadgetStage::bs_reduced) {
    BalanceSummary<Rational> bal = balance_summary(sol);
    std::vector<IdentityCheck> checks;
    checks.push_back(cap_check("bs-objective-cap", Rational(5 * m), bs_objective(sol)));
    checks.push_back(make_identity_check("bs-balance", Rational((big + 1) * m), bal.delta, 0));
    checks.push_back(
        make_identity_check("bs-balance-residual-sq", Rational(0), bal.residual_sq, 0));
    checks.push_back(make_identity_check("bs-balance-fraction", Rational(big + 1, 2 * big + 5),
                                         bal.implied_tau, 0));
    checks.push_back(make_identity_check("empty-norm", Rational(1), sol.empty_norm(), 0));
    return checks;
  }
  if (count_tag(g, EdgeTag::left_rep) == 12 * m) return check_usc_identities(sol);
  BalanceSummary<Rational> bal = balance_summary(sol);
  const Rational mass(((static_cast<uint64_t>(g.params.lambda) + 1) * big + 1) * m);
  std::vector<IdentityCheck> checks;
  checks.push_back(
      cap_check("usc-objective-raw-cap", Rational((2 * big + 10) * m), lifted_edge_sum(sol)));
  checks.push_back(make_identity_check("usc-balance", mass, bal.delta, 0));
  checks.push_back(make_identity_check("usc-balance-residual-sq", Rational(0), bal.residual_sq, 0));
  checks.push_back(make_identity_check("empty-norm", Rational(1), sol.empty_norm(), 0));
  return checks;
}

struct SolveRow {
  Rational tau_prime;
  sdp::SdpSolution solution;
  double wall_ms = 0.0;
};

struct SolveOutcome {
  std::vector<SolveRow> rows;
  int best = -1;  // index of the smallest objective
  bool all_converged = true;
};

SolveOutcome solve_family(const std::vector<std::pair<Rational, LiftedSDP>>& family, double tol,
                          int max_iter) {
  SolveOutcome out;
  for (const auto& [tau_prime, lifted] : family) {
    const auto start = std::chrono::steady_clock::now();
    sdp::SdpProblem problem = to_sdp_problem(lifted);
    sdp::SolveOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    sdp::SdpSolution sol = sdp::solve(problem, options);
    out.all_converged = out.all_converged && sol.status == sdp::SolveStatus::converged;
    out.rows.push_back({tau_prime, std::move(sol), elapsed_ms(start)});
    if (out.best < 0 || out.rows.back().solution.objective < out.rows[out.best].solution.objective) {
      out.best = static_cast<int>(out.rows.size()) - 1;
    }
  }
  return out;
}

json solve_rows_json(const SolveOutcome& outcome) {
  json rows = json::array();
  for (const SolveRow& row : outcome.rows) {
    rows.push_back(json{{"tau_prime", to_fraction_string(row.tau_prime)},
                        {"value", row.solution.objective},
                        {"primal_residual", row.solution.primal_residual},
                        {"dual_residual", row.solution.dual_residual},
                        {"status", sdp::status_to_string(row.solution.status)},
                        {"iterations", row.solution.iterations},
                        {"wall_ms", row.wall_ms}});
  }
  return rows;
}

void write_solve_csv(const std::string& path, const SolveOutcome& outcome) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "tau_prime,sdp_value,primal_residual,iterations,status,wall_ms\n";
  for (const SolveRow& row : outcome.rows) {
    out << to_fraction_string(row.tau_prime) << "," << row.solution.objective << ","
        << row.solution.primal_residual << "," << row.solution.iterations << ","
        << sdp::status_to_string(row.solution.status) << "," << row.wall_ms << "\n";
  }
  std::cout << "wrote " << path << "\n";
}

json cut_result_json(const CutResult& r, const std::string& mode) {
  return json{{"mode", mode},
              {"crossing", r.stats.crossing},
              {"size_a", r.stats.size_a},
              {"size_b", r.stats.size_b},
              {"sparsity", to_fraction_string(r.stats.sparsity)},
              {"balance", to_fraction_string(r.stats.balance)},
              {"cut", cut_to_json(r.cut)}};
}

SearchMode resolve_oracle(const std::string& oracle, uint32_t nv) {
  if (oracle == "exact") return SearchMode::exact;
  if (oracle == "local") return SearchMode::local_search;
  return nv <= 26 ? SearchMode::exact : SearchMode::local_search;
}

struct GenOptions {
  uint32_t n = 0;
  uint32_t m = 0;
  uint64_t seed = 0;
  bool random = false;
};

std::pair<json, std::string> run_gen(const Store& store, const GenOptions& opt) {
  json doc;
  if (opt.random) {
    doc = instance_artifact(sample_random(opt.n, opt.m, opt.seed), "random", std::nullopt);
  } else {
    auto [inst, xstar] = sample_planted(opt.n, opt.m, opt.seed);
    doc = instance_artifact(inst, "planted", xstar);
  }
  return {doc, write_artifact(store, doc)};
}

struct BuildOptions {
  std::string instance_ref;
  uint32_t big_m = 2;
  uint32_t c = 16;
  std::optional<uint64_t> seed;
  bool reduce = false;
  bool usc = false;
  uint32_t lambda = 10;
  double expansion_target = 0.0;  // 0 = library default
};

std::pair<json, std::string> run_build(const Store& store, const BuildOptions& opt) {
  LoadedInstance li = load_instance(store, opt.instance_ref);
  if (li.inst.n == 0 || li.inst.m() % li.inst.n != 0) {
    throw std::runtime_error("instance has m=" + std::to_string(li.inst.m()) + ", n=" +
                             std::to_string(li.inst.n) + "; the gadget needs integral beta=m/n");
  }
  const uint32_t beta = static_cast<uint32_t>(li.inst.m() / li.inst.n);
  GadgetParams params{li.inst.n, beta, opt.big_m, 0, opt.c, opt.seed.value_or(li.inst.seed)};
  GadgetGraph g = build_bs_instance(li.inst, params);
  json reduction = nullptr;
  if (opt.reduce) {
    DegreeReduction red = reduce_degree(g);
    reduction = json{{"removed", red.removed.size()}, {"pair_count", red.Y}};
    g = std::move(red.reduced);
  }
  if (opt.usc) {
    std::optional<double> target;
    if (opt.expansion_target > 0) target = opt.expansion_target;
    g = build_usc_instance(g, opt.lambda, target);
  }
  AuditReport audit = audit_gadget(g);
  if (!audit.ok) {
    throw std::runtime_error("gadget audit failed: " +
                             (audit.failures.empty() ? "unknown" : audit.failures.front()));
  }
  json doc{{"schema", kSchema},
           {"kind", "gadget"},
           {"instance_ref", li.id},
           {"stage", stage_to_string(g.stage)},
           {"vertices", g.num_vertices()},
           {"edges", g.edges.size()},
           {"reduction", reduction},
           {"gadget", gadget_to_json(g)}};
  return {doc, write_artifact(store, doc)};
}

struct LiftOptions {
  std::string gadget_ref;
  std::string instance_ref;
  uint32_t s = 2;
};

struct LiftOutcome {
  json doc;
  std::string id;
  bool accepted = false;
};

LiftOutcome run_lift(const Store& store, const LiftOptions& opt) {
  LoadedGadget lg = load_gadget(store, opt.gadget_ref);
  LoadedInstance li = load_instance(store, opt.instance_ref);
  if (content_id(instance_to_json(li.inst)) != lg.g.source_id) {
    throw std::runtime_error("gadget was built from a different instance");
  }
  if (!li.planted) {
    throw std::runtime_error("lift needs a planted instance; this one is mode=random");
  }
  const uint32_t r = 3 * opt.s;
  PlantedXorSolution base(li.inst, *li.planted, r);
  ImplicitLiftedSolution<PlantedXorSolution> sol(base, lg.g, opt.s);
  std::vector<IdentityCheck> checks = planted_checks(sol);
  BalanceSummary<Rational> bal = balance_summary(sol);
  LiftOutcome out;
  out.accepted = all_accepted(checks);
  out.doc = json{{"schema", kSchema},
                 {"kind", "lift"},
                 {"gadget_ref", lg.id},
                 {"instance_ref", li.id},
                 {"stage", stage_to_string(lg.g.stage)},
                 {"s", opt.s},
                 {"base_round", r},
                 {"edge_sum", to_fraction_string(lifted_edge_sum(sol))},
                 {"balance", balance_block(bal)},
                 {"identities", identity_checks_to_json(checks)},
                 {"all_accepted", out.accepted}};
  out.id = write_artifact(store, out.doc);
  return out;
}

struct CertifyOptions {
  std::string gadget_ref;
  std::string instance_ref;
  std::string target = "balance";
  uint32_t s = 2;
  double tol = 1e-6;
  uint64_t seed = 0;
};

int run_certify(const Store& store, const CertifyOptions& opt) {
  LoadedGadget lg = load_gadget(store, opt.gadget_ref);
  LoadedInstance li = load_instance(store, opt.instance_ref);
  if (content_id(instance_to_json(li.inst)) != lg.g.source_id) {
    throw std::runtime_error("gadget was built from a different instance");
  }
  if (!li.planted) throw std::runtime_error("certify needs a planted instance");
  PlantedXorSolution base(li.inst, *li.planted, 3 * opt.s);
  ImplicitLiftedSolution<PlantedXorSolution> sol(base, lg.g, opt.s);
  const uint64_t m = lg.g.m();
  const uint64_t big = lg.g.params.M;

  json result;
  bool accepted = false;
  if (opt.target == "balance") {
    BalanceSummary<Rational> bal = balance_summary(sol);
    const uint64_t lam = lg.g.params.lambda;
    const Rational expect = lg.g.stage == GadgetStage::usc
                                ? Rational(((lam + 1) * big + 1) * m)
                                : Rational((big + 1) * m);
    IdentityCheck check = make_identity_check("balance", expect, bal.delta, 0);
    accepted = check.accepted && bal.residual_sq == 0;
    result = json{{"check", identity_check_to_json(check)}, {"balance", balance_block(bal)}};
    if (lg.g.stage != GadgetStage::usc) {
      LiftCertificate cert = bs_balance_residual(sol, opt.tol);
      accepted = accepted && cert.accepted;
      result["materialized"] = json{
          {"delta", cert.delta}, {"residual", cert.residual}, {"accepted", cert.accepted}};
    }
    std::cout << "balance delta=" << to_fraction_string(bal.delta)
              << " residual_sq=" << to_fraction_string(bal.residual_sq)
              << " accepted=" << (accepted ? "true" : "false") << "\n";
  } else if (opt.target == "objective") {
    std::vector<IdentityCheck> checks = planted_checks(sol);
    accepted = all_accepted(checks);
    result = json{{"identities", identity_checks_to_json(checks)}};
    std::cout << "objective edge_sum=" << to_fraction_string(lifted_edge_sum(sol))
              << " accepted=" << (accepted ? "true" : "false") << "\n";
  } else if (opt.target == "feasibility") {
    std::vector<SubsetKey> subsets{SubsetKey::empty_set()};
    Rng rng(opt.seed);
    const uint32_t nv = lg.g.num_vertices();
    while (subsets.size() < 190) {
      const uint32_t a = static_cast<uint32_t>(rng.below(nv));
      const uint32_t b = static_cast<uint32_t>(rng.below(nv));
      subsets.push_back(SubsetKey::singleton(a));
      if (a != b) subsets.push_back(SubsetKey::canonical({a, b}, nv));
    }
    GramSolution g = materialize_lift(sol, subsets, opt.tol);
    VectorReport report = verify_vector_constraints(g, opt.tol);
    accepted = report.clean();
    result = json{{"checked_pairs", report.checked_pairs},
                  {"violations", report.total_violations},
                  {"max_violation", report.max_violation},
                  {"empty_norm_deviation", report.empty_norm_deviation}};
    std::cout << "feasibility checked_pairs=" << report.checked_pairs
              << " violations=" << report.total_violations
              << " accepted=" << (accepted ? "true" : "false") << "\n";
  } else if (opt.target == "constraint-sums") {
    Rational worst(0);
    for (uint32_t i = 0; i < lg.g.m(); ++i) {
      const Rational res = constraint_sum_residual_sq(sol, i);
      if (res > worst) worst = res;
    }
    accepted = worst == 0;
    result = json{{"max_residual_sq", to_fraction_string(worst)}};
    std::cout << "constraint-sums max_residual_sq=" << to_fraction_string(worst)
              << " accepted=" << (accepted ? "true" : "false") << "\n";
  } else {
    throw std::runtime_error("unknown certify target: " + opt.target);
  }

  json doc{{"schema", kSchema},     {"kind", "certificate"},
           {"gadget_ref", lg.id},   {"instance_ref", li.id},
           {"target", opt.target},  {"s", opt.s},
           {"tol", opt.tol},        {"result", result},
           {"accepted", accepted}};
  write_artifact(store, doc);
  return accepted ? kExitOk : kExitIdentity;
}

struct SolveCmdOptions {
  std::string gadget_ref;
  std::string fixture;
  std::string tau = "0.45";
  uint32_t r = 1;
  bool psi2 = false;
  double tol = 1e-7;
  int max_iter = 200000;
  std::string csv;
};

int run_solve(const Store& store, const SolveCmdOptions& opt) {
  Graph graph;
  json source;
  if (!opt.gadget_ref.empty()) {
    LoadedGadget lg = load_gadget(store, opt.gadget_ref);
    graph = to_simple_graph(lg.g);
    source = json{{"gadget_ref", lg.id}};
  } else if (!opt.fixture.empty()) {
    graph = parse_fixture(opt.fixture);
    source = json{{"fixture", opt.fixture}};
  } else {
    throw std::runtime_error("solve needs --gadget or --fixture");
  }
  const Rational tau = parse_ratio(opt.tau);
  const auto family = opt.psi2 ? build_psi2(graph, opt.r) : build_psi1(graph, tau, opt.r);
  if (family.empty()) throw std::runtime_error("relaxation family is empty for this graph");
  SolveOutcome outcome = solve_family(family, opt.tol, opt.max_iter);
  const SolveRow& best = outcome.rows[static_cast<size_t>(outcome.best)];
  json doc{{"schema", kSchema},
           {"kind", "solve"},
           {"problem", opt.psi2 ? "psi2" : "psi1"},
           {"source", source},
           {"r", opt.r},
           {"tau", to_fraction_string(tau)},
           {"solver", json{{"tol", opt.tol}, {"max_iter", opt.max_iter}}},
           {"rows", solve_rows_json(outcome)},
           {"min_value", best.solution.objective},
           {"min_tau_prime", to_fraction_string(best.tau_prime)},
           {"all_converged", outcome.all_converged}};
  write_artifact(store, doc);
  if (!opt.csv.empty()) write_solve_csv(opt.csv, outcome);
  std::cout << "min_value=" << best.solution.objective
            << " at tau_prime=" << to_fraction_string(best.tau_prime) << "\n";
  return outcome.all_converged ? kExitOk : kExitSolver;
}

struct BruteOptions {
  std::string gadget_ref;
  std::string fixture;
  std::string tau = "0.45";
  bool psi2 = false;
  std::string oracle = "auto";
  uint64_t seed = 0;
};

int run_brute(const Store& store, const BruteOptions& opt) {
  Graph graph;
  json source;
  if (!opt.gadget_ref.empty()) {
    LoadedGadget lg = load_gadget(store, opt.gadget_ref);
    graph = to_simple_graph(lg.g);
    source = json{{"gadget_ref", lg.id}};
  } else if (!opt.fixture.empty()) {
    graph = parse_fixture(opt.fixture);
    source = json{{"fixture", opt.fixture}};
  } else {
    throw std::runtime_error("brute needs --gadget or --fixture");
  }
  const SearchMode mode = resolve_oracle(opt.oracle, graph.num_vertices);
  const std::string mode_name = mode == SearchMode::exact ? "exact" : "local";
  const auto start = std::chrono::steady_clock::now();
  CutResult result = opt.psi2
                         ? best_sparsest_cut(graph, mode, opt.seed)
                         : best_balanced_separator(graph, parse_ratio(opt.tau), mode, opt.seed);
  json doc{{"schema", kSchema},
           {"kind", "brute"},
           {"problem", opt.psi2 ? "psi2" : "psi1"},
           {"source", source},
           {"tau", opt.psi2 ? json(nullptr) : json(opt.tau)},
           {"result", cut_result_json(result, mode_name)},
           {"wall_ms", elapsed_ms(start)}};
  write_artifact(store, doc);
  std::cout << "crossing=" << result.stats.crossing << " size_a=" << result.stats.size_a
            << " mode=" << mode_name << "\n";
  return kExitOk;
}

struct GapOptions {
  uint32_t n = 4;
  uint32_t beta = 2;
  uint32_t big_m = 2;
  uint32_t c = 16;
  uint32_t lambda = 10;
  std::string tau = "0.45";
  uint32_t r = 1;
  uint64_t seed = 0;
  bool random = false;
  bool reduce = false;
  bool usc = false;
  double expansion_target = 0.0;
  double tol = 1e-7;
  int max_iter = 200000;
  std::string oracle = "auto";
  std::string csv;
};

int run_gap(const Store& store, const GapOptions& opt) {
  const auto total_start = std::chrono::steady_clock::now();
  const Rational tau = parse_ratio(opt.tau);

  GenOptions gen;
  gen.n = opt.n;
  gen.m = opt.beta * opt.n;
  gen.seed = opt.seed;
  gen.random = opt.random;
  auto [instance_doc, instance_id] = run_gen(store, gen);

  BuildOptions build;
  build.instance_ref = instance_id;
  build.big_m = opt.big_m;
  build.c = opt.c;
  build.reduce = opt.reduce;
  build.usc = opt.usc;
  build.lambda = opt.lambda;
  build.expansion_target = opt.expansion_target;
  auto [gadget_doc, gadget_id] = run_build(store, build);
  GadgetGraph g = gadget_from_json(gadget_doc.at("gadget"));

  json identities = json::array();
  json lift_ref = nullptr;
  bool identities_ok = true;
  if (!opt.random) {
    LiftOptions lift;
    lift.gadget_ref = gadget_id;
    lift.instance_ref = instance_id;
    LiftOutcome lifted = run_lift(store, lift);
    identities = lifted.doc.at("identities");
    lift_ref = lifted.id;
    identities_ok = lifted.accepted;
  }

  json report{{"schema", kSchema},
              {"kind", "gap-report"},
              {"config", json{{"n", opt.n},
                              {"beta", opt.beta},
                              {"M", opt.big_m},
                              {"c", opt.c},
                              {"lambda", opt.usc ? json(opt.lambda) : json(nullptr)},
                              {"tau", to_fraction_string(tau)},
                              {"r", opt.r},
                              {"seed", opt.seed},
                              {"mode", opt.random ? "random" : "planted"},
                              {"reduce", opt.reduce},
                              {"problem", opt.usc ? "psi2" : "psi1"},
                              {"oracle", opt.oracle},
                              {"prng", Rng::kAlgorithmTag},
                              {"solver_tol", opt.tol},
                              {"max_iter", opt.max_iter}}},
              {"artifacts", json{{"instance", instance_id}, {"gadget", gadget_id},
                                 {"lift", lift_ref}}},
              {"identities", identities},
              {"identities_accepted", identities_ok}};

  if (!identities_ok) {
    report["sdp"] = nullptr;
    report["integral"] = nullptr;
    report["gap_ratio"] = nullptr;
    report["guard"] = nullptr;
    report["wall_ms"] = elapsed_ms(total_start);
    write_artifact(store, report);
    std::cout << "identity checks failed\n";
    return kExitIdentity;
  }

  Graph graph = to_simple_graph(g);
  const auto family = opt.usc ? build_psi2(graph, opt.r) : build_psi1(graph, tau, opt.r);
  if (family.empty()) throw std::runtime_error("relaxation family is empty for this graph");
  SolveOutcome outcome = solve_family(family, opt.tol, opt.max_iter);
  const SolveRow& best = outcome.rows[static_cast<size_t>(outcome.best)];
  report["sdp"] = json{{"rows", solve_rows_json(outcome)},
                       {"min_value", best.solution.objective},
                       {"min_tau_prime", to_fraction_string(best.tau_prime)},
                       {"all_converged", outcome.all_converged}};

  const SearchMode mode = resolve_oracle(opt.oracle, graph.num_vertices);
  const std::string mode_name = mode == SearchMode::exact ? "exact" : "local";
  const auto brute_start = std::chrono::steady_clock::now();
  CutResult integral = opt.usc ? best_sparsest_cut(graph, mode, opt.seed)
                               : best_balanced_separator(graph, tau, mode, opt.seed);
  const double brute_ms = elapsed_ms(brute_start);
  const double integral_value =
      opt.usc ? to_double(integral.stats.sparsity) : static_cast<double>(integral.stats.crossing);
  report["integral"] = cut_result_json(integral, mode_name);
  report["integral"]["wall_ms"] = brute_ms;
  report["integral"]["value"] = integral_value;

  const double ratio = integral_value / best.solution.objective;
  const double combined_tol = 10.0 * opt.tol;
  const bool guard_applies = mode == SearchMode::exact;
  const bool guard_ok = !guard_applies || ratio >= 1.0 - combined_tol;
  report["gap_ratio"] = ratio;
  report["guard"] = json{{"combined_tol", combined_tol},
                         {"applies", guard_applies},
                         {"ok", guard_ok}};
  report["wall_ms"] = elapsed_ms(total_start);
  write_artifact(store, report);
  if (!opt.csv.empty()) write_solve_csv(opt.csv, outcome);

  std::cout << "sdp_min=" << best.solution.objective << " integral=" << integral_value
            << " (" << mode_name << ") ratio=" << ratio << "\n";
  if (!guard_ok) {
    std::cout << "guard violated: exact integral below 1 - 10*tol of the relaxation\n";
    return kExitIdentity;
  }
  return outcome.all_converged ? kExitOk : kExitSolver;
}

struct ExportOptions {
  std::string gadget_ref;
  std::string format = "edges";
  std::string out;
  std::string tau = "0.45";
  uint32_t r = 1;
  bool psi2 = false;
  size_t member = 0;
};

int run_export(const Store& store, const ExportOptions& opt) {
  LoadedGadget lg = load_gadget(store, opt.gadget_ref);
  std::ostream* sink = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) throw std::runtime_error("cannot write " + opt.out);
    sink = &file;
  }
  if (opt.format == "edges") {
    export_edge_list(lg.g, *sink);
  } else if (opt.format == "json") {
    *sink << lg.doc.at("gadget").dump(2) << "\n";
  } else if (opt.format == "sdpa") {
    Graph graph = to_simple_graph(lg.g);
    const auto family =
        opt.psi2 ? build_psi2(graph, opt.r) : build_psi1(graph, parse_ratio(opt.tau), opt.r);
    if (opt.member >= family.size()) {
      throw std::runtime_error("member index " + std::to_string(opt.member) +
                               " out of range; family has " + std::to_string(family.size()));
    }
    sdp::export_sdpa(to_sdp_problem(family[opt.member].second), *sink);
  } else {
    throw std::runtime_error("unknown export format: " + opt.format);
  }
  if (!opt.out.empty()) std::cout << "wrote " << opt.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lasserre gap pipeline: generate, build, lift, solve, brute-force, report"};
  app.require_subcommand(1);
  std::string work;
  app.add_option("--work", work, "working directory for artifacts (default $" +
                                     std::string(kWorkEnv) + " or ./lasgap-work)");

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "sample a 3-XOR instance");
  gen_cmd->add_option("--n", gen.n, "variable count")->required();
  gen_cmd->add_option("--m", gen.m, "constraint count")->required();
  gen_cmd->add_option("--seed", gen.seed, "prng seed");
  gen_cmd->add_flag("--random", gen.random, "sample without a planted assignment");

  BuildOptions build;
  CLI::App* build_cmd = app.add_subcommand("build", "build the gadget graph for an instance");
  build_cmd->add_option("--instance", build.instance_ref, "instance artifact")->required();
  build_cmd->add_option("--M", build.big_m, "clique copy multiplier");
  build_cmd->add_option("--c", build.c, "expander degree factor");
  uint64_t build_seed = 0;
  CLI::Option* build_seed_opt = build_cmd->add_option("--seed", build_seed, "gadget seed");
  build_cmd->add_flag("--reduce", build.reduce, "apply degree reduction");
  build_cmd->add_flag("--usc", build.usc, "extend with divider blocks");
  build_cmd->add_option("--lambda", build.lambda, "divider size multiplier");
  build_cmd->add_option("--expansion-target", build.expansion_target,
                        "divider expansion target (0 = library default)");

  LiftOptions lift;
  CLI::App* lift_cmd = app.add_subcommand("lift", "lift the planted solution and check identities");
  lift_cmd->add_option("--gadget", lift.gadget_ref, "gadget artifact")->required();
  lift_cmd->add_option("--instance", lift.instance_ref, "instance artifact")->required();
  lift_cmd->add_option("--s", lift.s, "max lifted subset size");

  CertifyOptions certify;
  CLI::App* certify_cmd = app.add_subcommand("certify", "verify one lifted-solution identity");
  certify_cmd->add_option("--gadget", certify.gadget_ref, "gadget artifact")->required();
  certify_cmd->add_option("--instance", certify.instance_ref, "instance artifact")->required();
  certify_cmd->add_option("--target", certify.target,
                          "balance|objective|feasibility|constraint-sums");
  certify_cmd->add_option("--s", certify.s, "max lifted subset size");
  certify_cmd->add_option("--tol", certify.tol, "float tolerance for materialized checks");
  certify_cmd->add_option("--seed", certify.seed, "subset sampling seed");

  SolveCmdOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve the relaxation family");
  solve_cmd->add_option("--gadget", solve.gadget_ref, "gadget artifact");
  solve_cmd->add_option("--fixture", solve.fixture, "path:N, cycle:N, or complete:N");
  solve_cmd->add_option("--tau", solve.tau, "balance fraction");
  solve_cmd->add_option("--r", solve.r, "relaxation level");
  solve_cmd->add_flag("--psi2", solve.psi2, "sparsest-cut relaxation");
  solve_cmd->add_option("--tol", solve.tol, "solver tolerance");
  solve_cmd->add_option("--max-iter", solve.max_iter, "solver iteration cap");
  solve_cmd->add_option("--csv", solve.csv, "write per-tau' rows to this CSV file");

  BruteOptions brute;
  CLI::App* brute_cmd = app.add_subcommand("brute", "integral optimum by exact or local search");
  brute_cmd->add_option("--gadget", brute.gadget_ref, "gadget artifact");
  brute_cmd->add_option("--fixture", brute.fixture, "path:N, cycle:N, or complete:N");
  brute_cmd->add_option("--tau", brute.tau, "balance fraction");
  brute_cmd->add_flag("--psi2", brute.psi2, "sparsest cut instead of balanced separator");
  brute_cmd->add_option("--oracle", brute.oracle, "exact|local|auto");
  brute_cmd->add_option("--seed", brute.seed, "local search seed");

  GapOptions gap;
  CLI::App* gap_cmd = app.add_subcommand("gap", "full pipeline with a gap report");
  gap_cmd->add_option("--n", gap.n, "variable count");
  gap_cmd->add_option("--beta", gap.beta, "constraint density m/n");
  gap_cmd->add_option("--M", gap.big_m, "clique copy multiplier");
  gap_cmd->add_option("--c", gap.c, "expander degree factor");
  gap_cmd->add_option("--lambda", gap.lambda, "divider size multiplier");
  gap_cmd->add_option("--tau", gap.tau, "balance fraction");
  gap_cmd->add_option("--r", gap.r, "relaxation level");
  gap_cmd->add_option("--seed", gap.seed, "pipeline seed");
  gap_cmd->add_flag("--random", gap.random, "random instance (skips lift identities)");
  bool planted_flag = false;
  gap_cmd->add_flag("--planted", planted_flag, "planted instance (default)");
  gap_cmd->add_flag("--reduce", gap.reduce, "apply degree reduction");
  gap_cmd->add_flag("--usc", gap.usc, "divider extension and sparsest-cut relaxation");
  gap_cmd->add_option("--expansion-target", gap.expansion_target,
                      "divider expansion target (0 = library default)");
  gap_cmd->add_option("--tol", gap.tol, "solver tolerance");
  gap_cmd->add_option("--max-iter", gap.max_iter, "solver iteration cap");
  gap_cmd->add_option("--oracle", gap.oracle, "exact|local|auto");
  gap_cmd->add_option("--csv", gap.csv, "write per-tau' rows to this CSV file");

  ExportOptions exp;
  CLI::App* export_cmd = app.add_subcommand("export", "write a gadget in another format");
  export_cmd->add_option("--gadget", exp.gadget_ref, "gadget artifact")->required();
  export_cmd->add_option("--format", exp.format, "edges|json|sdpa");
  export_cmd->add_option("--out", exp.out, "output path (default stdout)");
  export_cmd->add_option("--tau", exp.tau, "balance fraction for sdpa");
  export_cmd->add_option("--r", exp.r, "relaxation level for sdpa");
  export_cmd->add_flag("--psi2", exp.psi2, "sparsest-cut relaxation for sdpa");
  export_cmd->add_option("--member", exp.member, "family member index for sdpa");

  CLI11_PARSE(app, argc, argv);

  try {
    Store store = open_store(work);
    if (gen_cmd->parsed()) {
      run_gen(store, gen);
      return kExitOk;
    }
    if (build_cmd->parsed()) {
      if (build_seed_opt->count() > 0) build.seed = build_seed;
      run_build(store, build);
      return kExitOk;
    }
    if (lift_cmd->parsed()) {
      LiftOutcome out = run_lift(store, lift);
      std::cout << "identities " << (out.accepted ? "accepted" : "rejected") << "\n";
      return out.accepted ? kExitOk : kExitIdentity;
    }
    if (certify_cmd->parsed()) return run_certify(store, certify);
    if (solve_cmd->parsed()) return run_solve(store, solve);
    if (brute_cmd->parsed()) return run_brute(store, brute);
    if (gap_cmd->parsed()) return run_gap(store, gap);
    if (export_cmd->parsed()) return run_export(store, exp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
