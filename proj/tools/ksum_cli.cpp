// ksum: generate/solve/reduce/experiment/bench for the average-case k-SUM
// toolkit. Exit codes: 0 success or Found, 2 usage or parameter error,
// 3 NotFound or reduction failure (trace written), 4 capacity guard,
// 1 unexpected error (including oracle contract violations).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ksum/ksum.hpp"
#include "ksum/sha256.hpp"

namespace {

using namespace ksum;

constexpr int kExitFound = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitError = 1;

struct Globals {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int jobs = 1;
  std::string format = "csv";  // experiment/bench table format
  std::string manifest_path;   // empty: derived from --out or default
};

struct RunContext {
  std::vector<std::string> outputs;

  void wrote(const std::string& path) { outputs.push_back(path); }
};

Domain parse_domain(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("domain must be modular:Q or interval:u");
  std::string kind = s.substr(0, colon);
  Int bound = parse_decimal(s.substr(colon + 1));
  if (kind == "modular") return Domain::modular(bound);
  if (kind == "interval") return Domain::interval(bound);
  throw std::invalid_argument("unknown domain kind: " + kind);
}

void write_output(RunContext& ctx, const std::string& path, const std::string& content) {
  write_text_file(path, content);
  ctx.wrote(path);
}

KSumOracle make_oracle(const std::string& name, const Int& q, int k) {
  if (name == "brute") return oracle_bruteforce();
  if (name == "mitm") return oracle_mitm();
  if (name == "bkw") {
    if (k != 2)
      throw std::invalid_argument("bkw oracle over a prime modulus solves k = 2 only");
    return oracle_bkw(q, 1);
  }
  throw std::invalid_argument("unknown oracle: " + name);
}

// --------------------------------------------------------------------------
// subcommand handlers

int cmd_generate(const Globals& g, RunContext& ctx, const std::string& domain_str, long m, int k,
                 const std::string& out) {
  Domain domain = parse_domain(domain_str);
  KSumInstance inst = gen_ksum(domain, m, k, Seed{g.seed, g.stream});
  write_output(ctx, out, instance_to_json(inst).dump(2) + "\n");
  return kExitFound;
}

int cmd_solve(const Globals&, RunContext& ctx, const std::string& algo, const std::string& in,
              const std::string& out, const std::string& bkw_q, int bkw_ell,
              const std::string& density) {
  KSumInstance inst = instance_from_json(load_json_file(in));
  OracleResult res;
  if (algo == "brute") {
    res = solve_bruteforce(inst);
  } else if (algo == "mitm") {
    res = solve_mitm(inst);
  } else if (algo == "bkw") {
    if (bkw_q.empty() || bkw_ell < 1)
      throw std::invalid_argument("--algo bkw requires --bkw-q and --bkw-ell");
    BkwConfig cfg{parse_decimal(bkw_q), bkw_ell, parse_rational(density)};
    if (!inst.domain.is_modular() ||
        inst.domain.bound != pow_int(cfg.q, static_cast<unsigned long>(cfg.ell)))
      throw std::invalid_argument("instance modulus must equal q^ell");
    if (bkw_ell >= 31 || inst.k != (1 << bkw_ell))
      throw std::invalid_argument("instance k must equal 2^ell");
    res = solve_bkw(inst.elements, cfg);
  } else {
    throw std::invalid_argument("unknown algorithm: " + algo);
  }
  if (!res.found()) {
    std::cout << "null" << std::endl;
    return kExitNotFound;
  }
  std::string rendered = solution_to_json(*res.solution).dump();
  std::cout << rendered << std::endl;
  if (!out.empty()) write_output(ctx, out, rendered + "\n");
  return kExitFound;
}

int cmd_reduce_sis(const Globals& g, RunContext& ctx, const std::string& q_str, int r, int t,
                   int k, long m, const std::string& p_floor, long attempt_cap,
                   const std::string& density, const std::string& oracle_name,
                   const std::string& in, const std::string& out, const std::string& trace_path) {
  ReductionConfig cfg;
  cfg.q = parse_decimal(q_str);
  cfg.r = r;
  cfg.t = t;
  cfg.k = k;
  cfg.m = m;
  cfg.p_floor = parse_rational(p_floor);
  cfg.attempt_cap = attempt_cap;
  cfg.schedule_density = parse_rational(density);
  SisInstance sis = sis_from_json(load_json_file(in));
  KSumOracle oracle = make_oracle(oracle_name, cfg.q, cfg.k);
  SisReduceResult res = reduce_sis_to_ksum(sis, oracle, cfg, Seed{g.seed, g.stream});
  if (!trace_path.empty()) write_output(ctx, trace_path, trace_to_json(res.trace).dump(2) + "\n");
  if (!res.succeeded()) {
    std::cerr << "reduction failed at level " << res.trace.failed_level << "\n";
    return kExitNotFound;
  }
  std::string rendered = sis_solution_to_json(*res.solution).dump(2) + "\n";
  if (!out.empty()) write_output(ctx, out, rendered);
  else std::cout << rendered;
  return kExitFound;
}

int cmd_reduce_plane(const Globals&, RunContext& ctx, const std::string& in,
                     const std::string& out) {
  KSumInstance inst = instance_from_json(load_json_file(in));
  OracleResult res = reduce_ksum_to_plane(inst, plane_oracle_bruteforce());
  if (!res.found()) {
    std::cout << "null" << std::endl;
    return kExitNotFound;
  }
  std::string rendered = solution_to_json(*res.solution).dump();
  std::cout << rendered << std::endl;
  if (!out.empty()) write_output(ctx, out, rendered + "\n");
  return kExitFound;
}

struct TotalityCell {
  Domain domain;
  long m;
  int k;
};

TotalityCell parse_cell(const std::string& s) {
  // modular:1009:30:3 or interval:50:20:2
  std::stringstream ss(s);
  std::string kind, bound, m, k;
  if (!std::getline(ss, kind, ':') || !std::getline(ss, bound, ':') ||
      !std::getline(ss, m, ':') || !std::getline(ss, k, ':'))
    throw std::invalid_argument("cell must be kind:bound:m:k");
  Domain d = parse_domain(kind + ":" + bound);
  return TotalityCell{d, std::stol(m), std::stoi(k)};
}

std::vector<TotalityCell> default_totality_grid() {
  // C(10,2) = 45 and C(10,3) = 120; moduli chosen so C(m,k)/Q spans [0.1, 10].
  std::vector<TotalityCell> cells;
  for (long Q : {450L, 90L, 45L, 22L, 9L, 5L}) cells.push_back({Domain::modular(Int(Q)), 10, 2});
  for (long Q : {1200L, 240L, 120L, 60L, 24L, 12L}) cells.push_back({Domain::modular(Int(Q)), 10, 3});
  return cells;
}

int cmd_experiment_totality(const Globals& g, RunContext& ctx,
                            const std::vector<std::string>& cell_strs, bool default_grid,
                            long trials, const std::string& out) {
  std::vector<TotalityCell> cells;
  if (default_grid) cells = default_totality_grid();
  for (const auto& s : cell_strs) cells.push_back(parse_cell(s));
  if (cells.empty()) throw std::invalid_argument("no cells given (use --cell or --default-grid)");

  std::ostringstream csv;
  csv << "domain,bound,m,k,trials,successes,empirical,lower,upper,lower_raw,upper_raw,sigma,within\n";
  json cells_json = json::array();
  bool all_within = true;
  std::uint64_t stream = g.stream;
  for (const auto& cell : cells) {
    TotalityReport rep = estimate_totality(cell.domain, cell.m, cell.k, trials,
                                           Seed{g.seed, stream}, g.jobs);
    stream += static_cast<std::uint64_t>(trials);
    all_within = all_within && rep.within;
    csv << (cell.domain.is_modular() ? "modular" : "interval") << ','
        << to_decimal(cell.domain.bound) << ',' << cell.m << ',' << cell.k << ',' << rep.trials
        << ',' << rep.successes << ',' << rep.empirical_rate.get_d() << ','
        << rep.lower_bound.get_d() << ',' << rep.upper_bound.get_d() << ','
        << to_string(rep.lower_raw) << ',' << to_string(rep.upper_raw) << ',' << rep.sigma << ','
        << (rep.within ? 1 : 0) << '\n';
    json jc = totality_to_json(rep);
    jc["domain"] = domain_to_json(cell.domain);
    jc["m"] = cell.m;
    jc["k"] = cell.k;
    cells_json.push_back(jc);
  }
  json summary{{"experiment", "totality"}, {"trials", trials}, {"all_within", all_within},
               {"cells", cells_json}};
  write_output(ctx, out + ".csv", csv.str());
  write_output(ctx, out + ".json", summary.dump(2) + "\n");
  std::cout << (all_within ? "totality: all cells within bounds" : "totality: OUT OF BOUNDS")
            << std::endl;
  return all_within ? kExitFound : kExitNotFound;
}

int cmd_experiment_lhl(const Globals& g, RunContext& ctx, long M, std::vector<int> ts,
                       std::vector<long> Qs, long draws, const std::string& out) {
  std::ostringstream csv;
  csv << "M,t,Q,draws,beta,fraction_ge_beta,threshold,within\n";
  json cells = json::array();
  bool all_within = true;
  std::uint64_t stream = g.stream;
  for (int t : ts) {
    for (long Qv : Qs) {
      Int Q(Qv);
      double beta = std::pow(Q.get_d() / binomial(M, t).get_d(), 0.25);
      long over = 0;
      for (long d = 0; d < draws; ++d) {
        auto inst = gen_ksum(Domain::modular(Q), M, 2, Seed{g.seed, stream++});
        Rat delta = exact_subset_sum_distance(inst.elements, Q, t);
        if (delta.get_d() >= beta) ++over;
      }
      double fraction = static_cast<double>(over) / draws;
      double sigma = std::sqrt(beta * (1 - beta) / draws);
      double threshold = beta + 3 * sigma;
      bool within = fraction <= threshold;
      all_within = all_within && within;
      csv << M << ',' << t << ',' << Qv << ',' << draws << ',' << beta << ',' << fraction << ','
          << threshold << ',' << (within ? 1 : 0) << '\n';
      cells.push_back(json{{"M", M},
                           {"t", t},
                           {"Q", Qv},
                           {"draws", draws},
                           {"beta", beta},
                           {"fraction_ge_beta", fraction},
                           {"threshold", threshold},
                           {"within", within}});
    }
  }
  json summary{{"experiment", "lhl"}, {"all_within", all_within}, {"cells", cells}};
  write_output(ctx, out + ".csv", csv.str());
  write_output(ctx, out + ".json", summary.dump(2) + "\n");
  std::cout << (all_within ? "lhl: all cells within bounds" : "lhl: OUT OF BOUNDS") << std::endl;
  return all_within ? kExitFound : kExitNotFound;
}

int cmd_experiment_hitting(const Globals& g, RunContext& ctx, long M, int t, long Qv, long points,
                           long mc_trials, long compare_points, const std::string& out) {
  Int Q(Qv);
  const double eps = 0.5;
  double tail_bound = 4 * std::pow(Q.get_d(), 0.25) /
                       (eps * std::pow(binomial(M - 1, t - 1).get_d(), 0.25));
  bool vacuous = tail_bound >= 1.0;
  double bound = std::min(tail_bound, 1.0);
  double threshold_p = (1 + eps) / (1 - eps) * static_cast<double>(t) / M;  // 3t/M at eps=1/2

  std::uint64_t stream = g.stream;
  long over = 0;
  for (long p = 0; p < points; ++p) {
    auto inst = gen_ksum(Domain::modular(Q), M, 2, Seed{g.seed, stream++});
    Prng cpick(Seed{g.seed ^ 0x9e3779b97f4a7c15ull, stream++});
    Int c = cpick.below(Q);
    Rat exact = exact_hitting_probability(inst.elements, Q, c, t);
    if (exact.get_d() >= threshold_p) ++over;
  }
  double fraction = static_cast<double>(over) / points;
  double sigma = std::sqrt(bound * (1 - bound) / points);
  bool within = fraction <= bound + 3 * sigma;

  double worst_dev = 0;
  for (long p = 0; p < compare_points; ++p) {
    auto inst = gen_ksum(Domain::modular(Q), M, 2, Seed{g.seed + 1, stream++});
    Prng cpick(Seed{g.seed ^ 0xd1b54a32d192ed03ull, stream++});
    Int c = cpick.below(Q);
    Rat exact = exact_hitting_probability(inst.elements, Q, c, t);
    Rat mc = estimate_hitting_general(inst.elements, Q, {c}, {0}, {0}, t, mc_trials,
                                      Seed{g.seed + 2, stream++});
    double p_exact = exact.get_d();
    double s = std::sqrt(std::max(p_exact * (1 - p_exact), 1e-12) / mc_trials);
    double dev = std::abs(mc.get_d() - p_exact) / (3 * s + 1e-15);
    worst_dev = std::max(worst_dev, dev);
  }
  bool mc_agrees = worst_dev <= 1.0;

  std::ostringstream csv;
  csv << "M,t,Q,points,fraction_ge_3t_over_M,bound,vacuous,within,mc_points,mc_agrees\n";
  csv << M << ',' << t << ',' << Qv << ',' << points << ',' << fraction << ',' << bound << ','
      << (vacuous ? 1 : 0) << ',' << (within ? 1 : 0) << ',' << compare_points << ','
      << (mc_agrees ? 1 : 0) << '\n';
  json summary{{"experiment", "hitting"}, {"M", M},       {"t", t},
               {"Q", Qv},                 {"points", points}, {"fraction", fraction},
               {"bound", bound},          {"vacuous", vacuous}, {"within", within},
               {"mc_agrees", mc_agrees}};
  write_output(ctx, out + ".csv", csv.str());
  write_output(ctx, out + ".json", summary.dump(2) + "\n");
  std::cout << "hitting: fraction=" << fraction << " bound=" << bound
            << (vacuous ? " (vacuous)" : "") << " mc_agrees=" << (mc_agrees ? "yes" : "no")
            << std::endl;
  return (within && mc_agrees) ? kExitFound : kExitNotFound;
}

int cmd_experiment_params(const Globals&, RunContext& ctx, long n, long k, const std::string& eps,
                          const std::string& eps_prime, const std::string& c,
                          const std::string& out) {
  ParamSet ps = reduction_chain_params(n, k, parse_rational(eps), parse_rational(eps_prime),
                                 parse_rational(c));
  std::string rendered = params_to_json(ps).dump(2) + "\n";
  if (!out.empty()) write_output(ctx, out, rendered);
  else std::cout << rendered;
  return kExitFound;
}

int cmd_bench(const Globals& g, RunContext& ctx, const std::string& suite, long trials,
              const std::string& density, const std::string& out) {
  if (g.format != "csv" && g.format != "json")
    throw std::invalid_argument("unknown format: " + g.format);
  std::ostringstream csv;
  csv << "suite,algo,q,ell,Q,m,k,trials,successes,success_rate,median_ms,min_ms\n";

  auto time_ms = [](auto&& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
  };

  if (suite == "bkw-scaling") {
    Rat dens = parse_rational(density);
    std::uint64_t stream = g.stream;
    for (long q : {3L, 5L, 7L}) {
      for (int ell : {2, 3}) {
        BkwConfig cfg{Int(q), ell, dens};
        long m = bkw_input_size(cfg);
        Int Q = pow_int(Int(q), ell);
        long successes = 0;
        std::vector<double> times;
        // one warm-up trial, then `trials` timed ones
        for (long t = 0; t <= trials; ++t) {
          auto inst = gen_ksum(Domain::modular(Q), m, 1 << ell, Seed{g.seed, stream++});
          OracleResult res;
          double ms = time_ms([&]() { res = solve_bkw(inst.elements, cfg); });
          if (t == 0) continue;
          times.push_back(ms);
          if (res.found() && verify_ksum(inst, *res.solution)) ++successes;
        }
        std::sort(times.begin(), times.end());
        double median = times[times.size() / 2];
        csv << "bkw-scaling,bkw," << q << ',' << ell << ',' << to_decimal(Q) << ',' << m << ','
            << (1 << ell) << ',' << trials << ',' << successes << ','
            << static_cast<double>(successes) / trials << ',' << median << ',' << times.front()
            << '\n';
      }
    }
  } else if (suite == "solver-smoke") {
    std::uint64_t stream = g.stream;
    for (const char* algo : {"brute", "mitm"}) {
      for (long m : {10L, 12L}) {
        long successes = 0;
        std::vector<double> times;
        for (long t = 0; t <= trials; ++t) {
          auto inst = gen_ksum(Domain::modular(Int(101)), m, 3, Seed{g.seed, stream++});
          OracleResult res;
          double ms = time_ms([&]() {
            res = std::string(algo) == "brute" ? solve_bruteforce(inst) : solve_mitm(inst);
          });
          if (t == 0) continue;
          times.push_back(ms);
          if (res.found()) ++successes;
        }
        std::sort(times.begin(), times.end());
        csv << "solver-smoke," << algo << ",,,101," << m << ",3," << trials << ',' << successes
            << ',' << static_cast<double>(successes) / trials << ',' << times[times.size() / 2]
            << ',' << times.front() << '\n';
      }
    }
  } else if (suite == "empty") {
    // header-only output, kept for harness tests
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }

  std::string rendered = csv.str();
  if (g.format == "json") {
    // rows as objects keyed by the header
    std::istringstream in(rendered);
    std::string header, line;
    std::getline(in, header);
    std::vector<std::string> cols;
    {
      std::istringstream hs(header);
      std::string c;
      while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    json rows = json::array();
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string field;
      json row;
      for (const auto& col : cols) {
        std::getline(ls, field, ',');
        row[col] = field;
      }
      rows.push_back(row);
    }
    rendered = rows.dump(2) + "\n";
  }
  if (!out.empty()) write_output(ctx, out, rendered);
  else std::cout << rendered;
  return kExitFound;
}

int run_command(const std::vector<std::string>& args, bool emit_manifest);

int cmd_replay(const std::string& manifest_path) {
  json manifest = load_json_file(manifest_path);
  std::vector<std::string> args;
  for (const auto& a : manifest.at("argv")) args.push_back(a.get<std::string>());
  int code = run_command(args, true);
  bool all_match = true;
  for (const auto& outp : manifest.at("outputs")) {
    std::string path = outp.at("path").get<std::string>();
    std::string want = outp.at("sha256").get<std::string>();
    std::string got = Sha256::of_file(path);
    bool match = want == got;
    all_match = all_match && match;
    std::cout << (match ? "match    " : "MISMATCH ") << path << std::endl;
  }
  if (!all_match) return kExitError;
  std::cout << "replay: all outputs byte-identical" << std::endl;
  return code;
}

int run_command(const std::vector<std::string>& args, bool emit_manifest) {
  CLI::App app{"average-case k-SUM toolkit"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--stream", g.stream, "PRNG sub-stream index")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads for independent trials")->capture_default_str();
  app.add_option("--format", g.format, "table format: csv|json")->capture_default_str();
  app.add_option("--manifest", g.manifest_path, "run manifest path");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "sample a random instance");
  gen_cmd->fallthrough();
  std::string gen_domain, gen_out;
  long gen_m = 0;
  int gen_k = 0;
  gen_cmd->add_option("--domain", gen_domain, "modular:Q or interval:u")->required();
  gen_cmd->add_option("--m", gen_m, "number of elements")->required();
  gen_cmd->add_option("--k", gen_k, "subset size k")->required();
  gen_cmd->add_option("--out", gen_out, "output instance file")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run a solver on an instance file");
  solve_cmd->fallthrough();
  std::string solve_algo, solve_in, solve_out, solve_bkw_q, solve_density = "1";
  int solve_bkw_ell = 0;
  solve_cmd->add_option("--algo", solve_algo, "brute|mitm|bkw")->required();
  solve_cmd->add_option("--in", solve_in, "instance file")->required();
  solve_cmd->add_option("--out", solve_out, "also write the solution here");
  solve_cmd->add_option("--bkw-q", solve_bkw_q, "BKW base prime q");
  solve_cmd->add_option("--bkw-ell", solve_bkw_ell, "BKW levels (k = 2^ell)");
  solve_cmd->add_option("--density", solve_density, "BKW input-size density factor");

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "run a reduction");
  reduce_cmd->fallthrough();
  reduce_cmd->require_subcommand(1);
  auto* sis_cmd = reduce_cmd->add_subcommand("sis-to-ksum", "SIS -> k-SUM (BKW-style levels)");
  sis_cmd->fallthrough();
  std::string sis_q, sis_pfloor = "1", sis_density = "1", sis_oracle = "brute";
  std::string sis_in, sis_out, sis_trace;
  int sis_r = 0, sis_t = 0, sis_k = 0;
  long sis_m = 0, sis_cap = 0;
  sis_cmd->add_option("--q", sis_q, "prime q")->required();
  sis_cmd->add_option("--r", sis_r, "levels (modulus q^r)")->required();
  sis_cmd->add_option("--t", sis_t, "re-randomization subset size")->required();
  sis_cmd->add_option("--k", sis_k, "oracle arity")->required();
  sis_cmd->add_option("--m", sis_m, "oracle instance size")->required();
  sis_cmd->add_option("--p-floor", sis_pfloor, "oracle success probability floor");
  sis_cmd->add_option("--attempt-cap", sis_cap, "max oracle calls per level (0 = auto)");
  sis_cmd->add_option("--density", sis_density, "level schedule density factor");
  sis_cmd->add_option("--oracle", sis_oracle, "brute|mitm|bkw");
  sis_cmd->add_option("--in", sis_in, "SIS instance file")->required();
  sis_cmd->add_option("--out", sis_out, "solution output file");
  sis_cmd->add_option("--trace", sis_trace, "trace output file");

  auto* plane_cmd = reduce_cmd->add_subcommand("ksum-to-plane", "k-SUM -> (Q,m,d)-Plane");
  plane_cmd->fallthrough();
  std::string plane_in, plane_out;
  plane_cmd->add_option("--in", plane_in, "instance file")->required();
  plane_cmd->add_option("--out", plane_out, "also write the solution here");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "statistical validators");
  exp_cmd->fallthrough();
  exp_cmd->require_subcommand(1);
  auto* tot_cmd = exp_cmd->add_subcommand("totality", "empirical solvability vs analytic bounds");
  tot_cmd->fallthrough();
  std::vector<std::string> tot_cells;
  bool tot_default = false;
  long tot_trials = 1000;
  std::string tot_out = "totality";
  tot_cmd->add_option("--cell", tot_cells, "kind:bound:m:k (repeatable)");
  tot_cmd->add_flag("--default-grid", tot_default, "use the built-in 12-cell grid");
  tot_cmd->add_option("--trials", tot_trials, "trials per cell")->capture_default_str();
  tot_cmd->add_option("--out", tot_out, "output base path")->capture_default_str();

  auto* lhl_cmd = exp_cmd->add_subcommand("lhl", "leftover hash lemma distance checks");
  lhl_cmd->fallthrough();
  long lhl_M = 16, lhl_draws = 200;
  std::vector<int> lhl_t{2, 3};
  std::vector<long> lhl_Q{5, 7, 11};
  std::string lhl_out = "lhl";
  lhl_cmd->add_option("--M", lhl_M)->capture_default_str();
  lhl_cmd->add_option("--t", lhl_t, "subset sizes")->capture_default_str();
  lhl_cmd->add_option("--Q", lhl_Q, "moduli")->capture_default_str();
  lhl_cmd->add_option("--draws", lhl_draws)->capture_default_str();
  lhl_cmd->add_option("--out", lhl_out, "output base path")->capture_default_str();

  auto* hit_cmd = exp_cmd->add_subcommand("hitting", "hitting probability checks");
  hit_cmd->fallthrough();
  long hit_M = 14, hit_Q = 5, hit_points = 500, hit_mc = 10000, hit_cmp = 20;
  int hit_t = 2;
  std::string hit_out = "hitting";
  hit_cmd->add_option("--M", hit_M)->capture_default_str();
  hit_cmd->add_option("--t", hit_t)->capture_default_str();
  hit_cmd->add_option("--Q", hit_Q)->capture_default_str();
  hit_cmd->add_option("--points", hit_points)->capture_default_str();
  hit_cmd->add_option("--mc-trials", hit_mc)->capture_default_str();
  hit_cmd->add_option("--compare-points", hit_cmp)->capture_default_str();
  hit_cmd->add_option("--out", hit_out, "output base path")->capture_default_str();

  auto* par_cmd = exp_cmd->add_subcommand("params", "worst-case chain parameter calculator");
  par_cmd->fallthrough();
  long par_n = 0, par_k = 0;
  std::string par_eps, par_eps_prime, par_c = "1", par_out;
  par_cmd->add_option("--n", par_n)->required();
  par_cmd->add_option("--k", par_k)->required();
  par_cmd->add_option("--eps", par_eps)->required();
  par_cmd->add_option("--eps-prime", par_eps_prime)->required();
  par_cmd->add_option("--c", par_c, "universal constant c")->capture_default_str();
  par_cmd->add_option("--out", par_out, "output file (default stdout)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "timing/success tables");
  bench_cmd->fallthrough();
  std::string bench_suite, bench_density = "1", bench_out;
  long bench_trials = 5;
  bench_cmd->add_option("--suite", bench_suite, "bkw-scaling|solver-smoke|empty")->required();
  bench_cmd->add_option("--trials", bench_trials)->capture_default_str();
  bench_cmd->add_option("--density", bench_density)->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "CSV output file (default stdout)");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "re-run a manifest and verify outputs");
  replay_cmd->fallthrough();
  std::string replay_manifest;
  replay_cmd->add_option("--manifest", replay_manifest, "manifest file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunContext ctx;
  auto start = std::chrono::steady_clock::now();
  int code = kExitError;
  std::string subcommand;

  if (gen_cmd->parsed()) {
    subcommand = "generate";
    code = cmd_generate(g, ctx, gen_domain, gen_m, gen_k, gen_out);
  } else if (solve_cmd->parsed()) {
    subcommand = "solve";
    code = cmd_solve(g, ctx, solve_algo, solve_in, solve_out, solve_bkw_q, solve_bkw_ell,
                     solve_density);
  } else if (reduce_cmd->parsed()) {
    if (sis_cmd->parsed()) {
      subcommand = "reduce sis-to-ksum";
      code = cmd_reduce_sis(g, ctx, sis_q, sis_r, sis_t, sis_k, sis_m, sis_pfloor, sis_cap,
                            sis_density, sis_oracle, sis_in, sis_out, sis_trace);
    } else {
      subcommand = "reduce ksum-to-plane";
      code = cmd_reduce_plane(g, ctx, plane_in, plane_out);
    }
  } else if (exp_cmd->parsed()) {
    if (tot_cmd->parsed()) {
      subcommand = "experiment totality";
      code = cmd_experiment_totality(g, ctx, tot_cells, tot_default, tot_trials, tot_out);
    } else if (lhl_cmd->parsed()) {
      subcommand = "experiment lhl";
      code = cmd_experiment_lhl(g, ctx, lhl_M, lhl_t, lhl_Q, lhl_draws, lhl_out);
    } else if (hit_cmd->parsed()) {
      subcommand = "experiment hitting";
      code = cmd_experiment_hitting(g, ctx, hit_M, hit_t, hit_Q, hit_points, hit_mc, hit_cmp,
                                    hit_out);
    } else {
      subcommand = "experiment params";
      code = cmd_experiment_params(g, ctx, par_n, par_k, par_eps, par_eps_prime, par_c, par_out);
    }
  } else if (bench_cmd->parsed()) {
    subcommand = "bench";
    code = cmd_bench(g, ctx, bench_suite, bench_trials, bench_density, bench_out);
  } else if (replay_cmd->parsed()) {
    return cmd_replay(replay_manifest);
  }

  if (emit_manifest && !subcommand.empty()) {
    auto end = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(end - start).count();
    json outputs = json::array();
    for (const auto& path : ctx.outputs)
      outputs.push_back(json{{"path", path}, {"sha256", Sha256::of_file(path)}});
    json manifest{{"tool", "ksum"},       {"version", kVersion}, {"subcommand", subcommand},
                  {"argv", args},         {"seed", g.seed},      {"stream", g.stream},
                  {"duration_ms", ms},    {"exit_code", code},   {"outputs", outputs}};
    std::string path = g.manifest_path;
    if (path.empty()) {
      if (!ctx.outputs.empty()) path = ctx.outputs.front() + ".manifest.json";
      else path = "ksum-manifest.json";
    }
    write_text_file(path, manifest.dump(2) + "\n");
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run_command(args, true);
  } catch (const ksum::capacity_error& e) {
    std::cerr << "capacity guard: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ksum::oracle_contract_error& e) {
    std::cerr << "oracle contract violation: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
