// Command-line front door: single-point rates, (eps_b, delta_b)-plane CSV
// sweeps, rate-equivocation boundary export, numerical verifiers, and the
// bit-level kernel simulators.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wiretap/aux_channel.hpp"
#include "wiretap/coset_code.hpp"
#include "wiretap/entropy.hpp"
#include "wiretap/json_io.hpp"
#include "wiretap/montecarlo.hpp"
#include "wiretap/rate_region.hpp"
#include "wiretap/schemes.hpp"

namespace {

using nlohmann::json;
using namespace wiretap;

constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitCounterexamples = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("error writing output file: " + path);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json make_doc(const std::string& command, json config) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

// ---------------------------------------------------------------- rate ---

struct RateArgs {
  double ef = 0, df = 0, eb = 0, db = 0;
  std::string scheme = "best";
  int nmax = 31;
  double forwarding_rate = 0;  // 0 = use C_AB
  std::string out;
};

int cmd_rate(const RateArgs& a) {
  const SystemChannels ch{CrossoverProb(a.ef), CrossoverProb(a.df),
                          CrossoverProb(a.eb), CrossoverProb(a.db)};
  SchemeReport rep;
  if (a.scheme == "wyner") {
    rep = wyner_report(ch);
  } else if (a.scheme == "pure") {
    rep = a.forwarding_rate > 0
              ? pure_feedback_rate(ch, a.forwarding_rate)
              : pure_feedback_rate(ch);
  } else if (a.scheme == "repetition") {
    rep = optimize_repetition(ch, a.nmax);
  } else if (a.scheme == "mixed") {
    rep = mixed_feedback_rate(ch);
  } else if (a.scheme == "reversed") {
    rep = reversed_feedback_rate(ch);
  } else if (a.scheme == "full-encryption") {
    rep.scheme = Scheme::reversed_feedback;
    rep.overall_rate = full_encryption_rate(ch);
    rep.detail["full_encryption"] = 1.0;
  } else {
    rep = best_scheme(ch);
  }
  json doc = make_doc("rate", {{"ef", a.ef},
                               {"df", a.df},
                               {"eb", a.eb},
                               {"db", a.db},
                               {"scheme", a.scheme},
                               {"nmax", a.nmax}});
  doc["report"] = to_json(rep);
  write_output(a.out, doc.dump(2) + "\n");
  return 0;
}

// --------------------------------------------------------------- sweep ---

struct SweepArgs {
  double ef = 0, df = 0;
  double eb_min = 0, eb_max = 0, eb_step = 0;
  double db_min = 0, db_max = 0, db_step = 0;
  std::string schemes = "best";
  int nmax = 31;
  int jobs = 1;
  std::string out;
};

std::vector<double> make_range(double lo, double hi, double step) {
  if (!(step > 0) || hi < lo) {
    throw std::invalid_argument("range requires min <= max and step > 0");
  }
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + i * step;
  return v;
}

int cmd_sweep(const SweepArgs& a) {
  std::vector<std::string> cols;
  {
    std::stringstream ss(a.schemes);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cols.push_back(item);
    }
  }
  static const std::vector<std::string> known = {
      "wyner",       "pure",        "repetition", "mixed",  "reversed",
      "full_encryption", "best",    "improvement", "gamma_star", "n_star"};
  for (const auto& c : cols) {
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      throw std::invalid_argument("unknown sweep column: " + c);
    }
  }
  const CrossoverProb ef(a.ef), df(a.df);
  const auto ebs = make_range(a.eb_min, a.eb_max, a.eb_step);
  const auto dbs = make_range(a.db_min, a.db_max, a.db_step);
  for (double v : ebs) (void)CrossoverProb(v);
  for (double v : dbs) (void)CrossoverProb(v);

  const auto cell = [&](double eb, double db, const std::string& col) -> double {
    const SystemChannels ch{ef, df, CrossoverProb(eb), CrossoverProb(db)};
    if (col == "wyner") return wyner_secrecy_capacity(ef, df);
    if (col == "pure") return pure_feedback_rate(ch).overall_rate;
    if (col == "repetition") return optimize_repetition(ch, a.nmax).overall_rate;
    if (col == "mixed") return mixed_feedback_rate(ch).overall_rate;
    if (col == "reversed") return reversed_feedback_rate(ch).overall_rate;
    if (col == "full_encryption") return full_encryption_rate(ch);
    if (col == "best") return best_scheme(ch).overall_rate;
    if (col == "improvement") {
      const double regular = a.ef < a.df ? mixed_feedback_rate(ch).overall_rate
                                         : pure_feedback_rate(ch).overall_rate;
      return std::max(0.0, reversed_feedback_rate(ch).overall_rate - regular);
    }
    if (col == "gamma_star") {
      // Forward mixed scheme when it applies, otherwise the reverse link's.
      const SchemeReport rep = a.ef < a.df ? mixed_feedback_rate(ch)
                                           : reversed_feedback_rate(ch);
      const auto it = rep.detail.find("gamma_star");
      return it == rep.detail.end() ? 0.0 : it->second;
    }
    // n_star
    return optimize_repetition(ch, a.nmax).detail.at("n_star");
  };

  const bool needs_mixed =
      std::find(cols.begin(), cols.end(), "mixed") != cols.end();
  if (needs_mixed && !(a.ef < a.df)) {
    throw std::invalid_argument("mixed column requires eps_f < delta_f");
  }

  const std::size_t total = ebs.size() * dbs.size();
  std::vector<std::string> lines(total);
  const int jobs = std::max(1, a.jobs);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t idx = begin; idx < end; ++idx) {
        const double eb = ebs[idx / dbs.size()];
        const double db = dbs[idx % dbs.size()];
        std::string line = fmt12(eb) + "," + fmt12(db);
        for (const auto& c : cols) line += "," + fmt12(cell(eb, db, c));
        lines[idx] = std::move(line);
      }
    } catch (...) {
      const std::scoped_lock lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  if (jobs == 1) {
    worker(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      const std::size_t begin = std::min(total, t * chunk);
      const std::size_t end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::string csv = "eps_b,delta_b";
  for (const auto& c : cols) csv += "," + c;
  csv += "\n";
  for (const auto& l : lines) {
    csv += l;
    csv += "\n";
  }
  write_output(a.out, csv);
  return 0;
}

// -------------------------------------------------------------- region ---

struct RegionArgs {
  double rmax = 0, cs = 0, hs = 1.0;
  int points = 101;
  double forwarding_rate = 0;  // 0 = unscaled
  std::string out;
};

int cmd_region(const RegionArgs& a) {
  RateEquivocationRegion region(a.rmax, a.cs, a.hs);
  if (a.forwarding_rate > 0) region = scaled_region(region, a.forwarding_rate);
  std::string csv = "r,d\n";
  for (const BoundaryPoint& p : boundary(region, a.points)) {
    csv += fmt12(p.r) + "," + fmt12(p.d) + "\n";
  }
  write_output(a.out, csv);
  return 0;
}

// -------------------------------------------------------------- verify ---

struct VerifyArgs {
  std::string claim;
  double eps = 0, delta = 0;
  int samples = 1000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int resolution = 20;
  double tolerance = 1e-3;
  double p1 = -1, p4 = -1, p2 = -1, p3 = -1;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  // randomized claims take no silent entropy source
  const bool randomized =
      a.claim == "bsc-optimality" || a.claim == "g-structure" ||
      a.claim == "two-point" || (a.claim == "projection-order" && a.p1 < 0);
  if (randomized && !a.seed_given) {
    throw std::invalid_argument("randomized verification requires an explicit --seed");
  }
  const CrossoverProb eps(a.eps), delta(a.delta);
  ExperimentReport rep;
  json extra;
  if (a.claim == "bsc-optimality") {
    rep = verify_bsc_optimality(eps, delta, a.samples, a.seed);
  } else if (a.claim == "g-structure") {
    rep = verify_g_structure(eps, delta, a.samples, a.seed);
  } else if (a.claim == "two-point") {
    rep = two_point_experiment(eps, delta, a.samples, a.seed);
  } else if (a.claim == "projection-order") {
    if (a.p1 >= 0) {
      const ProjectionIntersections pi =
          verify_projection_ordering(eps, delta, a.p1, a.p4, a.p2, a.p3);
      rep.claim = "projection-order";
      rep.n_samples = 1;
      rep.n_pass = pi.ordered ? 1 : 0;
      rep.worst_margin = pi.abscissa_e - pi.abscissa_d;
      extra["abscissa_e"] = pi.abscissa_e;
      extra["abscissa_d"] = pi.abscissa_d;
      if (!pi.ordered) {
        rep.counterexamples.push_back({{"p1", a.p1},
                                       {"p4", a.p4},
                                       {"p2", a.p2},
                                       {"p3", a.p3},
                                       {"abscissa_e", pi.abscissa_e},
                                       {"abscissa_d", pi.abscissa_d}});
      }
    } else {
      rep = projection_ordering_experiment(eps, delta, a.samples, a.seed);
    }
  } else {
    rep = frontier_ternary_vs_binary(eps, delta, a.resolution, a.tolerance);
  }
  json doc = make_doc("verify", {{"claim", a.claim},
                                 {"eps", a.eps},
                                 {"delta", a.delta},
                                 {"samples", a.samples},
                                 {"seed", a.seed},
                                 {"resolution", a.resolution},
                                 {"tolerance", a.tolerance}});
  doc["report"] = to_json(rep);
  if (!extra.empty()) doc["report"]["intersections"] = extra;
  write_output(a.out, doc.dump(2) + "\n");
  return rep.counterexamples.empty() ? 0 : kExitCounterexamples;
}

// ------------------------------------------------------------ simulate ---

struct SimulateArgs {
  std::string mode;
  double eb = 0, db = 0;
  long bits = 1000000;
  int block = 1000;
  std::uint64_t seed = 0;
  std::string payload = "uniform";
  int rep_k = 1;
  std::string dump;
  // repetition mode
  double p = 0;
  int nrep = 1;
  long trials = 1000000;
  std::string out;
};

Payload parse_payload(const std::string& name, int rep_k) {
  if (name == "uniform") return Payload::uniform();
  if (name == "constant") return Payload::constant_zero();
  if (name == "repetition") return Payload::repetition_coded(rep_k);
  throw std::invalid_argument("payload must be uniform, constant or repetition");
}

int cmd_simulate(const SimulateArgs& a) {
  if (a.mode == "repetition") {
    const RepetitionEstimate est =
        repetition_mc(CrossoverProb(a.p), a.nrep, a.trials, a.seed);
    json doc = make_doc("simulate repetition", {{"p", a.p},
                                                {"nrep", a.nrep},
                                                {"trials", a.trials},
                                                {"seed", a.seed}});
    doc["result"] = {{"crossover", est.crossover},
                     {"std", est.std_error},
                     {"expected", repetition_equivalent(CrossoverProb(a.p), a.nrep).value()}};
    write_output(a.out, doc.dump(2) + "\n");
    return 0;
  }

  SimConfig cfg;
  cfg.n = a.block;
  cfg.trials = std::max<long>(1, (a.bits + a.block - 1) / a.block);
  cfg.seed = a.seed;
  cfg.eps_b = CrossoverProb(a.eb);
  cfg.delta_b = CrossoverProb(a.db);
  json doc = make_doc("simulate " + a.mode, {{"eb", a.eb},
                                             {"db", a.db},
                                             {"bits", a.bits},
                                             {"block", a.block},
                                             {"seed", a.seed},
                                             {"payload", a.payload},
                                             {"rep_k", a.rep_k}});
  if (a.mode == "kernel") {
    cfg.payload = parse_payload(a.payload, a.rep_k);
    const SimResult r = a.dump.empty() ? run_kernel(cfg) : run_kernel_dump(cfg, a.dump);
    doc["result"] = to_json(r);
  } else if (a.mode == "crypto") {
    cfg.payload = Payload::uniform();
    doc["result"] = to_json(crypto_lemma_check(cfg));
  } else {  // leakage: structured arm plus uniform control arm
    cfg.payload = parse_payload(a.payload == "uniform" ? "constant" : a.payload, a.rep_k);
    doc["result"] = to_json(leakage_demo(cfg));
    SimConfig control = cfg;
    control.payload = Payload::uniform();
    doc["control"] = to_json(leakage_demo(control));
  }
  write_output(a.out, doc.dump(2) + "\n");
  return 0;
}

// -------------------------------------------------------- equivocation ---

struct EquivocationArgs {
  std::string matrix_file;
  std::vector<double> deltas;
  std::string out;
};

int cmd_equivocation(const EquivocationArgs& a) {
  std::ifstream in(a.matrix_file);
  if (!in) throw IoError("cannot open parity check file: " + a.matrix_file);
  std::stringstream buf;
  buf << in.rdbuf();
  const CosetCode code = CosetCode::parse(buf.str());

  std::vector<CrossoverProb> deltas;
  deltas.reserve(a.deltas.size());
  for (double d : a.deltas) deltas.emplace_back(d);
  const std::vector<double> values = equivocation_monotonicity_scan(code, deltas);

  json doc = make_doc("equivocation", {{"matrix", a.matrix_file},
                                       {"deltas", a.deltas}});
  doc["code"] = {{"n", code.n()},
                 {"secret_bits", code.secret_bits()},
                 {"dimension", code.dimension()}};
  doc["equivocation"] = values;
  write_output(a.out, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Achievable secrecy rates and kernel experiments for "
               "feedback-based wiretap coding over binary symmetric channels"};
  app.require_subcommand(1);

  RateArgs rate;
  auto* rate_cmd = app.add_subcommand("rate", "Secrecy rate of one scheme at one channel point");
  rate_cmd->add_option("--ef", rate.ef, "Crossover Alice->Bob")->required()->check(CLI::Range(0.0, 0.5));
  rate_cmd->add_option("--df", rate.df, "Crossover Alice->Eve")->required()->check(CLI::Range(0.0, 0.5));
  rate_cmd->add_option("--eb", rate.eb, "Crossover Bob->Alice")->check(CLI::Range(0.0, 0.5));
  rate_cmd->add_option("--db", rate.db, "Crossover Bob->Eve")->check(CLI::Range(0.0, 0.5));
  rate_cmd->add_option("--scheme", rate.scheme, "wyner|pure|repetition|mixed|reversed|full-encryption|best")
      ->check(CLI::IsMember({"wyner", "pure", "repetition", "mixed", "reversed", "full-encryption", "best"}));
  rate_cmd->add_option("--nmax", rate.nmax, "Largest repetition order searched")->check(CLI::Range(1, 99));
  rate_cmd->add_option("--forwarding-rate", rate.forwarding_rate, "Sub-capacity forwarding rate (pure scheme)");
  rate_cmd->add_option("--out", rate.out, "Output file (default stdout)");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV sweep over the (eps_b, delta_b) plane");
  sweep_cmd->add_option("--ef", sweep.ef)->required()->check(CLI::Range(0.0, 0.5));
  sweep_cmd->add_option("--df", sweep.df)->required()->check(CLI::Range(0.0, 0.5));
  sweep_cmd->add_option("--eb-min", sweep.eb_min)->required()->check(CLI::Range(0.0, 0.5));
  sweep_cmd->add_option("--eb-max", sweep.eb_max)->required()->check(CLI::Range(0.0, 0.5));
  sweep_cmd->add_option("--eb-step", sweep.eb_step)->required();
  sweep_cmd->add_option("--db-min", sweep.db_min)->required()->check(CLI::Range(0.0, 0.5));
  sweep_cmd->add_option("--db-max", sweep.db_max)->required()->check(CLI::Range(0.0, 0.5));
  sweep_cmd->add_option("--db-step", sweep.db_step)->required();
  sweep_cmd->add_option("--schemes", sweep.schemes,
                        "Comma list of columns: wyner,pure,repetition,mixed,reversed,"
                        "full_encryption,best,improvement,gamma_star,n_star");
  sweep_cmd->add_option("--nmax", sweep.nmax)->check(CLI::Range(1, 99));
  sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads")->check(CLI::Range(1, 256));
  sweep_cmd->add_option("--out", sweep.out, "Output CSV file (default stdout)");

  RegionArgs region;
  auto* region_cmd = app.add_subcommand("region", "Rate-equivocation boundary sample");
  region_cmd->add_option("--rmax", region.rmax, "Total-rate cap")->required()->check(CLI::NonNegativeNumber);
  region_cmd->add_option("--cs", region.cs, "Effective secrecy rate")->required()->check(CLI::NonNegativeNumber);
  region_cmd->add_option("--hs", region.hs, "Source entropy per symbol")->check(CLI::PositiveNumber);
  region_cmd->add_option("--points", region.points, "Boundary sample count")->check(CLI::Range(2, 1000000));
  region_cmd->add_option("--forwarding-rate", region.forwarding_rate, "Apply the f/(f+1) scaling first");
  region_cmd->add_option("--out", region.out, "Output CSV file (default stdout)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Numerical verification experiments");
  verify_cmd->add_option("claim", verify.claim, "bsc-optimality|g-structure|two-point|projection-order|frontier")
      ->required()
      ->check(CLI::IsMember({"bsc-optimality", "g-structure", "two-point", "projection-order", "frontier"}));
  verify_cmd->add_option("--eps", verify.eps)->required()->check(CLI::Range(0.0, 0.5));
  verify_cmd->add_option("--delta", verify.delta)->required()->check(CLI::Range(0.0, 0.5));
  verify_cmd->add_option("--samples", verify.samples)->check(CLI::Range(1, 100000000));
  verify_cmd->add_option("--seed", verify.seed, "Deterministic seed (required for randomized claims)");
  verify_cmd->add_option("--resolution", verify.resolution, "Ternary grid intervals per axis")->check(CLI::Range(2, 200));
  verify_cmd->add_option("--tolerance", verify.tolerance, "Frontier excess tolerance")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--p1", verify.p1, "Explicit quadruple (projection-order)");
  verify_cmd->add_option("--p4", verify.p4);
  verify_cmd->add_option("--p2", verify.p2);
  verify_cmd->add_option("--p3", verify.p3);
  verify_cmd->add_option("--out", verify.out, "Output JSON file (default stdout)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo kernel experiments");
  sim_cmd->add_option("mode", sim.mode, "kernel|crypto|leakage|repetition")
      ->required()
      ->check(CLI::IsMember({"kernel", "crypto", "leakage", "repetition"}));
  sim_cmd->add_option("--eb", sim.eb)->check(CLI::Range(0.0, 0.5));
  sim_cmd->add_option("--db", sim.db)->check(CLI::Range(0.0, 0.5));
  sim_cmd->add_option("--bits", sim.bits, "Total simulated bits")->check(CLI::Range(1L, 2000000000L));
  sim_cmd->add_option("--block", sim.block, "Feedback block length n")->check(CLI::Range(1, 1000000));
  sim_cmd->add_option("--seed", sim.seed)->required();
  sim_cmd->add_option("--payload", sim.payload, "uniform|constant|repetition")
      ->check(CLI::IsMember({"uniform", "constant", "repetition"}));
  sim_cmd->add_option("--rep-k", sim.rep_k, "Information bits per repetition block")->check(CLI::Range(1, 1000000));
  sim_cmd->add_option("--dump", sim.dump, "Prefix for packed bitstream dumps (kernel mode)");
  sim_cmd->add_option("--p", sim.p, "Crossover (repetition mode)")->check(CLI::Range(0.0, 0.5));
  sim_cmd->add_option("--nrep", sim.nrep, "Repetition order (odd)")->check(CLI::Range(1, 999));
  sim_cmd->add_option("--trials", sim.trials)->check(CLI::Range(1L, 2000000000L));
  sim_cmd->add_option("--out", sim.out, "Output JSON file (default stdout)");

  EquivocationArgs equiv;
  auto* equiv_cmd = app.add_subcommand("equivocation", "Exact coset-code equivocation");
  equiv_cmd->add_option("--matrix", equiv.matrix_file, "Parity check file: rows of 0/1, one per line")->required();
  equiv_cmd->add_option("--deltas", equiv.deltas, "Ascending crossover list")->required()->delimiter(',');
  equiv_cmd->add_option("--out", equiv.out, "Output JSON file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  verify.seed_given = verify_cmd->count("--seed") > 0;

  try {
    if (*rate_cmd) return cmd_rate(rate);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*region_cmd) return cmd_region(region);
    if (*verify_cmd) return cmd_verify(verify);
    if (*sim_cmd) return cmd_simulate(sim);
    if (*equiv_cmd) return cmd_equivocation(equiv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
