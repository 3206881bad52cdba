// Batch front-end for the rigidity laboratory: build a strategy from flags
// or a JSON config, then verify the bound chain, sweep a strategy family to
// CSV, reproduce the sign-convention counterexample, scan the
// sum-of-squares residual, or run the see-saw optimizer.
//
// Exit codes: 0 success, 1 usage/validation error, 2 theorem-regime failure
// (degenerate junk component or an unsatisfied bound).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chshlab/lab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRegime = 2;

struct Options {
  std::string strategy = "canonical";
  double theta_a = 0.0;
  double theta_b = 0.0;
  double magnitude = 0.1;
  std::vector<std::size_t> dims = {2, 2};
  std::uint64_t seed = 0;
  int seeds = 0;
  double grid_start = 0.0;
  double grid_end = 0.0;
  double grid_step = 0.0;
  std::string out;
  double tol = chshlab::kObservableTol;
  bool tol_set = false;
  std::string config_path;
  int max_iters = 50;
};

// Tolerance layering: built-in default, overridden by CHSH_LAB_TOL,
// overridden by the config file, overridden by an explicit --tol.
void apply_env(Options& opt) {
  if (opt.tol_set) return;
  if (const char* env = std::getenv("CHSH_LAB_TOL")) {
    try {
      opt.tol = std::stod(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("CHSH_LAB_TOL", "cannot parse as a number");
    }
  }
}

void apply_config_file(Options& opt, const CLI::App& cmd) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + opt.config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--config", std::string("JSON parse failure: ") + e.what());
  }
  const auto flag_given = [&](const std::string& name) {
    const CLI::Option* o = cmd.get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  const auto load = [&](const char* key, auto& field, const std::string& flag) {
    if (j.contains(key) && !flag_given(flag)) field = j[key].template get<std::decay_t<decltype(field)>>();
  };
  load("strategy", opt.strategy, "--strategy");
  load("theta-a", opt.theta_a, "--theta-a");
  load("theta-b", opt.theta_b, "--theta-b");
  load("magnitude", opt.magnitude, "--magnitude");
  load("dims", opt.dims, "--dims");
  load("seed", opt.seed, "--seed");
  load("seeds", opt.seeds, "--seeds");
  load("grid-start", opt.grid_start, "--grid-start");
  load("grid-end", opt.grid_end, "--grid-end");
  load("grid-step", opt.grid_step, "--grid-step");
  load("out", opt.out, "--out");
  load("max-iters", opt.max_iters, "--max-iters");
  if (j.contains("tol") && !flag_given("--tol")) {
    opt.tol = j["tol"].get<double>();
    opt.tol_set = true;
  }
}

void add_common_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--strategy", opt.strategy,
                  "canonical | rotated | noisy | random | degenerate:<name> | file:<path>");
  cmd->add_option("--theta-a", opt.theta_a, "first party rotation angle (radians)");
  cmd->add_option("--theta-b", opt.theta_b, "second party rotation angle (radians)");
  cmd->add_option("--magnitude", opt.magnitude, "noise magnitude for noisy strategies");
  cmd->add_option("--dims", opt.dims, "local dimensions dimA dimB")->expected(2);
  cmd->add_option("--seed", opt.seed, "base seed");
  cmd->add_option("--seeds", opt.seeds, "number of seeds to scan");
  cmd->add_option("--grid-start", opt.grid_start, "sweep grid start");
  cmd->add_option("--grid-end", opt.grid_end, "sweep grid end");
  cmd->add_option("--grid-step", opt.grid_step, "sweep grid step");
  cmd->add_option("--out", opt.out, "output file path");
  cmd->add_option("--tol", opt.tol, "observable validation tolerance")
      ->each([&opt](const std::string&) { opt.tol_set = true; });
  cmd->add_option("--config", opt.config_path, "JSON config file (same keys as flags)");
  cmd->add_option("--max-iters", opt.max_iters, "see-saw iteration cap");
}

chshlab::CHSHStrategy build_strategy(const Options& opt) {
  using namespace chshlab;
  const std::string& name = opt.strategy;
  if (name == "canonical") return canonical_strategy();
  if (name == "rotated") return rotated_strategy(opt.theta_a, opt.theta_b);
  if (name == "noisy") return noisy_strategy(opt.seed, opt.magnitude);
  if (name == "random") {
    if (opt.dims.size() != 2) throw std::invalid_argument("--dims expects two values");
    return random_strategy(opt.dims[0], opt.dims[1], opt.seed);
  }
  if (name.rfind("degenerate:", 0) == 0) return degenerate_strategy(name.substr(11));
  if (name.rfind("file:", 0) == 0) return load_strategy(name.substr(5), opt.tol);
  throw std::invalid_argument("unknown strategy: " + name);
}

int run_verify(const Options& opt) {
  using namespace chshlab;
  const CHSHStrategy s = build_strategy(opt);
  try {
    const BoundReport rep = verify_theorem(s);
    std::cout << bound_report_text(rep);
    return rep.all_satisfied() ? kExitOk : kExitRegime;
  } catch (const DegenerateJunk& e) {
    std::cout << "DegenerateJunk: " << e.what() << '\n'
              << "epsilon = " << format_double(epsilon_deficit(s)) << '\n';
    return kExitRegime;
  }
}

int run_sweep(const Options& opt) {
  using namespace chshlab;
  SweepConfig cfg;
  if (opt.strategy == "rotated") cfg.mode = SweepMode::Rotated;
  else if (opt.strategy == "noisy") cfg.mode = SweepMode::Noisy;
  else if (opt.strategy == "seesaw") cfg.mode = SweepMode::Seesaw;
  else throw std::invalid_argument("sweep supports --strategy rotated | noisy | seesaw");
  cfg.grid_start = opt.grid_start;
  cfg.grid_end = opt.grid_end;
  cfg.grid_step = opt.grid_step;
  cfg.seeds = opt.seeds;
  cfg.theta_b = opt.theta_b;
  cfg.seed = opt.seed;
  cfg.tol = opt.tol;

  const std::vector<SweepRecord> records = run_sweep(cfg);
  const std::string csv = sweep_to_csv(records);
  if (opt.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opt.out);
    out << csv;
    if (!out) throw std::runtime_error("write failed: " + opt.out);
    std::cout << "wrote " << records.size() << " rows to " << opt.out << '\n';
  }
  bool all = true;
  for (const SweepRecord& r : records) all = all && r.all_pass;
  return all ? kExitOk : kExitRegime;
}

int run_counterexample() {
  const chshlab::CounterexampleReport rep = chshlab::reproduce_counterexample();
  std::cout << chshlab::counterexample_text(rep);
  return rep.claim_refuted ? kExitOk : kExitRegime;
}

int run_tsirelson(const Options& opt) {
  using namespace chshlab;
  double max_residual = 0.0;
  if (opt.strategy == "random") {
    const int n = opt.seeds > 0 ? opt.seeds : 1;
    if (opt.dims.size() != 2) throw std::invalid_argument("--dims expects two values");
    for (int i = 0; i < n; ++i) {
      const auto s = random_strategy(opt.dims[0], opt.dims[1],
                                     opt.seed + static_cast<std::uint64_t>(i));
      const double r = tsirelson_sos_residual(s);
      std::cout << "seed " << (opt.seed + static_cast<std::uint64_t>(i)) << ": residual "
                << format_double(r) << '\n';
      max_residual = std::max(max_residual, r);
    }
  } else {
    max_residual = tsirelson_sos_residual(build_strategy(opt));
    std::cout << "residual " << format_double(max_residual) << '\n';
  }
  std::cout << "max residual " << format_double(max_residual) << '\n';
  return kExitOk;
}

int run_optimize(const Options& opt) {
  using namespace chshlab;
  if (opt.dims.size() != 2) throw std::invalid_argument("--dims expects two values");
  const CHSHStrategy start = opt.strategy == "random"
                                 ? random_strategy(opt.dims[0], opt.dims[1], opt.seed)
                                 : build_strategy(opt);
  const SeesawTrace trace = seesaw_optimize(start, opt.max_iters);
  std::cout << "bias trace:";
  for (double b : trace.iterations) std::cout << ' ' << format_double(b);
  std::cout << '\n';
  std::cout << "converged: " << (trace.converged ? "yes" : "no") << '\n';
  std::cout << "final bias: " << format_double(trace.iterations.back()) << '\n';
  if (!opt.out.empty()) {
    save_strategy(opt.out, trace.final);
    std::cout << "wrote strategy to " << opt.out << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for robust CHSH rigidity"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* verify = app.add_subcommand("verify", "check every bound of the proof chain");
  CLI::App* sweep = app.add_subcommand("sweep", "bound-vs-actual CSV over a strategy family");
  CLI::App* counterexample =
      app.add_subcommand("counterexample", "sign-convention anticommutator counterexample");
  CLI::App* tsirelson =
      app.add_subcommand("tsirelson", "sum-of-squares identity residual scan");
  CLI::App* optimize = app.add_subcommand("optimize", "see-saw bias maximization");
  for (CLI::App* cmd : {verify, sweep, tsirelson, optimize}) add_common_options(cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (active != counterexample) apply_config_file(opt, *active);
    apply_env(opt);

    if (active == verify) return run_verify(opt);
    if (active == sweep) return run_sweep(opt);
    if (active == counterexample) return run_counterexample();
    if (active == tsirelson) return run_tsirelson(opt);
    if (active == optimize) return run_optimize(opt);
    return kExitUsage;
  } catch (const chshlab::DegenerateJunk& e) {
    std::cerr << "DegenerateJunk: " << e.what() << '\n';
    return kExitRegime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
