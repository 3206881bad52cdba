#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "chshlab/extraction.hpp"
#include "chshlab/gap.hpp"
#include "chshlab/generators.hpp"
#include "chshlab/io.hpp"

namespace chshlab {

enum class SweepMode { Rotated, Noisy, Seesaw };

/// One bound-vs-actual experiment: a family of strategies indexed by a grid
/// parameter (rotation angle, noise magnitude, or optimizer seed).
struct SweepConfig {
  SweepMode mode = SweepMode::Rotated;
  double grid_start = 0.0;
  double grid_end = 0.0;
  double grid_step = 0.0;
  int seeds = 0;            // Seesaw: number of seeds; overrides the grid
  double theta_b = 0.0;     // Rotated: fixed second-party angle
  std::uint64_t seed = 0;   // Noisy/Seesaw: base seed
  double tol = kObservableTol;
};

struct SweepRecord {
  double param = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double state_err = 0.0, state_bound = 0.0;
  double a0_err = 0.0, a0_bound = 0.0;
  double a1_err = 0.0, a1_bound = 0.0;
  double b0_err = 0.0, b0_bound = 0.0;
  double b1_err = 0.0, b1_bound = 0.0;
  bool all_pass = false;
  bool small_eps = false;
};

inline std::vector<double> grid_points(double start, double end, double step) {
  if (step <= 0.0) throw std::invalid_argument("grid step must be > 0");
  if (end < start) throw std::invalid_argument("grid end must be >= start");
  std::vector<double> pts;
  const auto n = static_cast<std::size_t>((end - start) / step + 1.0 + 1e-9);
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(start + static_cast<double>(i) * step);
  if (pts.empty()) throw std::invalid_argument("grid is empty");
  return pts;
}

inline SweepRecord make_sweep_record(double param, const BoundReport& rep) {
  SweepRecord r;
  r.param = param;
  r.epsilon = rep.epsilon;
  r.delta = rep.delta;
  for (const BoundRecord& b : rep.records) {
    if (b.name == "state_error") { r.state_err = b.actual; r.state_bound = b.bound; }
    else if (b.name == "a0_error") { r.a0_err = b.actual; r.a0_bound = b.bound; }
    else if (b.name == "a1_error") { r.a1_err = b.actual; r.a1_bound = b.bound; }
    else if (b.name == "b0_error") { r.b0_err = b.actual; r.b0_bound = b.bound; }
    else if (b.name == "b1_error") { r.b1_err = b.actual; r.b1_bound = b.bound; }
  }
  r.all_pass = rep.all_satisfied();
  r.small_eps = rep.records.empty() ? false : rep.records.front().small_eps_regime;
  return r;
}

/// Evaluate the grid in order. Rows come back in grid order; each point is
/// independent of the others.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  std::vector<double> params;
  if (cfg.mode == SweepMode::Seesaw && cfg.seeds > 0) {
    for (int i = 0; i < cfg.seeds; ++i) params.push_back(static_cast<double>(i));
  } else {
    params = grid_points(cfg.grid_start, cfg.grid_end, cfg.grid_step);
  }

  std::vector<SweepRecord> records;
  records.reserve(params.size());
  for (double param : params) {
    CHSHStrategy s = [&]() -> CHSHStrategy {
      switch (cfg.mode) {
        case SweepMode::Rotated: return rotated_strategy(param, cfg.theta_b);
        case SweepMode::Noisy: return noisy_strategy(cfg.seed, param);
        case SweepMode::Seesaw: {
          const auto seed = cfg.seed + static_cast<std::uint64_t>(param);
          return seesaw_optimize(random_strategy(2, 2, seed)).final;
        }
      }
      throw std::invalid_argument("unknown sweep mode");
    }();
    records.push_back(make_sweep_record(param, verify_theorem(s)));
  }
  return records;
}

inline std::string sweep_csv_header() {
  return "param,epsilon,delta,state_err,state_bound,a0_err,a0_bound,a1_err,a1_bound,"
         "b0_err,b0_bound,b1_err,b1_bound,all_pass,small_eps";
}

inline std::string sweep_record_csv(const SweepRecord& r) {
  std::string line;
  for (double x : {r.param, r.epsilon, r.delta, r.state_err, r.state_bound, r.a0_err,
                   r.a0_bound, r.a1_err, r.a1_bound, r.b0_err, r.b0_bound, r.b1_err,
                   r.b1_bound}) {
    line += format_double(x);
    line += ',';
  }
  line += r.all_pass ? "1," : "0,";
  line += r.small_eps ? "1" : "0";
  return line;
}

inline std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  std::string out = sweep_csv_header();
  out += '\n';
  for (const SweepRecord& r : records) {
    out += sweep_record_csv(r);
    out += '\n';
  }
  return out;
}

inline std::string bound_report_text(const BoundReport& rep) {
  std::ostringstream os;
  os << "epsilon = " << format_double(rep.epsilon)
     << "  delta = " << format_double(rep.delta) << '\n';
  os << "k_expectation = " << format_double(rep.extraction.k_expectation)
     << "  projection_sq_norm = " << format_double(rep.extraction.projection_sq_norm)
     << '\n';
  if (!rep.records.empty() && !rep.records.front().small_eps_regime)
    os << "warning: epsilon > " << kSmallEpsCutoff
       << ", outside the small-eps regime; bounds are not expected to be tight\n";
  for (const BoundRecord& r : rep.records) {
    os << (r.satisfied ? "  ok   " : "  FAIL ") << r.name << ": actual "
       << format_double(r.actual) << " <= bound " << format_double(r.bound) << '\n';
  }
  os << (rep.all_satisfied() ? "all bounds satisfied" : "BOUND VIOLATION") << '\n';
  return os.str();
}

inline std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const cplx z = m(i, j);
      os << ' ' << format_double(z.real());
      if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "") << format_double(z.imag()) << 'i';
    }
    os << " ]\n";
  }
  return os.str();
}

inline std::string counterexample_text(const CounterexampleReport& rep) {
  std::ostringstream os;
  os << "B0 = B1 = Z, sign construction with the +1 kernel convention\n";
  os << "X'_B = (B0+B1)/|B0+B1|:\n" << matrix_text(rep.xprime_b);
  os << "Z'_B = (B0-B1)/|B0-B1|:\n" << matrix_text(rep.zprime_b);
  os << "{X'_B, Z'_B}:\n" << matrix_text(rep.anticommutator);
  os << "anticommutator norm = " << format_double(rep.anticommutator_norm) << '\n';
  os << "claimed anticommutation refuted: " << (rep.claim_refuted ? "yes" : "no") << '\n';
  return os.str();
}

}  // namespace chshlab
