#ifndef HRKIN__BENCH_HPP_
#define HRKIN__BENCH_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hrkin {

// One CSV row.  Phase times are medians over `repeats` timed runs (one
// additional warmup run is discarded).  state is -1 for the classic and
// naive methods.
struct BenchRecord {
  std::string method;  // classic | naive | dynamic
  int state = -1;
  int num_links = 0;
  int active_dofs = 0;   // mobile elementary joints
  int control_vars = 0;  // solver variables
  double t_fk_s = 0.0;
  double t_jac_s = 0.0;
  double t_dls_s = 0.0;
  double t_step_s = 0.0;  // full step: FK + Jacobian + DLS + integration
  int repeats = 0;
  bool skipped = false;
};

struct BenchOptions {
  int num_links = 16;
  int state = -1;  // -1 = every reachable structure state
  int repeats = 5;
  std::uint64_t seed = 1;
  bool include_naive = false;
  double damping = 0.1;
};

// Times one damped least-squares step per method on a fixed seeded random
// configuration.  Before timing a dynamic state, classic and sector-form FK
// are compared at the benchmarked configuration; a divergence above 1e-9
// throws SelfCheckFailure and produces no record.  Runs strictly sequentially
// on the calling thread.  Out-of-memory for a requested size marks the row
// skipped instead of aborting.
std::vector<BenchRecord> run_bench(const BenchOptions& options);

// Header plus one line per record, with the exact column set
// method,state,num_links,active_dofs,control_vars,t_fk_s,t_jac_s,t_dls_s,
// t_step_s,repeats,skipped.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace hrkin

#endif  // HRKIN__BENCH_HPP_
