// Command line front end: fk, ik, damage and bench subcommands.
// Exit codes: 0 success / converged, 2 solve did not converge,
// 3 input error, 4 self-check failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrkin/bench.hpp"
#include "hrkin/classic.hpp"
#include "hrkin/config.hpp"
#include "hrkin/controller.hpp"
#include "hrkin/errors.hpp"
#include "hrkin/jacobian.hpp"
#include "hrkin/kernels.hpp"
#include "hrkin/sector.hpp"
#include "hrkin/solver.hpp"
#include "hrkin/transform.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 2;
constexpr int kExitInputError = 3;
constexpr int kExitSelfCheck = 4;

struct CommonOpts {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool verbose = false;
  std::string backend = "auto";
};

void add_common(CLI::App* sub, CommonOpts& c, bool config_required) {
  auto* opt = sub->add_option("--config", c.config, "arm config file");
  if (config_required) opt->required();
  sub->add_option("--out", c.out, "also write the output to this file");
  sub->add_option("--seed", c.seed, "random seed")->each([&](const std::string&) {
    c.seed_set = true;
  });
  sub->add_flag("--verbose", c.verbose, "diagnostics on stderr");
  sub->add_option("--backend", c.backend,
                  "kernel backend: auto|scalar|avx2|neon");
}

bool apply_backend(const CommonOpts& c) {
  if (c.backend == "auto") return true;
  for (auto b : {hrkin::kernels::Backend::scalar, hrkin::kernels::Backend::avx2,
                 hrkin::kernels::Backend::neon}) {
    if (hrkin::kernels::name(b) == c.backend) {
      if (!hrkin::kernels::set(b)) {
        std::cerr << "error: backend '" << c.backend
                  << "' is not supported on this machine\n";
        return false;
      }
      return true;
    }
  }
  std::cerr << "error: unknown backend '" << c.backend << "'\n";
  return false;
}

void emit(const std::string& text, const CommonOpts& c) {
  std::cout << text;
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw hrkin::ConfigError("cannot write output file: " + c.out);
    f << text;
  }
}

std::string format_pose(const hrkin::HomTransform& t) {
  char buf[64];
  std::string s;
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 4; ++col) {
      std::snprintf(buf, sizeof(buf), "%.17g", t.at(r, col));
      s += buf;
      s += (col == 3 ? '\n' : ' ');
    }
  }
  return s;
}

std::string format_report(const hrkin::EscalationReport& rep,
                          int control_vars) {
  char buf[64];
  std::ostringstream s;
  s << "status=" << hrkin::to_string(rep.solve.status) << '\n';
  s << "attempts=" << rep.attempts << '\n';
  s << "restructures=" << rep.restructures << '\n';
  s << "iterations=" << rep.solve.iterations << '\n';
  std::snprintf(buf, sizeof(buf), "%.9e", rep.solve.final_position_error);
  s << "final_position_error=" << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%.9e", rep.solve.final_orientation_error);
  s << "final_orientation_error=" << buf << '\n';
  s << "body_capacity=" << rep.final_state.body_capacity << '\n';
  s << "control_vars=" << control_vars << '\n';
  return s.str();
}

void write_trajectory(const std::string& path, const hrkin::SolveReport& rep) {
  std::ofstream f(path);
  if (!f) throw hrkin::ConfigError("cannot write trajectory file: " + path);
  const size_t m = rep.trajectory.empty() ? 0 : rep.trajectory.front().v.size();
  f << "iteration";
  for (size_t i = 0; i < m; ++i) f << ",q" << i;
  f << '\n';
  char buf[64];
  for (size_t it = 0; it < rep.trajectory.size(); ++it) {
    f << it;
    for (double v : rep.trajectory[it].v) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      f << ',' << buf;
    }
    f << '\n';
  }
}

int cmd_fk(const CommonOpts& c, const std::string& q_path) {
  const hrkin::ArmConfig cfg = hrkin::load_config(c.config);
  const hrkin::FullConfiguration q =
      hrkin::load_q_file(q_path, cfg.layout.num_links);
  const hrkin::HomTransform classic = hrkin::classic_forward(cfg.layout, q);
  const hrkin::SectorDecomposition decomp = hrkin::decompose(cfg.layout);
  const hrkin::ReducedConfiguration Q =
      hrkin::project_configuration(decomp, cfg.layout, q);
  const hrkin::HomTransform dynamic =
      hrkin::reduced_forward(decomp, cfg.layout, Q);
  const double div = hrkin::max_abs_diff(classic, dynamic);

  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9e", div);
  std::string text = "classic:\n" + format_pose(classic) + "dynamic:\n" +
                     format_pose(dynamic) + "max_abs_difference=" + buf + "\n";
  emit(text, c);
  if (!(div <= 1e-6)) {
    std::cerr << "error: classic and dynamic kinematics diverge (" << buf
              << ")\n";
    return kExitSelfCheck;
  }
  return kExitOk;
}

int cmd_ik(const CommonOpts& c, const std::string& target_spec,
           bool position_only, const std::string& trajectory_out) {
  hrkin::ArmConfig cfg = hrkin::load_config(c.config);
  cfg.settings.position_only = position_only;
  cfg.settings.record_trajectory = !trajectory_out.empty();
  const hrkin::HomTransform target = hrkin::parse_target_pose(target_spec);
  const hrkin::FullConfiguration q0 = cfg.initial_configuration();
  const hrkin::EscalationReport rep =
      hrkin::solve_with_escalation(cfg.layout, q0, target, cfg.settings);
  if (!trajectory_out.empty()) write_trajectory(trajectory_out, rep.solve);
  const auto decomp = hrkin::decompose(rep.final_state.layout);
  emit(format_report(rep, decomp.q_size()), c);
  if (c.verbose) {
    std::cerr << "backend=" << hrkin::kernels::name(hrkin::kernels::active())
              << "\n";
  }
  return rep.solve.status == hrkin::SolveStatus::Converged ? kExitOk
                                                           : kExitNotConverged;
}

std::vector<int> parse_link_list(const std::string& spec) {
  std::vector<int> links;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) {
      throw hrkin::ConfigError("--links expects comma-separated link indices, got '" +
                               item + "'");
    }
    links.push_back(v);
  }
  if (links.empty()) throw hrkin::ConfigError("--links list is empty");
  return links;
}

int cmd_damage(const CommonOpts& c, const std::vector<int>& links,
               const std::string& target_spec, bool position_only) {
  hrkin::ArmConfig cfg = hrkin::load_config(c.config);
  cfg.settings.position_only = position_only;
  const hrkin::HomTransform target = hrkin::parse_target_pose(target_spec);
  const hrkin::FullConfiguration q0 = hrkin::effective_configuration(
      cfg.layout, cfg.initial_configuration());

  hrkin::ControllerState state = hrkin::make_initial_state(cfg.layout);
  for (int link : links) {
    state = hrkin::mark_damaged(state, link,
                                {q0.phi(link), q0.theta(link)});
  }
  const hrkin::EscalationReport rep =
      hrkin::solve_with_escalation(state.layout, q0, target, cfg.settings);

  // Frozen angles must be bit-identical after the solve.
  bool frozen_ok = true;
  for (const auto& [link, angles] : rep.final_state.layout.frozen) {
    if (rep.final_q.phi(link) != angles.phi ||
        rep.final_q.theta(link) != angles.theta) {
      frozen_ok = false;
    }
  }

  std::string text;
  text += "damaged_links=";
  {
    const auto& frozen = rep.final_state.layout.frozen;
    bool first = true;
    for (const auto& [link, angles] : frozen) {
      text += (first ? "" : ",") + std::to_string(link);
      first = false;
    }
    text += '\n';
  }
  const auto decomp = hrkin::decompose(rep.final_state.layout);
  text += format_report(rep, decomp.q_size());
  text += std::string("frozen_check=") + (frozen_ok ? "ok" : "FAILED") + "\n";
  emit(text, c);
  if (!frozen_ok) {
    std::cerr << "error: frozen angles changed during the solve\n";
    return kExitSelfCheck;
  }
  return rep.solve.status == hrkin::SolveStatus::Converged ? kExitOk
                                                           : kExitNotConverged;
}

int cmd_bench(const CommonOpts& c, int links, const std::string& states,
              int repeats, bool naive) {
  hrkin::BenchOptions opt;
  opt.num_links = links;
  opt.repeats = repeats;
  opt.include_naive = naive;
  opt.seed = c.seed_set ? c.seed : 1;
  if (states != "all") {
    try {
      opt.state = std::stoi(states);
    } catch (const std::exception&) {
      throw hrkin::ConfigError("--states takes 'all' or a state index");
    }
  }
  const std::vector<hrkin::BenchRecord> records = hrkin::run_bench(opt);

  std::ostringstream csv;
  hrkin::write_bench_csv(csv, records);
  if (c.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(c.out);
    if (!f) throw hrkin::ConfigError("cannot write CSV file: " + c.out);
    f << csv.str();
  }

  std::vector<double> dofs, times;
  for (const auto& r : records) {
    if (r.method == "dynamic" && !r.skipped && r.t_step_s > 0.0) {
      dofs.push_back(r.active_dofs);
      times.push_back(r.t_step_s);
    }
  }
  std::ostream& info = c.out.empty() ? std::cerr : std::cout;
  info << "correctness_gate=ok\n";
  if (dofs.size() >= 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f",
                  hrkin::fit_loglog_slope(dofs, times));
    info << "dynamic_loglog_slope=" << buf << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sector-based kinematics for hyper-redundant serial arms"};
  app.require_subcommand(1);

  CommonOpts fk_c, ik_c, dmg_c, bench_c;
  std::string fk_q, ik_target, dmg_target, traj_out, bench_states = "all";
  std::string dmg_links;
  bool ik_pos_only = false, dmg_pos_only = false, bench_naive = false;
  int bench_links = 16, bench_repeats = 5;

  CLI::App* fk = app.add_subcommand("fk", "forward kinematics of a configuration");
  add_common(fk, fk_c, true);
  fk->add_option("q", fk_q, "file with 2N joint values")->required();

  CLI::App* ik = app.add_subcommand("ik", "solve for a target pose");
  add_common(ik, ik_c, true);
  ik->add_option("target", ik_target,
                 "target pose: 12 numbers (rotation row-major + translation), "
                 "7 numbers (translation + quaternion w x y z), or a file")
      ->required();
  ik->add_flag("--position-only", ik_pos_only, "ignore orientation");
  ik->add_option("--trajectory-out", traj_out, "write per-iteration Q CSV");

  CLI::App* dmg = app.add_subcommand("damage", "damage links, then re-solve");
  add_common(dmg, dmg_c, true);
  dmg->add_option("--links", dmg_links,
                  "comma-separated links to damage (1-based)")
      ->required();
  dmg->add_option("target", dmg_target, "target pose (see ik)")->required();
  dmg->add_flag("--position-only", dmg_pos_only, "ignore orientation");

  CLI::App* bench = app.add_subcommand("bench", "per-step timing benchmark");
  add_common(bench, bench_c, false);
  bench->add_option("--links", bench_links, "number of links");
  bench->add_option("--states", bench_states, "'all' or one state index");
  bench->add_option("--repeats", bench_repeats, "timed repeats per method");
  bench->add_flag("--naive", bench_naive, "also time the uncached O(n^2) baseline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (fk->parsed()) {
      if (!apply_backend(fk_c)) return kExitInputError;
      return cmd_fk(fk_c, fk_q);
    }
    if (ik->parsed()) {
      if (!apply_backend(ik_c)) return kExitInputError;
      return cmd_ik(ik_c, ik_target, ik_pos_only, traj_out);
    }
    if (dmg->parsed()) {
      if (!apply_backend(dmg_c)) return kExitInputError;
      return cmd_damage(dmg_c, parse_link_list(dmg_links), dmg_target,
                        dmg_pos_only);
    }
    if (bench->parsed()) {
      if (!apply_backend(bench_c)) return kExitInputError;
      return cmd_bench(bench_c, bench_links, bench_states, bench_repeats,
                       bench_naive);
    }
  } catch (const hrkin::SelfCheckFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSelfCheck;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
