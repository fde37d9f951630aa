#include <doctest.h>

#include <cmath>

#include "hrkin/classic.hpp"
#include "hrkin/sector.hpp"
#include "hrkin/solver.hpp"
#include "oracles.hpp"

using hrkin::ArmLayout;
using hrkin::FullConfiguration;
using hrkin::HomTransform;
using hrkin::ReducedConfiguration;
using hrkin::SolverSettings;
using hrkin::SolveStatus;

namespace {

ReducedConfiguration random_all_head_q(oracles::Rng& rng, int n,
                                       double bend = 0.5) {
  ReducedConfiguration Q;
  Q.v.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    Q.v[2 * i] = oracles::uniform(rng, -0.8, 0.8);
    Q.v[2 * i + 1] = oracles::uniform(rng, -bend, bend);
  }
  return Q;
}

}  // namespace

TEST_CASE("position tolerance resolves to 1e-4 * N * d") {
  SolverSettings s;
  const ArmLayout layout = ArmLayout::all_head(8, 0.5);
  CHECK(hrkin::resolved_position_tolerance(s, layout) ==
        doctest::Approx(1e-4 * 8 * 0.5).epsilon(1e-15));
  s.position_tolerance = 0.01;
  CHECK(hrkin::resolved_position_tolerance(s, layout) == 0.01);
}

TEST_CASE("already at the target converges in zero iterations") {
  oracles::Rng rng(103);
  const int n = 6;
  const ArmLayout layout = ArmLayout::all_head(n, 1.0);
  const auto decomp = hrkin::decompose(layout);
  const ReducedConfiguration Q0 = random_all_head_q(rng, n);
  const HomTransform target = hrkin::reduced_forward(decomp, layout, Q0);

  const auto rep =
      hrkin::solve_to_pose(decomp, layout, Q0, target, SolverSettings{});
  CHECK(rep.status == SolveStatus::Converged);
  CHECK(rep.iterations == 0);
  for (size_t i = 0; i < Q0.v.size(); ++i) {
    CHECK(rep.final_configuration.v[i] == Q0.v[i]);
  }
}

TEST_CASE("one step reduces the pose error") {
  oracles::Rng rng(107);
  const int n = 6;
  const ArmLayout layout = ArmLayout::all_head(n, 1.0);
  const auto decomp = hrkin::decompose(layout);
  const ReducedConfiguration Q0 = random_all_head_q(rng, n);
  const HomTransform target =
      hrkin::reduced_forward(decomp, layout, random_all_head_q(rng, n));

  SolverSettings s;
  s.max_iterations = 1;
  const auto rep = hrkin::solve_to_pose(decomp, layout, Q0, target, s);

  const auto err0 = hrkin::pose_error(
      hrkin::reduced_forward(decomp, layout, Q0), target);
  const auto err1 = hrkin::pose_error(
      hrkin::reduced_forward(decomp, layout, rep.final_configuration), target);
  CHECK(err1.linear.norm() + err1.angular.norm() <
        err0.linear.norm() + err0.angular.norm());
}

TEST_CASE("reachable targets converge on the all-head arm") {
  oracles::Rng rng(109);
  const int n = 8;
  const ArmLayout layout = ArmLayout::all_head(n, 1.0);
  const auto decomp = hrkin::decompose(layout);
  const SolverSettings settings;
  const double pos_tol = hrkin::resolved_position_tolerance(settings, layout);

  int converged = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const HomTransform target =
        hrkin::reduced_forward(decomp, layout, random_all_head_q(rng, n));
    const auto rep = hrkin::solve_to_pose(
        decomp, layout, ReducedConfiguration{std::vector<double>(2 * n, 0.0)},
        target, settings);
    if (rep.status == SolveStatus::Converged) {
      ++converged;
      CHECK(rep.final_position_error <= pos_tol);
      CHECK(rep.final_orientation_error <= settings.orientation_tolerance);
      // The report's errors describe the returned configuration.
      const auto e = hrkin::pose_error(
          hrkin::reduced_forward(decomp, layout, rep.final_configuration),
          target);
      CHECK(e.linear.norm() == doctest::Approx(rep.final_position_error)
                                   .epsilon(1e-12));
    }
  }
  CHECK(converged >= 19);
}

TEST_CASE("unreachable targets stop without converging") {
  const int n = 4;
  const ArmLayout layout = ArmLayout::all_head(n, 1.0);
  const auto decomp = hrkin::decompose(layout);
  HomTransform target = HomTransform::identity();
  target.set_translation({0, 0, 2.0 * n});  // twice the full reach

  const auto rep = hrkin::solve_to_pose(
      decomp, layout, ReducedConfiguration{std::vector<double>(2 * n, 0.0)},
      target, SolverSettings{});
  CHECK(rep.status != SolveStatus::Converged);
  CHECK(rep.iterations > 0);
}

TEST_CASE("stall detection fires well before the iteration budget") {
  const int n = 4;
  const ArmLayout layout = ArmLayout::all_head(n, 1.0);
  const auto decomp = hrkin::decompose(layout);
  HomTransform target = HomTransform::identity();
  target.set_translation({0, 0, 3.0 * n});

  SolverSettings s;
  s.max_iterations = 2000;
  const auto rep = hrkin::solve_to_pose(
      decomp, layout, ReducedConfiguration{std::vector<double>(2 * n, 0.0)},
      target, s);
  if (rep.status == SolveStatus::Stalled) {
    CHECK(rep.iterations < s.max_iterations);
  } else {
    CHECK(rep.status == SolveStatus::MaxIterations);
  }
}

TEST_CASE("damaged links stay bitwise frozen through a solve") {
  oracles::Rng rng(113);
  ArmLayout layout = ArmLayout::all_head(8, 1.0);
  layout.modes[2] = hrkin::LinkMode::Damaged;
  layout.frozen[3] = {0.123456789, -0.987654321};
  layout.modes[5] = hrkin::LinkMode::Damaged;
  layout.frozen[6] = {-0.25, 0.5};
  layout.validate();
  const auto decomp = hrkin::decompose(layout);

  const HomTransform target = hrkin::reduced_forward(
      decomp, layout, oracles::random_reduced(rng, decomp));
  ReducedConfiguration Q0;
  Q0.v.assign(decomp.vars.size(), 0.0);
  const auto rep =
      hrkin::solve_to_pose(decomp, layout, Q0, target, SolverSettings{});

  const FullConfiguration q = hrkin::expand_configuration(
      decomp, layout, rep.final_configuration);
  CHECK(q.phi(3) == 0.123456789);
  CHECK(q.theta(3) == -0.987654321);
  CHECK(q.phi(6) == -0.25);
  CHECK(q.theta(6) == 0.5);
}

TEST_CASE("position-only mode ignores orientation") {
  oracles::Rng rng(127);
  const int n = 5;
  const ArmLayout layout = ArmLayout::all_head(n, 1.0);
  const auto decomp = hrkin::decompose(layout);
  const HomTransform target =
      hrkin::reduced_forward(decomp, layout, random_all_head_q(rng, n));

  SolverSettings s;
  s.position_only = true;
  const auto rep = hrkin::solve_to_pose(
      decomp, layout, ReducedConfiguration{std::vector<double>(2 * n, 0.0)},
      target, s);
  REQUIRE(rep.status == SolveStatus::Converged);
  CHECK(rep.final_position_error <=
        hrkin::resolved_position_tolerance(s, layout));
}

TEST_CASE("trajectory recording starts at Q0") {
  oracles::Rng rng(131);
  const int n = 4;
  const ArmLayout layout = ArmLayout::all_head(n, 1.0);
  const auto decomp = hrkin::decompose(layout);
  const ReducedConfiguration Q0 = random_all_head_q(rng, n);
  const HomTransform target =
      hrkin::reduced_forward(decomp, layout, random_all_head_q(rng, n));

  SolverSettings s;
  s.record_trajectory = true;
  s.max_iterations = 5;
  const auto rep = hrkin::solve_to_pose(decomp, layout, Q0, target, s);
  REQUIRE(!rep.trajectory.empty());
  for (size_t i = 0; i < Q0.v.size(); ++i) {
    CHECK(rep.trajectory.front().v[i] == Q0.v[i]);
  }
  CHECK(rep.trajectory.size() == static_cast<size_t>(rep.iterations) + 1);
}
