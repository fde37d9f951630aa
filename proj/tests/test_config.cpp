#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "hrkin/config.hpp"
#include "hrkin/errors.hpp"

using hrkin::ConfigError;

namespace {

// Writes content to a unique temp file and returns its path.
class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("hrkin_test_" + std::to_string(++counter) + "_" +
              std::to_string(::getpid()) + ".txt"))
                .string();
    std::ofstream f(path_);
    f << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_CASE("full config round trip") {
  const TempFile f(
      "# demo arm\n"
      "num_links: 6\n"
      "link_length: 0.5\n"
      "H: 1,0,-1,1,0,0\n"
      "frozen: 3 0.25 -0.5\n"
      "damping: 0.2\n"
      "dt: 0.8\n"
      "position_tolerance: 1e-3\n"
      "orientation_tolerance: 2e-3\n"
      "max_iterations: 500\n"
      "stall_window: 25\n"
      "stall_epsilon: 1e-11\n"
      "step_clamp: 0.4\n"
      "seed: 99\n"
      "q0: 0.1,0.2, 0,0.2, 0,0, 0.3,0.1, 0,0.1, 0,0.1\n");
  const hrkin::ArmConfig cfg = hrkin::load_config(f.path());

  CHECK(cfg.layout.num_links == 6);
  CHECK(cfg.layout.link_length == 0.5);
  CHECK(cfg.layout.mode(1) == hrkin::LinkMode::Head);
  CHECK(cfg.layout.mode(2) == hrkin::LinkMode::Body);
  CHECK(cfg.layout.mode(3) == hrkin::LinkMode::Damaged);
  CHECK(cfg.layout.frozen.at(3).phi == 0.25);
  CHECK(cfg.layout.frozen.at(3).theta == -0.5);
  CHECK(cfg.settings.damping == 0.2);
  CHECK(cfg.settings.dt == 0.8);
  CHECK(cfg.settings.position_tolerance == 1e-3);
  CHECK(cfg.settings.orientation_tolerance == 2e-3);
  CHECK(cfg.settings.max_iterations == 500);
  CHECK(cfg.settings.stall_window == 25);
  CHECK(cfg.settings.stall_epsilon == 1e-11);
  CHECK(cfg.settings.step_clamp == 0.4);
  CHECK(cfg.seed == 99);
  REQUIRE(cfg.q0.has_value());
  CHECK(cfg.q0->phi(1) == 0.1);
  CHECK(cfg.q0->theta(4) == 0.1);
  CHECK(cfg.initial_configuration().v == cfg.q0->v);
}

TEST_CASE("minimal config uses solver defaults") {
  const TempFile f("num_links: 3\nH: 1,1,1\n");
  const hrkin::ArmConfig cfg = hrkin::load_config(f.path());
  CHECK(cfg.layout.link_length == 1.0);
  CHECK(cfg.settings.damping == 0.1);
  CHECK(cfg.settings.position_tolerance < 0.0);
  CHECK(cfg.settings.max_iterations == 2000);
  CHECK_FALSE(cfg.q0.has_value());
  CHECK(cfg.initial_configuration().v ==
        hrkin::FullConfiguration::zeros(3).v);
}

TEST_CASE("config syntax and consistency errors") {
  CHECK_THROWS_AS(hrkin::load_config("/nonexistent/path.cfg"), ConfigError);

  const TempFile unknown("num_links: 2\nH: 1,1\nbogus_key: 3\n");
  CHECK_THROWS_AS(hrkin::load_config(unknown.path()), ConfigError);

  const TempFile missing_links("H: 1,1\n");
  CHECK_THROWS_AS(hrkin::load_config(missing_links.path()), ConfigError);

  const TempFile missing_h("num_links: 2\n");
  CHECK_THROWS_AS(hrkin::load_config(missing_h.path()), ConfigError);

  const TempFile short_h("num_links: 3\nH: 1,1\n");
  CHECK_THROWS_AS(hrkin::load_config(short_h.path()), ConfigError);

  const TempFile bad_mode("num_links: 2\nH: 1,7\n");
  CHECK_THROWS_AS(hrkin::load_config(bad_mode.path()), ConfigError);

  const TempFile damaged_without_frozen("num_links: 2\nH: 1,-1\n");
  CHECK_THROWS_AS(hrkin::load_config(damaged_without_frozen.path()),
                  ConfigError);

  const TempFile frozen_for_healthy(
      "num_links: 2\nH: 1,1\nfrozen: 2 0.0 0.0\n");
  CHECK_THROWS_AS(hrkin::load_config(frozen_for_healthy.path()), ConfigError);

  const TempFile q0_short("num_links: 2\nH: 1,1\nq0: 0,0,0\n");
  CHECK_THROWS_AS(hrkin::load_config(q0_short.path()), ConfigError);

  const TempFile not_a_number("num_links: 2\nH: 1,1\ndamping: fast\n");
  CHECK_THROWS_AS(hrkin::load_config(not_a_number.path()), ConfigError);

  const TempFile body_first("num_links: 2\nH: 0,1\n");
  CHECK_THROWS_AS(hrkin::load_config(body_first.path()), ConfigError);
}

TEST_CASE("load_q_file accepts whitespace and comma separation") {
  const TempFile f("0.1 0.2,0.3\n0.4\n");
  const hrkin::FullConfiguration q = hrkin::load_q_file(f.path(), 2);
  CHECK(q.phi(1) == 0.1);
  CHECK(q.theta(1) == 0.2);
  CHECK(q.phi(2) == 0.3);
  CHECK(q.theta(2) == 0.4);

  CHECK_THROWS_AS(hrkin::load_q_file(f.path(), 3), ConfigError);
  const TempFile junk("0.1 oops 0.3 0.4\n");
  CHECK_THROWS_AS(hrkin::load_q_file(junk.path(), 2), ConfigError);
}

TEST_CASE("parse_target_pose from 12 numbers") {
  const hrkin::HomTransform t = hrkin::parse_target_pose(
      "1,0,0, 0,1,0, 0,0,1, 0.5,-0.25,2.0");
  CHECK(t.at(0, 0) == 1.0);
  CHECK(t.translation().x == 0.5);
  CHECK(t.translation().y == -0.25);
  CHECK(t.translation().z == 2.0);

  // Non-rigid rotation block is rejected.
  CHECK_THROWS_AS(
      hrkin::parse_target_pose("2,0,0, 0,1,0, 0,0,1, 0,0,0"), ConfigError);
}

TEST_CASE("parse_target_pose from translation plus quaternion") {
  // Identity quaternion.
  const hrkin::HomTransform t = hrkin::parse_target_pose("1,2,3, 1,0,0,0");
  CHECK(t.translation().x == 1.0);
  CHECK(t.at(0, 0) == doctest::Approx(1.0));
  CHECK(t.at(1, 1) == doctest::Approx(1.0));

  // 90 degrees about z: w = cos(45deg), z = sin(45deg).
  const double c = std::sqrt(0.5);
  const hrkin::HomTransform r = hrkin::parse_target_pose(
      "0,0,0, " + std::to_string(c) + ",0,0," + std::to_string(c));
  CHECK(std::abs(r.at(0, 0)) < 1e-12);
  CHECK(std::abs(r.at(0, 1)) == doctest::Approx(1.0));
  CHECK(hrkin::is_rigid(r));

  CHECK_THROWS_AS(hrkin::parse_target_pose("0,0,0, 2,0,0,0"), ConfigError);
}

TEST_CASE("parse_target_pose from a file and malformed input") {
  const TempFile f("0,0,1.5, 1,0,0,0\n");
  const hrkin::HomTransform t = hrkin::parse_target_pose(f.path());
  CHECK(t.translation().z == 1.5);

  CHECK_THROWS_AS(hrkin::parse_target_pose("1,2"), ConfigError);
  CHECK_THROWS_AS(hrkin::parse_target_pose("definitely not a pose"),
                  ConfigError);
  CHECK_THROWS_AS(hrkin::parse_target_pose("1,2,3,4,5,6,7,8"), ConfigError);
}
