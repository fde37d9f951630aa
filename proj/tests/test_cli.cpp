// End-to-end tests that drive the built binary through a shell, checking the
// documented exit codes and output shapes.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace {

std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs `binary + args`, capturing stdout (stderr goes to our stderr).
RunResult run_cli(const std::string& args) {
  REQUIRE(!g_binary.empty());
  const std::string cmd = g_binary + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    res.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path =
      (std::filesystem::temp_directory_path() /
       ("hrkin_cli_" + std::to_string(::getpid()) + "_" + name))
          .string();
  std::ofstream f(path);
  f << content;
  return path;
}

int count_lines_with(const std::string& text, const std::string& needle) {
  int count = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find(needle) != std::string::npos) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("fk prints both poses and exits 0") {
  const std::string cfg = write_temp(
      "fk.cfg", "num_links: 4\nlink_length: 0.5\nH: 1,0,0,1\n");
  const std::string q = write_temp("fk.q", "0.1 0.3 0 0.3 0 0.3 -0.2 0.1\n");

  const RunResult r =
      run_cli("fk --config " + cfg + " " + q + " 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(count_lines_with(r.out, "classic:") == 1);
  CHECK(count_lines_with(r.out, "dynamic:") == 1);
  CHECK(count_lines_with(r.out, "max_abs_difference=") == 1);

  // 4 matrix rows per method, 4 columns each.
  std::istringstream in(r.out);
  std::string line;
  int matrix_rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    double v;
    int cols = 0;
    while (row >> v) ++cols;
    if (cols == 4) ++matrix_rows;
  }
  CHECK(matrix_rows == 8);
}

TEST_CASE("fk writes the report to --out as well") {
  const std::string cfg =
      write_temp("fko.cfg", "num_links: 2\nH: 1,1\n");
  const std::string q = write_temp("fko.q", "0 0 0 0\n");
  const std::string out = write_temp("fko.out", "");

  const RunResult r = run_cli("fk --config " + cfg + " " + q + " --out " +
                              out + " 2>/dev/null");
  CHECK(r.exit_code == 0);
  std::ifstream f(out);
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str() == r.out);
}

TEST_CASE("fk rejects an inconsistent configuration with exit 3") {
  const std::string cfg =
      write_temp("bad.cfg", "num_links: 3\nH: 1,0,0\n");
  // Nonzero twist on a Body link cannot be projected.
  const std::string q = write_temp("bad.q", "0 0.2 0.5 0.2 0 0.2\n");
  const RunResult r =
      run_cli("fk --config " + cfg + " " + q + " 2>/dev/null");
  CHECK(r.exit_code == 3);
}

TEST_CASE("ik converges on a reachable target (exit 0)") {
  const std::string cfg =
      write_temp("ik.cfg", "num_links: 6\nH: 1,1,1,1,1,1\n");
  const RunResult r = run_cli("ik --config " + cfg +
                              " 1.0,1.0,3.0,1,0,0,0 --position-only"
                              " 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(count_lines_with(r.out, "status=Converged") == 1);
  CHECK(count_lines_with(r.out, "iterations=") == 1);
  CHECK(count_lines_with(r.out, "final_position_error=") == 1);
}

TEST_CASE("ik reports non-convergence with exit 2") {
  const std::string cfg =
      write_temp("ik2.cfg", "num_links: 3\nH: 1,1,1\n");
  // Far outside the 3-link reach.
  const RunResult r = run_cli("ik --config " + cfg +
                              " 0,0,30,1,0,0,0 --position-only 2>/dev/null");
  CHECK(r.exit_code == 2);
  CHECK(count_lines_with(r.out, "status=Converged") == 0);
}

TEST_CASE("ik writes a trajectory CSV") {
  const std::string cfg =
      write_temp("ik3.cfg", "num_links: 4\nH: 1,1,1,1\n");
  const std::string traj = write_temp("ik3.traj", "");
  const RunResult r =
      run_cli("ik --config " + cfg + " 0.5,0.5,2.5,1,0,0,0 --position-only"
              " --trajectory-out " + traj + " 2>/dev/null");
  CHECK(r.exit_code == 0);
  std::ifstream f(traj);
  std::string header;
  REQUIRE(std::getline(f, header));
  CHECK(header.rfind("iteration,q0,q1", 0) == 0);
  std::string first;
  REQUIRE(std::getline(f, first));
  CHECK(first.rfind("0,", 0) == 0);
}

TEST_CASE("damage resolves around frozen links (exit 0) and checks them") {
  const std::string cfg = write_temp(
      "dmg.cfg", "num_links: 8\nH: 1,0,0,0,0,0,0,0\n");
  const RunResult r = run_cli(
      "damage --config " + cfg +
      " --links 3,5 2.0,0.5,4.0,1,0,0,0 --position-only 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(count_lines_with(r.out, "damaged_links=3,5") == 1);
  CHECK(count_lines_with(r.out, "frozen_check=ok") == 1);
}

TEST_CASE("damaging every link is an input error (exit 3)") {
  const std::string cfg = write_temp("dmg2.cfg", "num_links: 2\nH: 1,1\n");
  const RunResult r = run_cli("damage --config " + cfg +
                              " --links 1,2 0,0,1,1,0,0,0 2>/dev/null");
  CHECK(r.exit_code == 3);
}

TEST_CASE("bad usage exits 3") {
  CHECK(run_cli("definitely-not-a-subcommand 2>/dev/null").exit_code == 3);
  CHECK(run_cli("fk 2>/dev/null").exit_code == 3);  // missing required args
  const std::string cfg = write_temp("u.cfg", "num_links: 2\nH: 1,1\n");
  const std::string q = write_temp("u.q", "0 0 0 0\n");
  CHECK(run_cli("fk --config " + cfg + " " + q +
                " --backend warpdrive 2>/dev/null")
            .exit_code == 3);
  CHECK(run_cli("ik --config /nope.cfg 0,0,1,1,0,0,0 2>/dev/null").exit_code ==
        3);
}

TEST_CASE("--help exits 0") {
  CHECK(run_cli("--help 2>/dev/null").exit_code == 0);
  CHECK(run_cli("bench --help 2>/dev/null").exit_code == 0);
}

TEST_CASE("bench emits the CSV schema") {
  const std::string out = write_temp("bench.csv", "");
  const RunResult r = run_cli(
      "bench --links 16 --repeats 2 --naive --out " + out + " 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(count_lines_with(r.out, "correctness_gate=ok") == 1);
  CHECK(count_lines_with(r.out, "dynamic_loglog_slope=") == 1);

  std::ifstream f(out);
  std::string header;
  REQUIRE(std::getline(f, header));
  CHECK(header ==
        "method,state,num_links,active_dofs,control_vars,t_fk_s,t_jac_s,"
        "t_dls_s,t_step_s,repeats,skipped");
  int naive_rows = 0, dynamic_rows = 0;
  std::string line;
  while (std::getline(f, line)) {
    if (line.rfind("naive,", 0) == 0) ++naive_rows;
    if (line.rfind("dynamic,", 0) == 0) ++dynamic_rows;
  }
  CHECK(naive_rows == 1);
  CHECK(dynamic_rows == 5);  // k = 16,8,4,2,1
}

TEST_CASE("bench without --out streams CSV to stdout") {
  const RunResult r =
      run_cli("bench --links 8 --repeats 2 --states 0 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("method,state,", 0) == 0);
}

TEST_CASE("backend selection is accepted") {
  const std::string cfg = write_temp("b.cfg", "num_links: 2\nH: 1,1\n");
  const std::string q = write_temp("b.q", "0.1 0.2 0.3 0.4\n");
  const RunResult scalar = run_cli("fk --config " + cfg + " " + q +
                                   " --backend scalar 2>/dev/null");
  CHECK(scalar.exit_code == 0);
  const RunResult native = run_cli("fk --config " + cfg + " " + q +
                                   " 2>/dev/null");
  CHECK(native.exit_code == 0);
  // Backends are bit-identical, so the printed poses agree character for
  // character.
  CHECK(scalar.out == native.out);
}

int main(int argc, char** argv) {
  std::vector<char*> pass;
  for (int i = 0; i < argc; ++i) {
    if (std::string(argv[i]) == "--binary" && i + 1 < argc) {
      g_binary = argv[++i];
      continue;
    }
    pass.push_back(argv[i]);
  }
  doctest::Context ctx(static_cast<int>(pass.size()), pass.data());
  return ctx.run();
}
