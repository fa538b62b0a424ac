#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hcsplit/errors.hpp"
#include "hcsplit/experiment.hpp"
#include "hcsplit/opnorm.hpp"

using namespace hcsplit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hcsplit_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("list parsing") {
  CHECK(parse_int_list("2..5") == std::vector<int>{2, 3, 4, 5});
  CHECK(parse_int_list("1,3..5") == std::vector<int>{1, 3, 4, 5});
  CHECK_THROWS_AS(parse_int_list("5..2"), UsageError);
  CHECK_THROWS_AS(parse_int_list("x"), UsageError);
  CHECK(parse_double_list("1e-1, 1e-2") == std::vector<double>{1e-1, 1e-2});
  CHECK(epsilon_label(1e-2) == "0.01");
  CHECK(epsilon_label(1e-4) == "0.0001");
  CHECK(epsilon_label(1.0) == "1");
}

TEST_CASE("settings and config files") {
  ExperimentConfig c;
  apply_setting(c, "p=1.25");
  apply_setting(c, "n = 4");
  apply_setting(c, "epsilons=1,0.1");
  CHECK(c.p == 1.25);
  CHECK(c.n == 4);
  CHECK(c.epsilons == std::vector<double>{1.0, 0.1});
  CHECK_THROWS_AS(apply_setting(c, "bogus=1"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "n=three"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "no_equals"), UsageError);

  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "run.cfg");
    out << "# comment\np = 1.75\nn_range = 2..4\n\nsubspace = walsh:1,3\n";
  }
  const auto loaded = load_config((dir / "run.cfg").string());
  CHECK(loaded.p == 1.75);
  CHECK(loaded.n_range == std::vector<int>{2, 3, 4});
  CHECK(loaded.subspace == "walsh:1,3");
  CHECK_THROWS_AS(load_config((dir / "missing.cfg").string()), UsageError);
  std::ostringstream written;
  loaded.write(written);
  CHECK(written.str().find("p = 1.75") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.resolved_s() == doctest::Approx(hypercontractive_threshold(1.5)));
  ExperimentConfig big = c;
  big.n = 11;
  CHECK_THROWS_AS(big.validate(), UsageError);
  ExperimentConfig bad_t = c;
  bad_t.t = 10.0;
  CHECK_THROWS_AS(bad_t.validate(), UsageError);
  ExperimentConfig bad_p = c;
  bad_p.p = 2.0;
  CHECK_THROWS_AS(bad_p.validate(), UsageError);
  ExperimentConfig bad_eps = c;
  bad_eps.epsilons = {0.1, 0.0};
  CHECK_THROWS_AS(bad_eps.validate(), UsageError);
}

TEST_CASE("split experiment writes the documented files") {
  ExperimentConfig c;
  c.n = 2;
  c.epsilons = {1e-1, 1e-2};
  c.output_dir = scratch("split").string();
  const auto result = run_split_experiment(c);
  CHECK(result.exit_code == kExitOk);
  const fs::path dir = c.output_dir;
  const std::string csv = slurp(dir / "results.csv");
  const std::string header =
      "epsilon,theta,recon_error,norm_T0_pp,C0,norm_T1_p2,C1,exponent,slope_fit,bound_T0_ok,bound_T1_ok\n";
  CHECK(csv.rfind(header, 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(fs::exists(dir / "certificate_0.1.txt"));
  CHECK(fs::exists(dir / "certificate_0.01.txt"));
  CHECK(fs::exists(dir / "nodes.txt"));
  CHECK(slurp(dir / "certificate_0.01.txt").find("bound_T1_ok = true") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("usage errors write nothing") {
  ExperimentConfig c;
  c.t = 5.0;
  c.output_dir = scratch("usage").string();
  const auto result = run_split_experiment(c);
  CHECK(result.exit_code == kExitUsage);
  CHECK_FALSE(fs::exists(c.output_dir));
}

TEST_CASE("numerical failures leave diagnostics") {
  ExperimentConfig c;
  c.n = 1;
  c.s = 1.0;
  c.a = 0.05;
  c.b = 0.05;
  c.t = 0.1;
  c.nodes_per_edge = 16;
  c.output_dir = scratch("numerical").string();
  const auto result = run_split_experiment(c);
  CHECK(result.exit_code == kExitNumerical);
  CHECK(fs::exists(fs::path(c.output_dir) / "diagnostics.txt"));
  fs::remove_all(c.output_dir);
}

TEST_CASE("corollary demo on small cubes") {
  ExperimentConfig c;
  c.n_range = {2, 3, 4};
  c.output_dir = scratch("corollary").string();
  const auto result = run_corollary_demo(c);
  CHECK(result.exit_code == kExitOk);
  CHECK(slurp(fs::path(c.output_dir) / "corollary_summary.txt").find("ok = true") != std::string::npos);
  fs::remove_all(c.output_dir);
}
