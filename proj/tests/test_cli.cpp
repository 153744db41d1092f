#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sharedzero/quotient_analysis.hpp"
#include "sharedzero/run.hpp"

using namespace sharedzero;

namespace {

struct Outcome {
  int code{0};
  std::string out;
  std::string log;
};

Outcome run_with(const std::string& command, const std::vector<std::string>& settings) {
  RunConfig cfg;
  cfg.command = parse_command(command);
  for (const auto& s : settings) {
    const auto eq = s.find('=');
    apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  std::ostringstream out, log;
  Outcome o;
  o.code = run(cfg, out, log);
  o.out = out.str();
  o.log = log.str();
  return o;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sharedzero_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, sep);) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("commands parse and print back") {
  for (const char* name : {"verify-pde", "verify-deltaF", "verify-qform", "verify-bochner",
                           "certify-bound", "sector-poisson", "counterexample", "suite"})
    CHECK(command_name(parse_command(name)) == name);
  CHECK_THROWS_AS(parse_command("verify"), ConfigError);
  CHECK_THROWS_AS(parse_command(""), ConfigError);
}

TEST_CASE("settings address the run and both fields") {
  RunConfig cfg;
  apply_setting(cfg, "family", "fefferman");
  apply_setting(cfg, "epsilon", "0.05");
  apply_setting(cfg, "v.family", "normal_form");
  apply_setting(cfg, "k", "2");
  apply_setting(cfg, "u.alpha", "0.5");
  apply_setting(cfg, "coeffs", "0, 1, 0.1:0.05");
  apply_setting(cfg, "grid.n", "40");
  apply_setting(cfg, "grid.radius", "1.2");
  apply_setting(cfg, "grid.band", "1e-3");
  apply_setting(cfg, "seed", "7");
  apply_setting(cfg, "format", "csv");
  apply_setting(cfg, "timing", "true");
  apply_setting(cfg, "command", "verify-pde");
  CHECK(cfg.u.family == "fefferman");
  CHECK(cfg.u.epsilon == 0.05);
  CHECK(cfg.u.alpha == 0.5);
  CHECK(cfg.v.family == "normal_form");
  CHECK(cfg.k == 2);
  CHECK(cfg.u.k == 2);
  CHECK(cfg.v.k == 2);
  REQUIRE(cfg.u.coeffs.size() == 3);
  CHECK(cfg.u.coeffs[2] == Complex(0.1, 0.05));
  CHECK(cfg.grid_n == 40);
  CHECK(cfg.grid_radius == 1.2);
  CHECK(cfg.band == 1e-3);
  CHECK(cfg.seed == 7u);
  CHECK(cfg.format == OutputFormat::csv);
  CHECK(cfg.timing);
  CHECK(cfg.command == Command::verify_pde);
}

TEST_CASE("bad settings are config errors") {
  RunConfig cfg;
  CHECK_THROWS_AS(apply_setting(cfg, "nonsense", "1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "u.nonsense", "1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "family", "bessel"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "k", "two"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "k", "2.5"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "alpha", "nan"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "alpha", "1x"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "tol", "0"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "tol", "-1e-9"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "step", "0"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "seed", "-3"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "format", "xml"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "timing", "yes"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "coeffs", " , "), ConfigError);
}

TEST_CASE("config text skips comments and later lines win") {
  RunConfig cfg;
  apply_config_text(cfg,
                    "# header comment\n"
                    "\n"
                    "k = 3   # trailing comment\n"
                    "family = weiss\n"
                    "alpha = 0.25\n"
                    "k = 4\n");
  CHECK(cfg.k == 4);
  CHECK(cfg.u.family == "weiss");
  CHECK(cfg.u.alpha == 0.25);
  CHECK_THROWS_AS(apply_config_text(cfg, "k 3\n"), ConfigError);

  const auto path = scratch("run.cfg");
  std::ofstream(path) << "command = verify-qform\nk = 2\ncount = 50\n";
  RunConfig from_file;
  apply_config_file(from_file, path.string());
  apply_setting(from_file, "k", "5");
  CHECK(from_file.command == Command::verify_qform);
  CHECK(from_file.k == 5);
  CHECK(from_file.count == 50);
  CHECK_THROWS_AS(apply_config_file(from_file, (scratch("missing.cfg")).string()), ConfigError);
}

TEST_CASE("validation rejects out-of-range runs") {
  const auto invalid = [](auto edit) {
    RunConfig cfg;
    edit(cfg);
    return cfg;
  };
  CHECK_NOTHROW(validate(RunConfig{}));
  CHECK_THROWS_AS(validate(invalid([](RunConfig& c) { c.k = 0; })), ConfigError);
  CHECK_THROWS_AS(validate(invalid([](RunConfig& c) { c.grid_n = 1; })), ConfigError);
  CHECK_THROWS_AS(validate(invalid([](RunConfig& c) { c.grid_radius = 2.5; })), ConfigError);
  CHECK_THROWS_AS(validate(invalid([](RunConfig& c) { c.tol = -1; })), ConfigError);
  CHECK_THROWS_AS(validate(invalid([](RunConfig& c) { c.step = -1; })), ConfigError);
}

TEST_CASE("boundary samples read one per line") {
  const auto path = scratch("samples.txt");
  std::ofstream(path) << "# arc samples\n0\n0.5  # mid\n\n1.0\n";
  CHECK(read_samples(path.string()) == std::vector<double>{0.0, 0.5, 1.0});
  std::ofstream(path) << "0\nabc\n";
  CHECK_THROWS_AS(read_samples(path.string()), ConfigError);
  CHECK_THROWS_AS(read_samples(scratch("absent.txt").string()), ConfigError);
}

TEST_CASE("verify-qform k=3 seed=7 passes with a tiny residual") {
  const auto o = run_with("verify-qform", {"k=3", "seed=7", "format=csv"});
  CHECK(o.code == kExitPass);
  const auto rows = lines_of(o.out);
  REQUIRE(rows.size() == 2);
  const auto cols = split(rows[1], ',');
  REQUIRE(cols.size() == 7);
  CHECK(cols[0] == "qform_decomposition");
  CHECK(std::stod(cols[2]) < 1e-10);
  CHECK(cols[4] == "pass");
}

TEST_CASE("counterexample t=1.5 confirms the blow-up") {
  const auto o = run_with("counterexample", {"t=1.5", "eps=0.1"});
  CHECK(o.code == kExitPass);
  CHECK(o.log.find("kenig_regularity t=1.5: blow-up confirmed") != std::string::npos);
  CHECK(o.log.find("green_quotient_regularity t=1.5: blow-up confirmed") != std::string::npos);
  const auto csv = run_with("counterexample", {"t=1.5", "eps=0.1", "format=csv"});
  const auto cols = split(lines_of(csv.out)[1], ',');
  CHECK(std::abs(std::stod(cols[2]) + 0.25) <= 0.05);

  const auto bounded = run_with("counterexample", {"t=2.5", "eps=0.05"});
  CHECK(bounded.code == kExitPass);
  CHECK(bounded.log.find("bounded confirmed") != std::string::npos);
}

TEST_CASE("certify-bound for weiss against v1 stays below 8 sqrt(A)") {
  const auto o = run_with("certify-bound", {"k=1", "family=weiss", "alpha=1", "format=csv"});
  CHECK(o.code == kExitPass);
  const auto cols = split(lines_of(o.out)[1], ',');
  const double bound = 8 * std::sqrt(cutoff_build().A);
  CHECK(std::stod(cols[3]) == doctest::Approx(bound));
  CHECK(std::stod(cols[2]) <= bound);
}

TEST_CASE("exit codes follow the contract") {
  CHECK(run_with("verify-qform", {"k=2", "count=200"}).code == kExitPass);
  // An impossible tolerance turns the verdict into a failure.
  const auto fail = run_with("verify-qform", {"k=3", "count=200", "tol=1e-40"});
  CHECK(fail.code == kExitFail);
  CHECK(fail.log.find("FAIL qform_decomposition") != std::string::npos);
  CHECK(fail.out.find("\"verdict\": \"fail\"") != std::string::npos);

  CHECK(run_with("verify-pde", {"k=0"}).code == kExitConfig);
  CHECK(run_with("verify-pde", {"family=im_exp_of", "coeffs=0,1,3", "grid.n=20"}).code == kExitConfig);
  CHECK(run_with("certify-bound", {"v.family=weiss", "grid.n=20"}).code == kExitConfig);
  CHECK(run_with("sector-poisson", {"data=" + scratch("absent.txt").string()}).code == kExitConfig);

  // Samples near the largest double overflow the quadrature.
  const auto huge = scratch("huge.txt");
  {
    std::ofstream f(huge);
    for (int i = 0; i < 33; ++i) f << "1.79e308\n";
  }
  const auto breakdown = run_with("sector-poisson", {"k=1", "grid.n=10", "data=" + huge.string()});
  CHECK(breakdown.code == kExitBreakdown);
  CHECK(breakdown.log.find("numerical breakdown") != std::string::npos);
  CHECK(breakdown.log.find(" at (") != std::string::npos);
}

TEST_CASE("csv schema has one row per check") {
  const auto o = run_with("counterexample", {"t=2.5", "eps=0.05", "format=csv"});
  const auto rows = lines_of(o.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "check,k_or_t,sup_or_min,bound,verdict,x_ext,y_ext");
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto cols = split(rows[i], ',');
    REQUIRE(cols.size() == 7);
    CHECK(cols[1] == "2.5");
    CHECK((cols[4] == "pass" || cols[4] == "fail"));
  }
}

TEST_CASE("identical configs give byte-identical reports") {
  for (const auto& fmt : {"format=json", "format=csv"}) {
    const std::vector<std::string> a = {"k=4", "seed=11", "count=500", fmt};
    CHECK(run_with("verify-qform", a).out == run_with("verify-qform", a).out);
    const std::vector<std::string> b = {"k=2", "family=fefferman", "epsilon=0.05", "grid.n=30", fmt};
    CHECK(run_with("verify-pde", b).out == run_with("verify-pde", b).out);
    const std::vector<std::string> c = {"k=2", "grid.n=8", fmt};
    CHECK(run_with("sector-poisson", c).out == run_with("sector-poisson", c).out);
  }
}

TEST_CASE("timing is reported only on request") {
  const auto plain = run_with("verify-qform", {"k=1", "count=100"});
  const auto timed = run_with("verify-qform", {"k=1", "count=100", "timing=true"});
  CHECK(plain.out.find("wall_time") == std::string::npos);
  CHECK(timed.out.find("wall_time") != std::string::npos);
}

TEST_CASE("reports go to the output file when one is set") {
  const auto path = scratch("report.csv");
  std::filesystem::remove(path);
  const auto o = run_with("verify-qform", {"k=2", "count=100", "format=csv", "output=" + path.string()});
  CHECK(o.code == kExitPass);
  CHECK(o.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "check,k_or_t,sup_or_min,bound,verdict,x_ext,y_ext");
}

TEST_CASE("seed changes samples but not verdicts") {
  const auto a = run_with("verify-qform", {"k=5", "seed=1", "count=500", "format=csv"});
  const auto b = run_with("verify-qform", {"k=5", "seed=2", "count=500", "format=csv"});
  CHECK(a.code == b.code);
  CHECK(a.out != b.out);
  CHECK(split(lines_of(a.out)[1], ',')[4] == split(lines_of(b.out)[1], ',')[4]);
}

TEST_CASE("remaining single-check commands run and pass") {
  CHECK(run_with("verify-pde", {"family=weiss", "alpha=1", "k=1", "grid.n=40"}).code == kExitPass);
  CHECK(run_with("verify-deltaF", {"family=weiss", "alpha=1", "k=1", "grid.n=20"}).code == kExitPass);
  CHECK(run_with("verify-bochner", {"family=weiss", "alpha=1", "k=1", "grid.n=20"}).code == kExitPass);
  CHECK(run_with("sector-poisson", {"k=3", "grid.n=10"}).code == kExitPass);
  CHECK(run_with("verify-deltaF", {"family=sector_reflected", "k=2", "grid.n=20"}).code == kExitPass);
}
