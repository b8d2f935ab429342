#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "spreadlab/cli/config.hpp"
#include "spreadlab/cli/csv.hpp"
#include "spreadlab/cli/experiments.hpp"
#include "spreadlab/cli/runner.hpp"

using namespace spreadlab::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("spreadlab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const TempDir& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir.path / name;
  std::ofstream(p) << text;
  return p;
}

RunOptions out_to(const fs::path& p) {
  RunOptions o;
  o.out = p;
  return o;
}

const std::string kLeakage =
    "experiment = leakage\n"
    "[grid]\nn_points = 1024\nlength = 32\n"
    "[state]\nkind = bump\n"
    "[physics]\nmass = 1\nt = 1\nr0 = 2\nn_times = 3\n";

}  // namespace

TEST_CASE("config parsing and typed lookups") {
  Config cfg = Config::parse("experiment = leakage\n[physics]\nmass = 1.5\nn = 7\nok = yes\nlist = a, b ,c\n");
  CHECK(cfg.text("experiment") == "leakage");
  CHECK(cfg.real("physics.mass") == 1.5);
  CHECK(cfg.integer("physics.n") == 7);
  CHECK(cfg.flag("physics.ok", false));
  CHECK(cfg.list("physics.list") == std::vector<std::string>{"a", "b", "c"});
  CHECK(cfg.real("physics.t", 0.25) == 0.25);
  CHECK_NOTHROW(cfg.finish());

  const std::string ini = cfg.to_ini();
  CHECK(ini.find("t = 0.25") != std::string::npos);
  Config again = Config::parse(ini);
  CHECK(again.real("physics.mass") == 1.5);

  Config bad = Config::parse("[physics]\nmass = heavy\nextra = 1\n");
  CHECK_THROWS_WITH_AS(bad.real("physics.mass"), doctest::Contains("physics.mass"), ConfigError);
  CHECK_THROWS_WITH_AS(bad.real("physics.t"), doctest::Contains("missing required key"), ConfigError);
  CHECK_THROWS_WITH_AS(bad.finish(), doctest::Contains("unknown key"), ConfigError);
  CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("csv layout") {
  CsvTable t;
  t.name = "curve";
  t.metadata = {{"mass", "1"}};
  t.columns = {{"t", "1/m"}, {"p", "1"}};
  t.add_row({0.5, 0.25});
  std::ostringstream out;
  write_csv(out, t);
  CHECK(out.str() == "# mass: 1\n# units: 1/m,1\nt,p\n0.5,0.25\n");
  t.add_row({1.0, std::nan("")});
  std::ostringstream bad;
  CHECK_THROWS_AS(write_csv(bad, t), spreadlab::Error);
}

TEST_CASE("every experiment is listed") {
  const auto& names = experiment_names();
  for (const char* n : {"spreading", "leakage", "dirac-control", "positive-energy", "dichotomy",
                        "translation-control", "fermi"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
}

TEST_CASE("leakage run writes csv, summary and resolved config") {
  TempDir tmp;
  const fs::path cfg = write_config(tmp, "leak.cfg", kLeakage);
  std::ostringstream log;
  REQUIRE(run(cfg, out_to(tmp.path / "a"), log) == kExitOk);
  const std::string csv = slurp(tmp.path / "a" / "leakage.csv");
  CHECK(csv.find("t,lhs,rhs,leakage") != std::string::npos);
  const std::string summary = slurp(tmp.path / "a" / "summary");
  CHECK(summary.find("leakage_positive = true") != std::string::npos);
  CHECK(summary.find("config.physics.mass = 1") != std::string::npos);

  SUBCASE("reruns are byte-identical") {
    REQUIRE(run(cfg, out_to(tmp.path / "b"), log) == kExitOk);
    CHECK(slurp(tmp.path / "b" / "leakage.csv") == csv);
  }
  SUBCASE("resolved.cfg reproduces the run") {
    REQUIRE(run(tmp.path / "a" / "resolved.cfg", out_to(tmp.path / "c"), log) == kExitOk);
    CHECK(slurp(tmp.path / "c" / "leakage.csv") == csv);
  }
}

TEST_CASE("dirac control reports the floor") {
  TempDir tmp;
  const fs::path cfg = write_config(tmp, "ctl.cfg", "experiment = dirac-control\n[physics]\nmass = 1\n");
  std::ostringstream log;
  REQUIRE(run(cfg, out_to(tmp.path / "out"), log) == kExitOk);
  CHECK(slurp(tmp.path / "out" / "summary").find("floor < 1e-12 = true") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  std::ostringstream log;
  SUBCASE("missing mass") {
    const fs::path cfg = write_config(tmp, "m.cfg", "experiment = leakage\n[physics]\nt = 1\n");
    CHECK(run(cfg, out_to(tmp.path / "o"), log) == kExitConfig);
    CHECK(log.str().find("physics.mass") != std::string::npos);
  }
  SUBCASE("unknown key") {
    const fs::path cfg = write_config(tmp, "u.cfg", kLeakage + "typo = 3\n");
    CHECK(run(cfg, out_to(tmp.path / "o"), log) == kExitConfig);
    CHECK(log.str().find("typo") != std::string::npos);
  }
  SUBCASE("unknown experiment") {
    const fs::path cfg = write_config(tmp, "x.cfg", "experiment = nothing\n");
    CHECK(run(cfg, out_to(tmp.path / "o"), log) == kExitConfig);
  }
  SUBCASE("missing file") {
    CHECK(run(tmp.path / "absent.cfg", out_to(tmp.path / "o"), log) == kExitConfig);
  }
  SUBCASE("guard violation") {
    const fs::path cfg = write_config(tmp, "g.cfg",
                                      "experiment = leakage\n[physics]\nmass = 1\nt = 20\nr0 = 1\n");
    CHECK(run(cfg, out_to(tmp.path / "o"), log) == kExitGuard);
  }
  SUBCASE("empty sweep") {
    const fs::path cfg = write_config(tmp, "s.cfg", kLeakage + "[sweep]\nparameter = physics.t\nvalues =\n");
    CHECK(sweep(cfg, out_to(tmp.path / "o"), log) == kExitConfig);
  }
}

TEST_CASE("output directory precedence") {
  TempDir tmp;
  std::ostringstream log;
  const fs::path cfg =
      write_config(tmp, "d.cfg", kLeakage + "[output]\ndir = " + (tmp.path / "from_cfg").string() + "\n");
  REQUIRE(run(cfg, RunOptions{}, log) == kExitOk);
  CHECK(fs::exists(tmp.path / "from_cfg" / "summary"));
  REQUIRE(run(cfg, out_to(tmp.path / "from_flag"), log) == kExitOk);
  CHECK(fs::exists(tmp.path / "from_flag" / "summary"));
}

TEST_CASE("leakage sweep merges runs") {
  TempDir tmp;
  const fs::path cfg =
      write_config(tmp, "s.cfg", kLeakage + "[sweep]\nparameter = physics.t\nvalues = 0.25, 0.5, 1\n");
  std::ostringstream log;
  RunOptions opts = out_to(tmp.path / "sw");
  opts.threads = 3;
  REQUIRE(sweep(cfg, opts, log) == kExitOk);
  const std::string csv = slurp(tmp.path / "sw" / "leakage.csv");
  CHECK(csv.find("sweep_value,t,lhs,rhs,leakage") != std::string::npos);
  const std::string summary = slurp(tmp.path / "sw" / "summary");
  CHECK(summary.find("leakage_monotonic = true") != std::string::npos);
  for (int i = 0; i < 3; ++i) CHECK(fs::exists(tmp.path / "sw" / "runs" / std::to_string(i) / "leakage.csv"));
  CHECK(slurp(tmp.path / "sw" / "runs" / "0" / "resolved.cfg").find("sweep") == std::string::npos);
}

TEST_CASE("seed sweep gives one verdict per seed") {
  TempDir tmp;
  std::ostringstream log;
  RunOptions opts = out_to(tmp.path / "seeds");
  opts.threads = 4;
  REQUIRE(sweep(fs::path(SPREADLAB_CONFIG_DIR) / "dichotomy-seeds.cfg", opts, log) == kExitOk);
  const std::string summary = slurp(tmp.path / "seeds" / "summary");
  int verdicts = 0;
  for (std::size_t pos = 0; (pos = summary.find(".dichotomy_holds = true", pos)) != std::string::npos; ++pos) {
    ++verdicts;
  }
  CHECK(verdicts == 10);
}
