#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

using namespace henon;
using namespace henon::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("henon_cli_" + std::to_string(getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Exec {
  int status;
  std::string err;
};

// Runs the henon executable; stderr is captured to a file.
Exec henon_cli(const std::string& args, const fs::path& dir) {
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + HENON_CLI + "\" " + args + " > /dev/null 2> \"" + err.string() + "\"";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(err)};
}

double footer(const std::string& csv, const std::string& key) {
  std::istringstream in(csv);
  std::string line;
  const std::string prefix = "# " + key + ",";
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return std::stod(line.substr(prefix.size()));
  return NAN;
}

}  // namespace

TEST(Config, DefaultsExistForEveryKey) {
  RunConfig c;
  for (const auto& k : config_keys()) EXPECT_TRUE(c.has(std::string(k.key)));
  EXPECT_EQ(c.integer("threads"), 0);
  EXPECT_EQ(c.map().degree(), 2);
}

TEST(Config, ParsesKeyValueLines) {
  RunConfig c;
  apply_config_text(c, "# comment\n  width = 64  \n\ncenter = -0.5,0.25 # trailing\nmap = factor a=2,0 p=0,0,0,0,1,0\n");
  EXPECT_EQ(c.integer("width"), 64);
  EXPECT_EQ(c.complex("center"), cd(-0.5, 0.25));
  EXPECT_EQ(c.map().jacobian_det(), cd(-2.0, 0.0));
}

TEST(Config, UnknownKeyIsNamed) {
  RunConfig c;
  try {
    apply_config_text(c, "folor = red\n");
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "folor");
    EXPECT_NE(std::string(e.what()).find("folor"), std::string::npos);
  }
  EXPECT_THROW(apply_config_text(c, "width 64\n"), ConfigError);
}

TEST(Config, BadValuesNameTheirKey) {
  RunConfig c;
  c.set("width", "12x");
  c.set("center", "1,2,3");
  c.set("ppm", "maybe");
  try {
    c.integer("width");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "width");
  }
  EXPECT_THROW(c.complex("center"), ConfigError);
  EXPECT_THROW(c.flag("ppm"), ConfigError);
}

TEST(Output, NumbersKeepSeventeenDigits) {
  EXPECT_EQ(csv_number(0.1), "1.0000000000000001e-01");
  EXPECT_EQ(std::stod(csv_number(kPi)), kPi);
  Csv csv({"a", "b"});
  csv << 1 << 0.5;
  csv.end_row();
  csv.footer("total", 2.0);
  EXPECT_EQ(csv.str(), "a,b\n1,5.0000000000000000e-01\n# total,2.0000000000000000e+00\n");
}

TEST(Output, LogScale) {
  EXPECT_EQ(log_scale(0.0, 2.0), 0);
  EXPECT_EQ(log_scale(2.0, 2.0), 255);
  EXPECT_EQ(log_scale(5.0, 2.0), 255);
  EXPECT_EQ(log_scale(1.0, 3.0), static_cast<int>(std::lround(255.0 * std::log(2.0) / std::log(4.0))));
  EXPECT_EQ(log_scale(1.0, 0.0), 0);
}

TEST(Output, NetpbmHeaders) {
  EXPECT_EQ(pgm(2, 1, {0, 255}), std::string("P5\n2 1\n255\n\x00\xff", 13));
  EXPECT_EQ(ppm(1, 1, {1, 2, 3}), std::string("P6\n1 1\n255\n\x01\x02\x03", 14));
  EXPECT_THROW(pgm(2, 2, {0}), std::invalid_argument);
}

TEST(Commands, ConfigErrorsMapToExitOne) {
  RunConfig c;
  c.set("potential", "nope");
  std::ostringstream log, err;
  EXPECT_EQ(run("slice", c, log, err), kExitConfig);
  EXPECT_NE(err.str().find("potential"), std::string::npos);
  EXPECT_EQ(run("render-everything", RunConfig(), log, err), kExitConfig);
}

TEST(Cli, RenderJuliaWritesExactPgm) {
  const fs::path dir = scratch("julia");
  ASSERT_EQ(henon_cli("render-julia --out " + (dir / "out").string(), dir).status, 0);
  const std::string img = slurp(dir / "out" / "julia.pgm");
  const std::string header = "P5\n512 512\n255\n";
  ASSERT_EQ(img.size(), header.size() + 262144u);
  EXPECT_EQ(img.substr(0, header.size()), header);
  const std::string csv = slurp(dir / "out" / "julia.csv");
  EXPECT_EQ(csv.rfind("i,j,re_t,im_t,g_plus,pixel\n", 0), 0u);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Cli, UnknownConfigKeyExitsWithOne) {
  const fs::path dir = scratch("folor");
  std::ofstream(dir / "run.cfg") << "folor = red\n";
  const Exec e = henon_cli("slice --config " + (dir / "run.cfg").string(), dir);
  EXPECT_EQ(e.status, 1);
  EXPECT_NE(e.err.find("folor"), std::string::npos);
  const Exec flag = henon_cli("slice --folor red", dir);
  EXPECT_EQ(flag.status, 1);
  EXPECT_NE(flag.err.find("folor"), std::string::npos);
}

TEST(Cli, FlagsWinOverTheFile) {
  const fs::path dir = scratch("flags");
  std::ofstream(dir / "run.cfg") << "width = 8\nheight = 4\nout = " << (dir / "out").string() << "\n";
  ASSERT_EQ(henon_cli("render-julia --config " + (dir / "run.cfg").string() + " --width 16", dir).status, 0);
  EXPECT_EQ(slurp(dir / "out" / "julia.pgm").substr(0, 12), "P5\n16 4\n255\n");
}

TEST(Cli, NumericalFailureExitsWithTwo) {
  const fs::path dir = scratch("saddle");
  const Exec e = henon_cli(
      "nevanlinna --map \"factor a=2,0 p=0,0,0,0,1,0\" --saddle_z1 0.5 --saddle_z2 -1 --out " + (dir / "out").string(),
      dir);
  EXPECT_EQ(e.status, 2);
  EXPECT_NE(e.err.find("saddle"), std::string::npos);
}

TEST(Cli, SliceOfTheGreenCurrentHasMassOne) {
  const fs::path dir = scratch("slice");
  ASSERT_EQ(henon_cli("slice --resolution 256 --out " + (dir / "out").string(), dir).status, 0);
  const std::string csv = slurp(dir / "out" / "slice.csv");
  EXPECT_EQ(csv.rfind("re_t,im_t,mass\n", 0), 0u);
  EXPECT_NEAR(footer(csv, "total_mass"), 1.0, 0.03);
}

TEST(Cli, OutputsAreReproducible) {
  const fs::path dir = scratch("repro");
  for (const char* run : {"a", "b"}) {
    const std::string out = (dir / run).string();
    ASSERT_EQ(henon_cli("render-green --width 64 --height 64 --ppm true --out " + out, dir).status, 0);
    ASSERT_EQ(henon_cli("periodic --period 3 --out " + out, dir).status, 0);
    ASSERT_EQ(henon_cli("param-scan --width 32 --height 32 --half_width 2 --out " + out, dir).status, 0);
  }
  for (const char* f : {"green.csv", "green.ppm", "periodic.csv", "scan.csv", "scan.pgm"}) {
    EXPECT_FALSE(slurp(dir / "a" / f).empty()) << f;
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}
