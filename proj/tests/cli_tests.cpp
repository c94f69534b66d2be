#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "wbss/pgm.hpp"
#include "wbss/rng.hpp"
#include "wbss/texture.hpp"
#include "wbss/types.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* cli_path() { return WBSS_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string command = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

struct Workspace {
  fs::path dir;
  Workspace()
      : dir(fs::temp_directory_path() /
            ("wbss_cli_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++))) {
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string p(const std::string& name) const { return (dir / name).string(); }
  static int counter;
};

int Workspace::counter = 0;

json load_json(const fs::path& file) {
  std::ifstream in(file);
  REQUIRE(in.good());
  return json::parse(in);
}

std::string read_bytes(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_sources(const Workspace& ws) {
  const auto sources = wbss::demo_sources(64, 64, 1234);
  wbss::write_pgm(ws.p("s0.pgm"), sources[0]);
  wbss::write_pgm(ws.p("s1.pgm"), sources[1]);
}

// The full-size pair the demo would generate for master seed 100.
void write_sources_128(const Workspace& ws) {
  const auto sources =
      wbss::demo_sources(128, 128, wbss::rng::stage_seed(100, "demo.texture"));
  wbss::write_pgm(ws.p("s0.pgm"), sources[0]);
  wbss::write_pgm(ws.p("s1.pgm"), sources[1]);
}

}  // namespace

TEST_CASE("mix with identity preserves full-range images up to rescale") {
  Workspace ws;
  write_sources(ws);
  std::ofstream(ws.p("I.csv")) << "1,0\n0,1\n";
  REQUIRE(run_cli("mix --images " + ws.p("s0.pgm") + " " + ws.p("s1.pgm") + " --mixing " +
                  ws.p("I.csv") + " --out " + ws.p("out")) == 0);
  CHECK(read_bytes(ws.p("out/mixture_0.pgm")) == read_bytes(ws.p("s0.pgm")));
  CHECK(read_bytes(ws.p("out/mixture_1.pgm")) == read_bytes(ws.p("s1.pgm")));
  CHECK(fs::exists(ws.p("out/A.csv")));
}

TEST_CASE("mix writes noisy mixtures when asked") {
  Workspace ws;
  write_sources(ws);
  REQUIRE(run_cli("mix --images " + ws.p("s0.pgm") + " " + ws.p("s1.pgm") +
                  " --noise both:10:0.2 --seed 5 --out " + ws.p("out")) == 0);
  CHECK(fs::exists(ws.p("out/mixture_noisy_0.pgm")));
  CHECK(fs::exists(ws.p("out/mixture_noisy_1.pgm")));
  CHECK(read_bytes(ws.p("out/mixture_noisy_0.pgm")) != read_bytes(ws.p("out/mixture_0.pgm")));
}

TEST_CASE("mix errors: missing file and singular matrix") {
  Workspace ws;
  write_sources(ws);
  CHECK(run_cli("mix --images " + ws.p("nope.pgm") + " " + ws.p("s1.pgm") + " --out " +
                ws.p("out")) == 2);
  std::ofstream(ws.p("sing.csv")) << "1,2\n2,4\n";
  CHECK(run_cli("mix --images " + ws.p("s0.pgm") + " " + ws.p("s1.pgm") + " --mixing " +
                ws.p("sing.csv") + " --out " + ws.p("out")) == 2);
}

TEST_CASE("separate recovers sources mixed by the cli") {
  Workspace ws;
  write_sources_128(ws);
  REQUIRE(run_cli("mix --images " + ws.p("s0.pgm") + " " + ws.p("s1.pgm") + " --out " +
                  ws.p("mixed")) == 0);
  REQUIRE(run_cli("separate --inputs " + ws.p("mixed/mixture_0.pgm") + " " +
                  ws.p("mixed/mixture_1.pgm") + " --sources " + ws.p("s0.pgm") + " " +
                  ws.p("s1.pgm") + " --mixing " + ws.p("mixed/A.csv") + " --seed 11 --out " +
                  ws.p("sep")) == 0);

  const json report = load_json(ws.p("sep/report.json"));
  CHECK(report["schema_version"] == 1);
  CHECK(report.contains("pi_initial"));
  CHECK(report.contains("pi_final"));
  CHECK(report["pi_final"].get<double>() < 0.05);
  for (const auto& c : report["matching"]["correlations"]) CHECK(c.get<double>() > 0.95);
  CHECK(fs::exists(ws.p("sep/separated_0.pgm")));
  CHECK(fs::exists(ws.p("sep/separated_1.pgm")));
  CHECK(fs::exists(ws.p("sep/B_initial.csv")));
  CHECK(fs::exists(ws.p("sep/B_final.csv")));

  // Post-hoc evaluation reproduces the report's index exactly.
  REQUIRE(run_cli("evaluate --outputs " + ws.p("sep/separated_0.pgm") + " " +
                  ws.p("sep/separated_1.pgm") + " --sources " + ws.p("s0.pgm") + " " +
                  ws.p("s1.pgm") + " --mixing " + ws.p("mixed/A.csv") + " --separation " +
                  ws.p("sep/B_final.csv") + " --out " + ws.p("eval")) == 0);
  const json eval = load_json(ws.p("eval/evaluation.json"));
  CHECK(eval["pi"] == report["pi_final"]);
  for (const auto& c : eval["matching"]["correlations"]) CHECK(c.get<double>() > 0.9);
}

TEST_CASE("separate without ground truth omits the index fields") {
  Workspace ws;
  write_sources(ws);
  REQUIRE(run_cli("mix --images " + ws.p("s0.pgm") + " " + ws.p("s1.pgm") + " --out " +
                  ws.p("mixed")) == 0);
  REQUIRE(run_cli("separate --inputs " + ws.p("mixed/mixture_0.pgm") + " " +
                  ws.p("mixed/mixture_1.pgm") + " --out " + ws.p("sep")) == 0);
  const json report = load_json(ws.p("sep/report.json"));
  CHECK_FALSE(report.contains("pi_initial"));
  CHECK_FALSE(report.contains("pi_final"));
  CHECK_FALSE(report.contains("matching"));
  CHECK(fs::exists(ws.p("sep/separated_0.pgm")));
}

TEST_CASE("separate accepts CSV signal input and writes CSV outputs") {
  Workspace ws;
  const auto sources = wbss::demo_sources(32, 32, 77);
  wbss::Matrix s(2, 1024);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 1024; ++j)
      s(i, j) = static_cast<double>(sources[static_cast<std::size_t>(i)].pixels()
                                        [static_cast<std::size_t>(j)]);
  wbss::Matrix a(2, 2);
  a << 1.0, 0.4, 0.4, 1.0;
  wbss::Matrix x = a * s;
  {
    std::ofstream out(ws.p("x.csv"));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 1024; ++j) out << x(i, j) << (j + 1 < 1024 ? "," : "");
      out << "\n";
    }
  }
  REQUIRE(run_cli("separate --inputs " + ws.p("x.csv") + " --out " + ws.p("sep")) == 0);
  CHECK(fs::exists(ws.p("sep/Y.csv")));
  CHECK(fs::exists(ws.p("sep/report.json")));
}

TEST_CASE("demo experiments run and unknown names are usage errors") {
  Workspace ws;
  REQUIRE(run_cli("demo --experiment awgn15 --seed 3 --epochs 40 --out " + ws.p("d")) == 0);
  const json report = load_json(ws.p("d/report.json"));
  CHECK(report["experiment"] == "awgn15");
  CHECK(report["config"]["noise"]["kind"] == "gaussian");
  CHECK(fs::exists(ws.p("d/mixture_noisy_0.pgm")));
  CHECK(fs::exists(ws.p("d/source_0.pgm")));

  CHECK(run_cli("demo --experiment nope --out " + ws.p("d2")) == 1);
  CHECK(run_cli("demo --out " + ws.p("d3")) == 1);  // missing required flag
}

TEST_CASE("failed runs leave no partial artifacts") {
  Workspace ws;
  write_sources(ws);
  const auto small = wbss::demo_sources(32, 32, 5);
  wbss::write_pgm(ws.p("small0.pgm"), small[0]);
  // Mismatched source dimensions abort the run after input loading.
  CHECK(run_cli("separate --inputs " + ws.p("s0.pgm") + " " + ws.p("s1.pgm") + " --sources " +
                ws.p("small0.pgm") + " " + ws.p("small0.pgm") + " --out " + ws.p("sep")) == 2);
  if (fs::exists(ws.p("sep"))) {
    std::size_t remaining = 0;
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator(ws.p("sep"))) ++remaining;
    CHECK(remaining == 0);
  }
}

TEST_CASE("odd image sizes are cropped deterministically for the transform") {
  Workspace ws;
  const auto sources = wbss::demo_sources(63, 63, 321);
  wbss::write_pgm(ws.p("s0.pgm"), sources[0]);
  wbss::write_pgm(ws.p("s1.pgm"), sources[1]);
  REQUIRE(run_cli("mix --images " + ws.p("s0.pgm") + " " + ws.p("s1.pgm") + " --out " +
                  ws.p("mixed")) == 0);
  REQUIRE(run_cli("separate --inputs " + ws.p("mixed/mixture_0.pgm") + " " +
                  ws.p("mixed/mixture_1.pgm") + " --out " + ws.p("sep")) == 0);
  // 63*63 is not divisible by 4; the top-anchored crop keeps 63x60.
  const wbss::ImagePlane out = wbss::read_pgm(ws.p("sep/separated_0.pgm"));
  CHECK(out.width() == 63);
  CHECK(out.height() == 60);
  const json report = load_json(ws.p("sep/report.json"));
  CHECK(report["image_shape"]["height"] == 60);
}

TEST_CASE("rank-deficient mixtures fail numerically with exit code 3") {
  Workspace ws;
  write_sources(ws);
  CHECK(run_cli("separate --inputs " + ws.p("s0.pgm") + " " + ws.p("s0.pgm") + " --out " +
                ws.p("sep")) == 3);
}

TEST_CASE("bad noise spec is a usage error") {
  Workspace ws;
  write_sources(ws);
  CHECK(run_cli("mix --images " + ws.p("s0.pgm") + " " + ws.p("s1.pgm") +
                " --noise gaussian --out " + ws.p("out")) == 1);
  CHECK(run_cli("mix --images " + ws.p("s0.pgm") + " " + ws.p("s1.pgm") +
                " --noise sp:1.7 --out " + ws.p("out")) == 1);
}
