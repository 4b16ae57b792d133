#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "polydots/cli.hpp"
#include "polydots/serialize.hpp"

using namespace polydots;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "polydots_cli" / name;
  fs::remove_all(dir);
  return dir;
}

std::string corpus(const std::string& name) { return (fs::path(POLYDOTS_CORPUS_DIR) / name).string(); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("analyze writes stationary reports") {
    const auto dir = fresh_dir("analyze");
    const Run r = run({"analyze", "--spec", corpus("fig2.json"), "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("5 orbits, 9 points") != std::string::npos);
    CHECK(fs::exists(dir / "stationary.json"));
    CHECK(fs::exists(dir / "stationary.csv"));
    const Json j = load_json_file(dir / "stationary.json");
    CHECK(j["orbits"] == 5);
  }

  TEST_CASE("inline flags equal the spec file") {
    const auto a = fresh_dir("inline_a"), b = fresh_dir("inline_b");
    CHECK(run({"analyze", "--family", "cusp2d", "--alpha", "1.4", "--beta", "1", "--json", "--out", a.string()}).code == 0);
    CHECK(run({"analyze", "--spec", corpus("fig1.json"), "--json", "--out", b.string()}).code == 0);
    CHECK_FALSE(fs::exists(a / "stationary.csv"));
    CHECK(load_json_file(a / "stationary.json")["stationary_points"] ==
          load_json_file(b / "stationary.json")["stationary_points"]);
    const auto c = fresh_dir("inline_c");
    CHECK(run({"analyze", "--family", "butterfly2d", "--alpha", "1", "--gamma", "1.9", "--u=-5.333333333333333",
               "--out", c.string()})
              .out.find("5 orbits, 9 points") != std::string::npos);
  }

  TEST_CASE("equal cusp couplings flag the degenerate ring") {
    const Run r = run({"analyze", "--family", "cusp2d", "--alpha", "1", "--beta", "1", "--out",
                       fresh_dir("ring").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.err.find("Mexican-hat") != std::string::npos);
    CHECK(r.out.find("degenerate") != std::string::npos);
  }

  TEST_CASE("spec blocks in reports re-parse to the same spec") {
    const auto dir = fresh_dir("roundtrip");
    CHECK(run({"analyze", "--spec", corpus("table2.json"), "--json", "--out", dir.string()}).code == 0);
    const Json report = load_json_file(dir / "stationary.json");
    CHECK(spec_from_json(report["spec"]) == load_spec_file(corpus("table2.json")));
  }

  TEST_CASE("complex on-axis roots give exit code 2") {
    const Run r = run({"analyze", "--family", "butterfly2d", "--a", "2", "--b", "1", "--c", "3", "--d", "2",
                       "--out", fresh_dir("noreal").string()});
    CHECK(r.code == kExitNoRealShape);
    CHECK(r.err.find("NoRealShape") != std::string::npos);
  }

  TEST_CASE("malformed input exits 1") {
    const std::string out = fresh_dir("usage").string();
    CHECK(run({"analyze", "--bogus"}).code == kExitUsage);
    CHECK(run({"analyze", "--out", out}).code == kExitUsage);
    CHECK(run({"analyze", "--family", "cusp2d", "--alpha", "1.4", "--beta", "1", "--spec", corpus("fig1.json"),
               "--out", out})
              .code == kExitUsage);
    CHECK(run({"analyze", "--family", "butterfly2d", "--alpha", "1", "--c", "2", "--out", out}).code == kExitUsage);
    const Run bad_window = run({"grid", "--spec", corpus("fig1.json"), "--window", "1,1,0,1", "--out", out});
    CHECK(bad_window.code == kExitUsage);
    CHECK(bad_window.err.find("window") != std::string::npos);
    CHECK(run({"grid", "--spec", corpus("fig1.json"), "--window", "0,1,0", "--out", out}).code == kExitUsage);
    CHECK(run({"analyze", "--spec", corpus("missing.json"), "--out", out}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
  }

  TEST_CASE("help exits 0") {
    const Run r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("analyze") != std::string::npos);
    CHECK(run({"scan", "--help"}).code == kExitOk);
  }

  TEST_CASE("spectrum lists candidates and flags shallow wells") {
    const auto dir = fresh_dir("spectrum");
    const Run r = run({"spectrum", "--spec", corpus("fig2.json"), "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("dominant: origin") != std::string::npos);
    CHECK(r.err.find("unreliable") != std::string::npos);
    const Json j = load_json_file(dir / "spectrum.json");
    CHECK(j["dominant"]["labels"] == Json::array({"origin"}));
  }

  TEST_CASE("line scan finds both boundaries") {
    const auto dir = fresh_dir("scan");
    const Run r = run({"scan", "--spec", corpus("butterfly1d_beta2.json"), "--param", "alpha", "--from", "1.5",
                       "--to", "2.2", "--steps", "71", "--out", dir.string()});
    CHECK(r.code == 0);
    const Json j = load_json_file(dir / "boundaries.json");
    CHECK(j["boundaries"].size() == 2);
    CHECK(fs::exists(dir / "scan.csv"));
    CHECK(run({"scan", "--spec", corpus("fig1.json"), "--param", "alpha", "--out", dir.string()}).code == kExitUsage);
    CHECK(run({"scan", "--spec", corpus("fig1.json"), "--param", "zeta", "--from", "1", "--to", "2", "--out",
               dir.string()})
              .code == kExitUsage);
  }

  TEST_CASE("a cusp sweep has no boundary") {
    const auto dir = fresh_dir("scan_cusp");
    const Run r = run({"scan", "--spec", corpus("fig1.json"), "--param", "alpha", "--from", "1.2", "--to", "2",
                       "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(load_json_file(dir / "boundaries.json")["boundaries"].empty());
  }

  TEST_CASE("raster scan writes label maps and polylines") {
    const auto dir = fresh_dir("raster");
    const Run r = run({"scan", "--family", "butterfly1d", "--alpha", "1", "--beta", "1", "--param", "alpha",
                       "--from", "0.5", "--to", "2.5", "--param2", "beta", "--from2", "0.5", "--to2", "2.5",
                       "--resolution", "21", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "raster_quantum.csv"));
    CHECK(fs::exists(dir / "raster_classical.csv"));
    CHECK(load_json_file(dir / "polylines.json").size() >= 1);
  }

  TEST_CASE("lemma1 sweep") {
    const auto dir = fresh_dir("lemma1");
    const Run r = run({"scan", "--lemma1", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.2462928577") != std::string::npos);
  }

  TEST_CASE("grid dump honours the clip rule") {
    const auto dir = fresh_dir("grid");
    CHECK(run({"grid", "--spec", corpus("fig2.json"), "--window", "-2.5,2.5,-2.5,2.5", "--grid-n", "51",
               "--clip", "7.5", "--out", dir.string()})
              .code == 0);
    const PlaneGrid g = plane_from_csv([&] {
      std::ifstream in(dir / "grid.csv");
      return std::string(std::istreambuf_iterator<char>(in), {});
    }());
    CHECK(g.xs.size() == 51);
    for (double v : g.values) CHECK((std::isnan(v) || v <= 7.5));
    CHECK(load_json_file(dir / "grid.json")["clip"] == 7.5);
  }

  TEST_CASE("oracle with eigenpairs") {
    const auto dir = fresh_dir("oracle");
    const Run r = run({"oracle", "--spec", corpus("butterfly1d_beta2.json"), "--k", "2", "--grid-n", "801",
                       "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("(agree)") != std::string::npos);
    const Json j = load_json_file(dir / "oracle.json");
    CHECK(j["missing"].empty());
    CHECK(j["eigen"]["energies"].size() == 2);
    CHECK(j["eigen"]["localization"]["weights"].contains("x:gamma"));
    CHECK(fs::exists(dir / "eigen_grid.csv"));
  }

  TEST_CASE("verify passes on the corpus and fails on the corrupted fixture") {
    const auto dir = fresh_dir("verify");
    const Run ok = run({"verify", "--out", dir.string()});
    CHECK(ok.code == kExitOk);
    const Json v = load_json_file(dir / "verdict.json");
    CHECK(v["passed"] == true);
    CHECK(v["seed"] == 1);
    // Deterministic: a rerun with the same seed writes the same bytes.
    auto slurp = [](const fs::path& f) {
      std::ifstream in(f, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const auto s1 = fresh_dir("verify_seed_a"), s2 = fresh_dir("verify_seed_b");
    CHECK(run({"verify", "--seed", "7", "--out", s1.string()}).code == kExitOk);
    CHECK(run({"verify", "--seed", "7", "--out", s2.string()}).code == kExitOk);
    CHECK(slurp(s1 / "verdict.json") == slurp(s2 / "verdict.json"));
    CHECK(load_json_file(s1 / "verdict.json")["seed"] == 7);

    const Run bad = run({"verify", "--corpus", POLYDOTS_FIXTURE_DIR, "--out", fresh_dir("verify_bad").string()});
    CHECK(bad.code == kExitVerifyFailed);
    CHECK(bad.err.find("off_axis_roots_2d") != std::string::npos);
  }

  TEST_CASE("output directory from the environment") {
    const auto dir = fresh_dir("env");
    ::setenv("POLYDOTS_OUT", dir.string().c_str(), 1);
    const Run r = run({"analyze", "--spec", corpus("fig1.json")});
    ::unsetenv("POLYDOTS_OUT");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "stationary.json"));
  }

  TEST_CASE("installed binary exit codes") {
    const std::string cli = POLYDOTS_CLI;
    CHECK(std::system((cli + " --help > /dev/null").c_str()) == 0);
    const int status = std::system((cli + " analyze --bogus > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(status) == kExitUsage);
  }
}
