#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <string>

#include "json.hpp"

#include "dpa/io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string kBin = DPA_BIN;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dpa_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

int run_cli(const std::string& args) {
  const int status = std::system((kBin + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("limits emits the hand-checked first row values") {
  TempDir tmp;
  const auto out = (tmp.path / "p.csv").string();
  REQUIRE(run_cli("limits --alpha 0.5 --gamma 0.5 --lambda 1 --mu 1 "
                  "--imax 3 --jmax 3 --out " + out) == 0);
  const auto table = dpa::CsvTable::parse(dpa::read_text_file(out));
  REQUIRE(table.header == std::vector<std::string>{"i", "j", "p"});
  bool found = false;
  for (const auto& row : table.rows) {
    if (row[0] == "0" && row[1] == "1") {
      CHECK(dpa::parse_double(row[2]) ==
            doctest::Approx(2.0 / 7.0).epsilon(1e-12));
      found = true;
    }
  }
  CHECK(found);

  // manifest lists the outputs with correct digests
  const auto manifest =
      json::parse(dpa::read_text_file(out + ".manifest.json"));
  for (const auto& rec : manifest["outputs"]) {
    const auto bytes =
        dpa::read_text_file(tmp.path / rec["path"].get<std::string>());
    CHECK(dpa::fnv1a64_hex(bytes) == rec["fnv1a64"].get<std::string>());
    CHECK(bytes.size() == rec["bytes"].get<std::uint64_t>());
  }
}

TEST_CASE("enumerate defaults to the symmetric parameter set") {
  TempDir tmp;
  const auto out = (tmp.path / "exact.json").string();
  REQUIRE(run_cli("enumerate --n 2 --out " + out) == 0);
  const auto states = json::parse(dpa::read_text_file(out));
  REQUIRE(states.size() == 2);
  for (const auto& entry : states) {
    CHECK(entry["prob"].get<double>() == doctest::Approx(0.5));
  }
}

TEST_CASE("flag validation exits 1 with a message") {
  TempDir tmp;
  CHECK(run_cli("limits --gamma 0.7 --lambda 1 --mu 1 --imax 2 --jmax 2 "
                "--out " + (tmp.path / "x.csv").string()) == 1);
  CHECK(run_cli("frobnicate") == 1);
  CHECK(run_cli("verify --n 100 --runs 5 --window 1,1 --report " +
                (tmp.path / "r.json").string()) == 1);  // --seed required
  CHECK(run_cli("limits --alpha 0.5 --gamma 0.5 --lambda 1 --mu 1 "
                "--imax 2 --jmax 2 --out " +
                (tmp.path / "ok.csv").string()) == 0);
}

TEST_CASE("config file fills parameters and explicit flags win") {
  TempDir tmp;
  const auto cfg = tmp.path / "model.cfg";
  dpa::write_text_file(cfg,
                       "alpha = 0.3\ngamma = 0.7\nlambda = 1\nmu = 1\n");
  const auto out_cfg = (tmp.path / "cfg.csv").string();
  REQUIRE(run_cli("limits --config " + cfg.string() +
                  " --imax 1 --jmax 1 --out " + out_cfg) == 0);
  const auto t1 = dpa::CsvTable::parse(dpa::read_text_file(out_cfg));
  // p_01 = alpha / (1 + delta_01) = 0.3 / 1.85
  CHECK(dpa::parse_double(t1.rows[1][2]) ==
        doctest::Approx(0.3 / 1.85).epsilon(1e-12));

  const auto out_mix = (tmp.path / "mix.csv").string();
  REQUIRE(run_cli("limits --config " + cfg.string() +
                  " --alpha 0.5 --gamma 0.5 --imax 1 --jmax 1 --out " +
                  out_mix) == 0);
  const auto t2 = dpa::CsvTable::parse(dpa::read_text_file(out_mix));
  CHECK(dpa::parse_double(t2.rows[1][2]) ==
        doctest::Approx(2.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("simulate writes one CSV per run plus a manifest") {
  TempDir tmp;
  const auto out = (tmp.path / "simout").string();
  REQUIRE(run_cli("simulate --n 500 --seed 9 --checkpoints 100,250 "
                  "--window 2,2 --out " + out) == 0);
  const auto table =
      dpa::CsvTable::parse(dpa::read_text_file(fs::path(out) / "run.csv"));
  REQUIRE(table.header ==
          std::vector<std::string>{"checkpoint_n", "i", "j", "count"});
  // window (2,2) has 8 coordinates; checkpoints 100, 250 and the final 500
  CHECK(table.rows.size() == 3 * 8);
  std::uint64_t final_total = 0;
  for (const auto& row : table.rows) {
    if (row[0] == "500") final_total += std::stoull(row[3]);
  }
  CHECK(final_total <= 500);
  CHECK(final_total > 400);  // window holds nearly all small-degree nodes
  CHECK(fs::exists(fs::path(out) / "manifest.json"));
}

TEST_CASE("covariance subcommand: spec defaults refuse a leaky box") {
  TempDir tmp;
  const auto out = (tmp.path / "cov.json").string();
  CHECK(run_cli("covariance --window 1,1 --out " + out) == 1);
  REQUIRE(run_cli("covariance --window 1,1 --tail-accel --out " + out) == 0);
  const auto cov = json::parse(dpa::read_text_file(out));
  CHECK(cov["final_cov"][0][0].get<double>() ==
        doctest::Approx(24.0 / 122.5).epsilon(1e-6));
  CHECK(cov["variant"] == "corrected");
}

TEST_CASE("verify reports are byte-identical across worker counts") {
  TempDir tmp;
  const auto r1 = (tmp.path / "r1.json").string();
  const auto r2 = (tmp.path / "r2.json").string();
  REQUIRE(run_cli("verify --n 800 --runs 40 --window 1,1 --seed 31 "
                  "--workers 1 --report " + r1) == 0);
  REQUIRE(run_cli("verify --n 800 --runs 40 --window 1,1 --seed 31 "
                  "--workers 3 --report " + r2) == 0);
  CHECK(dpa::read_text_file(r1) == dpa::read_text_file(r2));
}
