#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmhop/cli.hpp"
#include "cmhop/errors.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cmhop;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const char* env = std::getenv(kOutputDirEnv);
  fs::path base = env ? fs::path(env) : fs::temp_directory_path() / "cmhop-test";
  fs::path p = base / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("size lists") {
  CHECK(parse_size_list("1e3,1e4, 250") == std::vector<std::size_t>{1000, 10000, 250});
  CHECK_THROWS_AS(parse_size_list("1e3,abc"), InputError);
  CHECK_THROWS_AS(parse_size_list("1.5"), InputError);
  CHECK_THROWS_AS(parse_size_list(""), InputError);
}

TEST_CASE("simulate writes its artifacts") {
  auto dir = scratch("sim");
  auto r = cli({"simulate", "--tau", "1.8", "--n", "300,1e3", "--replicas", "40", "--seed", "5", "--out",
                dir.string()});
  REQUIRE(r.code == kExitOk);
  for (const char* f : {"replicas.csv", "summary.json", "histogram_N300.tsv", "histogram_N1000.tsv",
                        "manifest.json"}) {
    CHECK(fs::exists(dir / f));
  }
  std::istringstream csv(slurp(dir / "replicas.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "size_index,N,replica,hopcount,LN,D1,D2,ratio1,ratio2,flagB,flagC,flagD,flagA,giant_mass,parity,failed");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 80);

  auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["sizes"]["1000"]["completed"] == 40);
  CHECK(summary["sizes"]["300"].contains("p_hat"));
  auto hist = slurp(dir / "histogram_N300.tsv");
  CHECK(hist.rfind("bucket\tprobability\n", 0) == 0);
}

TEST_CASE("bad configuration exits with 2") {
  CHECK(cli({"simulate", "--tau", "2.5", "--n", "100", "--out", scratch("bad").string()}).code == kExitConfig);
  CHECK(cli({"simulate", "--tau", "1.8", "--n", "100", "--bogus"}).code == kExitConfig);
  CHECK(cli({"simulate", "--n", "100"}).code == kExitConfig);
  CHECK(cli({"limitcheck", "--tau", "1.8", "--n", "1000", "--k", "9"}).code == kExitConfig);
  CHECK(cli({"oracle", "--degrees", "3,3,3,5"}).code == kExitConfig);
  CHECK(cli({"oracle", "--degrees", "1,1", "--a", "3"}).code == kExitConfig);
  CHECK(cli({}).code == kExitConfig);
}

TEST_CASE("help exits cleanly") {
  auto r = cli({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("simulate") != std::string::npos);
}

TEST_CASE("oracle tables") {
  auto dir = scratch("oracle");
  auto r = cli({"oracle", "--degrees", "1,1,2", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(slurp(dir / "oracle.json"));
  CHECK(j["matchings"] == 3);
  CHECK(j["hopcount"]["1"]["count"] == 1);
  CHECK(j["hopcount"]["2"]["count"] == 2);
  CHECK(j["multigraphs"].size() == 2);

  auto two = cli({"oracle", "--degrees", "2,2", "--out", dir.string()});
  REQUIRE(two.code == kExitOk);
  j = nlohmann::json::parse(slurp(dir / "oracle.json"));
  CHECK(j["hopcount"]["1"]["count"] == 2);
  CHECK(j["hopcount"]["inf"]["count"] == 1);
}

TEST_CASE("limitcheck verdicts") {
  auto dir = scratch("limit");
  auto loose = cli({"limitcheck", "--tau", "1.8", "--n", "1e4", "--replicas", "3000", "--k", "2",
                    "--ks-threshold", "0.06", "--out", dir.string()});
  CHECK(loose.code == kExitOk);
  CHECK(fs::exists(dir / "limitcheck.tsv"));
  auto ks = nlohmann::json::parse(slurp(dir / "ks.json"));
  CHECK(ks.dump().find("ks") != std::string::npos);

  auto strict = cli({"limitcheck", "--tau", "1.8", "--n", "1e4", "--replicas", "3000", "--ks-threshold",
                     "0.0001", "--out", dir.string()});
  CHECK(strict.code == kExitCheckFailed);
}

TEST_CASE("diagnose reports events") {
  auto dir = scratch("diag");
  auto r = cli({"diagnose", "--tau", "1.8", "--n", "1000", "--replicas", "200", "--k", "10", "--out",
                dir.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("b_{D,eps}=") != std::string::npos);
  auto tsv = slurp(dir / "events.tsv");
  CHECK(tsv.rfind("N\tflag_replicas\tP_B", 0) == 0);

  auto beta = cli({"diagnose", "--tau", "1.8", "--alpha", "0.5", "--giants", "beta", "--n", "1000",
                   "--replicas", "20", "--out", dir.string()});
  CHECK(beta.code == kExitOk);
  CHECK(beta.err.find("warning") != std::string::npos);
}

TEST_CASE("config file with flag override") {
  auto dir = scratch("cfg");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.conf");
    f << "# small run\ntau = 1.8\nn = 200\nreplicas = 30\nseed = 9\n";
  }
  auto r = cli({"simulate", "--config", (dir / "run.conf").string(), "--replicas", "12", "--out",
                (dir / "o").string()});
  REQUIRE(r.code == kExitOk);
  auto summary = nlohmann::json::parse(slurp(dir / "o" / "summary.json"));
  CHECK(summary["sizes"]["200"]["completed"] == 12);
  CHECK(cli({"simulate", "--config", (dir / "missing.conf").string()}).code == kExitConfig);
}

TEST_CASE("output directory defaults to the environment") {
  const char* env = std::getenv(kOutputDirEnv);
  REQUIRE(env != nullptr);
  fs::remove(fs::path(env) / "oracle.json");
  CHECK(cli({"oracle", "--degrees", "1,1"}).code == kExitOk);
  CHECK(fs::exists(fs::path(env) / "oracle.json"));
}

TEST_CASE("identical runs produce identical bytes") {
  auto d1 = scratch("det1"), d2 = scratch("det2");
  for (auto& d : {d1, d2}) {
    REQUIRE(cli({"simulate", "--tau", "1.7", "--n", "500", "--replicas", "30", "--seed", "77", "--flags",
                 "--out", d.string()})
                .code == kExitOk);
  }
  for (const char* f : {"replicas.csv", "summary.json", "histogram_N500.tsv"}) {
    CHECK(slurp(d1 / f) == slurp(d2 / f));
  }
}
