#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wolfes/cli.hpp"

using namespace wolfes;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// A scratch directory with an empty config, so the state file lands beside it.
struct Workspace {
  fs::path dir;
  std::string config;

  explicit Workspace(const std::string& name) {
    dir = fs::temp_directory_path() / ("wolfes_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    config = (dir / "run.cfg").string();
    std::ofstream(config) << "# defaults\n";
  }
  std::string state() const { return config + ".state"; }
};

}  // namespace

TEST_CASE("usage errors exit 2", "[cli]") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"spectrum", "--omega", "abc"}).code == 2);
  CHECK(run({"spectrum", "--omega", "-1"}).code == 2);
  CHECK(run({"spectrum", "--format", "xml"}).code == 2);
  CHECK(run({"verify", "sideways"}).code == 2);
  CHECK(run({"spectrum", "--sector-mult", "3"}).code == 2);
  CHECK(run({"spectrum", "--config", "/nonexistent/run.cfg"}).code == 2);
  const auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("spectrum") != std::string::npos);
}

TEST_CASE("spectrum command", "[cli]") {
  Workspace ws("spectrum");
  auto r = run({"spectrum", "--config", ws.config, "--g1sq", "3", "--max-quanta", "2"});
  CHECK(r.code == 0);
  CHECK(r.err.find("WARNING") != std::string::npos);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["levels"].size() == 3);
  CHECK(j["levels"][0]["degeneracy"] == 1);
  CHECK(j["levels"][1]["degeneracy"] == 2);
  CHECK(j["levels"][2]["degeneracy"] == 4);
  CHECK(j["resolved"]["source"] == "published-fallback");
  CHECK(j["levels"][0]["energy"].get<double>() == Catch::Approx(1.5 + std::sqrt(5.0) / 2.0));

  const auto one = nlohmann::json::parse(run({"spectrum", "--config", ws.config, "--max-quanta", "3"}).out);
  const auto two = nlohmann::json::parse(run({"spectrum", "--config", ws.config, "--max-quanta", "3", "--omega", "2"}).out);
  for (std::size_t i = 0; i < one["levels"].size(); ++i) {
    CHECK(two["levels"][i]["energy"].get<double>() ==
          Catch::Approx(2.0 * one["levels"][i]["energy"].get<double>()).epsilon(1e-12));
  }

  r = run({"spectrum", "--config", ws.config, "--max-quanta", "0", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);

  r = run({"spectrum", "--config", ws.config, "--max-quanta", "4", "--sector-mult", "2", "--format", "csv"});
  CHECK(r.out.find("\n4,") != std::string::npos);
  j = nlohmann::json::parse(run({"spectrum", "--config", ws.config, "--max-quanta", "4", "--sector-mult", "2"}).out);
  const unsigned deg[] = {2, 4, 8, 12, 18};
  for (std::size_t i = 0; i < 5; ++i) CHECK(j["levels"][i]["degeneracy"] == deg[i]);
}

TEST_CASE("resolve writes an idempotent state file", "[cli]") {
  Workspace ws("resolve");
  auto r = run({"resolve", "--config", ws.config});
  CHECK(r.code == 0);
  const std::string first = slurp(ws.state());
  CHECK(first.find("sho_offset = 1\n") != std::string::npos);
  CHECK(first.find("radial_rule = candidate\n") != std::string::npos);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["resolved"]["sho_offset"] == 1.0);
  CHECK(j["discrepancies"].size() > 0);

  const auto again = run({"resolve", "--config", ws.config});
  CHECK(again.code == 0);
  CHECK(slurp(ws.state()) == first);
  CHECK(again.out == r.out);

  // Spectrum now uses the resolved constant and prints no warning.
  r = run({"spectrum", "--config", ws.config, "--max-quanta", "0"});
  CHECK(r.err.empty());
  j = nlohmann::json::parse(r.out);
  CHECK(j["resolved"]["source"] == "state-file");
  CHECK(j["levels"][0]["energy"].get<double>() == Catch::Approx(2.0 + std::sqrt(5.0) / 2.0));
}

TEST_CASE("resolve with a single coupling warns about the reduced sweep", "[cli]") {
  Workspace ws("reduced");
  std::ofstream(ws.config) << "sweep = 3\n";
  const auto r = run({"resolve", "--config", ws.config});
  CHECK(r.code == 0);
  CHECK(r.err.find("reduced sweep") != std::string::npos);
}

TEST_CASE("resolve failure prints the residual table and exits 1", "[cli]") {
  Workspace ws("resolve_fail");
  const auto r = run({"resolve", "--config", ws.config, "--grid-points", "101"});
  CHECK(r.code == 1);
  CHECK(r.err.find("max_residual") != std::string::npos);
  CHECK_FALSE(fs::exists(ws.state()));
}

TEST_CASE("hf-check command", "[cli]") {
  Workspace ws("hf");
  auto r = run({"hf-check", "--config", ws.config, "--g1sq", "3"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  for (const auto& c : j["checks"]) {
    if (c["name"] == "hf fd vs closed n2=0") CHECK(c["reference"].get<double>() == Catch::Approx(0.1491).margin(1e-4));
  }
  r = run({"hf-check", "--config", ws.config, "--g1sq", "1"});
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["checks"][0]["reference"].get<double>() == Catch::Approx(0.2182).margin(1e-4));
  CHECK(run({"hf-check", "--config", ws.config, "--g1sq", "0"}).code == 2);
}

TEST_CASE("audit command and the output contract", "[cli]") {
  Workspace ws("audit");
  auto r = run({"audit", "--config", ws.config, "--g1sq", "3"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  int a = 0, b = 0, c = 0;
  for (const auto& chk : j["checks"]) {
    const std::string n = chk["name"];
    a += n.rfind("claim (a)", 0) == 0;
    b += n.rfind("claim (b)", 0) == 0;
    c += n.rfind("claim (c)", 0) == 0;
    CHECK(chk["status"] == "pass");
  }
  CHECK(a > 0);
  CHECK(b > 0);
  CHECK(c > 0);

  const auto csv = run({"audit", "--config", ws.config, "--g1sq", "3", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("record,name,status", 0) == 0);
  CHECK(csv.out.find("claim (b) all f_m^2 equal: refuted,pass") != std::string::npos);

  const auto report = (ws.dir / "report.json").string();
  r = run({"audit", "--config", ws.config, "--g1sq", "1", "--out", report});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(slurp(report))["params"]["g1_squared"] == 1.0);
}

TEST_CASE("verify jacobi exit codes and determinism", "[cli]") {
  Workspace ws("verify");
  const auto a = run({"verify", "jacobi", "--config", ws.config, "--g1sq", "3"});
  CHECK(a.code == 0);
  const auto b = run({"verify", "jacobi", "--config", ws.config, "--g1sq", "3"});
  CHECK(a.out == b.out);
  const auto tight = run({"verify", "jacobi", "--config", ws.config, "--tol", "1e-12"});
  CHECK(tight.code == 1);
  const auto j = nlohmann::json::parse(tight.out);
  CHECK(j["status"] == "fail");
  CHECK(j["checks"][0]["measured"].is_number());

  // Flags override file values.
  std::ofstream(ws.config) << "g1sq = 7.5\nomega = 2\n";
  auto r = nlohmann::json::parse(run({"verify", "jacobi", "--config", ws.config}).out);
  CHECK(r["params"]["g1_squared"] == 7.5);
  CHECK(r["params"]["omega"] == 2.0);
  r = nlohmann::json::parse(run({"verify", "jacobi", "--config", ws.config, "--g1sq", "1"}).out);
  CHECK(r["params"]["g1_squared"] == 1.0);
  CHECK(r["params"]["omega"] == 2.0);
}

TEST_CASE("verify all, including the 3D check", "[cli][slow]") {
  Workspace ws("verify_all");
  const auto r = run({"verify", "all", "--config", ws.config, "--g1sq", "3"});
  INFO(r.out);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  bool saw_3d = false, saw_sph = false, saw_jac = false;
  for (const auto& c : j["checks"]) {
    const std::string n = c["name"];
    saw_3d |= n.rfind("3d level", 0) == 0;
    saw_sph |= n.rfind("spherical", 0) == 0;
    saw_jac |= n.rfind("jacobi", 0) == 0;
  }
  CHECK(saw_3d);
  CHECK(saw_sph);
  CHECK(saw_jac);
}

TEST_CASE("the installed executable honours the exit-code contract", "[cli]") {
  Workspace ws("binary");
  const std::string exe = WOLFES_CLI_PATH;
  const auto out = (ws.dir / "stdout.txt").string();
  auto sh = [&](const std::string& args) {
    const std::string cmd = "\"" + exe + "\" " + args + " > \"" + out + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(sh("spectrum --max-quanta 1 --config \"" + ws.config + "\"") == 0);
  CHECK(slurp(out).find("\"levels\"") != std::string::npos);
  CHECK(sh("hf-check --g1sq 0 --config \"" + ws.config + "\"") == 2);
  CHECK(sh("nonsense") == 2);
  const auto report = (ws.dir / "r.json").string();
  CHECK(sh("audit --g1sq 1 --config \"" + ws.config + "\" --out \"" + report + "\"") == 0);
  CHECK(slurp(out).empty());
  CHECK(fs::exists(report));
}
