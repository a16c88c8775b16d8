#include "support.hpp"

#include "toriclg_cli/commands.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>

using namespace toriclg;
using namespace toriclg::cli;
using namespace toriclg::testing;
using nlohmann::json;

namespace {

Report run(const std::string& command, const std::string& fan, Options options = {}) {
  return run_command(command, fan_text(fan), options);
}

int run_binary(const std::string& arguments) {
  const std::string line = std::string(TORICLG_BIN) + " " + arguments + " > /dev/null 2>&1";
  const int status = std::system(line.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string golden_path(const std::string& name) {
  return std::string(TORICLG_GOLDEN_DIR) + "/" + name + "_cohomology.json";
}

}  // namespace

TEST_CASE("validate P1", "[cli]") {
  const Report r = run("validate", "p1");
  CHECK(r.exit_code == kOk);
  CHECK(r.payload["semiprojective"] == true);
  CHECK(r.payload["primitive_collections"] == json::parse("[[1,2]]"));
  CHECK(r.payload["certificate"]["phi"] == json::parse(R"(["0","1"])"));
}

TEST_CASE("validate reports the non-smooth cone", "[cli]") {
  const Report r = run("validate", "nonsmooth");
  CHECK(r.exit_code == kValidation);
  CHECK(r.payload["error"].get<std::string>().find("{1,2}") != std::string::npos);
}

TEST_CASE("validate the zero fan", "[cli]") {
  const Report r = run("validate", "zero2");
  CHECK(r.exit_code == kOk);
  CHECK(r.payload["semiprojective"] == false);
  CHECK(r.payload["failure"]["reason"] == "not-full-dimensional");
}

TEST_CASE("malformed input exits with 2", "[cli]") {
  CHECK(run_command("validate", "{", {}).exit_code == kValidation);
  CHECK(run_command("cohomology", "{\"rank\": 1}", {}).exit_code == kValidation);
  CHECK(run_command("frobnicate", fan_text("p1"), {}).exit_code == kValidation);
}

TEST_CASE("cohomology of C x P1 with the ring", "[cli]") {
  Options options;
  options.ring = true;
  const Report r = run("cohomology", "cxp1", options);
  CHECK(r.exit_code == kOk);
  CHECK(r.payload["dims"] == json::parse("[1,0,1,0,0,0,0]"));
  CHECK(r.payload["linear_forms"] == json::parse(R"(["z1","z2 - z3"])"));
  bool saw_square = false;
  for (const auto& p : r.payload["products"])
    if (p["left"] == "h2_0" && p["right"] == "h2_0") {
      saw_square = true;
      CHECK(p["value"] == "0");
    }
  CHECK(saw_square);
  CHECK(r.payload["lsop"]["regular"] == true);
  CHECK(r.payload["lsop"]["quotient_dims"] == json::parse("[1,1,0,0]"));
  CHECK(r.payload["lsop"]["matches_ring"] == true);
}

TEST_CASE("cohomology of C^3", "[cli]") {
  const Report r = run("cohomology", "c3");
  CHECK(r.exit_code == kOk);
  CHECK(r.payload["dims"] == json::parse("[1,0,0,0,0,0,0,0,0]"));
}

TEST_CASE("cohomology of P2 has h^3 = 0", "[cli]") {
  Options options;
  options.ring = true;
  const Report r = run("cohomology", "p2", options);
  CHECK(r.payload["dims"] == json::parse("[1,0,1,0,1,0,0]"));
  for (const auto& p : r.payload["products"]) {
    if (p["left"] == "h2_0" && p["right"] == "h2_0") CHECK(p["value"] != "0");
    if (p["left"] == "h2_0" && p["right"] == "h4_0") CHECK(p["value"] == "0");
  }
}

TEST_CASE("tmax is honoured", "[cli]") {
  Options options;
  options.t_max = 3;
  const Report r = run("cohomology", "p1xp1", options);
  CHECK(r.parameters["t_max"] == 3);
  CHECK(r.payload["dims"] == json::parse("[1,0,2,0]"));
}

TEST_CASE("verify agrees on the examples", "[cli]") {
  for (const char* name : {"p1", "p2", "cxp1", "bl0c2"}) {
    const Report r = run("verify", name);
    CHECK(r.exit_code == kOk);
    CHECK(r.payload["quasi_isomorphic"] == true);
    CHECK(r.payload["exact"] == true);
    CHECK(r.payload["lg_dims"] == r.payload["w_total_dims"]);
  }
}

TEST_CASE("verify with a cover", "[cli]") {
  Options options;
  options.cover = std::vector<std::size_t>{3, 2, 1};
  const Report r = run("verify", "p2", options);
  CHECK(r.exit_code == kOk);
  CHECK(r.parameters["cover"] == json::parse("[3,2,1]"));
  options.cover = std::vector<std::size_t>{1, 2};
  CHECK(run("verify", "p2", options).exit_code == kValidation);
  options.cover = std::vector<std::size_t>{0, 1, 2};
  CHECK(run("verify", "p2", options).exit_code == kValidation);
}

TEST_CASE("degenerate P1", "[cli]") {
  const Report r = run("degenerate", "p1");
  CHECK(r.exit_code == kOk);
  const auto& first = r.payload["sigma_m"][0];
  CHECK(first["cone"] == json::parse("[1]"));
  CHECK(first["relations"][0]["relation"] == "z1*z2 = t");
  CHECK(first["theta_matches"] == true);
}

TEST_CASE("degenerate C^3 has no relations", "[cli]") {
  const Report r = run("degenerate", "c3");
  CHECK(r.exit_code == kOk);
  REQUIRE(r.payload["sigma_m"].size() == 1);
  CHECK(r.payload["sigma_m"][0]["relations"].empty());
}

TEST_CASE("degenerate the blow-up", "[cli]") {
  Options options;
  options.sigma_m = std::vector<std::size_t>{1, 3};
  const Report r = run("degenerate", "bl0c2", options);
  CHECK(r.exit_code == kOk);
  REQUIRE(r.payload["sigma_m"].size() == 1);
  const auto& relations = r.payload["sigma_m"][0]["relations"];
  REQUIRE(relations.size() == 1);
  CHECK(relations[0]["coefficients"] == json::parse(R"(["-1","1"])"));
  CHECK(std::stoi(relations[0]["exponent"].get<std::string>()) >= 1);
}

TEST_CASE("degenerate needs semi-projectivity", "[cli]") {
  CHECK(run("degenerate", "zero2").exit_code == kValidation);
  Options options;
  options.sigma_m = std::vector<std::size_t>{3};
  CHECK(run("degenerate", "bl0c2", options).exit_code == kValidation);
}

TEST_CASE("machine reports are deterministic", "[cli]") {
  Options options;
  options.ring = true;
  for (const char* name : {"p2", "f1"}) {
    const std::string a = render_json(run("cohomology", name, options));
    const std::string b = render_json(run("cohomology", name, options));
    CHECK(a == b);
  }
  CHECK(render_json(run("verify", "p1xp1")) == render_json(run("verify", "p1xp1")));
}

TEST_CASE("machine reports round trip", "[cli]") {
  Options ring;
  ring.ring = true;
  for (const Report& r : {run("validate", "p1"), run("cohomology", "p2", ring), run("verify", "cxp1"),
                          run("degenerate", "bl0c2"), run("validate", "nonsmooth")}) {
    CHECK(report_from_json(json::parse(render_json(r))) == r);
  }
}

TEST_CASE("text reports mention the verdict", "[cli]") {
  const std::string text = render_text(run("verify", "p1"));
  CHECK(text.find("all pipelines agree") != std::string::npos);
  CHECK(text.find("exit 0") != std::string::npos);
}

TEST_CASE("golden cohomology reports", "[cli][golden]") {
  Options options;
  options.ring = true;
  for (const char* name : {"p2", "f1", "bl0c2"}) {
    INFO(name);
    const Report r = run("cohomology", name, options);
    REQUIRE(r.payload["lsop"]["matches_ring"] == true);
    CHECK(render_json(r) == read_text(golden_path(name)));
  }
}

TEST_CASE("executable exit codes", "[cli][binary]") {
  CHECK(run_binary("validate " + data_path("p1")) == 0);
  CHECK(run_binary("validate " + data_path("nonsmooth")) == 2);
  CHECK(run_binary("validate " + data_path("does-not-exist")) == 2);
  CHECK(run_binary("cohomology --json --ring " + data_path("cxp1")) == 0);
  CHECK(run_binary("verify --mmax 3 --cover 2,1 " + data_path("bl0c2")) == 0);
  CHECK(run_binary("degenerate --sigma-m 1,2 " + data_path("cxp1")) == 0);
  CHECK(run_binary("validate --no-such-flag " + data_path("p1")) == 2);
  CHECK(run_binary("") == 2);
}
