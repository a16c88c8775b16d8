#include "toriclg_cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace toriclg::cli;
  CLI::App app{"Twisted de Rham and Cech checks for smooth toric fans"};
  app.require_subcommand(1);

  std::string fan_path;
  Options options;
  bool as_json = false;
  std::size_t t_max = 0, m_max = 0;
  std::vector<std::size_t> cover, sigma_m;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("fan", fan_path, "fan description (JSON)")->required();
    sub->add_flag("--json", as_json, "machine-readable output");
  };

  auto* validate = app.add_subcommand("validate", "check the fan and semi-projectivity");
  add_common(validate);

  auto* cohomology = app.add_subcommand("cohomology", "cohomology of the twisted complex");
  add_common(cohomology);
  cohomology->add_option("--tmax", t_max, "highest total degree");
  cohomology->add_flag("--ring", options.ring, "products, lsop check and quotient comparison");

  auto* verify = app.add_subcommand("verify", "Cech exactness and quasi-isomorphism checks");
  add_common(verify);
  verify->add_option("--tmax", t_max, "highest total degree");
  verify->add_option("--mmax", m_max, "highest z-degree for exactness");
  verify->add_option("--cover", cover, "1-based maximal cone positions")->delimiter(',');

  auto* degenerate = app.add_subcommand("degenerate", "degeneration relations and theta presentation");
  add_common(degenerate);
  degenerate->add_option("--tmax", t_max, "highest total degree for the theta check");
  degenerate->add_option("--sigma-m", sigma_m, "1-based ray indices of sigma_M")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto given = [chosen](const char* name) {
    const CLI::Option* opt = chosen->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--tmax")) options.t_max = t_max;
  if (given("--mmax")) options.m_max = m_max;
  if (given("--cover")) options.cover = cover;
  if (given("--sigma-m")) options.sigma_m = sigma_m;

  Report report;
  if (const auto text = read_file(fan_path)) {
    report = run_command(chosen->get_name(), *text, options);
  } else {
    report.command = chosen->get_name();
    report.payload = {{"error", "cannot read " + fan_path}};
    report.verdict = "invalid input";
    report.exit_code = kValidation;
  }
  std::cout << (as_json ? render_json(report) : render_text(report));
  return report.exit_code;
}
