#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace toriclg::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kValidation = 2, kMismatch = 3 };

/// Result of one command. The machine form holds no timing so identical
/// input and flags give byte-identical output; elapsed time is kept
/// separately for the human form.
struct Report {
  std::string command;
  nlohmann::json fan = nlohmann::json::object();
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json payload = nlohmann::json::object();
  std::string verdict;
  int exit_code = kOk;
  double elapsed_seconds = 0;

  bool operator==(const Report& other) const;
};

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

std::string render_json(const Report& report);
std::string render_text(const Report& report);

}  // namespace toriclg::cli
