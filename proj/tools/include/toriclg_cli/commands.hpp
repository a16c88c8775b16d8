#pragma once

#include "toriclg_cli/report.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toriclg::cli {

struct Options {
  std::optional<std::size_t> t_max;
  /// z-degree bound for the Cech checks.
  std::optional<std::size_t> m_max;
  bool ring = false;
  /// 1-based positions in the fan's max_cones list.
  std::optional<std::vector<std::size_t>> cover;
  /// 1-based ray indices.
  std::optional<std::vector<std::size_t>> sigma_m;
};

/// Each command takes the fan file text. Parse and validation failures give
/// exit code 2, disagreements 3, broken internal invariants 1.
Report cmd_validate(const std::string& fan_text, const Options& options);
Report cmd_cohomology(const std::string& fan_text, const Options& options);
Report cmd_verify(const std::string& fan_text, const Options& options);
Report cmd_degenerate(const std::string& fan_text, const Options& options);

/// Dispatches by name; unknown names give exit code 2.
Report run_command(const std::string& command, const std::string& fan_text, const Options& options);

}  // namespace toriclg::cli
