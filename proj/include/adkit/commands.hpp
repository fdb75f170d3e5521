#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adkit/density_report.hpp"
#include "adkit/intertwiner.hpp"
#include "adkit/report_io.hpp"

namespace adkit {

inline constexpr int kExitPass = 0;
inline constexpr int kExitBoundFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::uint64_t horizon = 1'000'000;
  std::string checkpoints_spec = "geo(1.1,10)";
  std::string eps_spec = "geo(1/2,1/2)";
  std::size_t depth = 6;
  OutputFormat format = OutputFormat::kCsv;

  /// horizon >= 100, depth >= 2, both schedule specs parse.
  void validate() const;
  CheckpointSchedule checkpoints() const;
  EpsilonSchedule eps() const;
};

struct CommandResult {
  Table table;
  int exit_code = kExitPass;
};

// Each command throws ParseError / PreconditionError for bad input; the
// front end maps those to kExitUsage.

/// Columns: n, count, ratio, error_bound.
CommandResult cmd_density(std::string_view set_expr, const RunConfig& config);

/// Columns: k, window_lo, window_hi, checkpoints, max_deviation, bound,
/// min_slack, truncated, pass.
CommandResult cmd_intertwine(std::string_view set_a, std::string_view set_b,
                             const RunConfig& config);

/// Columns: k, L_k, ratio, bound, pass, side, count, sandwich, sandwich_ok.
CommandResult cmd_refute(std::string_view map_expr, std::string_view set_a,
                         std::string_view set_b, const RunConfig& config);

/// Columns: alpha_num, alpha_den, fhat_estimate, error_bound, certified, verdict.
/// Without r, one row per r = 0..s.
CommandResult cmd_transfer(std::string_view map_expr, std::uint64_t s,
                           std::optional<std::uint64_t> r, const RunConfig& config);

}  // namespace adkit
