#include "adkit/density_report.hpp"

#include <algorithm>
#include <cmath>

#include "adkit/error.hpp"

namespace adkit {

CheckpointSchedule CheckpointSchedule::geometric(double ratio, std::uint64_t start) {
  if (!(ratio > 1.0) || !std::isfinite(ratio))
    throw PreconditionError("geometric checkpoint ratio must exceed 1");
  if (start == 0) throw PreconditionError("checkpoints start at 1 or later");
  return CheckpointSchedule(Geometric{ratio, start});
}

CheckpointSchedule CheckpointSchedule::explicit_points(std::vector<std::uint64_t> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] == 0) throw PreconditionError("checkpoints must be positive");
    if (i > 0 && points[i] <= points[i - 1])
      throw PreconditionError("explicit checkpoints must be strictly increasing");
  }
  return CheckpointSchedule(Explicit{std::move(points)});
}

CheckpointSchedule CheckpointSchedule::with_mandatory(std::vector<std::uint64_t> extra) const {
  CheckpointSchedule out = *this;
  out.mandatory_.insert(out.mandatory_.end(), extra.begin(), extra.end());
  return out;
}

std::vector<std::uint64_t> CheckpointSchedule::points(std::uint64_t horizon) const {
  std::vector<std::uint64_t> out;
  if (const auto* g = std::get_if<Geometric>(&kind_)) {
    for (std::uint64_t x = g->start; x <= horizon;) {
      out.push_back(x);
      double scaled = std::floor(static_cast<double>(x) * g->ratio);
      std::uint64_t next = scaled >= 1.8e19 ? kUnbounded : static_cast<std::uint64_t>(scaled);
      if (next <= x) next = x + 1;
      if (next < x) break;  // wrapped
      x = next;
    }
  } else {
    for (std::uint64_t x : std::get<Explicit>(kind_).points)
      if (x <= horizon) out.push_back(x);
  }
  for (std::uint64_t x : mandatory_)
    if (x >= 1 && x <= horizon) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DensityReport estimate_densities(const IntSet& set, const CheckpointSchedule& schedule,
                                 std::uint64_t horizon) {
  std::vector<std::uint64_t> points = schedule.points(horizon);
  if (points.empty())
    throw PreconditionError("horizon " + std::to_string(horizon) +
                            " lies below the first checkpoint");

  DensityReport report;
  report.horizon = horizon;
  report.exact_density = set.exact_density();
  report.certified = set.certified();
  report.checkpoints.reserve(points.size());

  Cursor cursor = set.cursor();
  std::uint64_t running = 0;
  for (std::uint64_t n : points) {
    running += cursor.skip_count(n);
    Checkpoint cp{n, running, static_cast<double>(running) / static_cast<double>(n), std::nullopt};
    if (set.deviation_bound())
      cp.error_bound = static_cast<double>(*set.deviation_bound()) / static_cast<double>(n);
    report.checkpoints.push_back(cp);
  }

  // checkpoints in the upper half of the sampled range, (last / 2, last]
  const std::uint64_t last = report.checkpoints.back().n;
  report.tail_start = static_cast<std::size_t>(
      std::upper_bound(report.checkpoints.begin(), report.checkpoints.end(), last / 2,
                       [](std::uint64_t v, const Checkpoint& c) { return v < c.n; }) -
      report.checkpoints.begin());
  auto tail_begin = report.checkpoints.begin() + static_cast<std::ptrdiff_t>(report.tail_start);
  auto [lo, hi] = std::minmax_element(tail_begin, report.checkpoints.end(),
                                      [](const Checkpoint& a, const Checkpoint& b) {
                                        return a.ratio < b.ratio;
                                      });
  report.empirical_lower = lo->ratio;
  report.empirical_upper = hi->ratio;
  return report;
}

}  // namespace adkit
