#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "adkit/int_set.hpp"
#include "adkit/rational.hpp"

namespace adkit {

/// Where counting functions get sampled.
class CheckpointSchedule {
 public:
  struct Geometric {
    double ratio;
    std::uint64_t start;
  };
  struct Explicit {
    std::vector<std::uint64_t> points;
  };

  /// x_0 = start, x_{i+1} = max(x_i + 1, floor(ratio * x_i)). Requires ratio > 1.
  static CheckpointSchedule geometric(double ratio, std::uint64_t start);
  static CheckpointSchedule explicit_points(std::vector<std::uint64_t> points);
  /// ratio 1.1 from 10.
  static CheckpointSchedule standard() { return geometric(1.1, 10); }

  CheckpointSchedule with_mandatory(std::vector<std::uint64_t> extra) const;

  /// Strictly increasing checkpoints in [1, horizon].
  std::vector<std::uint64_t> points(std::uint64_t horizon) const;

  const std::variant<Geometric, Explicit>& kind() const { return kind_; }

 private:
  explicit CheckpointSchedule(std::variant<Geometric, Explicit> kind) : kind_(std::move(kind)) {}

  std::variant<Geometric, Explicit> kind_;
  std::vector<std::uint64_t> mandatory_;
};

struct Checkpoint {
  std::uint64_t n;
  std::uint64_t count;
  double ratio;
  /// D/n when the set has a deviation bound D.
  std::optional<double> error_bound;
};

/// Checkpoint table with tail min/max of A(n)/n. The tail extremes are
/// proxies for the lower and upper densities, not their values.
struct DensityReport {
  std::vector<Checkpoint> checkpoints;
  std::size_t tail_start = 0;
  double empirical_lower = 0;
  double empirical_upper = 0;
  std::uint64_t horizon = 0;
  std::optional<Rational> exact_density;
  bool certified = false;
};

/// One streaming pass over the set, sampling A(n)/n at each checkpoint.
/// The tail is the checkpoints in the last half of the sampled range.
DensityReport estimate_densities(const IntSet& set, const CheckpointSchedule& schedule,
                                 std::uint64_t horizon);

}  // namespace adkit
