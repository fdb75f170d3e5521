#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adkit/density_report.hpp"
#include "adkit/int_set.hpp"
#include "adkit/rational.hpp"

namespace adkit {

/// Strictly decreasing tolerances eps_1 > eps_2 > ... in (0, 1), tending to 0.
class EpsilonSchedule {
 public:
  /// eps_k = scale * ratio^k; needs scale > 0, 0 < ratio < 1, scale * ratio < 1.
  static EpsilonSchedule geometric(Rational scale, Rational ratio);
  /// Finite prefix of a schedule; only the first values.size() indices exist.
  static EpsilonSchedule from_values(std::vector<Rational> values);
  /// eps_k = 2^-(k+1).
  static EpsilonSchedule standard();

  /// k >= 1.
  Rational at(std::size_t k) const;
  /// Number of defined terms; empty for an infinite schedule.
  std::optional<std::size_t> length() const;
  std::string describe() const;

 private:
  EpsilonSchedule() = default;

  Rational scale_, ratio_;
  std::vector<Rational> values_;
  bool geometric_ = true;
};

/// M_1, M_2, ... with |A(n)/n - gamma| < eps_k and |B(n)/n - gamma| < eps_k
/// for every n >= M_k.
struct ThresholdSequence {
  std::vector<std::uint64_t> M;  // M[k - 1] = M_k
  Rational gamma;
  bool certified = true;

  std::uint64_t at(std::size_t k) const { return M.at(k - 1); }
  std::size_t depth() const { return M.size(); }
};

/// Splice points N_1 < N_2 < ... with M_{k-1} <= N_{k-1} <= eps_{k-1} N_k.
struct InterleavePlan {
  std::vector<std::uint64_t> M;
  std::vector<std::uint64_t> N;
  Rational gamma;
  EpsilonSchedule eps;
  bool certified = true;

  std::uint64_t at(std::size_t k) const { return N.at(k - 1); }
  std::size_t depth() const { return N.size(); }
  std::uint64_t last() const { return N.back(); }

  /// Throws PlanError naming the first violated inequality.
  void validate() const;
};

/// M_k = max(modulus_A(eps_k), modulus_B(eps_k)), k = 1..depth.
/// Rejects gamma = 0, mismatched densities and modulus-free sets.
ThresholdSequence compute_thresholds(const IntSet& a, const IntSet& b, const Rational& gamma,
                                     const EpsilonSchedule& eps, std::size_t depth);

/// N_1 = M_1, N_k = max(M_k, ceil(N_{k-1} / eps_{k-1})): the least admissible choice.
InterleavePlan build_plan(const ThresholdSequence& thresholds, const EpsilonSchedule& eps);

/// C = ∪ A ∩ (N_{2k-1}, N_{2k}]  ∪  ∪ B ∩ (N_{2k}, N_{2k+1}].
///
/// C is empty on [1, N_1]. Past N_depth, up to `horizon`, the window rule
/// continues as if N_{depth+1} were infinite (a truncated tail); queries
/// beyond both throw PlanExhausted.
IntSet intertwine(const IntSet& a, const IntSet& b, const InterleavePlan& plan,
                  std::uint64_t horizon = 0);

/// Whether evaluating up to horizon runs past the last splice point.
inline bool truncated_tail(const InterleavePlan& plan, std::uint64_t horizon) {
  return horizon > plan.last();
}

struct WindowCheck {
  std::size_t k = 0;
  std::uint64_t lo = 0;  // exclusive
  std::uint64_t hi = 0;  // inclusive
  Rational bound;        // 5 eps_{k-1}
  std::size_t checkpoints = 0;
  double max_deviation = 0;
  double min_slack = 0;  // bound - max deviation
  bool truncated = false;
  bool pass = true;
  std::optional<std::uint64_t> witness;
};

struct BoundReport {
  std::vector<WindowCheck> windows;
  std::uint64_t horizon = 0;
  bool truncated = false;
  bool certified = true;
  bool pass = true;
};

/// Checks |C(n)/n - gamma| < 5 eps_{k-1} at every checkpoint n in
/// (N_k, min(N_{k+1}, horizon)], k >= 2. Splice points and their successors
/// are always sampled. Validates the plan first.
BoundReport verify_bound(const IntSet& c, const InterleavePlan& plan,
                         const CheckpointSchedule& schedule, std::uint64_t horizon);

}  // namespace adkit
