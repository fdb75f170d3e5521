#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adkit/injective_map.hpp"
#include "adkit/int_set.hpp"
#include "adkit/intertwiner.hpp"
#include "adkit/rational.hpp"

namespace adkit {

/// An injective map together with two sets of equal density gamma whose
/// images have densities alpha < beta.
struct RefutationInstance {
  InjectiveMap f;
  IntSet a, b;
  IntSet image_a, image_b;
  Rational gamma, alpha, beta;
  EpsilonSchedule eps;
};

/// Derives gamma, alpha, beta exactly and checks the instance invariants:
/// d(A) = d(B) = gamma > 0, certified image densities, alpha < beta.
RefutationInstance make_refutation_instance(const InjectiveMap& f, const IntSet& a,
                                            const IntSet& b, const EpsilonSchedule& eps);

/// Thresholds L_k and splice points N_k built alongside each other.
struct PairedPlan {
  std::vector<std::uint64_t> M, L, N;

  std::size_t depth() const { return N.size(); }
  std::uint64_t l_at(std::size_t k) const { return L.at(k - 1); }
  std::uint64_t n_at(std::size_t k) const { return N.at(k - 1); }

  /// Throws PlanError naming the first violated constraint.
  void validate(const InjectiveMap& f, const EpsilonSchedule& eps) const;
};

/// M_k = the largest of the four moduli (A, B, f(A), f(B)) at eps_k.
ThresholdSequence compute_joint_thresholds(const RefutationInstance& inst, std::size_t depth);

/// L_1 = N_1 = M_1; for k >= 2, L_k is the least integer above
/// max(L_{k-1}, M_k) with eps_{k-1} L_k > N_{k-1}, and
/// N_k = max(L_k + 1, preimage_bound(f, L_k)).
PairedPlan build_paired_plan(const RefutationInstance& inst, const ThresholdSequence& thresholds,
                             std::size_t depth);

/// The splice points alone, as an intertwining plan.
InterleavePlan as_interleave_plan(const RefutationInstance& inst, const PairedPlan& plan);

/// C from the splice points; see intertwine().
IntSet build_witness(const RefutationInstance& inst, const PairedPlan& plan,
                     std::uint64_t horizon = 0);

struct OscillationRow {
  std::size_t index = 0;  // j, checked at L_j
  std::uint64_t L = 0;
  bool even = false;
  std::uint64_t count = 0;  // f(C)(L_j)
  double ratio = 0;
  /// alpha + 2 eps_{j-1} (even j, ratio must fall below) or
  /// beta - 2 eps_{j-1} (odd j, ratio must rise above).
  Rational bound;
  /// f(A)(L_j) + N_{j-1} (even, upper) or f(B)(L_j) - N_{j-1} (odd, lower).
  std::int64_t sandwich = 0;
  bool sandwich_ok = true;
  bool pass = true;
};

struct OscillationReport {
  std::vector<OscillationRow> rows;
  std::size_t even_passed = 0;
  std::size_t odd_passed = 0;
  std::optional<double> min_even_ratio;
  std::optional<double> max_odd_ratio;
  /// max_odd_ratio - min_even_ratio.
  std::optional<double> gap;
  bool pass = true;
};

/// Checks both ratio inequalities and both sandwich counts at every L_j <= horizon,
/// j >= 2. Requires horizon >= L_3.
OscillationReport evaluate_oscillation(const RefutationInstance& inst, const PairedPlan& plan,
                                       const IntSet& witness, std::uint64_t horizon);

}  // namespace adkit
