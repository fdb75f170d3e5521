#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adkit/density_report.hpp"
#include "adkit/injective_map.hpp"
#include "adkit/periodic_set.hpp"
#include "adkit/rational.hpp"

namespace adkit {

/// A_i = {a : a = i (mod s)}, i = 1..s.
struct ResidueDecomposition {
  std::uint64_t modulus = 1;
  std::vector<UltimatelyPeriodicSet> classes;  // classes[i - 1] = A_i
};

ResidueDecomposition residue_classes(std::uint64_t s);

/// A_1 ∪ ... ∪ A_r (empty for r = 0).
UltimatelyPeriodicSet residue_union(std::uint64_t s, std::uint64_t r);

/// Certified bound on |f(A)(n) - d(f(A)) n| for a periodic A. Two routes,
/// the smaller wins: the deviation constant of the periodic image, and, for
/// bounded-displacement maps, displacement + deviation constant of A.
std::optional<std::uint64_t> transfer_constant(const InjectiveMap& f,
                                               const UltimatelyPeriodicSet& a);

struct TransferReport {
  std::uint64_t s = 1, r = 1, horizon = 0;
  Rational lambda;
  Rational expected;  // lambda r / s
  double estimate = 0;  // f(A)(horizon) / horizon
  double tolerance = 0;
  bool certified = true;
  bool within_tolerance = true;
  bool additivity_ok = true;
  std::size_t additivity_samples = 0;
  bool pass = true;
};

/// Builds A = A_1 ∪ ... ∪ A_r, compares f(A)(horizon)/horizon with
/// lambda r/s, and checks sum_i f(A_i)(n) = f(N)(n) exactly at sampled n.
TransferReport transfer_check(const InjectiveMap& f, std::uint64_t s, std::uint64_t r,
                              std::uint64_t horizon,
                              const CheckpointSchedule& samples = CheckpointSchedule::standard());

enum class Verdict { kIdentity, kNonIdentity, kInconclusive, kUndefined };

std::string to_string(Verdict v);

struct FHatRow {
  std::uint64_t r = 0, s = 1;
  double estimate = 0;  // f(A)(horizon) / (lambda horizon)
  double error_bound = 0;
  bool certified = true;
  Verdict verdict = Verdict::kInconclusive;
};

/// One probe of the transfer function at r/s through the residue union.
FHatRow fhat_estimate(const InjectiveMap& f, std::uint64_t r, std::uint64_t s,
                      std::uint64_t horizon);

/// Rows for every reduced r/s in [0, 1] with s <= max_s, ascending.
std::vector<FHatRow> fhat_table(const InjectiveMap& f, std::uint64_t max_s, std::uint64_t horizon);

/// Estimates non-decreasing in alpha up to twice the larger error bound.
bool fhat_monotone(const std::vector<FHatRow>& table);

}  // namespace adkit
