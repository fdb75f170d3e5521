#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "adkit/rational.hpp"

namespace adkit {

/// A subset of the positive integers whose characteristic word is a finite
/// preperiod followed by a repeating period.
///
/// Positions are 1-based: n <= q reads preperiod[n], otherwise
/// period[((n - q - 1) mod p) + 1]. The period need not be primitive.
class UltimatelyPeriodicSet {
 public:
  /// Largest preperiod + period length any operation will materialise.
  static constexpr std::size_t kMaxWordLength = std::size_t{1} << 24;

  UltimatelyPeriodicSet(std::vector<bool> preperiod, std::vector<bool> period);

  /// Words over {'0','1'}; throws PreconditionError on bad characters or an
  /// empty period.
  static UltimatelyPeriodicSet from_words(std::string_view preperiod, std::string_view period);

  static UltimatelyPeriodicSet all();
  static UltimatelyPeriodicSet none();
  /// {n >= 1 : n = residue (mod modulus)}.
  static UltimatelyPeriodicSet residue_class(std::uint64_t residue, std::uint64_t modulus);
  /// [lo, hi] as a finite set.
  static UltimatelyPeriodicSet interval(std::uint64_t lo, std::uint64_t hi);

  /// Samples `membership` on [1, q + p] and uses it as preperiod and period.
  /// The caller certifies that membership is periodic with period p past q.
  static UltimatelyPeriodicSet tabulate(std::uint64_t q, std::uint64_t p,
                                        const std::function<bool(std::uint64_t)>& membership);

  std::size_t preperiod_length() const { return preperiod_.size(); }
  std::size_t period_length() const { return period_.size(); }
  const std::vector<bool>& preperiod() const { return preperiod_; }
  const std::vector<bool>& period() const { return period_; }

  bool contains(std::uint64_t n) const;

  /// |A ∩ [1, n]| in closed form.
  std::uint64_t count(std::uint64_t n) const;

  /// ones(period) / p.
  Rational density() const;

  /// Strict bound on |A(n) - d(A) n|, valid for every n >= 1: p + q.
  std::uint64_t deviation_constant() const { return preperiod_.size() + period_.size(); }

  /// ceil((p + q) / eps): for n at least this, |A(n)/n - d(A)| < eps.
  std::uint64_t modulus(const Rational& eps) const;

  /// Canonical form: primitive period and shortest preperiod.
  UltimatelyPeriodicSet minimized() const;

  /// Same set, same canonical form.
  bool same_set(const UltimatelyPeriodicSet& other) const;

  /// "pre|per" word notation.
  std::string to_string() const;

 private:
  std::vector<bool> preperiod_;
  std::vector<bool> period_;
  std::vector<std::uint64_t> pre_prefix_;  // pre_prefix_[i] = ones in preperiod[0, i)
  std::vector<std::uint64_t> per_prefix_;
};

// Results are aligned to max(q_A, q_B) and lcm(p_A, p_B), then minimized.
UltimatelyPeriodicSet up_union(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b);
UltimatelyPeriodicSet up_intersect(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b);
UltimatelyPeriodicSet up_difference(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b);
UltimatelyPeriodicSet up_complement(const UltimatelyPeriodicSet& a);

/// A ∩ [lo, hi]; throws PreconditionError when lo > hi or lo == 0.
UltimatelyPeriodicSet up_window(const UltimatelyPeriodicSet& a, std::uint64_t lo, std::uint64_t hi);

}  // namespace adkit
