#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adkit/periodic_set.hpp"
#include "adkit/rational.hpp"

namespace adkit {

inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

/// Convergence modulus eps -> n0 with |A(n)/n - d(A)| < eps for every n >= n0.
/// Heuristic moduli supplied by a caller carry certified = false and every
/// downstream report says so.
struct Modulus {
  std::function<std::uint64_t(const Rational& eps)> at;
  bool certified = true;
};

namespace detail {

class CursorImpl {
 public:
  virtual ~CursorImpl() = default;
  virtual std::optional<std::uint64_t> next(std::uint64_t limit) = 0;
  // Number of elements in (position, limit]; moves the position to limit.
  virtual std::uint64_t skip_count(std::uint64_t limit);

 protected:
  std::uint64_t pos_ = 0;
};

class SetNode {
 public:
  virtual ~SetNode() = default;
  virtual bool contains(std::uint64_t n) const = 0;
  virtual std::uint64_t count(std::uint64_t n) const;
  // True when count() is cheap enough to call per checkpoint.
  virtual bool fast_count() const { return false; }
  virtual std::unique_ptr<CursorImpl> make_cursor(std::shared_ptr<const SetNode> self) const;
  virtual const UltimatelyPeriodicSet* periodic() const { return nullptr; }
  virtual std::string describe() const = 0;
};

}  // namespace detail

/// Bounded ascending stream over a set's elements.
///
/// next(limit) yields the smallest unseen element <= limit, or nothing, in
/// which case everything up to limit has been consumed.
class Cursor {
 public:
  explicit Cursor(std::unique_ptr<detail::CursorImpl> impl) : impl_(std::move(impl)) {}

  std::optional<std::uint64_t> next(std::uint64_t limit) { return impl_->next(limit); }

  /// Consumes everything up to limit and returns how many elements that was.
  std::uint64_t skip_count(std::uint64_t limit) { return impl_->skip_count(limit); }

 private:
  std::unique_ptr<detail::CursorImpl> impl_;
};

/// Immutable, lazily evaluated subset of the positive integers.
class IntSet {
 public:
  IntSet(std::shared_ptr<const detail::SetNode> node, std::optional<Rational> exact_density,
         std::optional<Modulus> modulus, std::optional<std::uint64_t> deviation_bound = std::nullopt);

  /// Carries exact density d, modulus ceil((p+q)/eps) and deviation bound p+q.
  static IntSet periodic(UltimatelyPeriodicSet set);
  /// Membership-only set; no density information.
  static IntSet from_predicate(std::function<bool(std::uint64_t)> member, std::string name);
  static IntSet squares();

  bool contains(std::uint64_t n) const { return node_->contains(n); }
  std::uint64_t count(std::uint64_t n) const { return node_->count(n); }
  Cursor cursor() const { return Cursor(node_->make_cursor(node_)); }

  const std::optional<Rational>& exact_density() const { return exact_density_; }
  const std::optional<Modulus>& modulus() const { return modulus_; }
  /// D with |A(n) - d(A) n| <= D for all n, when known.
  const std::optional<std::uint64_t>& deviation_bound() const { return deviation_bound_; }
  bool certified() const { return modulus_ && modulus_->certified; }

  /// Non-null when the set is backed by an ultimately periodic word.
  const UltimatelyPeriodicSet* periodic_form() const { return node_->periodic(); }
  std::string describe() const { return node_->describe(); }

  /// Attaches a caller-supplied density and modulus, flagged uncertified.
  IntSet with_heuristic_modulus(Rational density,
                                std::function<std::uint64_t(const Rational&)> modulus) const;

  const std::shared_ptr<const detail::SetNode>& node() const { return node_; }

 private:
  std::shared_ptr<const detail::SetNode> node_;
  std::optional<Rational> exact_density_;
  std::optional<Modulus> modulus_;
  std::optional<std::uint64_t> deviation_bound_;
};

/// Periodic operands give periodic results; otherwise a lazy combinator.
IntSet set_union(const IntSet& a, const IntSet& b);
IntSet set_intersect(const IntSet& a, const IntSet& b);
IntSet set_difference(const IntSet& a, const IntSet& b);

/// A ∩ [lo, hi]. With finite hi the result has density 0; hi = kUnbounded
/// keeps no density. Throws PreconditionError when lo > hi or lo == 0.
IntSet window_restrict(const IntSet& a, std::uint64_t lo, std::uint64_t hi);

/// Piece of a spliced set: source ∩ [lo, hi].
struct Segment {
  std::uint64_t lo;
  std::uint64_t hi;
  IntSet source;
};

/// Union of disjoint, ascending segments. Membership outside every segment
/// is false; when `limit` is given, queries above it throw PlanExhausted.
IntSet splice(std::vector<Segment> segments, std::string name,
              std::uint64_t limit = kUnbounded);

}  // namespace adkit
