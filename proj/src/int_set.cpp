#include "adkit/int_set.hpp"

#include <algorithm>
#include <cmath>

#include "adkit/error.hpp"

namespace adkit {

namespace detail {

std::uint64_t CursorImpl::skip_count(std::uint64_t limit) {
  std::uint64_t c = 0;
  while (next(limit)) ++c;
  return c;
}

namespace {

class ScanCursor final : public CursorImpl {
 public:
  explicit ScanCursor(std::shared_ptr<const SetNode> node) : node_(std::move(node)) {}

  std::optional<std::uint64_t> next(std::uint64_t limit) override {
    while (pos_ < limit) {
      ++pos_;
      if (node_->contains(pos_)) return pos_;
    }
    return std::nullopt;
  }

  std::uint64_t skip_count(std::uint64_t limit) override {
    if (limit <= pos_) return 0;
    if (!node_->fast_count()) return CursorImpl::skip_count(limit);
    std::uint64_t c = node_->count(limit) - node_->count(pos_);
    pos_ = limit;
    return c;
  }

 private:
  std::shared_ptr<const SetNode> node_;
};

}  // namespace

std::uint64_t SetNode::count(std::uint64_t n) const {
  ScanCursor cursor(std::shared_ptr<const SetNode>(this, [](const SetNode*) {}));
  std::uint64_t c = 0;
  while (cursor.next(n)) ++c;
  return c;
}

std::unique_ptr<CursorImpl> SetNode::make_cursor(std::shared_ptr<const SetNode> self) const {
  return std::make_unique<ScanCursor>(std::move(self));
}

}  // namespace detail

namespace {

using detail::CursorImpl;
using detail::SetNode;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

class PeriodicNode final : public SetNode {
 public:
  explicit PeriodicNode(UltimatelyPeriodicSet set) : set_(std::move(set)) {}
  bool contains(std::uint64_t n) const override { return set_.contains(n); }
  std::uint64_t count(std::uint64_t n) const override { return set_.count(n); }
  bool fast_count() const override { return true; }
  const UltimatelyPeriodicSet* periodic() const override { return &set_; }
  std::string describe() const override { return "periodic(" + set_.to_string() + ")"; }

 private:
  UltimatelyPeriodicSet set_;
};

class PredicateNode final : public SetNode {
 public:
  PredicateNode(std::function<bool(std::uint64_t)> member, std::string name)
      : member_(std::move(member)), name_(std::move(name)) {}
  bool contains(std::uint64_t n) const override { return n >= 1 && member_(n); }
  std::string describe() const override { return name_; }

 private:
  std::function<bool(std::uint64_t)> member_;
  std::string name_;
};

class SquaresCursor final : public CursorImpl {
 public:
  std::optional<std::uint64_t> next(std::uint64_t limit) override {
    std::uint64_t r = isqrt(pos_) + 1;
    if (r * r <= limit) {
      pos_ = r * r;
      return pos_;
    }
    pos_ = std::max(pos_, limit);
    return std::nullopt;
  }
};

class SquaresNode final : public SetNode {
 public:
  bool contains(std::uint64_t n) const override {
    std::uint64_t r = isqrt(n);
    return n >= 1 && r * r == n;
  }
  std::uint64_t count(std::uint64_t n) const override { return isqrt(n); }
  bool fast_count() const override { return true; }
  std::unique_ptr<CursorImpl> make_cursor(std::shared_ptr<const SetNode>) const override {
    return std::make_unique<SquaresCursor>();
  }
  std::string describe() const override { return "squares"; }
};

enum class BoolOp { kUnion, kIntersect, kDifference };

class BooleanNode final : public SetNode {
 public:
  BooleanNode(BoolOp op, IntSet a, IntSet b) : op_(op), a_(std::move(a)), b_(std::move(b)) {}

  bool contains(std::uint64_t n) const override {
    switch (op_) {
      case BoolOp::kUnion:
        return a_.contains(n) || b_.contains(n);
      case BoolOp::kIntersect:
        return a_.contains(n) && b_.contains(n);
      case BoolOp::kDifference:
        return a_.contains(n) && !b_.contains(n);
    }
    return false;
  }

  std::string describe() const override {
    const char* name = op_ == BoolOp::kUnion ? "union" : op_ == BoolOp::kIntersect ? "inter" : "diff";
    return std::string(name) + "(" + a_.describe() + "," + b_.describe() + ")";
  }

 private:
  BoolOp op_;
  IntSet a_, b_;
};

class WindowNode final : public SetNode {
 public:
  WindowNode(IntSet inner, std::uint64_t lo, std::uint64_t hi)
      : inner_(std::move(inner)), lo_(lo), hi_(hi) {}

  bool contains(std::uint64_t n) const override {
    return n >= lo_ && n <= hi_ && inner_.contains(n);
  }
  std::uint64_t count(std::uint64_t n) const override {
    if (!fast_count()) return SetNode::count(n);
    if (n < lo_) return 0;
    return inner_.count(std::min(n, hi_)) - inner_.count(lo_ - 1);
  }
  bool fast_count() const override { return inner_.node()->fast_count(); }
  std::string describe() const override {
    return "window(" + inner_.describe() + "," + std::to_string(lo_) + "," +
           (hi_ == kUnbounded ? std::string("inf") : std::to_string(hi_)) + ")";
  }

 private:
  IntSet inner_;
  std::uint64_t lo_, hi_;
};

class SpliceNode final : public SetNode {
 public:
  SpliceNode(std::vector<Segment> segments, std::string name, std::uint64_t limit)
      : segments_(std::move(segments)), name_(std::move(name)), limit_(limit) {
    fast_ = std::all_of(segments_.begin(), segments_.end(),
                        [](const Segment& s) { return s.source.node()->fast_count(); });
  }

  bool contains(std::uint64_t n) const override {
    check(n);
    auto it = std::upper_bound(segments_.begin(), segments_.end(), n,
                               [](std::uint64_t v, const Segment& s) { return v < s.lo; });
    if (it == segments_.begin()) return false;
    --it;
    return n <= it->hi && it->source.contains(n);
  }

  std::uint64_t count(std::uint64_t n) const override {
    check(n);
    if (!fast_) return SetNode::count(n);
    std::uint64_t c = 0;
    for (const Segment& s : segments_) {
      if (s.lo > n) break;
      c += s.source.count(std::min(n, s.hi)) - s.source.count(s.lo - 1);
    }
    return c;
  }

  bool fast_count() const override { return fast_; }
  std::string describe() const override { return name_; }

 private:
  void check(std::uint64_t n) const {
    if (n > limit_)
      throw PlanExhausted("plan exhausted: " + std::to_string(n) + " lies beyond horizon " +
                          std::to_string(limit_));
  }

  std::vector<Segment> segments_;
  std::string name_;
  std::uint64_t limit_;
  bool fast_ = false;
};

Modulus periodic_modulus(const UltimatelyPeriodicSet& set) {
  return Modulus{[set](const Rational& eps) { return set.modulus(eps); }, true};
}

}  // namespace

IntSet::IntSet(std::shared_ptr<const detail::SetNode> node, std::optional<Rational> exact_density,
               std::optional<Modulus> modulus, std::optional<std::uint64_t> deviation_bound)
    : node_(std::move(node)),
      exact_density_(std::move(exact_density)),
      modulus_(std::move(modulus)),
      deviation_bound_(deviation_bound) {
  if (exact_density_ && !modulus_)
    throw PreconditionError("a set with exact density must carry a convergence modulus");
  if (exact_density_ && (*exact_density_ < 0 || *exact_density_ > 1))
    throw PreconditionError("density must lie in [0, 1]");
}

IntSet IntSet::periodic(UltimatelyPeriodicSet set) {
  Rational d = set.density();
  std::uint64_t dev = set.deviation_constant();
  Modulus m = periodic_modulus(set);
  return IntSet(std::make_shared<PeriodicNode>(std::move(set)), std::move(d), std::move(m), dev);
}

IntSet IntSet::from_predicate(std::function<bool(std::uint64_t)> member, std::string name) {
  return IntSet(std::make_shared<PredicateNode>(std::move(member), std::move(name)), std::nullopt,
                std::nullopt);
}

IntSet IntSet::squares() {
  return IntSet(std::make_shared<SquaresNode>(), std::nullopt, std::nullopt);
}

IntSet IntSet::with_heuristic_modulus(Rational density,
                                      std::function<std::uint64_t(const Rational&)> modulus) const {
  return IntSet(node_, std::move(density), Modulus{std::move(modulus), false}, std::nullopt);
}

namespace {

template <typename PeriodicOp>
IntSet boolean(BoolOp op, const IntSet& a, const IntSet& b, PeriodicOp periodic_op) {
  if (a.periodic_form() && b.periodic_form()) {
    try {
      return IntSet::periodic(periodic_op(*a.periodic_form(), *b.periodic_form()));
    } catch (const PreconditionError&) {
      // word too long to materialise; fall through to the lazy form
    }
  }
  return IntSet(std::make_shared<BooleanNode>(op, a, b), std::nullopt, std::nullopt);
}

}  // namespace

IntSet set_union(const IntSet& a, const IntSet& b) {
  return boolean(BoolOp::kUnion, a, b, up_union);
}

IntSet set_intersect(const IntSet& a, const IntSet& b) {
  return boolean(BoolOp::kIntersect, a, b, up_intersect);
}

IntSet set_difference(const IntSet& a, const IntSet& b) {
  return boolean(BoolOp::kDifference, a, b, up_difference);
}

IntSet window_restrict(const IntSet& a, std::uint64_t lo, std::uint64_t hi) {
  if (lo == 0 || lo > hi)
    throw PreconditionError("empty range [" + std::to_string(lo) + ", " +
                            (hi == kUnbounded ? std::string("inf") : std::to_string(hi)) +
                            "] rejected");
  if (hi != kUnbounded && a.periodic_form()) {
    try {
      return IntSet::periodic(up_window(*a.periodic_form(), lo, hi));
    } catch (const PreconditionError&) {
    }
  }
  auto node = std::make_shared<WindowNode>(a, lo, hi);
  if (hi == kUnbounded) return IntSet(node, std::nullopt, std::nullopt);
  // At most hi - lo + 1 elements, so A(n)/n <= (hi - lo + 1)/n.
  const std::uint64_t width = hi - lo + 1;
  Modulus m{[width](const Rational& eps) {
              return floor_u64(Rational(BigInt(width)) / eps) + 1;
            },
            true};
  return IntSet(node, Rational(0), std::move(m), width);
}

IntSet splice(std::vector<Segment> segments, std::string name, std::uint64_t limit) {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].lo == 0 || segments[i].lo > segments[i].hi)
      throw PreconditionError("splice segment has an empty range");
    if (i > 0 && segments[i].lo <= segments[i - 1].hi)
      throw PreconditionError("splice segments must be disjoint and ascending");
  }
  return IntSet(std::make_shared<SpliceNode>(std::move(segments), std::move(name), limit),
                std::nullopt, std::nullopt);
}

}  // namespace adkit
