#include "adkit/injective_map.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "adkit/error.hpp"

namespace adkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// k-th positive integer not divisible by 3
std::uint64_t kth_non_multiple_of_3(std::uint64_t k) { return k + (k - 1) / 2; }

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

InjectiveMap InjectiveMap::identity() { return InjectiveMap(Identity{}); }

InjectiveMap InjectiveMap::dilate(std::uint64_t factor) {
  if (factor == 0) throw PreconditionError("dilate factor must be at least 1");
  return InjectiveMap(Dilate{factor});
}

InjectiveMap InjectiveMap::interleave3() { return InjectiveMap(Interleave3{}); }

InjectiveMap InjectiveMap::block_permutation(std::vector<std::uint64_t> block_sizes) {
  if (block_sizes.empty()) throw PreconditionError("blockperm needs at least one block size");
  BlockPermutation b;
  b.offsets.push_back(0);
  for (std::uint64_t s : block_sizes) {
    if (s == 0) throw PreconditionError("block sizes must be positive");
    b.offsets.push_back(b.offsets.back() + s);
  }
  b.cycle = b.offsets.back();
  b.max_size = *std::max_element(block_sizes.begin(), block_sizes.end());
  b.sizes = std::move(block_sizes);
  return InjectiveMap(std::move(b));
}

InjectiveMap InjectiveMap::finite_permutation(std::vector<std::uint64_t> table) {
  if (table.empty()) throw PreconditionError("finperm needs a non-empty table");
  const std::uint64_t t = table.size();
  FinitePermutation p;
  p.forward = std::move(table);
  p.backward.assign(t, 0);
  for (std::uint64_t i = 0; i < t; ++i) {
    std::uint64_t v = p.forward[i];
    if (v < 1 || v > t || p.backward[v - 1] != 0)
      throw PreconditionError("finperm table is not a permutation of 1.." + std::to_string(t));
    p.backward[v - 1] = i + 1;
  }
  return InjectiveMap(std::move(p));
}

InjectiveMap compose(const InjectiveMap& outer, const InjectiveMap& inner) {
  return InjectiveMap(InjectiveMap::Composed{std::make_shared<const InjectiveMap>(outer),
                                             std::make_shared<const InjectiveMap>(inner)});
}

MapFamily InjectiveMap::family() const {
  return std::visit(overloaded{
                        [](const Identity&) { return MapFamily::kIdentity; },
                        [](const Dilate&) { return MapFamily::kDilate; },
                        [](const Interleave3&) { return MapFamily::kInterleave3; },
                        [](const BlockPermutation&) { return MapFamily::kBlockPermutation; },
                        [](const FinitePermutation&) { return MapFamily::kFinitePermutation; },
                        [](const Composed&) { return MapFamily::kComposed; },
                    },
                    repr_);
}

std::string InjectiveMap::describe() const {
  return std::visit(
      overloaded{
          [](const Identity&) -> std::string { return "id"; },
          [](const Dilate& d) { return "dilate(" + std::to_string(d.factor) + ")"; },
          [](const Interleave3&) -> std::string { return "interleave3"; },
          [](const BlockPermutation& b) { return "blockperm(" + join(b.sizes) + ")"; },
          [](const FinitePermutation& p) { return "finperm(" + join(p.forward) + ")"; },
          [](const Composed& c) {
            return "compose(" + c.outer->describe() + "," + c.inner->describe() + ")";
          },
      },
      repr_);
}

std::pair<std::uint64_t, std::uint64_t> InjectiveMap::block_of(const BlockPermutation& b,
                                                               std::uint64_t n) {
  const std::uint64_t base = ((n - 1) / b.cycle) * b.cycle;
  const std::uint64_t offset = (n - 1) % b.cycle;
  auto it = std::upper_bound(b.offsets.begin(), b.offsets.end(), offset);
  const std::uint64_t start = base + *(it - 1) + 1;
  const std::uint64_t end = base + *it;
  return {start, end};
}

std::uint64_t InjectiveMap::apply(std::uint64_t n) const {
  return std::visit(overloaded{
                        [&](const Identity&) { return n; },
                        [&](const Dilate& d) { return d.factor * n; },
                        [&](const Interleave3&) {
                          return n % 2 == 1 ? 3 * ((n + 1) / 2) : kth_non_multiple_of_3(n / 2);
                        },
                        [&](const BlockPermutation& b) {
                          auto [start, end] = block_of(b, n);
                          return start + end - n;
                        },
                        [&](const FinitePermutation& p) {
                          return n <= p.forward.size() ? p.forward[n - 1] : n;
                        },
                        [&](const Composed& c) { return c.outer->apply(c.inner->apply(n)); },
                    },
                    repr_);
}

std::optional<std::uint64_t> InjectiveMap::inverse(std::uint64_t m) const {
  if (m == 0) return std::nullopt;
  return std::visit(
      overloaded{
          [&](const Identity&) -> std::optional<std::uint64_t> { return m; },
          [&](const Dilate& d) -> std::optional<std::uint64_t> {
            if (m % d.factor != 0) return std::nullopt;
            return m / d.factor;
          },
          [&](const Interleave3&) -> std::optional<std::uint64_t> {
            if (m % 3 == 0) return 2 * (m / 3) - 1;
            return 2 * (m - m / 3);
          },
          [&](const BlockPermutation& b) -> std::optional<std::uint64_t> {
            auto [start, end] = block_of(b, m);
            return start + end - m;
          },
          [&](const FinitePermutation& p) -> std::optional<std::uint64_t> {
            return m <= p.backward.size() ? p.backward[m - 1] : m;
          },
          [&](const Composed& c) -> std::optional<std::uint64_t> {
            auto mid = c.outer->inverse(m);
            if (!mid) return std::nullopt;
            return c.inner->inverse(*mid);
          },
      },
      repr_);
}

std::uint64_t InjectiveMap::preimage_bound(std::uint64_t L) const {
  if (L == 0) throw PreconditionError("preimage bound needs L >= 1");
  return std::visit(
      overloaded{
          [&](const Identity&) { return L; },
          [&](const Dilate& d) { return L / d.factor; },
          [&](const Interleave3&) {
            // odd 2k-1 -> 3k needs k <= L/3; even 2k needs k <= #non-multiples of 3 in [1, L]
            const std::uint64_t odd_k = L / 3;
            const std::uint64_t odd = odd_k == 0 ? 0 : 2 * odd_k - 1;
            const std::uint64_t even = 2 * (L - L / 3);
            return std::max(odd, even);
          },
          [&](const BlockPermutation& b) { return block_of(b, L).second; },
          [&](const FinitePermutation& p) {
            const std::uint64_t t = p.forward.size();
            if (L >= t) return L;
            std::uint64_t best = 0;
            for (std::uint64_t n = 1; n <= t; ++n)
              if (p.forward[n - 1] <= L) best = n;
            return best;
          },
          [&](const Composed& c) {
            const std::uint64_t mid = c.outer->preimage_bound(L);
            return mid == 0 ? 0 : c.inner->preimage_bound(mid);
          },
      },
      repr_);
}

std::optional<std::uint64_t> InjectiveMap::displacement_bound() const {
  return std::visit(
      overloaded{
          [](const Identity&) -> std::optional<std::uint64_t> { return 0; },
          [](const Dilate& d) -> std::optional<std::uint64_t> {
            if (d.factor == 1) return 0;
            return std::nullopt;
          },
          [](const Interleave3&) -> std::optional<std::uint64_t> { return std::nullopt; },
          [](const BlockPermutation& b) -> std::optional<std::uint64_t> { return b.max_size; },
          [](const FinitePermutation& p) -> std::optional<std::uint64_t> {
            return p.forward.size();
          },
          [](const Composed& c) -> std::optional<std::uint64_t> {
            auto a = c.outer->displacement_bound();
            auto b = c.inner->displacement_bound();
            if (!a || !b) return std::nullopt;
            return *a + *b;
          },
      },
      repr_);
}

std::optional<UltimatelyPeriodicSet> InjectiveMap::image_periodic(
    const UltimatelyPeriodicSet& set) const {
  // Each family certifies a preperiod Q and period P for the image word;
  // the image is then tabulated through the inverse and minimized.
  auto tabulate = [&](std::uint64_t Q, std::uint64_t P) -> std::optional<UltimatelyPeriodicSet> {
    if (Q > UltimatelyPeriodicSet::kMaxWordLength || P > UltimatelyPeriodicSet::kMaxWordLength ||
        Q + P > UltimatelyPeriodicSet::kMaxWordLength)
      return std::nullopt;
    return UltimatelyPeriodicSet::tabulate(Q, P, [&](std::uint64_t m) {
             auto a = inverse(m);
             return a && set.contains(*a);
           }).minimized();
  };
  const std::uint64_t q = set.preperiod_length();
  const std::uint64_t p = set.period_length();
  return std::visit(
      overloaded{
          [&](const Identity&) -> std::optional<UltimatelyPeriodicSet> { return set; },
          [&](const Dilate& d) { return tabulate(d.factor * q, d.factor * p); },
          // beyond 2q+3 both branches of the inverse land past the preperiod,
          // and m -> m + 3p shifts every preimage by a multiple of p
          [&](const Interleave3&) { return tabulate(2 * q + 3, 3 * p); },
          [&](const BlockPermutation& b) {
            const std::uint64_t g = std::gcd(b.cycle, p);
            if (b.cycle / g > UltimatelyPeriodicSet::kMaxWordLength / p)
              return std::optional<UltimatelyPeriodicSet>{};
            return tabulate(q + b.max_size, b.cycle / g * p);
          },
          [&](const FinitePermutation& fp) {
            return tabulate(std::max<std::uint64_t>(q, fp.forward.size()), p);
          },
          [&](const Composed& c) -> std::optional<UltimatelyPeriodicSet> {
            auto mid = c.inner->image_periodic(set);
            if (!mid) return std::nullopt;
            return c.outer->image_periodic(*mid);
          },
      },
      repr_);
}

std::optional<Rational> InjectiveMap::image_density() const {
  auto image = image_periodic(UltimatelyPeriodicSet::all());
  if (!image) return std::nullopt;
  return image->density();
}

bool InjectiveMap::is_permutation() const {
  auto lambda = image_density();
  auto image = image_periodic(UltimatelyPeriodicSet::all());
  return lambda && *lambda == 1 && image->same_set(UltimatelyPeriodicSet::all());
}

std::uint64_t preimage_bound_by_scan(const InjectiveMap& f, std::uint64_t L,
                                     std::uint64_t scan_horizon) {
  std::uint64_t best = 0;
  for (std::uint64_t n = 1; n <= scan_horizon; ++n)
    if (f.apply(n) <= L) best = n;
  return best;
}

namespace {

using detail::CursorImpl;
using detail::SetNode;

class ImageCursor final : public CursorImpl {
 public:
  ImageCursor(InjectiveMap f, Cursor source) : f_(std::move(f)), source_(std::move(source)) {}

  std::optional<std::uint64_t> next(std::uint64_t limit) override {
    if (limit > pos_) {
      // every a with f(a) <= limit satisfies a <= bound
      const std::uint64_t bound = f_.preimage_bound(limit);
      while (auto a = source_.next(bound)) pending_.push(f_.apply(*a));
    }
    if (!pending_.empty() && pending_.top() <= limit) {
      pos_ = pending_.top();
      pending_.pop();
      return pos_;
    }
    pos_ = std::max(pos_, limit);
    return std::nullopt;
  }

 private:
  InjectiveMap f_;
  Cursor source_;
  std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> pending_;
};

class ImageNode final : public SetNode {
 public:
  ImageNode(InjectiveMap f, IntSet source, std::optional<UltimatelyPeriodicSet> shortcut)
      : f_(std::move(f)), source_(std::move(source)), shortcut_(std::move(shortcut)) {}

  bool contains(std::uint64_t m) const override {
    auto a = f_.inverse(m);
    return a && source_.contains(*a);
  }

  std::uint64_t count(std::uint64_t L) const override {
    if (shortcut_) return shortcut_->count(L);
    if (L == 0) return 0;
    const std::uint64_t bound = f_.preimage_bound(L);
    Cursor cursor = source_.cursor();
    std::uint64_t c = 0;
    while (auto a = cursor.next(bound))
      if (f_.apply(*a) <= L) ++c;
    return c;
  }

  bool fast_count() const override { return shortcut_.has_value(); }

  std::unique_ptr<CursorImpl> make_cursor(std::shared_ptr<const SetNode>) const override {
    return std::make_unique<ImageCursor>(f_, source_.cursor());
  }

  const UltimatelyPeriodicSet* periodic() const override {
    return shortcut_ ? &*shortcut_ : nullptr;
  }

  std::string describe() const override {
    return "image(" + f_.describe() + "," + source_.describe() + ")";
  }

 private:
  InjectiveMap f_;
  IntSet source_;
  std::optional<UltimatelyPeriodicSet> shortcut_;
};

}  // namespace

IntSet image_set(const InjectiveMap& f, const IntSet& set) {
  std::optional<UltimatelyPeriodicSet> shortcut;
  if (const UltimatelyPeriodicSet* up = set.periodic_form()) shortcut = f.image_periodic(*up);
  auto node = std::make_shared<ImageNode>(f, set, shortcut);
  if (!shortcut) return IntSet(node, std::nullopt, std::nullopt);
  UltimatelyPeriodicSet image = *shortcut;
  Modulus m{[image](const Rational& eps) { return image.modulus(eps); }, true};
  return IntSet(node, image.density(), std::move(m), image.deviation_constant());
}

DensityReport lambda_estimate(const InjectiveMap& f, std::uint64_t horizon,
                              const CheckpointSchedule& schedule) {
  if (horizon < 10) throw PreconditionError("lambda estimate needs horizon >= 10");
  IntSet image = image_set(f, IntSet::periodic(UltimatelyPeriodicSet::all()));
  DensityReport report = estimate_densities(image, schedule, horizon);
  report.exact_density = f.image_density();
  return report;
}

InjectivityResult verify_injective_prefix(const std::function<std::uint64_t(std::uint64_t)>& f,
                                          std::uint64_t n) {
  if (n == 0) throw PreconditionError("injectivity check needs n >= 1");
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  seen.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    auto [it, inserted] = seen.emplace(f(i), i);
    if (!inserted) return {false, std::make_pair(it->second, i)};
  }
  return {};
}

InjectivityResult verify_injective_prefix(const InjectiveMap& f, std::uint64_t n) {
  return verify_injective_prefix([&](std::uint64_t i) { return f.apply(i); }, n);
}

}  // namespace adkit
