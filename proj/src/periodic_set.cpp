#include "adkit/periodic_set.hpp"

#include <algorithm>
#include <numeric>

#include "adkit/error.hpp"

namespace adkit {

namespace {

std::vector<std::uint64_t> prefix_ones(const std::vector<bool>& word) {
  std::vector<std::uint64_t> out(word.size() + 1, 0);
  for (std::size_t i = 0; i < word.size(); ++i) out[i + 1] = out[i] + (word[i] ? 1 : 0);
  return out;
}

void check_size(std::uint64_t q, std::uint64_t p) {
  if (p == 0) throw PreconditionError("period must be non-empty");
  if (q > UltimatelyPeriodicSet::kMaxWordLength || p > UltimatelyPeriodicSet::kMaxWordLength ||
      q + p > UltimatelyPeriodicSet::kMaxWordLength)
    throw PreconditionError("periodic representation too large (q=" + std::to_string(q) +
                            ", p=" + std::to_string(p) + ")");
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t scaled = a / g;
  if (scaled > UltimatelyPeriodicSet::kMaxWordLength / b + 1)
    throw PreconditionError("periodic representation too large (lcm of periods overflows)");
  return scaled * b;
}

template <typename Op>
UltimatelyPeriodicSet combine(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b, Op op) {
  std::uint64_t q = std::max(a.preperiod_length(), b.preperiod_length());
  std::uint64_t p = checked_lcm(a.period_length(), b.period_length());
  return UltimatelyPeriodicSet::tabulate(q, p, [&](std::uint64_t n) {
           return op(a.contains(n), b.contains(n));
         }).minimized();
}

}  // namespace

UltimatelyPeriodicSet::UltimatelyPeriodicSet(std::vector<bool> preperiod, std::vector<bool> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  check_size(preperiod_.size(), period_.size());
  pre_prefix_ = prefix_ones(preperiod_);
  per_prefix_ = prefix_ones(period_);
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::from_words(std::string_view preperiod,
                                                        std::string_view period) {
  auto to_bits = [](std::string_view word) {
    std::vector<bool> bits;
    bits.reserve(word.size());
    for (char c : word) {
      if (c != '0' && c != '1')
        throw PreconditionError("characteristic words use only '0' and '1'");
      bits.push_back(c == '1');
    }
    return bits;
  };
  return UltimatelyPeriodicSet(to_bits(preperiod), to_bits(period));
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::all() { return UltimatelyPeriodicSet({}, {true}); }
UltimatelyPeriodicSet UltimatelyPeriodicSet::none() { return UltimatelyPeriodicSet({}, {false}); }

UltimatelyPeriodicSet UltimatelyPeriodicSet::residue_class(std::uint64_t residue,
                                                           std::uint64_t modulus) {
  if (modulus == 0) throw PreconditionError("residue class modulus must be at least 1");
  check_size(0, modulus);
  std::vector<bool> period(modulus, false);
  // position j (1-based) holds n = j; n = residue (mod m) <=> j - 1 = (residue - 1) mod m
  period[(residue % modulus + modulus - 1) % modulus] = true;
  return UltimatelyPeriodicSet({}, std::move(period));
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::interval(std::uint64_t lo, std::uint64_t hi) {
  if (lo == 0 || lo > hi)
    throw PreconditionError("empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  check_size(hi, 1);
  std::vector<bool> pre(hi, false);
  for (std::uint64_t n = lo; n <= hi; ++n) pre[n - 1] = true;
  return UltimatelyPeriodicSet(std::move(pre), {false});
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::tabulate(
    std::uint64_t q, std::uint64_t p, const std::function<bool(std::uint64_t)>& membership) {
  check_size(q, p);
  std::vector<bool> pre(q), per(p);
  for (std::uint64_t n = 1; n <= q; ++n) pre[n - 1] = membership(n);
  for (std::uint64_t j = 1; j <= p; ++j) per[j - 1] = membership(q + j);
  return UltimatelyPeriodicSet(std::move(pre), std::move(per));
}

bool UltimatelyPeriodicSet::contains(std::uint64_t n) const {
  if (n == 0) return false;
  const std::uint64_t q = preperiod_.size();
  if (n <= q) return preperiod_[n - 1];
  return period_[(n - q - 1) % period_.size()];
}

std::uint64_t UltimatelyPeriodicSet::count(std::uint64_t n) const {
  const std::uint64_t q = preperiod_.size();
  if (n <= q) return pre_prefix_[n];
  const std::uint64_t p = period_.size();
  const std::uint64_t tail = n - q;
  return pre_prefix_[q] + (tail / p) * per_prefix_[p] + per_prefix_[tail % p];
}

Rational UltimatelyPeriodicSet::density() const {
  return Rational(BigInt(per_prefix_.back()), BigInt(period_.size()));
}

std::uint64_t UltimatelyPeriodicSet::modulus(const Rational& eps) const {
  if (eps <= 0) throw PreconditionError("modulus requires eps > 0");
  return std::max<std::uint64_t>(1, ceil_u64(Rational(BigInt(deviation_constant())) / eps));
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::minimized() const {
  const std::size_t p = period_.size();
  std::size_t best = p;
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < p && ok; ++i) ok = period_[i] == period_[i - d];
    if (ok) {
      best = d;
      break;
    }
  }
  std::vector<bool> per(period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(best));
  std::vector<bool> pre = preperiod_;
  // pre·c·(w c)^ω = pre·(c w)^ω
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
  }
  return UltimatelyPeriodicSet(std::move(pre), std::move(per));
}

bool UltimatelyPeriodicSet::same_set(const UltimatelyPeriodicSet& other) const {
  UltimatelyPeriodicSet a = minimized();
  UltimatelyPeriodicSet b = other.minimized();
  return a.preperiod_ == b.preperiod_ && a.period_ == b.period_;
}

std::string UltimatelyPeriodicSet::to_string() const {
  std::string out;
  for (bool b : preperiod_) out.push_back(b ? '1' : '0');
  out.push_back('|');
  for (bool b : period_) out.push_back(b ? '1' : '0');
  return out;
}

UltimatelyPeriodicSet up_union(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

UltimatelyPeriodicSet up_intersect(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

UltimatelyPeriodicSet up_difference(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

UltimatelyPeriodicSet up_complement(const UltimatelyPeriodicSet& a) {
  std::vector<bool> pre = a.preperiod();
  std::vector<bool> per = a.period();
  pre.flip();
  per.flip();
  return UltimatelyPeriodicSet(std::move(pre), std::move(per)).minimized();
}

UltimatelyPeriodicSet up_window(const UltimatelyPeriodicSet& a, std::uint64_t lo, std::uint64_t hi) {
  return up_intersect(a, UltimatelyPeriodicSet::interval(lo, hi));
}

}  // namespace adkit
