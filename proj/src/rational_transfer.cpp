#include "adkit/rational_transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adkit/error.hpp"

namespace adkit {

ResidueDecomposition residue_classes(std::uint64_t s) {
  if (s < 1) throw PreconditionError("residue modulus must be at least 1");
  ResidueDecomposition out;
  out.modulus = s;
  for (std::uint64_t i = 1; i <= s; ++i)
    out.classes.push_back(UltimatelyPeriodicSet::residue_class(i, s));
  return out;
}

UltimatelyPeriodicSet residue_union(std::uint64_t s, std::uint64_t r) {
  if (s < 1) throw PreconditionError("residue modulus must be at least 1");
  if (r > s) throw PreconditionError("need r <= s");
  std::vector<bool> period(s, false);
  std::fill(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(r), true);
  return UltimatelyPeriodicSet({}, std::move(period));
}

std::optional<std::uint64_t> transfer_constant(const InjectiveMap& f,
                                               const UltimatelyPeriodicSet& a) {
  std::optional<std::uint64_t> best;
  if (auto image = f.image_periodic(a)) best = image->deviation_constant();
  if (auto disp = f.displacement_bound()) {
    const std::uint64_t via_disp = *disp + a.deviation_constant();
    best = best ? std::min(*best, via_disp) : via_disp;
  }
  return best;
}

namespace {

double tail_spread(const IntSet& set, std::uint64_t horizon) {
  DensityReport rep = estimate_densities(set, CheckpointSchedule::standard(), horizon);
  return rep.empirical_upper - rep.empirical_lower;
}

}  // namespace

TransferReport transfer_check(const InjectiveMap& f, std::uint64_t s, std::uint64_t r,
                              std::uint64_t horizon, const CheckpointSchedule& samples) {
  if (r < 1 || r > s) throw PreconditionError("transfer check needs 1 <= r <= s");
  if (horizon < 1) throw PreconditionError("horizon must be positive");
  auto lambda = f.image_density();
  if (!lambda) throw PreconditionError("lambda of " + f.describe() + " is not certified");

  TransferReport rep;
  rep.s = s;
  rep.r = r;
  rep.horizon = horizon;
  rep.lambda = *lambda;
  rep.expected = *lambda * Rational(BigInt(r), BigInt(s));

  const UltimatelyPeriodicSet a = residue_union(s, r);
  const IntSet image = image_set(f, IntSet::periodic(a));
  rep.estimate = static_cast<double>(image.count(horizon)) / static_cast<double>(horizon);

  if (auto constant = transfer_constant(f, a)) {
    rep.tolerance = static_cast<double>(*constant) / static_cast<double>(horizon);
  } else {
    rep.certified = false;
    rep.tolerance = 10 * tail_spread(image, horizon);
  }
  if (*lambda == 0) {
    // lambda = 0 forces d(f(A)) = 0
    rep.within_tolerance = rep.estimate <= rep.tolerance;
  } else {
    rep.within_tolerance = std::abs(rep.estimate - to_double(rep.expected)) <= rep.tolerance;
  }

  // f(N) is the disjoint union of the f(A_i)
  const ResidueDecomposition parts = residue_classes(s);
  std::vector<IntSet> images;
  for (const auto& cls : parts.classes) images.push_back(image_set(f, IntSet::periodic(cls)));
  const IntSet whole = image_set(f, IntSet::periodic(UltimatelyPeriodicSet::all()));
  for (std::uint64_t n : samples.with_mandatory({horizon}).points(horizon)) {
    std::uint64_t sum = 0;
    for (const IntSet& im : images) sum += im.count(n);
    ++rep.additivity_samples;
    if (sum != whole.count(n)) rep.additivity_ok = false;
  }
  rep.pass = rep.within_tolerance && rep.additivity_ok;
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kIdentity:
      return "IDENTITY";
    case Verdict::kNonIdentity:
      return "NON-IDENTITY";
    case Verdict::kInconclusive:
      return "INCONCLUSIVE";
    case Verdict::kUndefined:
      return "UNDEFINED(lambda=0)";
  }
  return "INCONCLUSIVE";
}

FHatRow fhat_estimate(const InjectiveMap& f, std::uint64_t r, std::uint64_t s,
                      std::uint64_t horizon) {
  if (s < 1 || r > s) throw PreconditionError("need 0 <= r <= s, s >= 1");
  if (horizon < 1) throw PreconditionError("horizon must be positive");
  FHatRow row;
  row.r = r;
  row.s = s;
  auto lambda = f.image_density();
  if (!lambda || *lambda == 0) {
    row.certified = lambda.has_value();
    row.verdict = lambda ? Verdict::kUndefined : Verdict::kInconclusive;
    return row;
  }
  const double lam = to_double(*lambda);
  const UltimatelyPeriodicSet a = residue_union(s, r);
  const IntSet image = image_set(f, IntSet::periodic(a));
  const double h = static_cast<double>(horizon);
  row.estimate = static_cast<double>(image.count(horizon)) / (lam * h);

  if (auto constant = transfer_constant(f, a)) {
    row.error_bound = static_cast<double>(*constant) / (lam * h);
  } else {
    row.certified = false;
    row.error_bound = 10 * tail_spread(image, horizon) / lam;
  }
  const double alpha = static_cast<double>(r) / static_cast<double>(s);
  if (std::abs(row.estimate - alpha) <= row.error_bound)
    row.verdict = Verdict::kIdentity;
  else
    row.verdict = row.certified ? Verdict::kNonIdentity : Verdict::kInconclusive;
  return row;
}

std::vector<FHatRow> fhat_table(const InjectiveMap& f, std::uint64_t max_s, std::uint64_t horizon) {
  if (max_s < 1) throw PreconditionError("table needs max_s >= 1");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> fractions;
  for (std::uint64_t s = 1; s <= max_s; ++s)
    for (std::uint64_t r = 0; r <= s; ++r)
      if (std::gcd(r, s) == 1) fractions.emplace_back(r, s);
  std::sort(fractions.begin(), fractions.end(), [](const auto& x, const auto& y) {
    return x.first * y.second < y.first * x.second;
  });
  std::vector<FHatRow> rows;
  rows.reserve(fractions.size());
  for (auto [r, s] : fractions) rows.push_back(fhat_estimate(f, r, s, horizon));
  return rows;
}

bool fhat_monotone(const std::vector<FHatRow>& table) {
  for (std::size_t i = 1; i < table.size(); ++i) {
    const double slack = 2 * std::max(table[i - 1].error_bound, table[i].error_bound);
    if (table[i].estimate < table[i - 1].estimate - slack) return false;
  }
  return true;
}

}  // namespace adkit
