#include "adkit/refuter.hpp"

#include <algorithm>

#include "adkit/error.hpp"

namespace adkit {

RefutationInstance make_refutation_instance(const InjectiveMap& f, const IntSet& a,
                                            const IntSet& b, const EpsilonSchedule& eps) {
  if (!a.exact_density() || !b.exact_density())
    throw PreconditionError("both sets need an exact density");
  if (*a.exact_density() != *b.exact_density())
    throw PreconditionError("density mismatch " + to_string(*a.exact_density()) +
                            " ≠ " + to_string(*b.exact_density()));
  const Rational gamma = *a.exact_density();
  if (gamma <= 0) throw PreconditionError("intertwining requires a common density gamma > 0");

  IntSet image_a = image_set(f, a);
  IntSet image_b = image_set(f, b);
  if (!image_a.exact_density() || !image_b.exact_density() || !image_a.certified() ||
      !image_b.certified())
    throw PreconditionError("image densities under " + f.describe() + " are not certified");
  const Rational alpha = *image_a.exact_density();
  const Rational beta = *image_b.exact_density();
  if (alpha == beta)
    throw PreconditionError("no refutation possible; map transfers these sets equally (alpha = beta = " +
                            to_string(alpha) + ")");
  if (alpha > beta)
    throw PreconditionError("alpha = " + to_string(alpha) + " exceeds beta = " + to_string(beta) +
                            "; swap the two sets");
  return RefutationInstance{f, a, b, image_a, image_b, gamma, alpha, beta, eps};
}

ThresholdSequence compute_joint_thresholds(const RefutationInstance& inst, std::size_t depth) {
  if (depth == 0) throw PreconditionError("threshold depth must be at least 1");
  const IntSet* sets[] = {&inst.a, &inst.b, &inst.image_a, &inst.image_b};
  ThresholdSequence out;
  out.gamma = inst.gamma;
  for (const IntSet* s : sets) {
    if (!s->modulus()) throw PreconditionError(s->describe() + " has no convergence modulus");
    out.certified = out.certified && s->certified();
  }
  for (std::size_t k = 1; k <= depth; ++k) {
    const Rational e = inst.eps.at(k);
    std::uint64_t m = 1;
    for (const IntSet* s : sets) m = std::max(m, s->modulus()->at(e));
    out.M.push_back(m);
  }
  return out;
}

void PairedPlan::validate(const InjectiveMap& f, const EpsilonSchedule& eps) const {
  const std::size_t d = depth();
  if (d == 0 || L.size() != d || M.size() != d) throw PlanError("malformed paired plan");
  if (L[0] != M[0] || N[0] != M[0]) throw PlanError("L_1 and N_1 must equal M_1");
  auto name = [](const char* s, std::size_t k) { return std::string(s) + "_" + std::to_string(k); };
  for (std::size_t k = 2; k <= d; ++k) {
    const Rational e = eps.at(k - 1);
    if (l_at(k) <= std::max(l_at(k - 1), M[k - 1]))
      throw PlanError(name("L", k) + " must exceed max(L_{k-1}, M_k)");
    if (e * Rational(BigInt(l_at(k))) <= Rational(BigInt(n_at(k - 1))))
      throw PlanError("eps_" + std::to_string(k - 1) + " * " + name("L", k) + " must exceed " +
                      name("N", k - 1));
    if (n_at(k) <= l_at(k)) throw PlanError(name("N", k) + " must exceed " + name("L", k));
    if (f.preimage_bound(l_at(k)) > n_at(k))
      throw PlanError("some n > " + name("N", k) + " maps into [1, " + name("L", k) + "]");
    if (e * Rational(BigInt(n_at(k))) <= Rational(BigInt(n_at(k - 1))))
      throw PlanError("eps_" + std::to_string(k - 1) + " * " + name("N", k) + " must exceed " +
                      name("N", k - 1));
  }
}

PairedPlan build_paired_plan(const RefutationInstance& inst, const ThresholdSequence& thresholds,
                             std::size_t depth) {
  if (depth < 3) throw PreconditionError("paired plan needs depth >= 3");
  if (thresholds.depth() < depth)
    throw PreconditionError("only " + std::to_string(thresholds.depth()) + " thresholds available");
  PairedPlan plan;
  plan.M.assign(thresholds.M.begin(), thresholds.M.begin() + static_cast<std::ptrdiff_t>(depth));
  plan.L.push_back(plan.M[0]);
  plan.N.push_back(plan.M[0]);
  for (std::size_t k = 2; k <= depth; ++k) {
    const std::uint64_t above = std::max(plan.L.back(), plan.M[k - 1]) + 1;
    // eps L > N  <=>  L >= floor(N / eps) + 1
    const std::uint64_t spread = floor_u64(Rational(BigInt(plan.N.back())) / inst.eps.at(k - 1)) + 1;
    const std::uint64_t l = std::max(above, spread);
    plan.L.push_back(l);
    plan.N.push_back(std::max(l + 1, inst.f.preimage_bound(l)));
  }
  plan.validate(inst.f, inst.eps);
  return plan;
}

InterleavePlan as_interleave_plan(const RefutationInstance& inst, const PairedPlan& plan) {
  InterleavePlan out{plan.M, plan.N, inst.gamma, inst.eps, true};
  out.validate();
  return out;
}

IntSet build_witness(const RefutationInstance& inst, const PairedPlan& plan,
                     std::uint64_t horizon) {
  return intertwine(inst.a, inst.b, as_interleave_plan(inst, plan), horizon);
}

OscillationReport evaluate_oscillation(const RefutationInstance& inst, const PairedPlan& plan,
                                       const IntSet& witness, std::uint64_t horizon) {
  if (plan.depth() < 3 || horizon < plan.l_at(3))
    throw PreconditionError("oscillation check needs horizon >= L_3");
  const IntSet image_c = image_set(inst.f, witness);

  OscillationReport report;
  for (std::size_t j = 2; j <= plan.depth() && plan.l_at(j) <= horizon; ++j) {
    OscillationRow row;
    row.index = j;
    row.L = plan.l_at(j);
    row.even = j % 2 == 0;
    row.count = image_c.count(row.L);
    row.ratio = static_cast<double>(row.count) / static_cast<double>(row.L);
    const Rational slack = 2 * inst.eps.at(j - 1);
    const Rational count(BigInt(row.count));
    const Rational L(BigInt(row.L));
    const auto previous = static_cast<std::int64_t>(plan.n_at(j - 1));
    if (row.even) {
      row.bound = inst.alpha + slack;
      row.sandwich = static_cast<std::int64_t>(inst.image_a.count(row.L)) + previous;
      row.sandwich_ok = static_cast<std::int64_t>(row.count) <= row.sandwich;
      row.pass = row.sandwich_ok && count < row.bound * L;
    } else {
      row.bound = inst.beta - slack;
      row.sandwich = static_cast<std::int64_t>(inst.image_b.count(row.L)) - previous;
      row.sandwich_ok = static_cast<std::int64_t>(row.count) >= row.sandwich;
      row.pass = row.sandwich_ok && count > row.bound * L;
    }
    if (row.even) {
      if (row.pass) ++report.even_passed;
      report.min_even_ratio = std::min(report.min_even_ratio.value_or(row.ratio), row.ratio);
    } else {
      if (row.pass) ++report.odd_passed;
      report.max_odd_ratio = std::max(report.max_odd_ratio.value_or(row.ratio), row.ratio);
    }
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  if (report.min_even_ratio && report.max_odd_ratio)
    report.gap = *report.max_odd_ratio - *report.min_even_ratio;
  return report;
}

}  // namespace adkit
