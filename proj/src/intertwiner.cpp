#include "adkit/intertwiner.hpp"

#include <algorithm>

#include "adkit/error.hpp"

namespace adkit {

EpsilonSchedule EpsilonSchedule::geometric(Rational scale, Rational ratio) {
  if (scale <= 0) throw PreconditionError("epsilon scale must be positive");
  if (ratio <= 0 || ratio >= 1) throw PreconditionError("epsilon ratio must lie in (0, 1)");
  if (scale * ratio >= 1) throw PreconditionError("epsilon_1 = scale * ratio must be below 1");
  EpsilonSchedule s;
  s.scale_ = std::move(scale);
  s.ratio_ = std::move(ratio);
  return s;
}

EpsilonSchedule EpsilonSchedule::from_values(std::vector<Rational> values) {
  if (values.empty()) throw PreconditionError("epsilon schedule needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0 || values[i] >= 1)
      throw PreconditionError("epsilon values must lie in (0, 1)");
    if (i > 0 && values[i] >= values[i - 1])
      throw PreconditionError("epsilon schedule must be strictly decreasing");
  }
  EpsilonSchedule s;
  s.geometric_ = false;
  s.values_ = std::move(values);
  return s;
}

EpsilonSchedule EpsilonSchedule::standard() {
  return geometric(make_rational(1, 2), make_rational(1, 2));
}

Rational EpsilonSchedule::at(std::size_t k) const {
  if (k == 0) throw PreconditionError("epsilon indices start at 1");
  if (!geometric_) {
    if (k > values_.size())
      throw PreconditionError("epsilon schedule has only " + std::to_string(values_.size()) +
                              " terms");
    return values_[k - 1];
  }
  Rational out = scale_;
  for (std::size_t i = 0; i < k; ++i) out *= ratio_;
  return out;
}

std::optional<std::size_t> EpsilonSchedule::length() const {
  if (geometric_) return std::nullopt;
  return values_.size();
}

std::string EpsilonSchedule::describe() const {
  if (geometric_) return "geo(" + to_string(scale_) + "," + to_string(ratio_) + ")";
  std::string out = "list(";
  for (std::size_t i = 0; i < values_.size(); ++i) out += (i ? "," : "") + to_string(values_[i]);
  return out + ")";
}

void InterleavePlan::validate() const {
  if (N.size() < 2) throw PlanError("plan needs depth >= 2");
  if (M.size() != N.size()) throw PlanError("plan thresholds and splice points differ in length");
  for (std::size_t k = 1; k <= N.size(); ++k) {
    if (M[k - 1] > N[k - 1])
      throw PlanError("M_" + std::to_string(k) + " = " + std::to_string(M[k - 1]) + " exceeds N_" +
                      std::to_string(k) + " = " + std::to_string(N[k - 1]));
    if (k >= 2) {
      Rational rhs = eps.at(k - 1) * Rational(BigInt(N[k - 1]));
      if (Rational(BigInt(N[k - 2])) > rhs)
        throw PlanError("N_" + std::to_string(k - 1) + " = " + std::to_string(N[k - 2]) +
                        " exceeds eps_" + std::to_string(k - 1) + " * N_" + std::to_string(k) +
                        " = " + to_string(rhs));
    }
  }
}

ThresholdSequence compute_thresholds(const IntSet& a, const IntSet& b, const Rational& gamma,
                                     const EpsilonSchedule& eps, std::size_t depth) {
  if (gamma <= 0)
    throw PreconditionError("intertwining requires a common density gamma > 0");
  if (!a.exact_density() || !b.exact_density())
    throw PreconditionError("both sets need an exact density");
  if (!a.modulus() || !b.modulus())
    throw PreconditionError("both sets need a convergence modulus");
  const Rational& da = *a.exact_density();
  const Rational& db = *b.exact_density();
  if (da != db)
    throw PreconditionError("density mismatch " + to_string(da) + " ≠ " + to_string(db));
  if (da != gamma)
    throw PreconditionError("density mismatch " + to_string(da) + " ≠ " + to_string(gamma));
  if (depth == 0) throw PreconditionError("threshold depth must be at least 1");

  ThresholdSequence out;
  out.gamma = gamma;
  out.certified = a.certified() && b.certified();
  out.M.reserve(depth);
  for (std::size_t k = 1; k <= depth; ++k) {
    const Rational e = eps.at(k);
    out.M.push_back(std::max({a.modulus()->at(e), b.modulus()->at(e), std::uint64_t{1}}));
  }
  return out;
}

InterleavePlan build_plan(const ThresholdSequence& thresholds, const EpsilonSchedule& eps) {
  if (thresholds.depth() < 2) throw PreconditionError("plan needs depth >= 2");
  InterleavePlan plan{thresholds.M, {}, thresholds.gamma, eps, thresholds.certified};
  plan.N.push_back(thresholds.at(1));
  for (std::size_t k = 2; k <= thresholds.depth(); ++k) {
    const std::uint64_t spread = ceil_u64(Rational(BigInt(plan.N.back())) / eps.at(k - 1));
    plan.N.push_back(std::max(thresholds.at(k), spread));
  }
  plan.validate();
  return plan;
}

IntSet intertwine(const IntSet& a, const IntSet& b, const InterleavePlan& plan,
                  std::uint64_t horizon) {
  plan.validate();
  const std::uint64_t limit = std::max(horizon, plan.last());
  std::vector<Segment> segments;
  // window (N_k, N_{k+1}] draws from A for odd k, from B for even k
  for (std::size_t k = 1; k < plan.depth(); ++k)
    segments.push_back({plan.at(k) + 1, plan.at(k + 1), k % 2 == 1 ? a : b});
  if (limit > plan.last())
    segments.push_back({plan.last() + 1, limit, plan.depth() % 2 == 1 ? a : b});
  std::string name = "intertwine(" + a.describe() + "," + b.describe() + ")";
  return splice(std::move(segments), std::move(name), limit);
}

BoundReport verify_bound(const IntSet& c, const InterleavePlan& plan,
                         const CheckpointSchedule& schedule, std::uint64_t horizon) {
  plan.validate();
  if (horizon < plan.at(2))
    throw PreconditionError("verification horizon must reach N_2 = " +
                            std::to_string(plan.at(2)));

  BoundReport report;
  report.horizon = horizon;
  report.truncated = truncated_tail(plan, horizon);
  report.certified = plan.certified;

  std::vector<std::uint64_t> mandatory{horizon};
  for (std::uint64_t n : plan.N) {
    mandatory.push_back(n);
    mandatory.push_back(n + 1);
  }
  const std::vector<std::uint64_t> points = schedule.with_mandatory(mandatory).points(horizon);

  for (std::size_t k = 2; k <= plan.depth() && plan.at(k) < horizon; ++k) {
    WindowCheck w;
    w.k = k;
    w.lo = plan.at(k);
    w.truncated = k == plan.depth();
    w.hi = w.truncated ? horizon : std::min(plan.at(k + 1), horizon);
    w.bound = 5 * plan.eps.at(k - 1);
    w.min_slack = to_double(w.bound);
    report.windows.push_back(w);
  }

  Cursor cursor = c.cursor();
  std::uint64_t running = 0;
  std::size_t wi = 0;
  for (std::uint64_t n : points) {
    running += cursor.skip_count(n);
    while (wi < report.windows.size() && n > report.windows[wi].hi) ++wi;
    if (wi == report.windows.size()) break;
    WindowCheck& w = report.windows[wi];
    if (n <= w.lo) continue;

    const Rational deviation = abs(Rational(BigInt(running), BigInt(n)) - plan.gamma);
    const double dev = to_double(deviation);
    ++w.checkpoints;
    w.max_deviation = std::max(w.max_deviation, dev);
    w.min_slack = std::min(w.min_slack, to_double(w.bound - deviation));
    if (!(deviation < w.bound) && w.pass) {
      w.pass = false;
      w.witness = n;
    }
  }
  for (const WindowCheck& w : report.windows) report.pass = report.pass && w.pass;
  return report;
}

}  // namespace adkit
