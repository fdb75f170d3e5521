#include "adkit/commands.hpp"

#include "adkit/error.hpp"
#include "adkit/injective_map.hpp"
#include "adkit/parse.hpp"
#include "adkit/rational_transfer.hpp"
#include "adkit/refuter.hpp"

namespace adkit {

namespace {

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string optional_double(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string("n/a");
}

void common_meta(Table& t, const RunConfig& config) {
  t.add_meta("horizon", std::to_string(config.horizon));
  t.add_meta("checkpoints", config.checkpoints_spec);
}

}  // namespace

void RunConfig::validate() const {
  if (horizon < 100) throw PreconditionError("horizon must be at least 100");
  if (depth < 2) throw PreconditionError("depth must be at least 2");
  checkpoints();
  eps();
}

CheckpointSchedule RunConfig::checkpoints() const {
  return parse_checkpoint_schedule(checkpoints_spec);
}

EpsilonSchedule RunConfig::eps() const { return parse_epsilon_schedule(eps_spec); }

CommandResult cmd_density(std::string_view set_expr, const RunConfig& config) {
  config.validate();
  const IntSet set = parse_set_expr(set_expr);
  const DensityReport rep = estimate_densities(set, config.checkpoints(), config.horizon);

  CommandResult out;
  Table& t = out.table;
  t.add_meta("command", "density");
  t.add_meta("expr", std::string(set_expr));
  t.add_meta("exact_density", rep.exact_density ? to_string(*rep.exact_density) : "unknown");
  t.add_meta("certified", yes_no(rep.certified));
  t.add_meta("deviation_bound",
             set.deviation_bound() ? std::to_string(*set.deviation_bound()) : "n/a");
  common_meta(t, config);
  t.add_meta("tail_from_n", std::to_string(rep.checkpoints[rep.tail_start].n));
  t.add_meta("empirical_lower", format_double(rep.empirical_lower));
  t.add_meta("empirical_upper", format_double(rep.empirical_upper));
  t.add_meta("note", "empirical_lower/upper are tail min/max of A(n)/n, proxies for d_L/d_U");
  t.columns = {"n", "count", "ratio", "error_bound"};
  for (const Checkpoint& cp : rep.checkpoints)
    t.rows.push_back({cp.n, cp.count, cp.ratio,
                      cp.error_bound ? Cell(*cp.error_bound) : Cell(std::monostate{})});
  return out;
}

CommandResult cmd_intertwine(std::string_view set_a, std::string_view set_b,
                             const RunConfig& config) {
  config.validate();
  const IntSet a = parse_set_expr(set_a);
  const IntSet b = parse_set_expr(set_b);
  if (!a.exact_density() || !b.exact_density())
    throw PreconditionError("intertwine needs sets with exact density");
  const Rational gamma = *a.exact_density();
  const EpsilonSchedule eps = config.eps();

  const ThresholdSequence thresholds = compute_thresholds(a, b, gamma, eps, config.depth);
  const InterleavePlan plan = build_plan(thresholds, eps);
  const IntSet c = intertwine(a, b, plan, config.horizon);
  const BoundReport rep = verify_bound(c, plan, config.checkpoints(), config.horizon);

  CommandResult out;
  Table& t = out.table;
  t.add_meta("command", "intertwine");
  t.add_meta("set_a", std::string(set_a));
  t.add_meta("set_b", std::string(set_b));
  t.add_meta("gamma", to_string(gamma));
  t.add_meta("eps", eps.describe());
  t.add_meta("depth", std::to_string(config.depth));
  common_meta(t, config);
  t.add_meta("M", join(plan.M));
  t.add_meta("N", join(plan.N));
  t.add_meta("certified", yes_no(rep.certified));
  t.add_meta("truncated_tail", yes_no(rep.truncated));
  t.add_meta("result", rep.pass ? "pass" : "fail");
  t.columns = {"k",     "window_lo", "window_hi", "checkpoints", "max_deviation",
               "bound", "min_slack", "truncated", "pass"};
  for (const WindowCheck& w : rep.windows)
    t.rows.push_back({static_cast<std::uint64_t>(w.k), w.lo, w.hi,
                      static_cast<std::uint64_t>(w.checkpoints), w.max_deviation,
                      to_string(w.bound), w.min_slack, w.truncated, w.pass});
  out.exit_code = rep.pass ? kExitPass : kExitBoundFailure;
  return out;
}

CommandResult cmd_refute(std::string_view map_expr, std::string_view set_a,
                         std::string_view set_b, const RunConfig& config) {
  config.validate();
  const InjectiveMap f = parse_map_expr(map_expr);
  const IntSet a = parse_set_expr(set_a);
  const IntSet b = parse_set_expr(set_b);
  const EpsilonSchedule eps = config.eps();

  const RefutationInstance inst = make_refutation_instance(f, a, b, eps);
  const ThresholdSequence thresholds = compute_joint_thresholds(inst, config.depth);
  const PairedPlan plan = build_paired_plan(inst, thresholds, config.depth);
  const IntSet c = build_witness(inst, plan, config.horizon);
  const OscillationReport osc = evaluate_oscillation(inst, plan, c, config.horizon);
  const BoundReport witness =
      verify_bound(c, as_interleave_plan(inst, plan), config.checkpoints(), config.horizon);

  const Rational half_spread = (inst.beta - inst.alpha) / 2;
  CommandResult out;
  Table& t = out.table;
  t.add_meta("command", "refute");
  t.add_meta("map", f.describe());
  t.add_meta("set_a", std::string(set_a));
  t.add_meta("set_b", std::string(set_b));
  t.add_meta("gamma", to_string(inst.gamma));
  t.add_meta("alpha", to_string(inst.alpha));
  t.add_meta("beta", to_string(inst.beta));
  t.add_meta("eps", eps.describe());
  t.add_meta("depth", std::to_string(config.depth));
  common_meta(t, config);
  t.add_meta("M", join(plan.M));
  t.add_meta("L", join(plan.L));
  t.add_meta("N", join(plan.N));
  t.add_meta("witness_density_bound", witness.pass ? "pass" : "fail");
  t.add_meta("even_checks_passed", std::to_string(osc.even_passed));
  t.add_meta("odd_checks_passed", std::to_string(osc.odd_passed));
  t.add_meta("min_even_ratio", optional_double(osc.min_even_ratio));
  t.add_meta("max_odd_ratio", optional_double(osc.max_odd_ratio));
  t.add_meta("gap", optional_double(osc.gap));
  t.add_meta("half_spread", to_string(half_spread));
  t.add_meta("note",
             "the map sends two sets of equal density to sets of different density, so it "
             "does not preserve density; the table shows f(C) oscillating while d(C) = gamma");
  t.columns = {"k", "L_k", "ratio", "bound", "pass", "side", "count", "sandwich", "sandwich_ok"};
  for (const OscillationRow& row : osc.rows)
    t.rows.push_back({static_cast<std::uint64_t>(row.index), row.L, row.ratio, to_string(row.bound),
                      row.pass, std::string(row.even ? "even" : "odd"), row.count, row.sandwich,
                      row.sandwich_ok});
  out.exit_code = osc.pass && witness.pass ? kExitPass : kExitBoundFailure;
  return out;
}

CommandResult cmd_transfer(std::string_view map_expr, std::uint64_t s,
                           std::optional<std::uint64_t> r, const RunConfig& config) {
  config.validate();
  if (s < 1) throw PreconditionError("s must be at least 1");
  if (r && (*r < 1 || *r > s)) throw PreconditionError("need 1 <= r <= s");
  const InjectiveMap f = parse_map_expr(map_expr);

  std::vector<FHatRow> rows;
  if (r) {
    rows.push_back(fhat_estimate(f, *r, s, config.horizon));
  } else {
    for (std::uint64_t i = 0; i <= s; ++i) rows.push_back(fhat_estimate(f, i, s, config.horizon));
  }
  const bool monotone = fhat_monotone(rows);

  bool additivity = true;
  std::size_t samples = 0;
  std::optional<TransferReport> check;
  for (std::uint64_t i = r ? *r : 1; i <= (r ? *r : s); ++i) {
    TransferReport rep = transfer_check(f, s, i, config.horizon, config.checkpoints());
    additivity = additivity && rep.additivity_ok;
    samples += rep.additivity_samples;
    if (!check) check = rep;
  }

  const auto lambda = f.image_density();
  CommandResult out;
  Table& t = out.table;
  t.add_meta("command", "transfer");
  t.add_meta("map", f.describe());
  t.add_meta("lambda", lambda ? to_string(*lambda) : "uncertified");
  t.add_meta("s", std::to_string(s));
  t.add_meta("r", r ? std::to_string(*r) : "all");
  common_meta(t, config);
  if (r && check) {
    t.add_meta("expected_density", to_string(check->expected));
    t.add_meta("estimated_density", format_double(check->estimate));
    t.add_meta("tolerance", format_double(check->tolerance));
    t.add_meta("density_scaling", check->within_tolerance ? "holds" : "violated");
  }
  t.add_meta("additivity", additivity ? "pass" : "fail");
  t.add_meta("additivity_samples", std::to_string(samples));
  t.add_meta("monotone", monotone ? "pass" : "fail");
  t.columns = {"alpha_num", "alpha_den", "fhat_estimate", "error_bound", "certified", "verdict"};
  for (const FHatRow& row : rows)
    t.rows.push_back({row.r, row.s, row.estimate, row.error_bound, row.certified,
                      to_string(row.verdict)});
  out.exit_code = additivity && monotone ? kExitPass : kExitBoundFailure;
  return out;
}

}  // namespace adkit
