#include "rkstab/integrator.hpp"

#include <cmath>
#include <limits>

#include "rkstab/tolerances.hpp"

namespace rkstab {

void validate(const IVProblem& prob) {
  if (!prob.rhs) throw ValidationError("problem: right-hand side is not set");
  if (prob.y0.size() < 1) throw ValidationError("problem: empty initial state");
  if (!(prob.t0 < prob.t_end)) throw ValidationError("problem: requires t0 < t_end");
}

namespace {

State evaluate_rhs(const IVProblem& prob, double t, const State& y, long& count) {
  State f = prob.rhs(t, y);
  if (f.size() != y.size())
    throw ValidationError("problem: rhs dimension does not match the state");
  ++count;
  return f;
}

}  // namespace

State pc_step(const IVProblem& prob, double t, const State& y, double h,
              const PCScheme& scheme, PredictorSampling sampling, StepTrace* trace) {
  if (!(h > 0.0)) throw std::invalid_argument("pc_step: requires h > 0");
  validate(scheme);
  const ButcherTableau& tab = scheme.corrector;
  const int s = tab.stages();
  const int m = scheme.corrections;
  long evals = 0;

  // Predictor sweep: all stage states equal y; the s fluxes of one sweep are
  // mutually independent and may be evaluated in any order or concurrently.
  std::vector<State> flux(static_cast<size_t>(s));
  if (sampling == PredictorSampling::stage_times) {
    for (int i = 0; i < s; ++i)
      flux[static_cast<size_t>(i)] = evaluate_rhs(prob, t + tab.c(i) * h, y, evals);
  } else {
    const State shared = evaluate_rhs(prob, t, y, evals);  // evaluated once, broadcast
    for (int i = 0; i < s; ++i) flux[static_cast<size_t>(i)] = shared;
  }
  if (trace) {
    trace->sweeps.clear();
    trace->sweeps.emplace_back(static_cast<size_t>(s), y);
  }

  std::vector<State> stages(static_cast<size_t>(s));
  for (int sweep = 1; sweep <= m; ++sweep) {
    for (int i = 0; i < s; ++i) {
      State acc = y;
      for (int j = 0; j < s; ++j)
        if (tab.A(i, j) != 0.0) acc += (h * tab.A(i, j)) * flux[static_cast<size_t>(j)];
      if (!acc.allFinite()) throw OverflowError(sweep);
      stages[static_cast<size_t>(i)] = std::move(acc);
    }
    for (int i = 0; i < s; ++i)
      flux[static_cast<size_t>(i)] =
          evaluate_rhs(prob, t + tab.c(i) * h, stages[static_cast<size_t>(i)], evals);
    if (trace) trace->sweeps.push_back(stages);
  }

  State out = y;
  for (int i = 0; i < s; ++i)
    if (tab.b(i) != 0.0) out += (h * tab.b(i)) * flux[static_cast<size_t>(i)];
  if (!out.allFinite()) throw OverflowError(m);
  if (trace) trace->flux_evaluations = evals;
  return out;
}

State rk_step(const IVProblem& prob, double t, const State& y, double h,
              const ButcherTableau& tableau) {
  const int s = tableau.stages();
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      if (tableau.A(i, j) != 0.0)
        throw std::invalid_argument("rk_step: tableau must be strictly lower triangular");

  long evals = 0;
  std::vector<State> k(static_cast<size_t>(s));
  for (int i = 0; i < s; ++i) {
    State yi = y;
    for (int j = 0; j < i; ++j)
      if (tableau.A(i, j) != 0.0) yi += (h * tableau.A(i, j)) * k[static_cast<size_t>(j)];
    k[static_cast<size_t>(i)] = evaluate_rhs(prob, t + tableau.c(i) * h, yi, evals);
  }
  State out = y;
  for (int i = 0; i < s; ++i)
    if (tableau.b(i) != 0.0) out += (h * tableau.b(i)) * k[static_cast<size_t>(i)];
  return out;
}

IntegrationResult integrate(const IVProblem& prob, const PCScheme& scheme, double h,
                            PredictorSampling sampling) {
  validate(prob);
  validate(scheme);
  if (!(h > 0.0)) throw std::invalid_argument("integrate: requires h > 0");
  const double span = prob.t_end - prob.t0;
  if (std::lround(span / h) < 1)
    throw std::invalid_argument("integrate: time span must round to at least one step");

  const int s = scheme.corrector.stages();
  const int m = scheme.corrections;
  const long evals_per_step =
      sampling == PredictorSampling::stage_times ? static_cast<long>(s) * (m + 1)
                                                 : static_cast<long>(s) * m + 1;

  IntegrationResult result;
  result.y = prob.y0;
  result.max_state_norm = prob.y0.norm();

  double t = prob.t0;
  long k = 0;
  while (true) {
    // Fold the remainder into the final step once less than h/2 is left past
    // the next full step, i.e. round((t_end - t0)/h) steps in total.
    const double after_next = prob.t0 + static_cast<double>(k + 1) * h;
    const bool last = after_next >= prob.t_end - 0.5 * h;
    const double hs = last ? prob.t_end - t : h;
    try {
      result.y = pc_step(prob, t, result.y, hs, scheme, sampling);
    } catch (const OverflowError& e) {
      throw OverflowError(e.sweep(), k);
    }
    ++k;
    t = last ? prob.t_end : prob.t0 + static_cast<double>(k) * h;
    result.steps = k;
    result.flux_sweeps += m + 1;
    result.flux_evaluations += evals_per_step;
    result.max_state_norm = std::max(result.max_state_norm, result.y.norm());
    if (last) break;
  }
  return result;
}

OrderStudy empirical_order(const IVProblem& prob, const PCScheme& scheme, double h0,
                           int levels, PredictorSampling sampling) {
  validate(prob);
  if (!prob.exact)
    throw std::invalid_argument("empirical_order: problem needs an exact solution");
  if (levels < 3) throw std::invalid_argument("empirical_order: needs levels >= 3");
  if (!(h0 > 0.0)) throw std::invalid_argument("empirical_order: requires h0 > 0");

  const State reference = prob.exact(prob.t_end);
  const double scale = std::max(1.0, reference.lpNorm<Eigen::Infinity>());
  const double saturation = 100.0 * std::numeric_limits<double>::epsilon() * scale;

  OrderStudy study;
  for (int k = 0; k < levels; ++k) {
    const double h = h0 * std::pow(0.5, k);
    const IntegrationResult run = integrate(prob, scheme, h, sampling);
    OrderStudyLevel level;
    level.h = h;
    level.error = (run.y - reference).lpNorm<Eigen::Infinity>();
    level.saturated = level.error < saturation;
    study.levels.push_back(level);
  }
  for (size_t k = 0; k + 1 < study.levels.size(); ++k) {
    const OrderStudyLevel& coarse = study.levels[k];
    const OrderStudyLevel& fine = study.levels[k + 1];
    if (coarse.saturated || fine.saturated) continue;
    study.pair_orders.push_back(std::log2(coarse.error / fine.error));
  }
  if (study.pair_orders.empty()) {
    study.observed_order = std::numeric_limits<double>::quiet_NaN();
  } else {
    double sum = 0.0;
    for (double order : study.pair_orders) sum += order;
    study.observed_order = sum / static_cast<double>(study.pair_orders.size());
  }
  return study;
}

}  // namespace rkstab
