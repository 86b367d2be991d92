#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "rkstab/tableau.hpp"

namespace rkstab {

using State = Eigen::VectorXd;
using Rhs = std::function<State(double, const State&)>;
using ExactSolution = std::function<State(double)>;

/// Initial value problem y' = rhs(t, y), y(t0) = y0 on [t0, t_end], with an
/// optional exact solution for error measurement.
struct IVProblem {
  Rhs rhs;
  State y0;
  double t0 = 0.0;
  double t_end = 1.0;
  ExactSolution exact;  // may be empty
};

void validate(const IVProblem& prob);

/// Stage states of one PC step, sweep by sweep, plus the flux evaluation
/// count. With stage-time predictor sampling the count is s*(m+1); with
/// step-start sampling the s identical predictor fluxes are evaluated once
/// and broadcast, giving s*m + 1.
struct StepTrace {
  std::vector<std::vector<State>> sweeps;  // Y(0)..Y(m), s states each
  long flux_evaluations = 0;
};

/// One block PC step:
///   Y(0)_i = y,  Y(k)_i = y + h sum_j A_ij f(t + c_j h, Y(k-1)_j),
///   result  = y + h sum_i b_i f(t + c_i h, Y(m)_i).
/// Within a sweep the s flux evaluations are mutually independent, so the
/// supplied rhs must tolerate concurrent invocation; this implementation
/// evaluates them sequentially, which is a conforming schedule, and its
/// results do not depend on the schedule. Throws OverflowError identifying
/// the sweep when a stage state becomes non-finite.
State pc_step(const IVProblem& prob, double t, const State& y, double h,
              const PCScheme& scheme,
              PredictorSampling sampling = PredictorSampling::stage_times,
              StepTrace* trace = nullptr);

/// Generic explicit RK step by forward substitution; the reference stepper
/// used to cross-check pc_step against the composed block tableau.
State rk_step(const IVProblem& prob, double t, const State& y, double h,
              const ButcherTableau& tableau);

struct IntegrationResult {
  State y;
  long steps = 0;
  long flux_sweeps = 0;        // (m+1) per step
  long flux_evaluations = 0;
  double max_state_norm = 0.0;  // max |y| over step endpoints, incl. y0
};

/// Fixed-step driver: round((t_end-t0)/h) steps, the final one adjusted to
/// land exactly on t_end. No step-size control.
IntegrationResult integrate(const IVProblem& prob, const PCScheme& scheme, double h,
                            PredictorSampling sampling = PredictorSampling::stage_times);

struct OrderStudyLevel {
  double h = 0.0;
  double error = 0.0;
  bool saturated = false;  // below 100*eps of the exact solution scale
};

struct OrderStudy {
  std::vector<OrderStudyLevel> levels;
  std::vector<double> pair_orders;  // log2(e_k / e_{k+1}) per usable pair
  double observed_order = 0.0;      // mean of pair_orders; NaN if none usable
};

/// Convergence study at h0/2^k for k = 0..levels-1 against the problem's
/// exact solution. Saturated levels (error within 100 eps of the solution
/// scale) are excluded from the order estimate.
OrderStudy empirical_order(const IVProblem& prob, const PCScheme& scheme, double h0,
                           int levels,
                           PredictorSampling sampling = PredictorSampling::stage_times);

}  // namespace rkstab
