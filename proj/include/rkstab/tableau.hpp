#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "rkstab/errors.hpp"

namespace rkstab {

/// Runge-Kutta coefficient scheme (A, b, c) with a declared classical order.
struct ButcherTableau {
  std::string name;
  int order = 1;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;

  int stages() const { return static_cast<int>(b.size()); }
};

/// Throws ValidationError naming the violated invariant: consistent
/// dimensions, abscissae in [0,1], weights summing to 1, and the row-sum
/// condition A*1 = c (without it the predictor block is not explicit Euler
/// at the abscissae).
void validate(const ButcherTableau& t);

/// Predictor-corrector scheme: a corrector tableau iterated for a fixed
/// number of correction sweeps after an explicit Euler predictor.
struct PCScheme {
  ButcherTableau corrector;
  int corrections = 0;  // m
};

void validate(const PCScheme& scheme);

/// Built-in correctors: explicit-euler, radau-iia-2, radau-ia-2,
/// hammer-hollingsworth-2. Throws ValidationError for unknown names.
ButcherTableau builtin(const std::string& name);
std::vector<std::string> builtin_names();

struct OrderCondition {
  int order = 0;
  std::string label;
  double value = 0.0;   // computed stage sum
  double target = 0.0;  // required value
  double residual = 0.0;
  bool satisfied = false;
};

struct OrderConditionReport {
  std::vector<OrderCondition> conditions;
  bool all_satisfied_up_to(int order) const;
};

/// Evaluates the standard order conditions through min(upto, 4); each must
/// hold to 1e-12. upto must be in {1, 2, 3, 4}.
OrderConditionReport check_order_conditions(const ButcherTableau& t, int upto);

/// Time sampling of the predictor block: where its abscissae sit in a
/// composed tableau, and where pc_step evaluates the predictor fluxes.
/// The two coincide for autonomous problems.
enum class PredictorSampling {
  step_start,   // abscissae 0: the literal block layout
  stage_times,  // abscissae c: explicit Euler advanced to the stage times
};

/// The explicit s*(m+1)-stage block tableau of a PC scheme: block row 0 is
/// the predictor (zero coefficient rows), block rows k = 1..m carry the
/// corrector matrix A in block column k-1, and the weights are b^T on block
/// column m. Declared order is min(corrector order, m+1). The result is
/// strictly lower block-triangular, hence an explicit method.
ButcherTableau compose_pc_tableau(const PCScheme& scheme,
                                  PredictorSampling sampling = PredictorSampling::step_start);

/// JSON tableau file: fields name, order, A, b, c; numeric entries are
/// number literals or exact rational strings "p/q". Load validates all
/// tableau invariants; parse and validation failures carry the offending
/// field or invariant in the message.
ButcherTableau load_tableau(const std::filesystem::path& path);
void save_tableau(const ButcherTableau& t, const std::filesystem::path& path);

}  // namespace rkstab
