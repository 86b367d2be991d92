#include "rkstab/tableau.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rkstab/tolerances.hpp"

#include <json.hpp>

namespace rkstab {

namespace {

constexpr double kInvariantTol = 1e-12;

ButcherTableau make(std::string name, int order, std::vector<std::vector<double>> a,
                    std::vector<double> b, std::vector<double> c) {
  const int s = static_cast<int>(b.size());
  ButcherTableau t;
  t.name = std::move(name);
  t.order = order;
  t.A.resize(s, s);
  t.b.resize(s);
  t.c.resize(s);
  for (int i = 0; i < s; ++i) {
    t.b(i) = b[static_cast<size_t>(i)];
    t.c(i) = c[static_cast<size_t>(i)];
    for (int j = 0; j < s; ++j) t.A(i, j) = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return t;
}

}  // namespace

void validate(const ButcherTableau& t) {
  const auto s = t.b.size();
  if (s < 1)
    throw ValidationError("tableau '" + t.name + "': needs at least one stage");
  if (t.A.rows() != s || t.A.cols() != s || t.c.size() != s)
    throw ValidationError("tableau '" + t.name + "': dimension mismatch (A must be s x s, b and c length s)");
  if (t.order < 1)
    throw ValidationError("tableau '" + t.name + "': declared order must be >= 1");
  for (Eigen::Index i = 0; i < s; ++i) {
    if (t.c(i) < -kInvariantTol || t.c(i) > 1.0 + kInvariantTol) {
      std::ostringstream msg;
      msg << "tableau '" << t.name << "': abscissa out of [0,1]: c[" << i << "] = " << t.c(i);
      throw ValidationError(msg.str());
    }
  }
  const double bsum = t.b.sum();
  if (std::abs(bsum - 1.0) > kInvariantTol) {
    std::ostringstream msg;
    msg << "tableau '" << t.name << "': weights do not sum to 1 (sum = " << bsum << ")";
    throw ValidationError(msg.str());
  }
  const double rowsum_defect = (t.A * Eigen::VectorXd::Ones(s) - t.c).cwiseAbs().maxCoeff();
  if (rowsum_defect > kInvariantTol) {
    std::ostringstream msg;
    msg << "tableau '" << t.name << "': row-sum condition violated (max |A*1 - c| = "
        << rowsum_defect << ")";
    throw ValidationError(msg.str());
  }
}

void validate(const PCScheme& scheme) {
  validate(scheme.corrector);
  if (scheme.corrections < 0)
    throw ValidationError("PC scheme: correction count must be >= 0");
}

ButcherTableau builtin(const std::string& name) {
  if (name == "explicit-euler") {
    return make("explicit-euler", 1, {{0.0}}, {1.0}, {0.0});
  }
  if (name == "radau-iia-2") {
    return make("radau-iia-2", 3,
                {{5.0 / 12.0, -1.0 / 12.0}, {3.0 / 4.0, 1.0 / 4.0}},
                {3.0 / 4.0, 1.0 / 4.0}, {1.0 / 3.0, 1.0});
  }
  if (name == "radau-ia-2") {
    return make("radau-ia-2", 3,
                {{1.0 / 4.0, -1.0 / 4.0}, {1.0 / 4.0, 5.0 / 12.0}},
                {1.0 / 4.0, 3.0 / 4.0}, {0.0, 2.0 / 3.0});
  }
  if (name == "hammer-hollingsworth-2") {
    const double r = std::sqrt(3.0) / 6.0;
    return make("hammer-hollingsworth-2", 4,
                {{0.25, 0.25 - r}, {0.25 + r, 0.25}},
                {0.5, 0.5}, {0.5 - r, 0.5 + r});
  }
  throw ValidationError("unknown built-in tableau: " + name);
}

std::vector<std::string> builtin_names() {
  return {"explicit-euler", "radau-iia-2", "radau-ia-2", "hammer-hollingsworth-2"};
}

bool OrderConditionReport::all_satisfied_up_to(int order) const {
  for (const OrderCondition& c : conditions)
    if (c.order <= order && !c.satisfied) return false;
  return true;
}

OrderConditionReport check_order_conditions(const ButcherTableau& t, int upto) {
  if (upto < 1 || upto > 4)
    throw std::invalid_argument("check_order_conditions: upto must be in {1,2,3,4}");

  const Eigen::VectorXd& b = t.b;
  const Eigen::VectorXd& c = t.c;
  const Eigen::MatrixXd& A = t.A;
  const Eigen::VectorXd c2 = c.cwiseProduct(c);
  const Eigen::VectorXd c3 = c2.cwiseProduct(c);

  OrderConditionReport report;
  auto add = [&report](int order, std::string label, double value, double target) {
    OrderCondition cond;
    cond.order = order;
    cond.label = std::move(label);
    cond.value = value;
    cond.target = target;
    cond.residual = std::abs(value - target);
    cond.satisfied = cond.residual <= kInvariantTol;
    report.conditions.push_back(std::move(cond));
  };

  add(1, "sum(b) = 1", b.sum(), 1.0);
  if (upto >= 2) add(2, "b.c = 1/2", b.dot(c), 0.5);
  if (upto >= 3) {
    add(3, "b.c^2 = 1/3", b.dot(c2), 1.0 / 3.0);
    add(3, "b.A.c = 1/6", b.dot(A * c), 1.0 / 6.0);
  }
  if (upto >= 4) {
    add(4, "b.c^3 = 1/4", b.dot(c3), 0.25);
    add(4, "(b*c).A.c = 1/8", b.cwiseProduct(c).dot(A * c), 0.125);
    add(4, "b.A.c^2 = 1/12", b.dot(A * c2), 1.0 / 12.0);
    add(4, "b.A.A.c = 1/24", b.dot(A * (A * c)), 1.0 / 24.0);
  }
  return report;
}

ButcherTableau compose_pc_tableau(const PCScheme& scheme, PredictorSampling sampling) {
  validate(scheme);
  const ButcherTableau& t = scheme.corrector;
  const int s = t.stages();
  const int m = scheme.corrections;
  const int big = s * (m + 1);

  ButcherTableau out;
  out.name = t.name + ":" + std::to_string(m);
  out.order = std::min(t.order, m + 1);
  out.A = Eigen::MatrixXd::Zero(big, big);
  out.b = Eigen::VectorXd::Zero(big);
  out.c = Eigen::VectorXd::Zero(big);

  // Block row 0 is the predictor (zero rows); rows k = 1..m apply A to the
  // previous sweep's stages.
  for (int k = 1; k <= m; ++k)
    out.A.block(k * s, (k - 1) * s, s, s) = t.A;
  for (int k = (sampling == PredictorSampling::step_start ? 1 : 0); k <= m; ++k)
    out.c.segment(k * s, s) = t.c;
  out.b.segment(m * s, s) = t.b;
  return out;
}

namespace {

using nlohmann::json;

double parse_rational(const std::string& text, const std::string& where) {
  const auto bad = [&]() -> ParseError {
    return ParseError("tableau field " + where + ": expected integer or \"p/q\" rational, got \"" +
                      text + "\"");
  };
  const auto parse_int = [&](const std::string& part) -> long long {
    if (part.empty()) throw bad();
    char* end = nullptr;
    const long long v = std::strtoll(part.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') throw bad();
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return static_cast<double>(parse_int(text));
  const long long p = parse_int(text.substr(0, slash));
  const long long q = parse_int(text.substr(slash + 1));
  if (q == 0) throw ParseError("tableau field " + where + ": rational with zero denominator");
  return static_cast<double>(p) / static_cast<double>(q);
}

double number_entry(const json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_rational(value.get<std::string>(), where);
  throw ParseError("tableau field " + where + ": expected number or rational string");
}

const json& require_field(const json& j, const char* key, const std::string& file) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError("tableau file " + file + ": missing field '" + key + "'");
  return *it;
}

}  // namespace

ButcherTableau load_tableau(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tableau file: " + path.string());

  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("tableau file " + path.string() + ": " + e.what());
  }
  if (!j.is_object())
    throw ParseError("tableau file " + path.string() + ": top level must be an object");

  const std::string file = path.string();
  ButcherTableau t;
  const json& jname = require_field(j, "name", file);
  if (!jname.is_string()) throw ParseError("tableau field name: expected string");
  t.name = jname.get<std::string>();

  const json& jorder = require_field(j, "order", file);
  if (!jorder.is_number_integer())
    throw ParseError("tableau field order: expected integer");
  t.order = jorder.get<int>();

  const json& ja = require_field(j, "A", file);
  const json& jb = require_field(j, "b", file);
  const json& jc = require_field(j, "c", file);
  if (!ja.is_array() || !jb.is_array() || !jc.is_array())
    throw ParseError("tableau fields A, b, c: expected arrays");

  const int s = static_cast<int>(jb.size());
  if (s < 1) throw ParseError("tableau field b: must not be empty");
  if (static_cast<int>(ja.size()) != s || static_cast<int>(jc.size()) != s)
    throw ParseError("tableau file " + file + ": A, b, c must agree on the stage count");

  t.A.resize(s, s);
  t.b.resize(s);
  t.c.resize(s);
  for (int i = 0; i < s; ++i) {
    const json& row = ja[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != s)
      throw ParseError("tableau field A[" + std::to_string(i) + "]: expected a row of " +
                       std::to_string(s) + " entries");
    for (int k = 0; k < s; ++k)
      t.A(i, k) = number_entry(row[static_cast<size_t>(k)],
                               "A[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    t.b(i) = number_entry(jb[static_cast<size_t>(i)], "b[" + std::to_string(i) + "]");
    t.c(i) = number_entry(jc[static_cast<size_t>(i)], "c[" + std::to_string(i) + "]");
  }

  validate(t);
  return t;
}

void save_tableau(const ButcherTableau& t, const std::filesystem::path& path) {
  json j;
  j["name"] = t.name;
  j["order"] = t.order;
  json a = json::array();
  for (Eigen::Index i = 0; i < t.A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < t.A.cols(); ++k) row.push_back(t.A(i, k));
    a.push_back(std::move(row));
  }
  j["A"] = std::move(a);
  j["b"] = std::vector<double>(t.b.data(), t.b.data() + t.b.size());
  j["c"] = std::vector<double>(t.c.data(), t.c.data() + t.c.size());

  std::ofstream out(path);
  if (!out) throw ParseError("cannot write tableau file: " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace rkstab
