#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "rkstab/tableau.hpp"

using rkstab::ButcherTableau;
using rkstab::PCScheme;
using rkstab::PredictorSampling;

namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("rkstab_test_" + name);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("built-in tableaux carry the exact coefficients") {
  const ButcherTableau radau = rkstab::builtin("radau-iia-2");
  CHECK(radau.order == 3);
  CHECK(radau.stages() == 2);
  CHECK(radau.A(0, 0) == 5.0 / 12.0);
  CHECK(radau.A(0, 1) == -1.0 / 12.0);
  CHECK(radau.A(1, 0) == 0.75);
  CHECK(radau.A(1, 1) == 0.25);
  CHECK(radau.b(0) == 0.75);
  CHECK(radau.b(1) == 0.25);
  CHECK(radau.c(0) == 1.0 / 3.0);
  CHECK(radau.c(1) == 1.0);

  const ButcherTableau euler = rkstab::builtin("explicit-euler");
  CHECK(euler.order == 1);
  CHECK(euler.stages() == 1);
  CHECK(euler.A(0, 0) == 0.0);
  CHECK(euler.b(0) == 1.0);
  CHECK(euler.c(0) == 0.0);

  const double r = std::sqrt(3.0) / 6.0;
  const ButcherTableau gauss = rkstab::builtin("hammer-hollingsworth-2");
  CHECK(gauss.order == 4);
  CHECK(gauss.A(0, 1) == 0.25 - r);
  CHECK(gauss.A(1, 0) == 0.25 + r);
  CHECK(gauss.c(0) == 0.5 - r);

  const ButcherTableau radau_ia = rkstab::builtin("radau-ia-2");
  CHECK(radau_ia.order == 3);
  CHECK(radau_ia.A(0, 0) == 0.25);
  CHECK(radau_ia.A(0, 1) == -0.25);
  CHECK(radau_ia.A(1, 1) == 5.0 / 12.0);
  CHECK(radau_ia.c(0) == 0.0);
  CHECK(radau_ia.c(1) == 2.0 / 3.0);

  for (const std::string& name : rkstab::builtin_names())
    CHECK_NOTHROW(rkstab::validate(rkstab::builtin(name)));

  CHECK_THROWS_AS(rkstab::builtin("nope"), rkstab::ValidationError);
}

TEST_CASE("order conditions") {
  const auto radau = rkstab::check_order_conditions(rkstab::builtin("radau-iia-2"), 4);
  CHECK(radau.all_satisfied_up_to(3));
  CHECK_FALSE(radau.all_satisfied_up_to(4));  // order 3, not 4

  const auto euler = rkstab::check_order_conditions(rkstab::builtin("explicit-euler"), 2);
  CHECK(euler.all_satisfied_up_to(1));
  CHECK_FALSE(euler.all_satisfied_up_to(2));
  for (const auto& cond : euler.conditions)
    if (cond.order == 2) {
      CHECK(cond.value == 0.0);  // b.c = 0 for explicit Euler
      CHECK_FALSE(cond.satisfied);
    }

  const auto gauss = rkstab::check_order_conditions(rkstab::builtin("hammer-hollingsworth-2"), 4);
  CHECK(gauss.all_satisfied_up_to(4));

  const auto radau_ia = rkstab::check_order_conditions(rkstab::builtin("radau-ia-2"), 4);
  CHECK(radau_ia.all_satisfied_up_to(3));
  CHECK_FALSE(radau_ia.all_satisfied_up_to(4));

  CHECK_THROWS_AS(rkstab::check_order_conditions(rkstab::builtin("explicit-euler"), 5),
                  std::invalid_argument);
}

TEST_CASE("composed tableau: zero corrections") {
  const ButcherTableau composed =
      rkstab::compose_pc_tableau({rkstab::builtin("explicit-euler"), 0});
  CHECK(composed.stages() == 1);
  CHECK(composed.order == 1);
  CHECK(composed.A(0, 0) == 0.0);
  CHECK(composed.b(0) == 1.0);
  CHECK(composed.c(0) == 0.0);
}

TEST_CASE("composed tableau: radau-iia-2 with one correction") {
  const ButcherTableau composed =
      rkstab::compose_pc_tableau({rkstab::builtin("radau-iia-2"), 1});
  REQUIRE(composed.stages() == 4);
  CHECK(composed.order == 2);  // min(corrector order 3, m+1)

  CHECK(composed.A.row(0).isZero(0.0));
  CHECK(composed.A.row(1).isZero(0.0));
  CHECK(composed.A(2, 0) == 5.0 / 12.0);
  CHECK(composed.A(2, 1) == -1.0 / 12.0);
  CHECK(composed.A(2, 2) == 0.0);
  CHECK(composed.A(2, 3) == 0.0);
  CHECK(composed.A(3, 0) == 0.75);
  CHECK(composed.A(3, 1) == 0.25);

  CHECK(composed.b(0) == 0.0);
  CHECK(composed.b(1) == 0.0);
  CHECK(composed.b(2) == 0.75);
  CHECK(composed.b(3) == 0.25);

  CHECK(composed.c(0) == 0.0);
  CHECK(composed.c(1) == 0.0);
  CHECK(composed.c(2) == 1.0 / 3.0);
  CHECK(composed.c(3) == 1.0);
}

TEST_CASE("composed tableau: weights sit on the final block only") {
  const ButcherTableau composed =
      rkstab::compose_pc_tableau({rkstab::builtin("radau-iia-2"), 2});
  REQUIRE(composed.stages() == 6);
  CHECK(composed.order == 3);
  for (int i = 0; i < 4; ++i) CHECK(composed.b(i) == 0.0);
  CHECK(composed.b(4) == 0.75);
  CHECK(composed.b(5) == 0.25);
}

TEST_CASE("composed tableau invariants across built-ins") {
  for (const std::string& name : rkstab::builtin_names()) {
    const ButcherTableau corrector = rkstab::builtin(name);
    const int s = corrector.stages();
    for (int m = 0; m <= 5; ++m) {
      const ButcherTableau big = rkstab::compose_pc_tableau({corrector, m});
      REQUIRE(big.stages() == s * (m + 1));
      CHECK_NOTHROW(rkstab::validate(big));

      const Eigen::VectorXd rowsum = big.A * Eigen::VectorXd::Ones(big.stages());
      CHECK((rowsum - big.c).cwiseAbs().maxCoeff() <= 1e-12);

      // Strictly lower block-triangular: nothing on or above the block diagonal.
      for (int i = 0; i < big.stages(); ++i)
        for (int j = 0; j < big.stages(); ++j)
          if (j / s >= i / s) CHECK(big.A(i, j) == 0.0);
    }
  }
}

TEST_CASE("composed tableau: stage-time predictor abscissae variant") {
  const ButcherTableau corrector = rkstab::builtin("radau-iia-2");
  const ButcherTableau literal =
      rkstab::compose_pc_tableau({corrector, 1}, PredictorSampling::step_start);
  const ButcherTableau shifted =
      rkstab::compose_pc_tableau({corrector, 1}, PredictorSampling::stage_times);
  CHECK(shifted.A == literal.A);
  CHECK(shifted.b == literal.b);
  CHECK(shifted.c(0) == 1.0 / 3.0);
  CHECK(shifted.c(1) == 1.0);
  CHECK(shifted.c(2) == 1.0 / 3.0);
  CHECK(shifted.c(3) == 1.0);
}

TEST_CASE("validation names the violated invariant") {
  ButcherTableau t = rkstab::builtin("radau-iia-2");
  t.c(1) = 1.5;
  CHECK_THROWS_WITH_AS(rkstab::validate(t), doctest::Contains("abscissa out of [0,1]"),
                       rkstab::ValidationError);

  t = rkstab::builtin("radau-iia-2");
  t.A(0, 0) += 0.25;
  CHECK_THROWS_WITH_AS(rkstab::validate(t), doctest::Contains("row-sum condition violated"),
                       rkstab::ValidationError);

  t = rkstab::builtin("radau-iia-2");
  t.b(0) = 0.5;
  CHECK_THROWS_WITH_AS(rkstab::validate(t), doctest::Contains("weights do not sum to 1"),
                       rkstab::ValidationError);

  t = rkstab::builtin("radau-iia-2");
  t.b.resize(3);
  t.b << 0.5, 0.25, 0.25;
  CHECK_THROWS_WITH_AS(rkstab::validate(t), doctest::Contains("dimension mismatch"),
                       rkstab::ValidationError);

  PCScheme scheme{rkstab::builtin("radau-iia-2"), -1};
  CHECK_THROWS_AS(rkstab::validate(scheme), rkstab::ValidationError);
}

TEST_CASE("tableau files: rational strings load to the built-in values") {
  const fs::path path = temp_file("radau_rational.json");
  write_file(path,
             R"({"name":"radau-iia-2","order":3,)"
             R"("A":[["5/12","-1/12"],["3/4","1/4"]],)"
             R"("b":["3/4","1/4"],"c":["1/3","1"]})");
  const ButcherTableau loaded = rkstab::load_tableau(path);
  const ButcherTableau expected = rkstab::builtin("radau-iia-2");
  CHECK(loaded.name == expected.name);
  CHECK(loaded.order == expected.order);
  CHECK((loaded.A - expected.A).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((loaded.b - expected.b).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((loaded.c - expected.c).cwiseAbs().maxCoeff() <= 1e-15);
  fs::remove(path);
}

TEST_CASE("tableau files: save/load round trip is exact") {
  for (const std::string& name : rkstab::builtin_names()) {
    const fs::path path = temp_file("roundtrip_" + name + ".json");
    const ButcherTableau original = rkstab::builtin(name);
    rkstab::save_tableau(original, path);
    const ButcherTableau loaded = rkstab::load_tableau(path);
    CHECK(loaded.name == original.name);
    CHECK(loaded.order == original.order);
    CHECK(loaded.A == original.A);
    CHECK(loaded.b == original.b);
    CHECK(loaded.c == original.c);
    fs::remove(path);
  }
}

TEST_CASE("tableau files: violations and malformed input are rejected") {
  const fs::path path = temp_file("bad.json");

  write_file(path, R"({"name":"x","order":1,"A":[[0,0],[1,0]],"b":[0.5,0.5],"c":[0.5,1.5]})");
  CHECK_THROWS_WITH_AS(rkstab::load_tableau(path), doctest::Contains("abscissa out of [0,1]"),
                       rkstab::ValidationError);

  write_file(path, R"({"name":"x","order":1,"A":[[0,0],[0.25,0]],"b":[0.5,0.5],"c":[0,1]})");
  CHECK_THROWS_WITH_AS(rkstab::load_tableau(path),
                       doctest::Contains("row-sum condition violated"), rkstab::ValidationError);

  write_file(path, "{ not json");
  CHECK_THROWS_AS(rkstab::load_tableau(path), rkstab::ParseError);

  write_file(path, R"({"name":"x","order":1,"A":[[0]],"c":[0]})");
  CHECK_THROWS_WITH_AS(rkstab::load_tableau(path), doctest::Contains("missing field 'b'"),
                       rkstab::ParseError);

  write_file(path, R"({"name":"x","order":1,"A":[["1/0"]],"b":[1],"c":[0]})");
  CHECK_THROWS_WITH_AS(rkstab::load_tableau(path), doctest::Contains("zero denominator"),
                       rkstab::ParseError);

  write_file(path, R"({"name":"x","order":1,"A":[["abc"]],"b":[1],"c":[0]})");
  CHECK_THROWS_AS(rkstab::load_tableau(path), rkstab::ParseError);

  CHECK_THROWS_AS(rkstab::load_tableau(temp_file("does_not_exist.json")), rkstab::ParseError);
  fs::remove(path);
}
