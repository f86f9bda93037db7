#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "chieq/tableau.hpp"

using namespace chieq;

TEST_CASE("gauss tableaus carry the closed-form entries") {
  SUBCASE("order 2") {
    auto t = gauss_tableau(2);
    CHECK(t.stages == 1);
    CHECK(t.a == std::vector<double>{0.5});
    CHECK(t.b == std::vector<double>{1.0});
    CHECK(t.c == std::vector<double>{0.5});
  }
  SUBCASE("order 4") {
    auto t = gauss_tableau(4);
    const double r = std::sqrt(3.0) / 6.0;
    CHECK(t.stages == 2);
    CHECK(t.a_at(0, 0) == 0.25);
    CHECK(t.a_at(0, 1) == 0.25 - r);
    CHECK(t.a_at(1, 0) == 0.25 + r);
    CHECK(t.a_at(1, 1) == 0.25);
    CHECK(t.b == std::vector<double>{0.5, 0.5});
    CHECK(t.c[0] == 0.5 - r);
    CHECK(t.c[1] == 0.5 + r);
    // Independently typed decimals guard against sign slips in the radicals.
    CHECK(t.a_at(0, 1) == doctest::Approx(-0.03867513459481288).epsilon(1e-15));
    CHECK(t.c[0] == doctest::Approx(0.21132486540518713).epsilon(1e-15));
  }
  SUBCASE("order 6") {
    auto t = gauss_tableau(6);
    const double r = std::sqrt(15.0);
    CHECK(t.stages == 3);
    CHECK(t.b == std::vector<double>{5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0});
    CHECK(t.a_at(1, 0) == 5.0 / 36.0 + r / 24.0);
    CHECK(t.a_at(1, 1) == 2.0 / 9.0);
    CHECK(t.a_at(1, 2) == 5.0 / 36.0 - r / 24.0);
    CHECK(t.c[1] == 0.5);
  }
  CHECK_THROWS_AS(gauss_tableau(3), std::invalid_argument);
  CHECK_THROWS_AS(gauss_tableau(8), std::invalid_argument);
}

TEST_CASE("construction rejects inconsistent tableaus") {
  CHECK_THROWS_AS(ButcherTableau("bad", 1, {0.5}, {1.0}, {0.75}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ButcherTableau("bad", 2, {0.5}, {1.0, 0.0}, {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ButcherTableau("bad", 1, {std::nan("")}, {1.0}, {0.0}),
                  std::invalid_argument);
}

TEST_CASE("c equals the row sums of A for every built-in") {
  for (const auto& name : tableau_names()) {
    auto t = tableau_by_name(name);
    REQUIRE(t.has_value());
    for (int i = 0; i < t->stages; ++i) {
      double sum = 0.0;
      for (int j = 0; j < t->stages; ++j) sum += t->a_at(i, j);
      CHECK(std::abs(sum - t->c[i]) <= 1e-14);
    }
  }
}

TEST_CASE("symplectic defect of the Gauss methods vanishes") {
  SUBCASE("gauss2 is exactly zero") {
    auto s = symplectic_defect(gauss_tableau(2));
    CHECK(s.size() == 1);
    CHECK(s[0] == 0.0);  // 1*1/2 + 1*1/2 - 1*1
  }
  SUBCASE("gauss4 vanishes to roundoff") {
    // Direct arithmetic on the Table entries, e.g.
    // S_12 = (1/2)(1/4 - r) + (1/2)(1/4 + r) - 1/4 = 0 with r = sqrt(3)/6.
    const double r = std::sqrt(3.0) / 6.0;
    CHECK(std::abs(0.5 * (0.25 - r) + 0.5 * (0.25 + r) - 0.25) <= 1e-16);
    CHECK(max_symplectic_defect(gauss_tableau(4)) <= 1e-15);
  }
  SUBCASE("gauss6 vanishes to roundoff") {
    CHECK(max_symplectic_defect(gauss_tableau(6)) <= 1e-15);
  }
}

TEST_CASE("control tableaus violate the symplectic condition") {
  auto euler = forward_euler();
  auto s_euler = symplectic_defect(euler);
  CHECK(s_euler.size() == 1);
  CHECK(s_euler[0] == -1.0);  // 0 + 0 - 1*1

  auto ie = implicit_euler();
  CHECK(symplectic_defect(ie)[0] == 1.0);  // 1 + 1 - 1

  auto rk4 = classical_rk4();
  auto s_rk4 = symplectic_defect(rk4);
  // S_11 = 2 b_1 a_11 - b_1^2 = -1/36.
  CHECK(s_rk4[0] == doctest::Approx(-1.0 / 36.0).epsilon(1e-15));
  CHECK(max_symplectic_defect(rk4) >= 1e-2);
}

TEST_CASE("defect matrix is exactly symmetric as computed") {
  for (const auto& name : tableau_names()) {
    auto t = *tableau_by_name(name);
    auto s = symplectic_defect(t);
    for (int i = 0; i < t.stages; ++i) {
      for (int j = 0; j < t.stages; ++j) {
        CHECK(s[static_cast<std::size_t>(i) * t.stages + j] ==
              s[static_cast<std::size_t>(j) * t.stages + i]);
      }
    }
  }
}

TEST_CASE("is_symplectic classifies the built-ins") {
  CHECK(is_symplectic(gauss_tableau(2), 1e-13));
  CHECK(is_symplectic(gauss_tableau(4), 1e-13));
  CHECK(is_symplectic(gauss_tableau(6), 1e-13));
  CHECK_FALSE(is_symplectic(forward_euler(), 1e-13));
  CHECK_FALSE(is_symplectic(implicit_euler(), 1e-13));
  CHECK_FALSE(is_symplectic(classical_rk4(), 1e-13));
  CHECK_THROWS_AS(is_symplectic(gauss_tableau(2), 0.0), std::invalid_argument);
}

TEST_CASE("gauss tableaus satisfy the basic order conditions") {
  for (int order : {2, 4, 6}) {
    auto t = gauss_tableau(order);
    double sum_b = 0.0, sum_bc = 0.0, min_b = 1e300;
    for (int i = 0; i < t.stages; ++i) {
      sum_b += t.b[i];
      sum_bc += t.b[i] * t.c[i];
      min_b = std::min(min_b, t.b[i]);
    }
    CHECK(std::abs(sum_b - 1.0) <= 1e-15);
    CHECK(std::abs(sum_bc - 0.5) <= 1e-15);
    CHECK(min_b > 0.0);
    CHECK(max_symplectic_defect(t) <= 1e-15);
  }
}

TEST_CASE("lookup by name") {
  CHECK(tableau_by_name("gauss6")->stages == 3);
  CHECK(tableau_by_name("rk4")->stages == 4);
  CHECK_FALSE(tableau_by_name("gauss8").has_value());
  CHECK_FALSE(tableau_by_name("").has_value());
}

TEST_CASE("butcher table formatting shows every coefficient row") {
  auto text = format_butcher_table(gauss_tableau(4));
  CHECK(text.find("gauss4") != std::string::npos);
  CHECK(text.find("0.5") != std::string::npos);
  // one line per stage, the separator, and the b row
  int lines = 0;
  for (char ch : text) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == 5);
}
