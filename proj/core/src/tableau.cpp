#include "chieq/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace chieq {

ButcherTableau::ButcherTableau(std::string name_, int stages_,
                               std::vector<double> a_, std::vector<double> b_,
                               std::vector<double> c_)
    : name(std::move(name_)),
      stages(stages_),
      a(std::move(a_)),
      b(std::move(b_)),
      c(std::move(c_)) {
  const auto s = static_cast<std::size_t>(stages);
  if (stages < 1 || a.size() != s * s || b.size() != s || c.size() != s) {
    throw std::invalid_argument("tableau '" + name + "': inconsistent sizes");
  }
  for (double v : a) {
    if (!std::isfinite(v)) throw std::invalid_argument("tableau '" + name + "': non-finite entry");
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (!std::isfinite(b[i]) || !std::isfinite(c[i])) {
      throw std::invalid_argument("tableau '" + name + "': non-finite entry");
    }
    double row_sum = 0.0;
    for (std::size_t j = 0; j < s; ++j) row_sum += a[i * s + j];
    if (std::abs(row_sum - c[i]) > 1e-14) {
      throw std::invalid_argument("tableau '" + name + "': c does not match row sums of A");
    }
  }
}

ButcherTableau gauss_tableau(int order) {
  switch (order) {
    case 2:
      return ButcherTableau("gauss2", 1, {0.5}, {1.0}, {0.5});
    case 4: {
      const double r = std::sqrt(3.0) / 6.0;
      return ButcherTableau("gauss4", 2,
                            {0.25, 0.25 - r,
                             0.25 + r, 0.25},
                            {0.5, 0.5}, {0.5 - r, 0.5 + r});
    }
    case 6: {
      const double r = std::sqrt(15.0);
      return ButcherTableau(
          "gauss6", 3,
          {5.0 / 36.0,          2.0 / 9.0 - r / 15.0, 5.0 / 36.0 - r / 30.0,
           5.0 / 36.0 + r / 24.0, 2.0 / 9.0,            5.0 / 36.0 - r / 24.0,
           5.0 / 36.0 + r / 30.0, 2.0 / 9.0 + r / 15.0, 5.0 / 36.0},
          {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0},
          {0.5 - r / 10.0, 0.5, 0.5 + r / 10.0});
    }
    default:
      throw std::invalid_argument("gauss tableau order must be 2, 4, or 6");
  }
}

ButcherTableau forward_euler() {
  return ButcherTableau("euler", 1, {0.0}, {1.0}, {0.0});
}

ButcherTableau implicit_euler() {
  return ButcherTableau("implicit-euler", 1, {1.0}, {1.0}, {1.0});
}

ButcherTableau classical_rk4() {
  return ButcherTableau("rk4", 4,
                        {0.0, 0.0, 0.0, 0.0,
                         0.5, 0.0, 0.0, 0.0,
                         0.0, 0.5, 0.0, 0.0,
                         0.0, 0.0, 1.0, 0.0},
                        {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0},
                        {0.0, 0.5, 0.5, 1.0});
}

std::vector<double> symplectic_defect(const ButcherTableau& t) {
  const int s = t.stages;
  std::vector<double> defect(static_cast<std::size_t>(s) * s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      defect[static_cast<std::size_t>(i) * s + j] =
          t.b[i] * t.a_at(i, j) + t.b[j] * t.a_at(j, i) - t.b[i] * t.b[j];
    }
  }
  return defect;
}

double max_symplectic_defect(const ButcherTableau& t) {
  double m = 0.0;
  for (double v : symplectic_defect(t)) m = std::max(m, std::abs(v));
  return m;
}

bool is_symplectic(const ButcherTableau& t, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  const double min_b = *std::min_element(t.b.begin(), t.b.end());
  return max_symplectic_defect(t) <= tol && min_b >= -tol;
}

std::optional<ButcherTableau> tableau_by_name(std::string_view name) {
  if (name == "gauss2") return gauss_tableau(2);
  if (name == "gauss4") return gauss_tableau(4);
  if (name == "gauss6") return gauss_tableau(6);
  if (name == "euler") return forward_euler();
  if (name == "implicit-euler") return implicit_euler();
  if (name == "rk4") return classical_rk4();
  return std::nullopt;
}

std::vector<std::string> tableau_names() {
  return {"gauss2", "gauss4", "gauss6", "euler", "implicit-euler", "rk4"};
}

std::string format_butcher_table(const ButcherTableau& t) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "% .16g", v);
    return std::string(buf);
  };
  const std::size_t width = 20;
  auto pad = [&](std::string s) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };

  std::string out = t.name + " (s = " + std::to_string(t.stages) + ")\n";
  for (int i = 0; i < t.stages; ++i) {
    out += pad(fmt(t.c[i])) + " |";
    for (int j = 0; j < t.stages; ++j) out += " " + pad(fmt(t.a_at(i, j)));
    out += "\n";
  }
  out += std::string(width, '-') + " +";
  out += std::string((width + 1) * static_cast<std::size_t>(t.stages), '-');
  out += "\n" + std::string(width, ' ') + " |";
  for (int j = 0; j < t.stages; ++j) out += " " + pad(fmt(t.b[j]));
  out += "\n";
  return out;
}

}  // namespace chieq
