#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chieq {

/// Runge-Kutta coefficients (A, b, c) in Butcher-table form.
///
/// Construction enforces that every entry is finite and that c equals the
/// row sums of A to 1e-14 componentwise.
struct ButcherTableau {
  ButcherTableau(std::string name, int stages, std::vector<double> a,
                 std::vector<double> b, std::vector<double> c);

  double a_at(int i, int j) const { return a[static_cast<std::size_t>(i) * stages + j]; }

  std::string name;
  int stages;
  std::vector<double> a;  // row-major stages x stages
  std::vector<double> b;
  std::vector<double> c;
};

/// Gauss collocation tableau of classical order 2, 4, or 6 (1, 2, or 3
/// stages). Radical constants are evaluated in double precision at call
/// time. Throws std::invalid_argument for any other order.
ButcherTableau gauss_tableau(int order);

/// Non-symplectic control methods.
ButcherTableau forward_euler();
ButcherTableau implicit_euler();
ButcherTableau classical_rk4();

/// Symmetric defect matrix S with S_ij = b_i a_ij + b_j a_ji - b_i b_j,
/// row-major stages x stages. S vanishes exactly for symplectic methods.
std::vector<double> symplectic_defect(const ButcherTableau& t);

double max_symplectic_defect(const ButcherTableau& t);

/// True iff max |S_ij| <= tol and min b_i >= -tol.
bool is_symplectic(const ButcherTableau& t, double tol);

/// Lookup by CLI name: gauss2, gauss4, gauss6, euler, implicit-euler, rk4.
std::optional<ButcherTableau> tableau_by_name(std::string_view name);

std::vector<std::string> tableau_names();

/// Plain-text Butcher-table layout (c | A over b).
std::string format_butcher_table(const ButcherTableau& t);

}  // namespace chieq
