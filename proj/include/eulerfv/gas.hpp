#pragma once

/**
 * @file gas.hpp
 *
 * @brief Thermodynamics of a polytropic (gamma-law) gas.
 *
 * The gas constant is normalised to one, so the absolute temperature is
 * theta = p / rho and the specific internal energy is e = C_v theta with
 * C_v = 1 / (gamma - 1). Entropy is carried as the total entropy
 * eta = C_v rho ln(p / rho^gamma).
 *
 * States always hold three velocity/momentum components; in 1D and 2D the
 * trailing components are zero and never touched by the solver.
 */

#include <array>

namespace eulerfv {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

class GasLaw {
 public:
  /// Throws ConfigError unless 1 < gamma <= 2.
  explicit GasLaw(double gamma = 1.4);

  double gamma() const { return gamma_; }
  double c_v() const { return c_v_; }

  friend bool operator==(const GasLaw&, const GasLaw&) = default;

 private:
  double gamma_;
  double c_v_;
};

struct PrimState {
  double rho = 1.0;
  Vec3 vel{0.0, 0.0, 0.0};
  double p = 1.0;

  friend bool operator==(const PrimState&, const PrimState&) = default;
};

struct ConsState {
  double rho = 1.0;
  Vec3 mom{0.0, 0.0, 0.0};
  double energy = 0.0;

  friend bool operator==(const ConsState&, const ConsState&) = default;
};

/// Thermodynamic point described by (rho, eta) as independent variables.
struct ThermoPoint {
  double p;
  double theta;       ///< absolute temperature p / rho
  double e;           ///< specific internal energy C_v theta
  double s_specific;  ///< S = ln(p / rho^gamma)
  double eta;         ///< total entropy C_v rho S
};

/// Partial derivatives of rho*e with respect to (rho, eta).
struct EnergyGradient {
  double d_rho;
  double d_eta;
};

/// Hessian of rho*e in the (rho, eta) variables.
struct EnergyHessian {
  double rho_rho;
  double rho_eta;
  double eta_eta;

  double determinant() const { return rho_rho * eta_eta - rho_eta * rho_eta; }
};

ConsState cons_from_prim(const PrimState& w, const GasLaw& gas);

/// Throws NonPhysicalState when rho <= 0 or the internal energy is not
/// positive.
PrimState prim_from_cons(const ConsState& u, const GasLaw& gas);

/// Pressure of a conservative state; throws like prim_from_cons.
double pressure(const ConsState& u, const GasLaw& gas);

double entropy_eta(const ConsState& u, const GasLaw& gas);
double entropy_eta(const PrimState& w, const GasLaw& gas);

ThermoPoint thermo_from_rho_eta(double rho, double eta, const GasLaw& gas);

EnergyGradient d_rho_e(double rho, double eta, const GasLaw& gas);

EnergyHessian hessian_rho_e(double rho, double eta, const GasLaw& gas);

double sound_speed(const PrimState& w, const GasLaw& gas);

/// Physical Euler flux F(U) . e_axis, returned in conservative layout.
ConsState physical_flux(const PrimState& w, int axis, const GasLaw& gas);

/// Throws NonPhysicalState unless rho > 0 and p > 0 (finite).
void check_admissible(const PrimState& w);

}  // namespace eulerfv
