#include "eulerfv/gas.hpp"

#include <cmath>
#include <string>

#include "eulerfv/error.hpp"

namespace eulerfv {

namespace {

void require_positive_density(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw NonPhysicalState("density must be positive, got " + std::to_string(rho));
  }
}

}  // namespace

GasLaw::GasLaw(double gamma) : gamma_(gamma), c_v_(1.0 / (gamma - 1.0)) {
  if (!(gamma > 1.0 && gamma <= 2.0)) {
    throw ConfigError("gamma must lie in (1, 2], got " + std::to_string(gamma));
  }
}

void check_admissible(const PrimState& w) {
  require_positive_density(w.rho);
  if (!(w.p > 0.0) || !std::isfinite(w.p)) {
    throw NonPhysicalState("pressure must be positive, got " + std::to_string(w.p));
  }
}

ConsState cons_from_prim(const PrimState& w, const GasLaw& gas) {
  check_admissible(w);
  ConsState u;
  u.rho = w.rho;
  for (int i = 0; i < 3; ++i) u.mom[i] = w.rho * w.vel[i];
  u.energy = w.p / (gas.gamma() - 1.0) + 0.5 * w.rho * dot(w.vel, w.vel);
  return u;
}

PrimState prim_from_cons(const ConsState& u, const GasLaw& gas) {
  require_positive_density(u.rho);
  PrimState w;
  w.rho = u.rho;
  for (int i = 0; i < 3; ++i) w.vel[i] = u.mom[i] / u.rho;
  const double internal = u.energy - 0.5 * dot(u.mom, u.mom) / u.rho;
  if (!(internal > 0.0)) {
    throw NonPhysicalState("internal energy must be positive, got " +
                           std::to_string(internal));
  }
  w.p = (gas.gamma() - 1.0) * internal;
  return w;
}

double pressure(const ConsState& u, const GasLaw& gas) { return prim_from_cons(u, gas).p; }

double entropy_eta(const PrimState& w, const GasLaw& gas) {
  check_admissible(w);
  return gas.c_v() * w.rho * (std::log(w.p) - gas.gamma() * std::log(w.rho));
}

double entropy_eta(const ConsState& u, const GasLaw& gas) {
  return entropy_eta(prim_from_cons(u, gas), gas);
}

ThermoPoint thermo_from_rho_eta(double rho, double eta, const GasLaw& gas) {
  require_positive_density(rho);
  ThermoPoint t;
  t.s_specific = eta / (gas.c_v() * rho);
  t.p = std::pow(rho, gas.gamma()) * std::exp(t.s_specific);
  t.theta = t.p / rho;
  t.e = gas.c_v() * t.theta;
  t.eta = eta;
  return t;
}

EnergyGradient d_rho_e(double rho, double eta, const GasLaw& gas) {
  const double theta = thermo_from_rho_eta(rho, eta, gas).theta;
  return {(1.0 + gas.c_v()) * theta - eta * theta / rho, theta};
}

EnergyHessian hessian_rho_e(double rho, double eta, const GasLaw& gas) {
  const double theta = thermo_from_rho_eta(rho, eta, gas).theta;
  const double scale = theta / (gas.c_v() * rho);
  const double a = 1.0 - eta / rho;
  return {scale * (gas.c_v() + a * a), scale * a, scale};
}

double sound_speed(const PrimState& w, const GasLaw& gas) {
  check_admissible(w);
  return std::sqrt(gas.gamma() * w.p / w.rho);
}

ConsState physical_flux(const PrimState& w, int axis, const GasLaw& gas) {
  const double un = w.vel[axis];
  const double mass = w.rho * un;
  const double energy = w.p / (gas.gamma() - 1.0) + 0.5 * w.rho * dot(w.vel, w.vel);
  ConsState f;
  f.rho = mass;
  for (int i = 0; i < 3; ++i) f.mom[i] = mass * w.vel[i];
  f.mom[axis] += w.p;
  f.energy = un * (energy + w.p);
  return f;
}

}  // namespace eulerfv
