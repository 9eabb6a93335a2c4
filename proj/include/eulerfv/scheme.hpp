#pragma once

/**
 * @file scheme.hpp
 *
 * @brief First-order finite volume update with Godunov or viscosity (VFV)
 * face fluxes, explicit Euler time stepping and runtime monitors.
 *
 * All face fluxes of a step are evaluated from the same time level and the
 * cells are updated once per step (no dimensional splitting):
 *
 *   U_K' = U_K - dt / |K| sum_{sigma in faces(K)} |sigma| F_num . n_out
 *
 * The VFV flux is a central flux with Rusanov-type dissipation plus an
 * h^epsilon mesh viscosity. It stands in for the published VFV scheme, whose
 * flux is defined elsewhere; results produced with it are labelled as such.
 */

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "eulerfv/gas.hpp"
#include "eulerfv/grid.hpp"
#include "eulerfv/riemann.hpp"

namespace eulerfv {

enum class FluxKind { Godunov, Vfv };

struct SchemeKind {
  FluxKind flux = FluxKind::Godunov;
  double epsilon = 1.0;   ///< VFV mesh-viscosity exponent, > 0
  double mu_scale = 1.0;  ///< VFV multiplier of the local wave speed

  static SchemeKind godunov() { return {}; }
  static SchemeKind vfv(double epsilon = 1.0, double mu_scale = 1.0) {
    return {FluxKind::Vfv, epsilon, mu_scale};
  }

  /// Throws ConfigError for epsilon <= 0 or mu_scale < 0.
  void validate() const;
  std::string label() const;
};

enum class BoundaryKind { Reflective, Transmissive, Periodic };

std::string_view to_string(BoundaryKind kind);
/// Throws ConfigError for unknown names.
BoundaryKind boundary_from_string(std::string_view name);

/// Boundary tag for the lower ([axis][0]) and upper ([axis][1]) face of every
/// axis.
struct BoundarySet {
  std::array<std::array<BoundaryKind, 2>, 3> faces{};

  static BoundarySet all(BoundaryKind kind);
  /// Throws ConfigError when a periodic face is paired with a non-periodic one.
  void validate() const;
};

/// Multi-dimensional time-step rule.
enum class DtRule {
  PerAxisMin,   ///< dt = cfl min_{i,K} h_i / (|u_i| + c)
  SumOverAxes,  ///< dt = cfl / max_K sum_i (|u_i| + c) / h_i
};

struct StepStats {
  double time = 0.0;
  double dt = 0.0;
  double smax = 0.0;  ///< max_{K,i} |u_i| + c at the start of the step
  double rho_min = 0.0;
  double p_min = 0.0;
  double e_max = 0.0;
  double jump_l1 = 0.0;   ///< sum_sigma |sigma| |[[U]]|
  double jump_l2h = 0.0;  ///< sum_sigma |sigma| |[[U]]|^2 / h
  ConsState totals{};     ///< sum_K |K| U_K
};

/// Everything one step needs besides the field and dt.
struct StepSettings {
  SchemeKind scheme{};
  BoundarySet boundary = BoundarySet::all(BoundaryKind::Transmissive);
  GasLaw gas{};
  double rho_min_alarm = 1e-10;
  double p_min_alarm = 1e-10;
  RiemannOptions riemann{};
};

struct RunConfig {
  StepSettings step{};
  double cfl = 0.9;
  double t_final = 0.0;
  DtRule dt_rule = DtRule::SumOverAxes;
  /// Record stats every this many steps; 0 records only the final state.
  int stats_every = 0;
  long max_steps = 10'000'000;

  /// Throws ConfigError unless 0 < cfl < 1 and t_final >= 0.
  void validate() const;
};

struct StepResult {
  CellField field;
  StepStats stats;
  /// dt * sum over boundary faces of |sigma| F . n_out.
  ConsState boundary_outflow{};
};

struct RunResult {
  CellField field;
  std::vector<StepStats> series;
  ConsState initial_totals{};
  ConsState boundary_outflow{};  ///< time-integrated outflow through the boundary
  long steps = 0;
};

/// Godunov flux across a face normal to `axis`, from left (lower) to right.
ConsState godunov_flux(const ConsState& left, const ConsState& right, int axis,
                       const GasLaw& gas, const RiemannOptions& options = {});
ConsState godunov_flux(const PrimState& left, const PrimState& right, int axis,
                       const GasLaw& gas, const RiemannOptions& options = {});

/// 1/2 (F(U_L) + F(U_R)) . n - 1/2 lambda (U_R - U_L) with
/// lambda = mu_scale max(|u_L.n| + c_L, |u_R.n| + c_R) + h^epsilon.
ConsState vfv_flux(const ConsState& left, const ConsState& right, int axis, const GasLaw& gas,
                   double epsilon, double mu_scale, double h);
ConsState vfv_flux(const PrimState& left, const PrimState& right, int axis, const GasLaw& gas,
                   double epsilon, double mu_scale, double h);

/// Ghost state outside a Reflective or Transmissive face normal to `axis`.
/// For Periodic faces `opposite` (the cell on the far side) is returned.
ConsState ghost_state(const ConsState& inner, BoundaryKind kind, int axis,
                      const ConsState& opposite = {});

/// Largest |u_i| + c over cells and active axes.
double max_signal_speed(const CellField& field, const GasLaw& gas);

double compute_dt(const CellField& field, double cfl, const GasLaw& gas,
                  DtRule rule = DtRule::SumOverAxes);

/// One forward Euler step. Throws MonitorViolation when an updated cell
/// falls to or below the density or pressure alarm, VacuumFormation when a
/// face Riemann problem has no vacuum-free solution.
StepResult step(const CellField& field, const StepSettings& settings, double dt);

/// Jump functionals and field extrema of `field` (time, dt, smax untouched).
StepStats field_stats(const CellField& field, const StepSettings& settings);

/// Advances `initial` to config.t_final, landing exactly on it.
RunResult run(const CellField& initial, const RunConfig& config);

/// CSV with columns t, dt, smax, rho_min, p_min, E_max, jump_l1, jump_l2h,
/// mass, momx[, momy[, momz]], energy.
void write_stats_csv(std::ostream& os, const std::vector<StepStats>& series, int dim);

}  // namespace eulerfv
