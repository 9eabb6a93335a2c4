#pragma once

/**
 * @file riemann.hpp
 *
 * @brief Exact Riemann solver for the one-dimensional gamma-law Euler
 * equations.
 *
 * The normal velocity is the first component of PrimState::vel. The other two
 * components are passive tangential velocities carried by the contact.
 *
 * The star pressure is found with Newton-Raphson on the two-branch pressure
 * function, started from the two-rarefaction estimate. If Newton does not
 * converge within the iteration cap the root is bracketed and bisected.
 */

#include <string_view>

#include "eulerfv/gas.hpp"

namespace eulerfv {

class CellField;
struct StructMesh;

enum class WaveKind { Shock, Rarefaction };

std::string_view to_string(WaveKind kind);

struct RiemannOptions {
  double tolerance = 1e-12;  ///< relative change of p between Newton iterates
  int max_iterations = 100;
  double p_floor = 1e-14;
};

struct RiemannFan {
  double p_star;
  double u_star;
  WaveKind left_wave;
  WaveKind right_wave;
  double rho_star_left;
  double rho_star_right;
  int iterations = 0;
  bool used_bisection = false;
};

/// Signal speeds bounding the three waves. For a shock head == tail.
struct WaveSpan {
  double left_head;
  double left_tail;
  double contact;
  double right_tail;
  double right_head;
};

/// Throws VacuumFormation unless 2 (c_L + c_R) / (gamma - 1) > u_R - u_L.
RiemannFan solve_star(const PrimState& left, const PrimState& right, const GasLaw& gas,
                      const RiemannOptions& options = {});

WaveSpan wave_span(const RiemannFan& fan, const PrimState& left, const PrimState& right,
                   const GasLaw& gas);

/// Self-similar solution at xi = x / t. A xi lying exactly on a shock returns
/// the upstream state; a xi exactly on the contact returns the left star
/// state.
PrimState sample(const RiemannFan& fan, const PrimState& left, const PrimState& right,
                 double xi, const GasLaw& gas);

/// State on the interface x = 0 (xi = 0).
PrimState interface_state(const PrimState& left, const PrimState& right, const GasLaw& gas,
                          const RiemannOptions& options = {});

/// Cell averages of the exact solution at time t > 0 on a 1D mesh, using
/// composite midpoint quadrature with `subsamples` points per cell.
CellField exact_profile(const PrimState& left, const PrimState& right, double jump_position,
                        double t, const StructMesh& mesh, const GasLaw& gas,
                        int subsamples = 16);

}  // namespace eulerfv
