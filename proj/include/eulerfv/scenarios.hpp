#pragma once

/**
 * @file scenarios.hpp
 *
 * @brief Catalog of Riemann-problem scenarios and a JSON scenario format.
 *
 * Scenario file schema:
 *
 *     {
 *       "name": "sod",
 *       "dim": 1,
 *       "domain": [[0, 1]],                 // [lo, hi] per axis
 *       "t_final": 0.15,
 *       "gamma": 1.4,
 *       "regions": [
 *         {"where": "x<0.5", "rho": 1, "u": 0, "p": 1},
 *         {"where": "x>0.5", "rho": 0.125, "u": 0, "p": 0.1}
 *       ],
 *       "boundary": "transmissive",         // or reflective, periodic
 *       "reference": "exact"                // or "fine:256"
 *     }
 *
 * `where` is `all` or a comma separated list of axis conditions such as
 * `x<0.5` or `x>0.5,y<0.5`; 2D regions also take `v`. Regions must
 * partition the domain.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eulerfv/gas.hpp"
#include "eulerfv/grid.hpp"
#include "eulerfv/scheme.hpp"

namespace eulerfv {

/// Axis-aligned box, possibly unbounded.
struct Region {
  Vec3 lo;
  Vec3 hi;
  PrimState state;

  bool contains(const Vec3& x, int dim) const;
  friend bool operator==(const Region&, const Region&) = default;
};

struct ReferenceSpec {
  enum class Kind { Exact1D, FineMesh };
  Kind kind = Kind::Exact1D;
  int n_ref = 256;

  std::string to_string() const;
  /// Parses `exact` or `fine:N`; throws ConfigError otherwise.
  static ReferenceSpec parse(std::string_view text);
  friend bool operator==(const ReferenceSpec&, const ReferenceSpec&) = default;
};

struct Scenario {
  std::string name;
  int dim = 1;
  Vec3 domain_lo{0.0, 0.0, 0.0};
  Vec3 domain_hi{1.0, 1.0, 1.0};
  double t_final = 0.0;
  double gamma = 1.4;
  std::vector<Region> regions;
  BoundaryKind boundary = BoundaryKind::Transmissive;
  ReferenceSpec reference;
  std::string description;

  friend bool operator==(const Scenario& a, const Scenario& b);
};

/// A single 1D Riemann problem extracted from a scenario.
struct RiemannData {
  PrimState left;
  PrimState right;
  double jump_position;
};

const std::vector<std::string>& builtin_names();

/// Throws UnknownScenario listing the builtins.
Scenario builtin(std::string_view name);

/// Throws ConfigError when regions overlap, leave gaps or hold inadmissible
/// states.
void validate(const Scenario& s);

/// Canonical `where` text of a region, e.g. `x>0.5,y<0.5`.
std::string where_text(const Region& r, int dim);

/// Mesh with `n` cells per axis over the scenario domain.
StructMesh scenario_mesh(const Scenario& s, int n);

/// Exact cell averages of the piecewise-constant initial data.
CellField initial_field(const Scenario& s, const StructMesh& mesh);

/// Cells cut by a region interface (zero for builtins on even meshes).
std::size_t misaligned_cells(const Scenario& s, const StructMesh& mesh);

/// The two states and interface of a 1D two-region scenario, if it is one.
std::optional<RiemannData> as_riemann_problem(const Scenario& s);

/// Throws ConfigError naming the offending key or region.
Scenario parse_scenario(std::string_view text);
std::string serialize_scenario(const Scenario& s);

}  // namespace eulerfv
