#pragma once

/**
 * @file diagnostics.hpp
 *
 * @brief Relative energy, L2 error norms of (rho, m, eta) and experimental
 * orders of convergence.
 *
 * The relative energy of a conservative state U = (rho, m, E) with respect to
 * a reference (rho~, u~, eta~) is
 *
 *   E(U | ref) = 1/2 rho |m/rho - u~|^2 + rho e
 *                - d_rho(rho e)(rho~, eta~) (rho - rho~)
 *                - d_eta(rho e)(rho~, eta~) (eta - eta~) - rho~ e~
 *
 * which is nonnegative by strict convexity of rho e in (rho, eta) and
 * vanishes only when the two states coincide.
 */

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eulerfv/gas.hpp"
#include "eulerfv/grid.hpp"

namespace eulerfv {

/// Reference trio (rho~, u~, eta~).
struct RefState {
  double rho = 1.0;
  Vec3 vel{0.0, 0.0, 0.0};
  double eta = 0.0;
};

/// Throws NonPhysicalState unless rho > 0 (theta > 0 then holds).
void check_reference(const RefState& ref);

RefState ref_from_cons(const ConsState& u, const GasLaw& gas);
std::vector<RefState> ref_states(const CellField& field, const GasLaw& gas);

double relative_energy(const ConsState& u, const RefState& ref, const GasLaw& gas);

/// sum_K |K| E(U_K | ref_K). Throws MeshMismatch on a size mismatch.
double relative_energy_norm(const CellField& field, std::span<const RefState> refs,
                            const GasLaw& gas);

struct ErrorNorms {
  double rho = 0.0;
  double mom = 0.0;  ///< L2 norm of |m - rho~ u~|
  double eta = 0.0;
};

ErrorNorms error_norms(const CellField& field, std::span<const RefState> refs,
                       const GasLaw& gas);

/// log2(e_coarse / e_fine); throws ConfigError unless both are positive.
double eoc(double e_coarse, double e_fine);

struct ProbeSample {
  ConsState state;
  RefState ref;
};

struct ProbeResult {
  double ratio_min;
  double ratio_max;
  std::size_t used;  ///< samples that were not exact matches
};

/// Extremal ratios E / (|d rho|^2 + |d m|^2 + |d eta|^2) over the samples,
/// skipping exact matches. Throws ConfigError if no sample is usable.
ProbeResult equivalence_probe(std::span<const ProbeSample> samples, const GasLaw& gas);

/// Errors and orders for a ladder of meshes, laid out like a convergence
/// table.
struct ErrorReport {
  struct Row {
    int n = 0;
    double e_rho = 0.0;
    double e_mom = 0.0;
    double e_eta = 0.0;
    double e_re = 0.0;
  };

  std::vector<Row> rows;

  std::string scenario;
  std::string scheme;
  double cfl = 0.0;
  double gamma = 1.4;
  double t_final = 0.0;
  std::string reference;

  enum class Quantity { Rho, Mom, Eta, RelativeEnergy };

  double error(std::size_t row, Quantity q) const;
  /// EOC between rows[row - 1] and rows[row]; NaN for row 0 or when the two
  /// meshes do not differ by a factor of two.
  double order(std::size_t row, Quantity q) const;
};

/// Columns n, e_rho, ord_rho, e_mom, ord_mom, e_eta, ord_eta, e_RE, ord_RE;
/// full precision, '-' for undefined orders.
void write_report_csv(std::ostream& os, const ErrorReport& report);
void write_report_json(std::ostream& os, const ErrorReport& report);
/// Human readable table with 4 decimals (6 for the relative energy).
void print_report_table(std::ostream& os, const ErrorReport& report);

}  // namespace eulerfv
