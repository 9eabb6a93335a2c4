#pragma once

/**
 * @file cli.hpp
 *
 * @brief Convergence studies and the command-line front end.
 *
 * Subcommands: solve, convergence, riemann, list-scenarios. Exit codes are 0
 * on success, 2 for usage or configuration errors, 3 for runtime failures
 * (vacuum, monitor alarms, no convergence) and 4 for I/O errors.
 */

#include <exception>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "eulerfv/diagnostics.hpp"
#include "eulerfv/scenarios.hpp"
#include "eulerfv/scheme.hpp"

namespace eulerfv {

/// Where the reference solution of a convergence study comes from.
struct ReferenceChoice {
  enum class Kind { Exact, Fine, File };
  Kind kind = Kind::Exact;
  int n_ref = 256;   ///< Fine
  std::string path;  ///< File

  /// `exact`, `fine:N` or `file:PATH`.
  static ReferenceChoice parse(std::string_view text);
  static ReferenceChoice from_scenario(const Scenario& s);
  std::string label() const;
};

/// How a coarse solution meets its reference.
enum class ErrorConvention {
  /// Inject the coarse solution onto the reference mesh and integrate there.
  ReferenceMesh,
  /// Average the reference onto each coarse mesh and compare cell by cell.
  CoarseMesh,
};

struct StudyOptions {
  SchemeKind scheme{};
  double cfl = 0.9;
  DtRule dt_rule = DtRule::SumOverAxes;
  std::vector<int> ladder;
  ReferenceChoice reference{};
  ErrorConvention convention = ErrorConvention::ReferenceMesh;
  /// Cells of the exact reference mesh (rounded up to a multiple of n).
  int exact_cells = 20480;
  /// Progress lines go here when set.
  std::ostream* log = nullptr;
};

/// A, 2A, 4A, ..., B from "A:B". Throws ConfigError unless B = A 2^k, k >= 1.
std::vector<int> parse_ladder(std::string_view text);

/// Runs every ladder mesh and measures it against the reference restricted
/// to that mesh. Throws NonNestedMesh before any run when the fine reference
/// does not refine every ladder mesh.
ErrorReport convergence_study(const Scenario& scenario, const StudyOptions& options);

/// Default CFL number of a scheme (0.9 Godunov, 0.3 VFV).
double default_cfl(const SchemeKind& scheme);

/// Maps an exception to the documented exit code.
int exit_code_for(const std::exception& e);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eulerfv
