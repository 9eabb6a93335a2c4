#pragma once

/**
 * @file grid.hpp
 *
 * @brief Uniform structured meshes, piecewise-constant cell fields, cell
 * averaging, restriction between nested meshes and discrete norms.
 *
 * Cells are stored row-major with the first axis fastest:
 * index = i + n0 * (j + n1 * k).
 */

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "eulerfv/gas.hpp"

namespace eulerfv {

struct StructMesh {
  int dim = 1;
  Vec3 origin{0.0, 0.0, 0.0};
  Vec3 extent{1.0, 1.0, 1.0};
  std::array<int, 3> n{1, 1, 1};

  StructMesh() = default;
  /// Throws ConfigError for dim outside [1, 3], nonpositive cell counts or
  /// extents. Unused axes are forced to one cell of unit extent.
  StructMesh(int dim, Vec3 origin, Vec3 extent, std::array<int, 3> n);

  /// [0, 1]^dim with `cells` cells along every active axis.
  static StructMesh unit(int dim, int cells);

  double h(int axis) const { return extent[axis] / n[axis]; }
  double cell_volume() const;
  /// Measure of a face normal to `axis` (1 in 1D).
  double face_area(int axis) const { return cell_volume() / h(axis); }
  std::size_t num_cells() const;

  std::size_t index(int i, int j = 0, int k = 0) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(n[1]) * k);
  }
  std::array<int, 3> coords(std::size_t idx) const;
  std::size_t stride(int axis) const;
  Vec3 center(std::size_t idx) const;

  friend bool operator==(const StructMesh&, const StructMesh&) = default;
};

class CellField {
 public:
  CellField() = default;
  CellField(StructMesh mesh, ConsState fill);
  CellField(StructMesh mesh, std::vector<ConsState> cells);

  const StructMesh& mesh() const { return mesh_; }
  std::size_t size() const { return cells_.size(); }

  ConsState& operator[](std::size_t i) { return cells_[i]; }
  const ConsState& operator[](std::size_t i) const { return cells_[i]; }

  std::span<ConsState> cells() { return cells_; }
  std::span<const ConsState> cells() const { return cells_; }

  friend bool operator==(const CellField&, const CellField&) = default;

 private:
  StructMesh mesh_;
  std::vector<ConsState> cells_;
};

using PointFunction = std::function<ConsState(const Vec3&)>;

/// Cell averages of `f` by composite midpoint quadrature with `subsamples`
/// points per active axis.
CellField project(const PointFunction& f, const StructMesh& mesh, int subsamples = 4);

/// Measure-weighted average of fine children onto a coarse mesh. Throws
/// NonNestedMesh unless every active axis refines by an integer ratio over
/// the same box.
CellField restrict_field(const CellField& fine, const StructMesh& coarse);

/// Piecewise-constant injection of a coarse field onto a nested fine mesh.
/// Throws NonNestedMesh like restrict_field.
CellField prolong_field(const CellField& coarse, const StructMesh& fine);

/// (sum_K |K| |v_K|^p)^(1/p) for p in {1, 2}; `magnitudes` holds |v_K|.
double lp_norm(const StructMesh& mesh, std::span<const double> magnitudes, int p);

/// Pairwise summation with a fixed split, so results are reproducible.
double pairwise_sum(std::span<const double> values);

/// sum_K |K| U_K per component.
ConsState field_totals(const CellField& field);

/// Text dump. Header: `dim n1 [n2 [n3]] o1 [o2 [o3]] e1 [e2 [e3]] gamma time`,
/// then one line per cell with rho, the `dim` momentum components and E at 17
/// significant digits.
struct FieldDump {
  CellField field;
  double gamma = 1.4;
  double time = 0.0;
};

void write_dump(std::ostream& os, const CellField& field, double gamma, double time);
/// Throws IoError on malformed input.
FieldDump read_dump(std::istream& is);

}  // namespace eulerfv
