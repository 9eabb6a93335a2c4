#include "eulerfv/grid.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "eulerfv/error.hpp"

namespace eulerfv {

StructMesh::StructMesh(int dim_, Vec3 origin_, Vec3 extent_, std::array<int, 3> n_)
    : dim(dim_), origin(origin_), extent(extent_), n(n_) {
  if (dim < 1 || dim > 3) throw ConfigError("mesh dimension must be 1, 2 or 3");
  for (int a = 0; a < 3; ++a) {
    if (a >= dim) {
      origin[a] = 0.0;
      extent[a] = 1.0;
      n[a] = 1;
      continue;
    }
    if (n[a] < 1) throw ConfigError("mesh needs at least one cell per axis");
    if (!(extent[a] > 0.0) || !std::isfinite(extent[a])) {
      throw ConfigError("mesh extent must be positive");
    }
  }
}

StructMesh StructMesh::unit(int dim, int cells) {
  return StructMesh(dim, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {cells, cells, cells});
}

double StructMesh::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= h(a);
  return v;
}

std::size_t StructMesh::num_cells() const {
  return static_cast<std::size_t>(n[0]) * n[1] * n[2];
}

std::array<int, 3> StructMesh::coords(std::size_t idx) const {
  const int i = static_cast<int>(idx % n[0]);
  idx /= n[0];
  const int j = static_cast<int>(idx % n[1]);
  const int k = static_cast<int>(idx / n[1]);
  return {i, j, k};
}

std::size_t StructMesh::stride(int axis) const {
  if (axis == 0) return 1;
  if (axis == 1) return static_cast<std::size_t>(n[0]);
  return static_cast<std::size_t>(n[0]) * n[1];
}

Vec3 StructMesh::center(std::size_t idx) const {
  const auto c = coords(idx);
  Vec3 x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = origin[a] + (c[a] + 0.5) * h(a);
  return x;
}

CellField::CellField(StructMesh mesh, ConsState fill)
    : mesh_(mesh), cells_(mesh.num_cells(), fill) {}

CellField::CellField(StructMesh mesh, std::vector<ConsState> cells)
    : mesh_(mesh), cells_(std::move(cells)) {
  if (cells_.size() != mesh_.num_cells()) {
    throw MeshMismatch("cell count does not match the mesh");
  }
}

namespace {

void accumulate(ConsState& sum, const ConsState& u, double w) {
  sum.rho += w * u.rho;
  for (int d = 0; d < 3; ++d) sum.mom[d] += w * u.mom[d];
  sum.energy += w * u.energy;
}

constexpr ConsState kZero{0.0, {0.0, 0.0, 0.0}, 0.0};

}  // namespace

CellField project(const PointFunction& f, const StructMesh& mesh, int subsamples) {
  if (subsamples < 1) throw ConfigError("projection needs at least one sub-sample");
  std::array<int, 3> ns{1, 1, 1};
  for (int a = 0; a < mesh.dim; ++a) ns[a] = subsamples;
  const double weight = 1.0 / (static_cast<double>(ns[0]) * ns[1] * ns[2]);

  std::vector<ConsState> cells(mesh.num_cells());
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const auto c = mesh.coords(idx);
    ConsState sum = kZero;
    ConsState first{};
    bool uniform = true;
    bool have_first = false;
    for (int sk = 0; sk < ns[2]; ++sk) {
      for (int sj = 0; sj < ns[1]; ++sj) {
        for (int si = 0; si < ns[0]; ++si) {
          const std::array<int, 3> s{si, sj, sk};
          Vec3 x{0.0, 0.0, 0.0};
          for (int a = 0; a < mesh.dim; ++a) {
            x[a] = mesh.origin[a] + (c[a] + (s[a] + 0.5) / ns[a]) * mesh.h(a);
          }
          const ConsState u = f(x);
          if (!have_first) {
            first = u;
            have_first = true;
          } else if (!(u == first)) {
            uniform = false;
          }
          accumulate(sum, u, weight);
        }
      }
    }
    // Constant data inside a cell is reproduced bit for bit.
    cells[idx] = uniform ? first : sum;
  }
  return CellField(mesh, std::move(cells));
}

namespace {

/// Refinement ratio per axis; throws NonNestedMesh unless `fm` refines `coarse`.
std::array<int, 3> refinement_ratio(const StructMesh& fm, const StructMesh& coarse) {
  if (fm.dim != coarse.dim) throw NonNestedMesh("meshes differ in dimension");
  std::array<int, 3> ratio{1, 1, 1};
  for (int a = 0; a < coarse.dim; ++a) {
    const double tol = 1e-12 * std::max(1.0, std::abs(coarse.extent[a]));
    if (std::abs(fm.origin[a] - coarse.origin[a]) > tol ||
        std::abs(fm.extent[a] - coarse.extent[a]) > tol) {
      throw NonNestedMesh("meshes cover different boxes");
    }
    if (fm.n[a] % coarse.n[a] != 0) {
      std::ostringstream msg;
      msg << "fine resolution " << fm.n[a] << " is not an integer multiple of coarse resolution "
          << coarse.n[a] << " along axis " << a;
      throw NonNestedMesh(msg.str());
    }
    ratio[a] = fm.n[a] / coarse.n[a];
  }
  return ratio;
}

}  // namespace

CellField restrict_field(const CellField& fine, const StructMesh& coarse) {
  const StructMesh& fm = fine.mesh();
  const std::array<int, 3> ratio = refinement_ratio(fm, coarse);
  if (ratio == std::array<int, 3>{1, 1, 1}) return CellField(coarse, {fine.cells().begin(), fine.cells().end()});

  const double weight = 1.0 / (static_cast<double>(ratio[0]) * ratio[1] * ratio[2]);
  std::vector<ConsState> cells(coarse.num_cells(), kZero);
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const auto c = coarse.coords(idx);
    ConsState sum = kZero;
    for (int k = 0; k < ratio[2]; ++k) {
      for (int j = 0; j < ratio[1]; ++j) {
        for (int i = 0; i < ratio[0]; ++i) {
          accumulate(sum, fine[fm.index(c[0] * ratio[0] + i, c[1] * ratio[1] + j,
                                        c[2] * ratio[2] + k)],
                     1.0);
        }
      }
    }
    ConsState& out = cells[idx];
    out.rho = sum.rho * weight;
    for (int d = 0; d < 3; ++d) out.mom[d] = sum.mom[d] * weight;
    out.energy = sum.energy * weight;
  }
  return CellField(coarse, std::move(cells));
}

CellField prolong_field(const CellField& coarse, const StructMesh& fine) {
  const StructMesh& cm = coarse.mesh();
  const std::array<int, 3> ratio = refinement_ratio(fine, cm);
  std::vector<ConsState> cells(fine.num_cells());
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const auto f = fine.coords(idx);
    cells[idx] = coarse[cm.index(f[0] / ratio[0], f[1] / ratio[1], f[2] / ratio[2])];
  }
  return CellField(fine, std::move(cells));
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double lp_norm(const StructMesh& mesh, std::span<const double> magnitudes, int p) {
  if (p != 1 && p != 2) throw ConfigError("lp_norm supports p = 1 or p = 2");
  if (magnitudes.size() != mesh.num_cells()) throw MeshMismatch("value count does not match mesh");
  std::vector<double> terms(magnitudes.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double v = std::abs(magnitudes[i]);
    terms[i] = p == 1 ? v : v * v;
  }
  const double s = mesh.cell_volume() * pairwise_sum(terms);
  return p == 1 ? s : std::sqrt(s);
}

ConsState field_totals(const CellField& field) {
  const std::size_t n = field.size();
  std::vector<double> buf(n);
  ConsState t = kZero;
  const double vol = field.mesh().cell_volume();
  auto total = [&](auto get) {
    for (std::size_t i = 0; i < n; ++i) buf[i] = get(field[i]);
    return vol * pairwise_sum(buf);
  };
  t.rho = total([](const ConsState& u) { return u.rho; });
  for (int d = 0; d < 3; ++d) t.mom[d] = total([d](const ConsState& u) { return u.mom[d]; });
  t.energy = total([](const ConsState& u) { return u.energy; });
  return t;
}

void write_dump(std::ostream& os, const CellField& field, double gamma, double time) {
  const StructMesh& m = field.mesh();
  std::ostringstream out;
  out << std::setprecision(17);
  out << m.dim;
  for (int a = 0; a < m.dim; ++a) out << ' ' << m.n[a];
  for (int a = 0; a < m.dim; ++a) out << ' ' << m.origin[a];
  for (int a = 0; a < m.dim; ++a) out << ' ' << m.extent[a];
  out << ' ' << gamma << ' ' << time << '\n';
  for (const ConsState& u : field.cells()) {
    out << u.rho;
    for (int a = 0; a < m.dim; ++a) out << ' ' << u.mom[a];
    out << ' ' << u.energy << '\n';
  }
  os << out.str();
  if (!os) throw IoError("failed to write field dump");
}

FieldDump read_dump(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw IoError("field dump is empty");
  std::istringstream hs(header);
  int dim = 0;
  if (!(hs >> dim) || dim < 1 || dim > 3) throw IoError("field dump header: bad dimension");
  std::array<int, 3> n{1, 1, 1};
  Vec3 origin{0.0, 0.0, 0.0};
  Vec3 extent{1.0, 1.0, 1.0};
  for (int a = 0; a < dim; ++a) hs >> n[a];
  for (int a = 0; a < dim; ++a) hs >> origin[a];
  for (int a = 0; a < dim; ++a) hs >> extent[a];
  FieldDump dump;
  hs >> dump.gamma >> dump.time;
  if (!hs) throw IoError("field dump header is truncated: '" + header + "'");

  StructMesh mesh;
  try {
    mesh = StructMesh(dim, origin, extent, n);
  } catch (const ConfigError& e) {
    throw IoError(std::string("field dump header: ") + e.what());
  }
  std::vector<ConsState> cells(mesh.num_cells());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    ConsState& u = cells[i];
    is >> u.rho;
    for (int a = 0; a < dim; ++a) is >> u.mom[a];
    is >> u.energy;
    if (!is) throw IoError("field dump truncated at cell " + std::to_string(i));
  }
  dump.field = CellField(mesh, std::move(cells));
  return dump;
}

}  // namespace eulerfv
