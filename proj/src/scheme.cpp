#include "eulerfv/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "eulerfv/error.hpp"

namespace eulerfv {

namespace {

constexpr ConsState kZero{0.0, {0.0, 0.0, 0.0}, 0.0};

ConsState axpy(const ConsState& y, double a, const ConsState& x) {
  ConsState r;
  r.rho = y.rho + a * x.rho;
  for (int d = 0; d < 3; ++d) r.mom[d] = y.mom[d] + a * x.mom[d];
  r.energy = y.energy + a * x.energy;
  return r;
}

PrimState to_normal_frame(const PrimState& w, int axis) {
  PrimState r = w;
  r.vel = {w.vel[axis], w.vel[(axis + 1) % 3], w.vel[(axis + 2) % 3]};
  return r;
}

PrimState from_normal_frame(const PrimState& w, int axis) {
  PrimState r = w;
  r.vel[axis] = w.vel[0];
  r.vel[(axis + 1) % 3] = w.vel[1];
  r.vel[(axis + 2) % 3] = w.vel[2];
  return r;
}

PrimState prim_ghost(const PrimState& inner, BoundaryKind kind, int axis) {
  PrimState g = inner;
  if (kind == BoundaryKind::Reflective) g.vel[axis] = -g.vel[axis];
  return g;
}

struct SpeedBound {
  double smax = 0.0;
  double inv_dt = 0.0;  ///< 1 / (dt / cfl)
};

SpeedBound speed_bound(const CellField& field, const GasLaw& gas, DtRule rule) {
  const StructMesh& m = field.mesh();
  SpeedBound b;
  for (std::size_t i = 0; i < field.size(); ++i) {
    PrimState w;
    try {
      w = prim_from_cons(field[i], gas);
    } catch (const NonPhysicalState& e) {
      throw MonitorViolation(std::string("non-admissible cell: ") + e.what(), 0.0, i);
    }
    const double c = sound_speed(w, gas);
    double sum = 0.0;
    for (int a = 0; a < m.dim; ++a) {
      const double s = std::abs(w.vel[a]) + c;
      b.smax = std::max(b.smax, s);
      const double rate = s / m.h(a);
      sum += rate;
      if (rule == DtRule::PerAxisMin) b.inv_dt = std::max(b.inv_dt, rate);
    }
    if (rule == DtRule::SumOverAxes) b.inv_dt = std::max(b.inv_dt, sum);
  }
  return b;
}

/// Base cell index (coordinate 0 along `axis`) of the `line`-th grid line.
std::size_t line_base(const StructMesh& m, int axis, std::size_t line) {
  if (axis == 0) return line * m.n[0];
  if (axis == 1) {
    const std::size_t i = line % m.n[0];
    const std::size_t k = line / m.n[0];
    return i + static_cast<std::size_t>(m.n[0]) * m.n[1] * k;
  }
  return line;
}

}  // namespace

void SchemeKind::validate() const {
  if (flux == FluxKind::Vfv) {
    if (!(epsilon > 0.0)) throw ConfigError("VFV epsilon must be positive");
    if (!(mu_scale >= 0.0)) throw ConfigError("VFV mu_scale must be nonnegative");
  }
}

std::string SchemeKind::label() const {
  if (flux == FluxKind::Godunov) return "godunov";
  std::ostringstream s;
  s << "vfv-standin(epsilon=" << epsilon << ",mu=" << mu_scale << ")";
  return s.str();
}

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Reflective:
      return "reflective";
    case BoundaryKind::Transmissive:
      return "transmissive";
    case BoundaryKind::Periodic:
      return "periodic";
  }
  return "?";
}

BoundaryKind boundary_from_string(std::string_view name) {
  if (name == "reflective") return BoundaryKind::Reflective;
  if (name == "transmissive") return BoundaryKind::Transmissive;
  if (name == "periodic") return BoundaryKind::Periodic;
  throw ConfigError("unknown boundary kind '" + std::string(name) + "'");
}

BoundarySet BoundarySet::all(BoundaryKind kind) {
  BoundarySet b;
  for (auto& axis : b.faces) axis = {kind, kind};
  return b;
}

void BoundarySet::validate() const {
  for (const auto& axis : faces) {
    const bool lo = axis[0] == BoundaryKind::Periodic;
    const bool hi = axis[1] == BoundaryKind::Periodic;
    if (lo != hi) throw ConfigError("periodic boundaries must be paired on opposite faces");
  }
}

void RunConfig::validate() const {
  step.scheme.validate();
  step.boundary.validate();
  if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be >= 0");
}

ConsState godunov_flux(const PrimState& left, const PrimState& right, int axis,
                       const GasLaw& gas, const RiemannOptions& options) {
  const PrimState face = interface_state(to_normal_frame(left, axis),
                                         to_normal_frame(right, axis), gas, options);
  return physical_flux(from_normal_frame(face, axis), axis, gas);
}

ConsState godunov_flux(const ConsState& left, const ConsState& right, int axis,
                       const GasLaw& gas, const RiemannOptions& options) {
  return godunov_flux(prim_from_cons(left, gas), prim_from_cons(right, gas), axis, gas, options);
}

ConsState vfv_flux(const PrimState& left, const PrimState& right, int axis, const GasLaw& gas,
                   double epsilon, double mu_scale, double h) {
  const ConsState fl = physical_flux(left, axis, gas);
  const ConsState fr = physical_flux(right, axis, gas);
  const ConsState ul = cons_from_prim(left, gas);
  const ConsState ur = cons_from_prim(right, gas);
  const double sl = std::abs(left.vel[axis]) + sound_speed(left, gas);
  const double sr = std::abs(right.vel[axis]) + sound_speed(right, gas);
  const double lambda = mu_scale * std::max(sl, sr) + std::pow(h, epsilon);
  ConsState f;
  f.rho = 0.5 * (fl.rho + fr.rho) - 0.5 * lambda * (ur.rho - ul.rho);
  for (int d = 0; d < 3; ++d) {
    f.mom[d] = 0.5 * (fl.mom[d] + fr.mom[d]) - 0.5 * lambda * (ur.mom[d] - ul.mom[d]);
  }
  f.energy = 0.5 * (fl.energy + fr.energy) - 0.5 * lambda * (ur.energy - ul.energy);
  return f;
}

ConsState vfv_flux(const ConsState& left, const ConsState& right, int axis, const GasLaw& gas,
                   double epsilon, double mu_scale, double h) {
  return vfv_flux(prim_from_cons(left, gas), prim_from_cons(right, gas), axis, gas, epsilon,
                  mu_scale, h);
}

ConsState ghost_state(const ConsState& inner, BoundaryKind kind, int axis,
                      const ConsState& opposite) {
  switch (kind) {
    case BoundaryKind::Reflective: {
      ConsState g = inner;
      g.mom[axis] = -g.mom[axis];
      return g;
    }
    case BoundaryKind::Transmissive:
      return inner;
    case BoundaryKind::Periodic:
      return opposite;
  }
  return inner;
}

double max_signal_speed(const CellField& field, const GasLaw& gas) {
  return speed_bound(field, gas, DtRule::PerAxisMin).smax;
}

double compute_dt(const CellField& field, double cfl, const GasLaw& gas, DtRule rule) {
  const SpeedBound b = speed_bound(field, gas, rule);
  return cfl / b.inv_dt;
}

StepStats field_stats(const CellField& field, const StepSettings& settings) {
  const StructMesh& m = field.mesh();
  const GasLaw& gas = settings.gas;
  StepStats s;
  s.rho_min = std::numeric_limits<double>::infinity();
  s.p_min = std::numeric_limits<double>::infinity();
  s.e_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < field.size(); ++i) {
    const ConsState& u = field[i];
    s.rho_min = std::min(s.rho_min, u.rho);
    s.p_min = std::min(s.p_min, (gas.gamma() - 1.0) * (u.energy - 0.5 * dot(u.mom, u.mom) / u.rho));
    s.e_max = std::max(s.e_max, u.energy);
  }

  auto jump_norm = [&](const ConsState& a, const ConsState& b) {
    double j = (b.rho - a.rho) * (b.rho - a.rho) + (b.energy - a.energy) * (b.energy - a.energy);
    for (int d = 0; d < m.dim; ++d) j += (b.mom[d] - a.mom[d]) * (b.mom[d] - a.mom[d]);
    return std::sqrt(j);
  };

  for (int axis = 0; axis < m.dim; ++axis) {
    const int na = m.n[axis];
    const std::size_t stride = m.stride(axis);
    const std::size_t lines = m.num_cells() / na;
    const double area = m.face_area(axis);
    const double h = m.h(axis);
    const bool periodic = settings.boundary.faces[axis][0] == BoundaryKind::Periodic;
    for (std::size_t line = 0; line < lines; ++line) {
      const std::size_t base = line_base(m, axis, line);
      const int faces = periodic && na > 1 ? na : na - 1;
      for (int f = 0; f < faces; ++f) {
        const std::size_t a = base + f * stride;
        const std::size_t b = base + ((f + 1) % na) * stride;
        const double j = jump_norm(field[a], field[b]);
        s.jump_l1 += area * j;
        s.jump_l2h += area * j * j / h;
      }
    }
  }
  s.totals = field_totals(field);
  return s;
}

StepResult step(const CellField& field, const StepSettings& settings, double dt) {
  const StructMesh& m = field.mesh();
  const GasLaw& gas = settings.gas;
  settings.boundary.validate();
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");

  std::vector<PrimState> prim(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    try {
      prim[i] = prim_from_cons(field[i], gas);
      check_admissible(prim[i]);
    } catch (const NonPhysicalState& e) {
      throw MonitorViolation(std::string("non-admissible cell before step: ") + e.what(), 0.0, i);
    }
  }

  auto numerical_flux = [&](const PrimState& wl, const PrimState& wr, int axis) {
    if (settings.scheme.flux == FluxKind::Godunov) {
      return godunov_flux(wl, wr, axis, gas, settings.riemann);
    }
    return vfv_flux(wl, wr, axis, gas, settings.scheme.epsilon, settings.scheme.mu_scale,
                    m.h(axis));
  };

  std::vector<ConsState> rate(field.size(), kZero);
  ConsState outflow = kZero;

  for (int axis = 0; axis < m.dim; ++axis) {
    const int na = m.n[axis];
    const std::size_t stride = m.stride(axis);
    const long lines = static_cast<long>(m.num_cells() / na);
    const double inv_h = 1.0 / m.h(axis);
    const auto& tags = settings.boundary.faces[axis];
    const bool periodic = tags[0] == BoundaryKind::Periodic;

    // Per-line boundary fluxes, summed serially afterwards.
    std::vector<ConsState> lower_flux(lines, kZero);
    std::vector<ConsState> upper_flux(lines, kZero);
    long failed_line = -1;
    std::string failure;
    bool vacuum = true;

#pragma omp parallel for schedule(static)
    for (long line = 0; line < lines; ++line) {
      const std::size_t base = line_base(m, axis, static_cast<std::size_t>(line));
      const std::size_t first = base;
      const std::size_t last = base + (na - 1) * stride;
      try {
        for (int f = 0; f <= na; ++f) {
          PrimState wl;
          PrimState wr;
          if (f == 0) {
            wr = prim[first];
            wl = periodic ? prim[last] : prim_ghost(wr, tags[0], axis);
          } else if (f == na) {
            wl = prim[last];
            wr = periodic ? prim[first] : prim_ghost(wl, tags[1], axis);
          } else {
            wl = prim[base + (f - 1) * stride];
            wr = prim[base + f * stride];
          }
          const ConsState flux = numerical_flux(wl, wr, axis);
          if (f > 0) {
            ConsState& r = rate[base + (f - 1) * stride];
            r = axpy(r, -inv_h, flux);
          }
          if (f < na) {
            ConsState& r = rate[base + f * stride];
            r = axpy(r, inv_h, flux);
          }
          if (f == 0) lower_flux[line] = flux;
          if (f == na) upper_flux[line] = flux;
        }
      } catch (const Error& e) {
#pragma omp critical(eulerfv_step_failure)
        {
          if (failed_line < 0 || line < failed_line) {
            failed_line = line;
            failure = e.what();
            vacuum = dynamic_cast<const VacuumFormation*>(&e) != nullptr;
          }
        }
      }
    }

    if (failed_line >= 0) {
      std::ostringstream msg;
      msg << failure << " (axis " << axis << ", grid line starting at cell "
          << line_base(m, axis, static_cast<std::size_t>(failed_line)) << ")";
      if (!vacuum) throw NoConvergence(msg.str());
      throw VacuumFormation(msg.str());
    }

    if (!periodic) {
      const double area = m.face_area(axis);
      for (long line = 0; line < lines; ++line) {
        outflow = axpy(outflow, -area * dt, lower_flux[line]);
        outflow = axpy(outflow, area * dt, upper_flux[line]);
      }
    }
  }

  std::vector<ConsState> next(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    next[i] = axpy(field[i], dt, rate[i]);
    const ConsState& u = next[i];
    const double p = u.rho > 0.0
                         ? (gas.gamma() - 1.0) * (u.energy - 0.5 * dot(u.mom, u.mom) / u.rho)
                         : -std::numeric_limits<double>::infinity();
    if (!(u.rho > settings.rho_min_alarm) || !(p > settings.p_min_alarm)) {
      std::ostringstream msg;
      msg << "positivity monitor tripped in cell " << i << ": rho=" << u.rho << ", p=" << p;
      throw MonitorViolation(msg.str(), 0.0, i);
    }
  }

  StepResult result;
  result.field = CellField(m, std::move(next));
  result.stats = field_stats(result.field, settings);
  result.stats.dt = dt;
  result.boundary_outflow = outflow;
  return result;
}

RunResult run(const CellField& initial, const RunConfig& config) {
  config.validate();
  RunResult result;
  result.field = initial;
  result.initial_totals = field_totals(initial);
  result.boundary_outflow = kZero;

  double t = 0.0;
  if (config.t_final == 0.0) {
    StepStats s = field_stats(initial, config.step);
    s.smax = max_signal_speed(initial, config.step.gas);
    result.series.push_back(s);
    return result;
  }

  while (t < config.t_final) {
    if (result.steps >= config.max_steps) {
      throw ConfigError("step budget exhausted before reaching t_final");
    }
    SpeedBound bound;
    try {
      bound = speed_bound(result.field, config.step.gas, config.dt_rule);
    } catch (const MonitorViolation& e) {
      throw MonitorViolation(e.what(), t, e.cell());
    }
    double dt = config.cfl / bound.inv_dt;
    bool last = false;
    if (t + dt >= config.t_final) {
      dt = config.t_final - t;
      last = true;
    }

    StepResult r;
    try {
      r = step(result.field, config.step, dt);
    } catch (const MonitorViolation& e) {
      std::ostringstream msg;
      msg << e.what() << " during the step ending at t=" << t + dt;
      throw MonitorViolation(msg.str(), t + dt, e.cell());
    } catch (const VacuumFormation& e) {
      std::ostringstream msg;
      msg << e.what() << " during the step starting at t=" << t;
      throw VacuumFormation(msg.str());
    }

    t = last ? config.t_final : t + dt;
    ++result.steps;
    result.field = std::move(r.field);
    result.boundary_outflow = axpy(result.boundary_outflow, 1.0, r.boundary_outflow);
    r.stats.time = t;
    r.stats.smax = bound.smax;
    if (last || (config.stats_every > 0 && result.steps % config.stats_every == 0)) {
      result.series.push_back(r.stats);
    }
  }
  return result;
}

void write_stats_csv(std::ostream& os, const std::vector<StepStats>& series, int dim) {
  static constexpr const char* kMom[] = {"momx", "momy", "momz"};
  std::ostringstream out;
  out << "t,dt,smax,rho_min,p_min,E_max,jump_l1,jump_l2h,mass";
  for (int a = 0; a < dim; ++a) out << ',' << kMom[a];
  out << ",energy\n";
  out << std::setprecision(17);
  for (const StepStats& s : series) {
    out << s.time << ',' << s.dt << ',' << s.smax << ',' << s.rho_min << ',' << s.p_min << ','
        << s.e_max << ',' << s.jump_l1 << ',' << s.jump_l2h << ',' << s.totals.rho;
    for (int a = 0; a < dim; ++a) out << ',' << s.totals.mom[a];
    out << ',' << s.totals.energy << '\n';
  }
  os << out.str();
  if (!os) throw IoError("failed to write stats CSV");
}

}  // namespace eulerfv
