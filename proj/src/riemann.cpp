#include "eulerfv/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eulerfv/error.hpp"
#include "eulerfv/grid.hpp"

namespace eulerfv {

namespace {

/// Frequently used combinations of gamma.
struct GammaConstants {
  explicit GammaConstants(double g)
      : gamma(g),
        gm1(g - 1.0),
        gp1(g + 1.0),
        z((g - 1.0) / (2.0 * g)),
        g_ratio((g - 1.0) / (g + 1.0)),
        shock_fac((g + 1.0) / (2.0 * g)) {}
  double gamma, gm1, gp1, z, g_ratio, shock_fac;
};

struct Side {
  double rho, u, p, c;
};

struct BranchValue {
  double f, df;
};

// Velocity jump across the K-wave as a function of the star pressure.
BranchValue branch(double p, const Side& s, const GammaConstants& k) {
  if (p > s.p) {
    const double a = 2.0 / (k.gp1 * s.rho);
    const double b = k.g_ratio * s.p;
    const double q = std::sqrt(a / (p + b));
    return {(p - s.p) * q, q * (1.0 - 0.5 * (p - s.p) / (p + b))};
  }
  const double ratio = p / s.p;
  return {2.0 * s.c / k.gm1 * (std::pow(ratio, k.z) - 1.0),
          std::pow(ratio, -(k.gamma + 1.0) / (2.0 * k.gamma)) / (s.rho * s.c)};
}

double star_density(double p_star, const Side& s, const GammaConstants& k) {
  const double ratio = p_star / s.p;
  if (p_star > s.p) return s.rho * (ratio + k.g_ratio) / (k.g_ratio * ratio + 1.0);
  return s.rho * std::pow(ratio, 1.0 / k.gamma);
}

Side make_side(const PrimState& w, const GasLaw& gas) {
  check_admissible(w);
  return {w.rho, w.vel[0], w.p, std::sqrt(gas.gamma() * w.p / w.rho)};
}

}  // namespace

std::string_view to_string(WaveKind kind) {
  return kind == WaveKind::Shock ? "shock" : "rarefaction";
}

RiemannFan solve_star(const PrimState& left, const PrimState& right, const GasLaw& gas,
                      const RiemannOptions& options) {
  const GammaConstants k(gas.gamma());
  const Side l = make_side(left, gas);
  const Side r = make_side(right, gas);
  const double du = r.u - l.u;

  if (2.0 * (l.c + r.c) / k.gm1 <= du) {
    std::ostringstream msg;
    msg << "vacuum forms between left (rho=" << l.rho << ", u=" << l.u << ", p=" << l.p
        << ") and right (rho=" << r.rho << ", u=" << r.u << ", p=" << r.p << ")";
    throw VacuumFormation(msg.str());
  }

  RiemannFan fan{};
  if (l.rho == r.rho && l.u == r.u && l.p == r.p) {
    fan.p_star = l.p;
    fan.u_star = l.u;
    fan.left_wave = fan.right_wave = WaveKind::Rarefaction;
    fan.rho_star_left = fan.rho_star_right = l.rho;
    return fan;
  }

  auto residual = [&](double p) {
    const BranchValue fl = branch(p, l, k);
    const BranchValue fr = branch(p, r, k);
    return BranchValue{fl.f + fr.f + du, fl.df + fr.df};
  };

  // Two-rarefaction estimate.
  const double num = l.c + r.c - 0.5 * k.gm1 * du;
  const double den = l.c / std::pow(l.p, k.z) + r.c / std::pow(r.p, k.z);
  double p = std::max(std::pow(num / den, 1.0 / k.z), options.p_floor);

  bool converged = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    const BranchValue g = residual(p);
    const double next = std::max(p - g.f / g.df, options.p_floor);
    fan.iterations = it + 1;
    const double change = std::abs(next - p);
    const double scale = 0.5 * (next + p);
    p = next;
    if (change <= options.tolerance * scale) {
      converged = true;
      break;
    }
  }
  if (converged) {
    // One polishing step keeps the residual at round-off level.
    const BranchValue g = residual(p);
    const double polished = std::max(p - g.f / g.df, options.p_floor);
    if (std::abs(residual(polished).f) <= std::abs(g.f)) p = polished;
    converged = std::abs(residual(p).f) <= options.tolerance * std::max(1.0, p);
  }

  if (!converged) {
    fan.used_bisection = true;
    double lo = options.p_floor;
    double hi = std::max(l.p, r.p);
    int doublings = 0;
    while (residual(hi).f <= 0.0) {
      hi *= 2.0;
      if (++doublings > 2000) throw NoConvergence("could not bracket the star pressure");
    }
    if (residual(lo).f >= 0.0) {
      hi = lo;
    }
    for (int it = 0; it < 2000 && lo < hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (residual(mid).f > 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    p = std::abs(residual(lo).f) < std::abs(residual(hi).f) ? lo : hi;
  }

  fan.p_star = p;
  const double fl = branch(p, l, k).f;
  const double fr = branch(p, r, k).f;
  fan.u_star = 0.5 * (l.u + r.u) + 0.5 * (fr - fl);
  fan.left_wave = p > l.p ? WaveKind::Shock : WaveKind::Rarefaction;
  fan.right_wave = p > r.p ? WaveKind::Shock : WaveKind::Rarefaction;
  fan.rho_star_left = star_density(p, l, k);
  fan.rho_star_right = star_density(p, r, k);
  return fan;
}

WaveSpan wave_span(const RiemannFan& fan, const PrimState& left, const PrimState& right,
                   const GasLaw& gas) {
  const GammaConstants k(gas.gamma());
  const Side l = make_side(left, gas);
  const Side r = make_side(right, gas);
  WaveSpan span{};
  span.contact = fan.u_star;
  if (fan.left_wave == WaveKind::Shock) {
    span.left_head = span.left_tail =
        l.u - l.c * std::sqrt(k.shock_fac * fan.p_star / l.p + k.z);
  } else {
    span.left_head = l.u - l.c;
    span.left_tail = fan.u_star - l.c * std::pow(fan.p_star / l.p, k.z);
  }
  if (fan.right_wave == WaveKind::Shock) {
    span.right_head = span.right_tail =
        r.u + r.c * std::sqrt(k.shock_fac * fan.p_star / r.p + k.z);
  } else {
    span.right_head = r.u + r.c;
    span.right_tail = fan.u_star + r.c * std::pow(fan.p_star / r.p, k.z);
  }
  return span;
}

PrimState sample(const RiemannFan& fan, const PrimState& left, const PrimState& right,
                 double xi, const GasLaw& gas) {
  const GammaConstants k(gas.gamma());
  const WaveSpan span = wave_span(fan, left, right, gas);

  if (xi <= fan.u_star) {
    if (xi <= span.left_head) return left;
    PrimState w = left;
    if (fan.left_wave == WaveKind::Rarefaction && xi < span.left_tail) {
      const double cl = std::sqrt(gas.gamma() * left.p / left.rho);
      const double c = 2.0 / k.gp1 * (cl + 0.5 * k.gm1 * (left.vel[0] - xi));
      w.vel[0] = 2.0 / k.gp1 * (cl + 0.5 * k.gm1 * left.vel[0] + xi);
      w.rho = left.rho * std::pow(c / cl, 2.0 / k.gm1);
      w.p = left.p * std::pow(c / cl, 2.0 * k.gamma / k.gm1);
      return w;
    }
    w.rho = fan.rho_star_left;
    w.vel[0] = fan.u_star;
    w.p = fan.p_star;
    return w;
  }

  if (xi >= span.right_head) return right;
  PrimState w = right;
  if (fan.right_wave == WaveKind::Rarefaction && xi > span.right_tail) {
    const double cr = std::sqrt(gas.gamma() * right.p / right.rho);
    const double c = 2.0 / k.gp1 * (cr - 0.5 * k.gm1 * (right.vel[0] - xi));
    w.vel[0] = 2.0 / k.gp1 * (-cr + 0.5 * k.gm1 * right.vel[0] + xi);
    w.rho = right.rho * std::pow(c / cr, 2.0 / k.gm1);
    w.p = right.p * std::pow(c / cr, 2.0 * k.gamma / k.gm1);
    return w;
  }
  w.rho = fan.rho_star_right;
  w.vel[0] = fan.u_star;
  w.p = fan.p_star;
  return w;
}

PrimState interface_state(const PrimState& left, const PrimState& right, const GasLaw& gas,
                          const RiemannOptions& options) {
  return sample(solve_star(left, right, gas, options), left, right, 0.0, gas);
}

CellField exact_profile(const PrimState& left, const PrimState& right, double jump_position,
                        double t, const StructMesh& mesh, const GasLaw& gas, int subsamples) {
  if (mesh.dim != 1) throw ConfigError("exact_profile needs a 1D mesh");
  if (!(t > 0.0)) throw ConfigError("exact_profile needs t > 0");
  if (subsamples < 1) throw ConfigError("exact_profile needs at least one sub-sample");
  const RiemannFan fan = solve_star(left, right, gas);
  const double h = mesh.h(0);
  const double sub_h = h / subsamples;
  std::vector<ConsState> cells(mesh.num_cells());
  for (int i = 0; i < mesh.n[0]; ++i) {
    ConsState sum{0.0, {0.0, 0.0, 0.0}, 0.0};
    ConsState first{};
    bool uniform = true;
    const double x0 = mesh.origin[0] + i * h;
    for (int s = 0; s < subsamples; ++s) {
      const double x = x0 + (s + 0.5) * sub_h;
      const ConsState u = cons_from_prim(sample(fan, left, right, (x - jump_position) / t, gas), gas);
      if (s == 0) {
        first = u;
      } else if (!(u == first)) {
        uniform = false;
      }
      sum.rho += u.rho;
      for (int d = 0; d < 3; ++d) sum.mom[d] += u.mom[d];
      sum.energy += u.energy;
    }
    ConsState& avg = cells[i];
    if (uniform) {
      avg = first;
      continue;
    }
    avg.rho = sum.rho / subsamples;
    for (int d = 0; d < 3; ++d) avg.mom[d] = sum.mom[d] / subsamples;
    avg.energy = sum.energy / subsamples;
  }
  return CellField(mesh, std::move(cells));
}

}  // namespace eulerfv
