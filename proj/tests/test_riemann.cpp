#include <doctest.h>

#include <cmath>

#include "eulerfv/error.hpp"
#include "eulerfv/grid.hpp"
#include "eulerfv/riemann.hpp"
#include "oracles.hpp"

using namespace eulerfv;

namespace {

PrimState prim(double rho, double u, double p) { return {rho, {u, 0.0, 0.0}, p}; }

}  // namespace

TEST_SUITE("riemann") {
  TEST_CASE("Sod star state") {
    const RiemannFan fan = solve_star(prim(1, 0, 1), prim(0.125, 0, 0.1), GasLaw());
    CHECK(fan.p_star == doctest::Approx(0.30313017805064682).epsilon(1e-12));
    CHECK(fan.u_star == doctest::Approx(0.92745262004894995).epsilon(1e-12));
    CHECK(fan.rho_star_left == doctest::Approx(0.42631942817849519).epsilon(1e-12));
    CHECK(fan.rho_star_right == doctest::Approx(0.26557371170530706).epsilon(1e-12));
    CHECK(fan.left_wave == WaveKind::Rarefaction);
    CHECK(fan.right_wave == WaveKind::Shock);
  }

  TEST_CASE("symmetric double rarefaction") {
    const RiemannFan fan = solve_star(prim(1, -2, 0.4), prim(1, 2, 0.4), GasLaw());
    CHECK(fan.u_star == 0.0);
    CHECK(fan.p_star == doctest::Approx(0.0018938734200547630).epsilon(1e-10));
    CHECK(fan.rho_star_left == doctest::Approx(0.021852118206812831).epsilon(1e-10));
    CHECK(fan.rho_star_left == fan.rho_star_right);
    CHECK(fan.left_wave == WaveKind::Rarefaction);
    CHECK(fan.right_wave == WaveKind::Rarefaction);
  }

  TEST_CASE("equal states give a degenerate fan") {
    const PrimState w = prim(0.7, 0.3, 2.0);
    const RiemannFan fan = solve_star(w, w, GasLaw());
    CHECK(fan.p_star == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fan.u_star == doctest::Approx(0.3).epsilon(1e-14));
    for (double xi : {-3.0, -0.5, 0.0, 0.3, 0.31, 5.0}) {
      const PrimState s = sample(fan, w, w, xi, GasLaw());
      CHECK(s.rho == doctest::Approx(0.7).epsilon(1e-13));
      CHECK(s.p == doctest::Approx(2.0).epsilon(1e-13));
    }
  }

  TEST_CASE("vacuum generation is an error") {
    CHECK_THROWS_AS(solve_star(prim(1, -10, 0.4), prim(1, 10, 0.4), GasLaw()), VacuumFormation);
  }

  TEST_CASE("agrees with the bisection oracle") {
    oracle::StateSampler draw(2024);
    const GasLaw gas;
    int checked = 0;
    while (checked < 2000) {
      const PrimState l = draw(), r = draw();
      if (!oracle::vacuum_free(l, r, 1.4)) continue;
      const RiemannFan fan = solve_star(l, r, gas);
      const double ref = oracle::bisection_p_star(l, r, 1.4);
      CHECK(std::abs(fan.p_star - ref) <= 1e-8 * std::max(1.0, ref));
      ++checked;
    }
  }

  TEST_CASE("mirror symmetry") {
    oracle::StateSampler draw(99);
    const GasLaw gas;
    for (int i = 0; i < 200; ++i) {
      const PrimState l = draw(), r = draw();
      if (!oracle::vacuum_free(l, r, 1.4)) continue;
      const RiemannFan a = solve_star(l, r, gas);
      const RiemannFan b = solve_star(prim(r.rho, -r.vel[0], r.p), prim(l.rho, -l.vel[0], l.p), gas);
      CHECK(a.p_star == doctest::Approx(b.p_star).epsilon(1e-11));
      CHECK(a.u_star == doctest::Approx(-b.u_star).epsilon(1e-10).scale(1.0));
    }
  }

  TEST_CASE("sampling on wave boundaries") {
    const PrimState l = prim(1, 0, 1), r = prim(0.125, 0, 0.1);
    const GasLaw gas;
    const RiemannFan fan = solve_star(l, r, gas);
    const WaveSpan span = wave_span(fan, l, r, gas);
    CHECK(span.left_head < span.left_tail);
    CHECK(span.left_tail < span.contact);
    CHECK(span.contact < span.right_head);
    CHECK(span.right_tail == span.right_head);

    // On the shock: upstream (unshocked right) state.
    const PrimState on_shock = sample(fan, l, r, span.right_head, gas);
    CHECK(on_shock.rho == r.rho);
    CHECK(on_shock.p == r.p);
    // On the contact: left star state.
    const PrimState on_contact = sample(fan, l, r, span.contact, gas);
    CHECK(on_contact.rho == doctest::Approx(fan.rho_star_left).epsilon(1e-14));
    // Far field.
    CHECK(sample(fan, l, r, -10.0, gas) == l);
    CHECK(sample(fan, l, r, 10.0, gas) == r);
  }

  TEST_CASE("rarefaction fan is continuous") {
    const PrimState l = prim(1, 0, 1), r = prim(0.125, 0, 0.1);
    const GasLaw gas;
    const RiemannFan fan = solve_star(l, r, gas);
    const WaveSpan span = wave_span(fan, l, r, gas);
    const double eps = 1e-9;
    const PrimState head_in = sample(fan, l, r, span.left_head + eps, gas);
    const PrimState tail_in = sample(fan, l, r, span.left_tail - eps, gas);
    CHECK(head_in.rho == doctest::Approx(l.rho).epsilon(1e-7));
    CHECK(tail_in.rho == doctest::Approx(fan.rho_star_left).epsilon(1e-7));
    CHECK(tail_in.p == doctest::Approx(fan.p_star).epsilon(1e-7));
  }

  TEST_CASE("tangential velocity follows the contact") {
    const GasLaw gas;
    const PrimState l{1.0, {0.0, 1.0, 0.0}, 1.0}, r{0.125, {0.0, -2.0, 0.5}, 0.1};
    const RiemannFan fan = solve_star(l, r, gas);
    const PrimState left_of = sample(fan, l, r, fan.u_star - 1e-6, gas);
    const PrimState right_of = sample(fan, l, r, fan.u_star + 1e-6, gas);
    CHECK(left_of.vel[1] == 1.0);
    CHECK(right_of.vel[1] == -2.0);
    CHECK(right_of.vel[2] == 0.5);
  }

  TEST_CASE("exact profile conserves the initial totals") {
    const GasLaw gas;
    const PrimState l = prim(1, 0, 1), r = prim(0.125, 0, 0.1);
    const StructMesh mesh = StructMesh::unit(1, 200);
    const CellField f = exact_profile(l, r, 0.5, 0.15, mesh, gas, 64);
    const ConsState total = field_totals(f);
    // Waves stay inside the domain and the far states are at rest with
    // balanced fluxes except for the pressure difference.
    CHECK(total.rho == doctest::Approx(0.5625).epsilon(1e-4));
    CHECK(total.energy == doctest::Approx(0.5 * 2.5 + 0.5 * 0.25).epsilon(1e-4));
    CHECK(total.mom[0] == doctest::Approx(0.15 * (1.0 - 0.1)).epsilon(1e-3));
  }

  TEST_CASE("exact profile argument checks") {
    const GasLaw gas;
    CHECK_THROWS_AS(exact_profile(prim(1, 0, 1), prim(1, 0, 1), 0.5, 0.0, StructMesh::unit(1, 8), gas),
                    ConfigError);
    CHECK_THROWS_AS(exact_profile(prim(1, 0, 1), prim(1, 0, 1), 0.5, 0.1, StructMesh::unit(2, 8), gas),
                    ConfigError);
  }

  TEST_CASE("interface state of a supersonic flow is the upwind state") {
    const GasLaw gas;
    const PrimState l = prim(1, 5, 1), r = prim(0.5, 5, 0.8);
    const PrimState face = interface_state(l, r, gas);
    CHECK(face.rho == l.rho);
    CHECK(face.p == l.p);
  }
}
