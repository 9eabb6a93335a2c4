#include <doctest.h>

#include <string>

#include "eulerfv/error.hpp"
#include "eulerfv/riemann.hpp"
#include "eulerfv/scenarios.hpp"

using namespace eulerfv;

namespace {

bool contains(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

std::string error_of(const std::string& doc) {
  try {
    parse_scenario(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("scenarios") {
  TEST_CASE("all builtins are valid and vacuum free") {
    REQUIRE(builtin_names().size() == 9);
    for (const auto& name : builtin_names()) {
      const Scenario s = builtin(name);
      CHECK_NOTHROW(validate(s));
      CHECK(s.t_final > 0.0);
      const GasLaw gas(s.gamma);
      // Every pair of neighbouring states must admit a vacuum-free fan.
      for (const auto& a : s.regions) {
        for (const auto& b : s.regions) {
          for (int axis = 0; axis < s.dim; ++axis) {
            PrimState l = a.state, r = b.state;
            std::swap(l.vel[0], l.vel[axis]);
            std::swap(r.vel[0], r.vel[axis]);
            CHECK_NOTHROW(solve_star(l, r, gas));
          }
        }
      }
    }
  }

  TEST_CASE("builtin data") {
    const Scenario sod = builtin("sod");
    CHECK(sod.dim == 1);
    CHECK(sod.t_final == 0.15);
    const auto rp = as_riemann_problem(sod);
    REQUIRE(rp);
    CHECK(rp->left == PrimState{1.0, {0, 0, 0}, 1.0});
    CHECK(rp->right == PrimState{0.125, {0, 0, 0}, 0.1});
    CHECK(rp->jump_position == 0.5);

    const Scenario r = builtin("single-r");
    CHECK(as_riemann_problem(r)->right.p == 1.0);

    const Scenario shocks = builtin("2d-shocks");
    CHECK(shocks.dim == 2);
    CHECK(shocks.t_final == 0.35);
    CHECK(shocks.reference == ReferenceSpec{ReferenceSpec::Kind::FineMesh, 256});
    CHECK(where_text(shocks.regions[2], 2) == "x<0.5,y<0.5");
    CHECK(shocks.regions[2].state.p == 0.029);
    CHECK(!as_riemann_problem(shocks));
  }

  TEST_CASE("unknown names list the builtins") {
    try {
      builtin("kelvin-helmholtz");
      FAIL("expected UnknownScenario");
    } catch (const UnknownScenario& e) {
      for (const auto& n : builtin_names()) CHECK(contains(e.what(), n));
    }
  }

  TEST_CASE("serialization round trip") {
    for (const auto& name : builtin_names()) {
      const Scenario s = builtin(name);
      const Scenario back = parse_scenario(serialize_scenario(s));
      CHECK(back == s);
      CHECK(serialize_scenario(back) == serialize_scenario(s));
    }
  }

  TEST_CASE("a hand-written quadrant document equals the builtin") {
    const std::string doc = R"({
      "name": "2d-shocks", "dim": 2, "domain": [[0, 1], [0, 1]], "t_final": 0.35,
      "regions": [
        {"where": "x > 0.5, y > 0.5", "rho": 1.5, "u": 0, "v": 0, "p": 1.5},
        {"where": "y>0.5,x<0.5", "rho": 0.5323, "u": 1.206, "p": 0.3},
        {"where": "x<0.5,y<0.5", "rho": 0.138, "u": 1.206, "v": 1.206, "p": 0.029},
        {"where": "x>0.5,y<0.5", "rho": 0.5323, "u": 0, "v": 1.206, "p": 0.3}
      ]})";
    CHECK(parse_scenario(doc) == builtin("2d-shocks"));
  }

  TEST_CASE("parse errors name the problem") {
    CHECK(contains(error_of("{"), "JSON"));
    CHECK(contains(error_of(R"({"dim": 1, "regions": []})"), "t_final"));
    CHECK(contains(error_of(R"({"dim": 1, "t_final": 1, "regions": [{"where": "x<0.5", "rho": 1, "p": 1}], "colour": 1})"),
                   "colour"));
    CHECK(contains(error_of(R"({"dim": 1, "t_final": 1, "regions": [{"where": "all", "rho": 1}]})"),
                   "region 0: missing key 'p'"));
    CHECK(contains(error_of(R"({"dim": 1, "t_final": 1, "regions": [{"where": "z<1", "rho": 1, "p": 1}]})"),
                   "region 0"));
    // Gap between 0.4 and 0.5.
    CHECK(contains(error_of(R"({"dim": 1, "t_final": 1, "regions": [
        {"where": "x<0.4", "rho": 1, "p": 1}, {"where": "x>0.5", "rho": 1, "p": 1}]})"),
                   "cover"));
    // Overlap.
    CHECK(contains(error_of(R"({"dim": 1, "t_final": 1, "regions": [
        {"where": "x<0.6", "rho": 1, "p": 1}, {"where": "x>0.5", "rho": 1, "p": 1}]})"),
                   "overlaps"));
    // Inadmissible state names its region.
    CHECK(contains(error_of(R"({"dim": 1, "t_final": 1, "regions": [
        {"where": "x<0.5", "rho": 1, "p": 1}, {"where": "x>0.5", "rho": 1, "p": -1}]})"),
                   "region 1 (x>0.5)"));
    CHECK(contains(error_of(R"({"dim": 1, "t_final": 1, "reference": "fine:x", "regions": [{"where": "all", "rho": 1, "p": 1}]})"),
                   "reference"));
  }

  TEST_CASE("initial field averages cut cells exactly") {
    const Scenario sod = builtin("sod");
    const CellField even = initial_field(sod, scenario_mesh(sod, 8));
    CHECK(misaligned_cells(sod, scenario_mesh(sod, 8)) == 0);
    CHECK(even[3] == cons_from_prim({1, {0, 0, 0}, 1}, GasLaw()));
    CHECK(field_totals(even).rho == 0.5625);

    const StructMesh odd = scenario_mesh(sod, 5);
    CHECK(misaligned_cells(sod, odd) == 1);
    const CellField f = initial_field(sod, odd);
    CHECK(f[2].rho == doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(field_totals(f).rho == doctest::Approx(0.5625).epsilon(1e-15));
  }

  TEST_CASE("quadrant initial field") {
    const Scenario s = builtin("2d-contacts");
    const StructMesh m = scenario_mesh(s, 4);
    const CellField f = initial_field(s, m);
    const GasLaw gas;
    CHECK(f[m.index(3, 3)] == cons_from_prim(s.regions[0].state, gas));
    CHECK(f[m.index(0, 3)] == cons_from_prim(s.regions[1].state, gas));
    CHECK(f[m.index(0, 0)] == cons_from_prim(s.regions[2].state, gas));
    CHECK(f[m.index(3, 0)] == cons_from_prim(s.regions[3].state, gas));
    CHECK(field_totals(f).rho == doctest::Approx(0.25 * (0.5 + 1.0 + 2.0 + 1.5)).epsilon(1e-15));
  }

  TEST_CASE("reference specs") {
    CHECK(ReferenceSpec::parse("exact").kind == ReferenceSpec::Kind::Exact1D);
    CHECK(ReferenceSpec::parse("fine:512").n_ref == 512);
    CHECK(ReferenceSpec::parse("fine:512").to_string() == "fine:512");
    CHECK_THROWS_AS(ReferenceSpec::parse("fine:-3"), ConfigError);
    CHECK_THROWS_AS(ReferenceSpec::parse("coarse"), ConfigError);
  }
}
