#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "eulerfv/diagnostics.hpp"
#include "eulerfv/error.hpp"
#include "oracles.hpp"

using namespace eulerfv;

namespace {

RefState ref_of(const PrimState& w, const GasLaw& gas) {
  return {w.rho, w.vel, entropy_eta(w, gas)};
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

ErrorReport sample_report() {
  ErrorReport r;
  r.scenario = "sod";
  r.scheme = "godunov";
  r.cfl = 0.9;
  r.t_final = 0.15;
  r.reference = "exact";
  r.rows = {{32, 0.04, 0.03, 0.06, 0.005}, {64, 0.03, 0.02, 0.05, 0.0026}, {128, 0.02, 0.015, 0.04, 0.0015}};
  return r;
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("relative energy vanishes at the reference") {
    const GasLaw gas;
    oracle::StateSampler draw(1);
    for (int i = 0; i < 100; ++i) {
      const PrimState w = draw(3);
      const double e = relative_energy(cons_from_prim(w, gas), ref_of(w, gas), gas);
      CHECK(std::abs(e) <= 1e-12 * cons_from_prim(w, gas).energy);
    }
  }

  TEST_CASE("compact and expanded formulas agree") {
    for (double gamma : {1.4, 5.0 / 3.0}) {
      const GasLaw gas(gamma);
      oracle::StateSampler draw(2);
      for (int i = 0; i < 1000; ++i) {
        const ConsState u = cons_from_prim(draw(2), gas);
        const RefState ref = ref_of(draw(2), gas);
        const double a = relative_energy(u, ref, gas);
        const double b = oracle::expanded_relative_energy(u, ref, gamma);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), u.energy));
      }
    }
  }

  TEST_CASE("relative energy is nonnegative") {
    const GasLaw gas;
    oracle::StateSampler draw(3);
    for (int i = 0; i < 20000; ++i) {
      const ConsState u = cons_from_prim(draw(3), gas);
      CHECK(relative_energy(u, ref_of(draw(3), gas), gas) >= 0.0);
    }
  }

  TEST_CASE("invalid references are rejected") {
    const GasLaw gas;
    const ConsState u = cons_from_prim({1, {0, 0, 0}, 1}, gas);
    CHECK_THROWS_AS(relative_energy(u, RefState{0.0, {0, 0, 0}, 0.0}, gas), NonPhysicalState);
    CHECK_THROWS_AS(relative_energy(u, RefState{1.0, {0, 0, 0}, NAN}, gas), NonPhysicalState);
  }

  TEST_CASE("relative energy is equivalent to the squared distance on a compact set") {
    const GasLaw gas;
    oracle::StateSampler draw(4);
    std::vector<ProbeSample> samples;
    for (int i = 0; i < 2000; ++i) {
      const PrimState w = draw(1);
      samples.push_back({cons_from_prim(draw(1), gas), ref_of(w, gas)});
    }
    samples.push_back({cons_from_prim({1, {0, 0, 0}, 1}, gas), ref_of({1, {0, 0, 0}, 1}, gas)});
    const ProbeResult r = equivalence_probe(samples, gas);
    CHECK(r.used == 2000);
    CHECK(r.ratio_min > 0.0);
    CHECK(r.ratio_max < 1e3);
    std::vector<ProbeSample> same{samples.back()};
    CHECK_THROWS_AS(equivalence_probe(same, gas), ConfigError);
  }

  TEST_CASE("norms of identical fields are zero") {
    const GasLaw gas;
    const StructMesh m = StructMesh::unit(1, 8);
    const CellField f(m, cons_from_prim({0.5, {1, 0, 0}, 2}, gas));
    const auto refs = ref_states(f, gas);
    const ErrorNorms e = error_norms(f, refs, gas);
    CHECK(e.rho == 0.0);
    CHECK(e.mom == doctest::Approx(0.0).scale(1.0));
    CHECK(e.eta == 0.0);
    CHECK(relative_energy_norm(f, refs, gas) == doctest::Approx(0.0).scale(1e-12));
    CHECK_THROWS_AS(error_norms(CellField(StructMesh::unit(1, 4), f[0]), refs, gas), MeshMismatch);
  }

  TEST_CASE("density error of a known perturbation") {
    const GasLaw gas;
    const StructMesh m = StructMesh::unit(1, 4);
    std::vector<ConsState> cells(4, cons_from_prim({1, {0, 0, 0}, 1}, gas));
    const auto refs = ref_states(CellField(m, cells), gas);
    cells[1].rho += 0.2;
    const ErrorNorms e = error_norms(CellField(m, cells), refs, gas);
    CHECK(e.rho == doctest::Approx(std::sqrt(0.25 * 0.04)).epsilon(1e-14));
  }

  TEST_CASE("experimental order of convergence") {
    CHECK(eoc(0.04, 0.02) == doctest::Approx(1.0));
    CHECK(eoc(0.0292, 0.0201) == doctest::Approx(0.5388).epsilon(1e-3));
    CHECK_THROWS_AS(eoc(0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(eoc(1.0, -1.0), ConfigError);
  }

  TEST_CASE("report orders skip non-doubling rows") {
    ErrorReport r = sample_report();
    CHECK(std::isnan(r.order(0, ErrorReport::Quantity::Rho)));
    CHECK(r.order(1, ErrorReport::Quantity::Rho) == doctest::Approx(std::log2(4.0 / 3.0)));
    r.rows[2].n = 100;
    CHECK(std::isnan(r.order(2, ErrorReport::Quantity::Rho)));
  }

  TEST_CASE("CSV order columns equal eoc of the error columns") {
    const ErrorReport r = sample_report();
    std::stringstream ss;
    write_report_csv(ss, r);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "n,e_rho,ord_rho,e_mom,ord_mom,e_eta,ord_eta,e_RE,ord_RE");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(ss, line)) rows.push_back(split(line));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][2] == "-");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      for (int q = 0; q < 4; ++q) {
        const double coarse = std::stod(rows[i - 1][1 + 2 * q]);
        const double fine = std::stod(rows[i][1 + 2 * q]);
        CHECK(std::stod(rows[i][2 + 2 * q]) == doctest::Approx(eoc(coarse, fine)).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("JSON report carries metadata and null orders") {
    std::stringstream ss;
    write_report_json(ss, sample_report());
    const auto j = nlohmann::json::parse(ss.str());
    CHECK(j["scenario"] == "sod");
    CHECK(j["reference"] == "exact");
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][0]["ord_rho"].is_null());
    CHECK(j["rows"][1]["e_RE"].get<double>() == 0.0026);
  }

  TEST_CASE("table uses fixed decimals") {
    std::stringstream ss;
    print_report_table(ss, sample_report());
    CHECK(ss.str().find("0.0400") != std::string::npos);
    CHECK(ss.str().find("0.005000") != std::string::npos);
  }
}
