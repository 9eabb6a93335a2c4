#include "eulerfv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eulerfv/error.hpp"

namespace eulerfv {

void check_reference(const RefState& ref) {
  if (!(ref.rho > 0.0) || !std::isfinite(ref.rho) || !std::isfinite(ref.eta)) {
    throw NonPhysicalState("reference state needs a positive density and finite entropy");
  }
}

RefState ref_from_cons(const ConsState& u, const GasLaw& gas) {
  const PrimState w = prim_from_cons(u, gas);
  return {w.rho, w.vel, entropy_eta(w, gas)};
}

std::vector<RefState> ref_states(const CellField& field, const GasLaw& gas) {
  std::vector<RefState> refs(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) refs[i] = ref_from_cons(field[i], gas);
  return refs;
}

double relative_energy(const ConsState& u, const RefState& ref, const GasLaw& gas) {
  check_reference(ref);
  const PrimState w = prim_from_cons(u, gas);
  const double eta = entropy_eta(w, gas);
  const ThermoPoint tref = thermo_from_rho_eta(ref.rho, ref.eta, gas);
  const EnergyGradient grad = d_rho_e(ref.rho, ref.eta, gas);

  double kinetic = 0.0;
  for (int d = 0; d < 3; ++d) {
    const double dv = w.vel[d] - ref.vel[d];
    kinetic += dv * dv;
  }
  const double rho_e = w.p / (gas.gamma() - 1.0);
  return 0.5 * w.rho * kinetic + rho_e - grad.d_rho * (w.rho - ref.rho) -
         grad.d_eta * (eta - ref.eta) - ref.rho * tref.e;
}

namespace {

void require_same_size(const CellField& field, std::span<const RefState> refs) {
  if (refs.size() != field.size()) {
    throw MeshMismatch("reference has " + std::to_string(refs.size()) + " cells, field has " +
                       std::to_string(field.size()));
  }
}

}  // namespace

double relative_energy_norm(const CellField& field, std::span<const RefState> refs,
                            const GasLaw& gas) {
  require_same_size(field, refs);
  std::vector<double> values(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    values[i] = relative_energy(field[i], refs[i], gas);
  }
  return lp_norm(field.mesh(), values, 1);
}

ErrorNorms error_norms(const CellField& field, std::span<const RefState> refs,
                       const GasLaw& gas) {
  require_same_size(field, refs);
  const std::size_t n = field.size();
  std::vector<double> d_rho(n), d_mom(n), d_eta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ConsState& u = field[i];
    const RefState& r = refs[i];
    d_rho[i] = u.rho - r.rho;
    double m2 = 0.0;
    for (int d = 0; d < 3; ++d) {
      const double dm = u.mom[d] - r.rho * r.vel[d];
      m2 += dm * dm;
    }
    d_mom[i] = std::sqrt(m2);
    d_eta[i] = entropy_eta(u, gas) - r.eta;
  }
  const StructMesh& m = field.mesh();
  return {lp_norm(m, d_rho, 2), lp_norm(m, d_mom, 2), lp_norm(m, d_eta, 2)};
}

double eoc(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
    throw ConfigError("convergence order needs positive errors");
  }
  return std::log2(e_coarse / e_fine);
}

ProbeResult equivalence_probe(std::span<const ProbeSample> samples, const GasLaw& gas) {
  ProbeResult r{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (const ProbeSample& s : samples) {
    const double d_rho = s.state.rho - s.ref.rho;
    double d_m2 = 0.0;
    for (int d = 0; d < 3; ++d) {
      const double dm = s.state.mom[d] - s.ref.rho * s.ref.vel[d];
      d_m2 += dm * dm;
    }
    const double d_eta = entropy_eta(s.state, gas) - s.ref.eta;
    const double dist = d_rho * d_rho + d_m2 + d_eta * d_eta;
    if (dist == 0.0) continue;
    const double ratio = relative_energy(s.state, s.ref, gas) / dist;
    r.ratio_min = std::min(r.ratio_min, ratio);
    r.ratio_max = std::max(r.ratio_max, ratio);
    ++r.used;
  }
  if (r.used == 0) throw ConfigError("equivalence probe needs at least one non-matching sample");
  return r;
}

double ErrorReport::error(std::size_t row, Quantity q) const {
  const Row& r = rows.at(row);
  switch (q) {
    case Quantity::Rho:
      return r.e_rho;
    case Quantity::Mom:
      return r.e_mom;
    case Quantity::Eta:
      return r.e_eta;
    case Quantity::RelativeEnergy:
      return r.e_re;
  }
  return r.e_rho;
}

double ErrorReport::order(std::size_t row, Quantity q) const {
  if (row == 0 || row >= rows.size() || rows[row].n != 2 * rows[row - 1].n) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double coarse = error(row - 1, q);
  const double fine = error(row, q);
  if (!(coarse > 0.0) || !(fine > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return eoc(coarse, fine);
}

namespace {

constexpr ErrorReport::Quantity kQuantities[] = {
    ErrorReport::Quantity::Rho, ErrorReport::Quantity::Mom, ErrorReport::Quantity::Eta,
    ErrorReport::Quantity::RelativeEnergy};

}  // namespace

void write_report_csv(std::ostream& os, const ErrorReport& report) {
  std::ostringstream out;
  out << "n,e_rho,ord_rho,e_mom,ord_mom,e_eta,ord_eta,e_RE,ord_RE\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    out << report.rows[i].n;
    for (auto q : kQuantities) {
      out << ',' << report.error(i, q) << ',';
      const double ord = report.order(i, q);
      if (std::isnan(ord)) {
        out << '-';
      } else {
        out << ord;
      }
    }
    out << '\n';
  }
  os << out.str();
  if (!os) throw IoError("failed to write report CSV");
}

void write_report_json(std::ostream& os, const ErrorReport& report) {
  nlohmann::ordered_json j;
  j["scenario"] = report.scenario;
  j["scheme"] = report.scheme;
  j["cfl"] = report.cfl;
  j["gamma"] = report.gamma;
  j["T"] = report.t_final;
  j["reference"] = report.reference;
  j["rows"] = nlohmann::ordered_json::array();
  static constexpr const char* kNames[] = {"rho", "mom", "eta", "RE"};
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    nlohmann::ordered_json row;
    row["n"] = report.rows[i].n;
    for (std::size_t k = 0; k < 4; ++k) {
      row[std::string("e_") + kNames[k]] = report.error(i, kQuantities[k]);
      const double ord = report.order(i, kQuantities[k]);
      row[std::string("ord_") + kNames[k]] =
          std::isnan(ord) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(ord);
    }
    j["rows"].push_back(row);
  }
  os << j.dump(2) << '\n';
  if (!os) throw IoError("failed to write report JSON");
}

void print_report_table(std::ostream& os, const ErrorReport& report) {
  char line[256];
  os << report.scenario << "  scheme=" << report.scheme << "  cfl=" << report.cfl
     << "  T=" << report.t_final << "  reference=" << report.reference << '\n';
  std::snprintf(line, sizeof line, "%6s | %8s %7s | %8s %7s | %8s %7s | %10s %7s\n", "n",
                "rho", "order", "mom", "order", "eta", "order", "rel.energy", "order");
  os << line;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    auto ord = [&](ErrorReport::Quantity q) {
      const double o = report.order(i, q);
      char buf[32];
      if (std::isnan(o)) {
        std::snprintf(buf, sizeof buf, "%7s", "-");
      } else {
        std::snprintf(buf, sizeof buf, "%7.4f", o);
      }
      return std::string(buf);
    };
    const auto& r = report.rows[i];
    std::snprintf(line, sizeof line, "%6d | %8.4f %s | %8.4f %s | %8.4f %s | %10.6f %s\n", r.n,
                  r.e_rho, ord(ErrorReport::Quantity::Rho).c_str(), r.e_mom,
                  ord(ErrorReport::Quantity::Mom).c_str(), r.e_eta,
                  ord(ErrorReport::Quantity::Eta).c_str(), r.e_re,
                  ord(ErrorReport::Quantity::RelativeEnergy).c_str());
    os << line;
  }
}

}  // namespace eulerfv
