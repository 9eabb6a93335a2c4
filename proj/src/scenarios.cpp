#include "eulerfv/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "eulerfv/error.hpp"

namespace eulerfv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr char kAxisNames[] = {'x', 'y', 'z'};

Region box(double xlo, double xhi, double ylo, double yhi, PrimState w) {
  return {{xlo, ylo, -kInf}, {xhi, yhi, kInf}, w};
}

PrimState prim1(double rho, double u, double p) { return {rho, {u, 0.0, 0.0}, p}; }
PrimState prim2(double rho, double u, double v, double p) { return {rho, {u, v, 0.0}, p}; }

Scenario one_d(std::string name, PrimState left, PrimState right, double t_final,
               std::string description) {
  Scenario s;
  s.name = std::move(name);
  s.dim = 1;
  s.t_final = t_final;
  s.regions = {box(-kInf, 0.5, -kInf, kInf, left), box(0.5, kInf, -kInf, kInf, right)};
  s.reference = {ReferenceSpec::Kind::Exact1D, 256};
  s.description = std::move(description);
  return s;
}

/// Quadrant data in the order NE, NW, SW, SE around (0.5, 0.5).
Scenario quadrants(std::string name, PrimState ne, PrimState nw, PrimState sw, PrimState se,
                   double t_final, std::string description) {
  Scenario s;
  s.name = std::move(name);
  s.dim = 2;
  s.t_final = t_final;
  s.regions = {box(0.5, kInf, 0.5, kInf, ne), box(-kInf, 0.5, 0.5, kInf, nw),
               box(-kInf, 0.5, -kInf, 0.5, sw), box(0.5, kInf, -kInf, 0.5, se)};
  s.reference = {ReferenceSpec::Kind::FineMesh, 256};
  s.description = std::move(description);
  return s;
}

std::vector<Scenario> make_builtins() {
  std::vector<Scenario> all;
  all.push_back(one_d("single-c", prim1(0.5, 0.5, 5.0), prim1(1.0, 0.5, 5.0), 0.2,
                      "1D contact discontinuity"));
  all.push_back(one_d("single-r", prim1(0.5197, -0.7259, 0.4), prim1(1.0, 0.0, 1.0), 0.2,
                      "1D rarefaction"));
  all.push_back(one_d("single-s", prim1(1.0, 0.7276, 1.0), prim1(0.5313, 0.0, 0.4), 0.25,
                      "1D shock"));
  all.push_back(one_d("double-r", prim1(1.0, -2.0, 0.4), prim1(1.0, 2.0, 0.4), 0.15,
                      "1D double rarefaction with near-vacuum center"));
  all.push_back(one_d("sod", prim1(1.0, 0.0, 1.0), prim1(0.125, 0.0, 0.1), 0.15,
                      "Sod shock tube"));
  all.push_back(quadrants("2d-rarefactions", prim2(1.0, 0.0, 0.0, 1.0),
                          prim2(0.5197, -0.7259, 0.0, 0.4),
                          prim2(1.0, -0.7259, -0.7259, 1.0), prim2(0.5197, 0.0, -0.7259, 0.4),
                          0.2, "2D quadrants joined by four rarefactions"));
  all.push_back(quadrants("2d-contacts", prim2(0.5, 0.5, -0.5, 5.0), prim2(1.0, 0.5, 0.5, 5.0),
                          prim2(2.0, -0.5, 0.5, 5.0), prim2(1.5, -0.5, -0.5, 5.0), 0.2,
                          "2D quadrants joined by four contacts"));
  all.push_back(quadrants("2d-shocks", prim2(1.5, 0.0, 0.0, 1.5), prim2(0.5323, 1.206, 0.0, 0.3),
                          prim2(0.138, 1.206, 1.206, 0.029), prim2(0.5323, 0.0, 1.206, 0.3), 0.35,
                          "2D quadrants joined by four shocks"));
  all.push_back(quadrants("2d-mixed", prim2(0.5313, 0.0, 0.0, 0.4), prim2(1.0, 0.7276, 0.0, 1.0),
                          prim2(0.8, 0.0, 0.0, 1.0), prim2(1.0, 0.0, 0.7276, 1.0), 0.25,
                          "2D quadrants joined by shocks and contacts"));
  return all;
}

const std::vector<Scenario>& builtins() {
  static const std::vector<Scenario> all = make_builtins();
  return all;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest text that reads back to the same value.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

/// Length of [a, b] intersected with [lo, hi].
double overlap(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

double clipped_volume(const Region& r, const Vec3& lo, const Vec3& hi, int dim) {
  double v = 1.0;
  for (int d = 0; d < dim; ++d) v *= overlap(lo[d], hi[d], r.lo[d], r.hi[d]);
  return v;
}

double intersection_volume(const Region& a, const Region& b, const Vec3& lo, const Vec3& hi,
                           int dim) {
  double v = 1.0;
  for (int d = 0; d < dim; ++d) {
    const double l = std::max({lo[d], a.lo[d], b.lo[d]});
    const double h = std::min({hi[d], a.hi[d], b.hi[d]});
    v *= std::max(0.0, h - l);
  }
  return v;
}

std::string region_label(const Region& r, int dim, std::size_t index) {
  return "region " + std::to_string(index) + " (" + where_text(r, dim) + ")";
}

void parse_where(std::string_view text, Region& r, int dim) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "all" || s.empty()) return;
  std::stringstream ss(s);
  std::string cond;
  while (std::getline(ss, cond, ',')) {
    if (cond.size() < 3) throw ConfigError("malformed condition '" + cond + "'");
    const char axis_name = cond[0];
    const char* found = std::find(std::begin(kAxisNames), std::end(kAxisNames), axis_name);
    const int axis = static_cast<int>(found - std::begin(kAxisNames));
    if (found == std::end(kAxisNames) || axis >= dim) {
      throw ConfigError("condition '" + cond + "' uses an axis outside the domain");
    }
    const char op = cond[1];
    if (op != '<' && op != '>') throw ConfigError("condition '" + cond + "' needs < or >");
    const std::string num = cond.substr(2);
    char* end = nullptr;
    const double value = std::strtod(num.c_str(), &end);
    if (end == num.c_str() || *end != '\0' || !std::isfinite(value)) {
      throw ConfigError("condition '" + cond + "' has no valid number");
    }
    if (op == '<') {
      r.hi[axis] = std::min(r.hi[axis], value);
    } else {
      r.lo[axis] = std::max(r.lo[axis], value);
    }
  }
}

double get_number(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + ": key '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

bool Region::contains(const Vec3& x, int dim) const {
  for (int d = 0; d < dim; ++d) {
    if (!(x[d] >= lo[d] && x[d] < hi[d])) return false;
  }
  return true;
}

std::string ReferenceSpec::to_string() const {
  if (kind == Kind::Exact1D) return "exact";
  return "fine:" + std::to_string(n_ref);
}

ReferenceSpec ReferenceSpec::parse(std::string_view text) {
  if (text == "exact") return {Kind::Exact1D, 256};
  if (text.starts_with("fine")) {
    if (text == "fine") return {Kind::FineMesh, 256};
    if (text.size() > 5 && text[4] == ':') {
      const std::string num(text.substr(5));
      char* end = nullptr;
      const long n = std::strtol(num.c_str(), &end, 10);
      if (end != num.c_str() && *end == '\0' && n > 0 && n < 1'000'000) {
        return {Kind::FineMesh, static_cast<int>(n)};
      }
    }
  }
  throw ConfigError("reference must be 'exact' or 'fine:N', got '" + std::string(text) + "'");
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.name == b.name && a.dim == b.dim && a.domain_lo == b.domain_lo &&
         a.domain_hi == b.domain_hi && a.t_final == b.t_final && a.gamma == b.gamma &&
         a.regions == b.regions && a.boundary == b.boundary && a.reference == b.reference;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : builtins()) out.push_back(s.name);
    return out;
  }();
  return names;
}

Scenario builtin(std::string_view name) {
  for (const auto& s : builtins()) {
    if (s.name == name) return s;
  }
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw UnknownScenario("unknown scenario '" + std::string(name) + "'; known: " + known);
}

std::string where_text(const Region& r, int dim) {
  std::string out;
  for (int d = 0; d < dim; ++d) {
    if (std::isfinite(r.lo[d])) {
      out += (out.empty() ? "" : ",") + std::string(1, kAxisNames[d]) + ">" +
             format_number(r.lo[d]);
    }
    if (std::isfinite(r.hi[d])) {
      out += (out.empty() ? "" : ",") + std::string(1, kAxisNames[d]) + "<" +
             format_number(r.hi[d]);
    }
  }
  return out.empty() ? "all" : out;
}

void validate(const Scenario& s) {
  if (s.dim < 1 || s.dim > 3) throw ConfigError("dim must be 1, 2 or 3");
  for (int d = 0; d < s.dim; ++d) {
    if (!(s.domain_hi[d] > s.domain_lo[d])) {
      throw ConfigError("domain axis " + std::string(1, kAxisNames[d]) + " is empty");
    }
  }
  if (!(s.t_final >= 0.0) || !std::isfinite(s.t_final)) {
    throw ConfigError("t_final must be finite and nonnegative");
  }
  GasLaw{s.gamma};
  if (s.regions.empty()) throw ConfigError("scenario has no regions");
  if (s.reference.kind == ReferenceSpec::Kind::FineMesh && s.reference.n_ref < 1) {
    throw ConfigError("reference mesh needs at least one cell");
  }

  double domain_volume = 1.0;
  for (int d = 0; d < s.dim; ++d) domain_volume *= s.domain_hi[d] - s.domain_lo[d];
  const double tol = 1e-12 * domain_volume;

  double covered = 0.0;
  for (std::size_t i = 0; i < s.regions.size(); ++i) {
    const Region& r = s.regions[i];
    try {
      check_admissible(r.state);
    } catch (const Error& e) {
      throw ConfigError(region_label(r, s.dim, i) + ": " + e.what());
    }
    const double v = clipped_volume(r, s.domain_lo, s.domain_hi, s.dim);
    if (!(v > 0.0)) throw ConfigError(region_label(r, s.dim, i) + " misses the domain");
    covered += v;
    for (std::size_t j = 0; j < i; ++j) {
      if (intersection_volume(r, s.regions[j], s.domain_lo, s.domain_hi, s.dim) > tol) {
        throw ConfigError(region_label(r, s.dim, i) + " overlaps " +
                          region_label(s.regions[j], s.dim, j));
      }
    }
  }
  if (std::abs(covered - domain_volume) > tol) {
    throw ConfigError("regions do not cover the domain");
  }
}

StructMesh scenario_mesh(const Scenario& s, int n) {
  Vec3 extent{1.0, 1.0, 1.0};
  for (int d = 0; d < s.dim; ++d) extent[d] = s.domain_hi[d] - s.domain_lo[d];
  return StructMesh(s.dim, s.domain_lo, extent, {n, n, n});
}

namespace {

struct CellBox {
  Vec3 lo{};
  Vec3 hi{};
};

CellBox cell_box(const StructMesh& mesh, std::size_t idx) {
  const auto c = mesh.coords(idx);
  CellBox b;
  for (int d = 0; d < mesh.dim; ++d) {
    b.lo[d] = mesh.origin[d] + mesh.extent[d] * c[d] / mesh.n[d];
    b.hi[d] = mesh.origin[d] + mesh.extent[d] * (c[d] + 1) / mesh.n[d];
  }
  return b;
}

/// Index of the region holding the whole cell, or -1 when the cell is cut.
int enclosing_region(const Scenario& s, const CellBox& b) {
  for (std::size_t r = 0; r < s.regions.size(); ++r) {
    bool inside = true;
    for (int d = 0; d < s.dim && inside; ++d) {
      inside = s.regions[r].lo[d] <= b.lo[d] && b.hi[d] <= s.regions[r].hi[d];
    }
    if (inside) return static_cast<int>(r);
  }
  return -1;
}

}  // namespace

CellField initial_field(const Scenario& s, const StructMesh& mesh) {
  validate(s);
  const GasLaw gas(s.gamma);
  std::vector<ConsState> cons;
  for (const auto& r : s.regions) cons.push_back(cons_from_prim(r.state, gas));

  std::vector<ConsState> cells(mesh.num_cells());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const CellBox b = cell_box(mesh, i);
    const int whole = enclosing_region(s, b);
    if (whole >= 0) {
      cells[i] = cons[whole];
      continue;
    }
    ConsState acc{0.0, {0.0, 0.0, 0.0}, 0.0};
    double total = 0.0;
    for (std::size_t r = 0; r < s.regions.size(); ++r) {
      const double w = clipped_volume(s.regions[r], b.lo, b.hi, s.dim);
      if (w == 0.0) continue;
      total += w;
      acc.rho += w * cons[r].rho;
      for (int d = 0; d < 3; ++d) acc.mom[d] += w * cons[r].mom[d];
      acc.energy += w * cons[r].energy;
    }
    acc.rho /= total;
    for (int d = 0; d < 3; ++d) acc.mom[d] /= total;
    acc.energy /= total;
    cells[i] = acc;
  }
  return CellField(mesh, std::move(cells));
}

std::size_t misaligned_cells(const Scenario& s, const StructMesh& mesh) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < mesh.num_cells(); ++i) {
    if (enclosing_region(s, cell_box(mesh, i)) < 0) ++count;
  }
  return count;
}

std::optional<RiemannData> as_riemann_problem(const Scenario& s) {
  if (s.dim != 1 || s.regions.size() != 2) return std::nullopt;
  const Region* left = &s.regions[0];
  const Region* right = &s.regions[1];
  if (left->lo[0] > right->lo[0]) std::swap(left, right);
  if (left->hi[0] != right->lo[0] || !std::isfinite(left->hi[0])) return std::nullopt;
  return RiemannData{left->state, right->state, left->hi[0]};
}

Scenario parse_scenario(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");

  static const char* kKeys[] = {"name",    "dim",      "domain",    "t_final",
                                "gamma",   "regions",  "boundary",  "reference",
                                "description"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys),
                     [&](const char* k) { return key == k; }) == std::end(kKeys)) {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  Scenario s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ConfigError("key 'name' must be a string");
    s.name = j["name"].get<std::string>();
  }
  if (j.contains("description") && j["description"].is_string()) {
    s.description = j["description"].get<std::string>();
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ConfigError("key 'dim' must be an integer");
  }
  s.dim = j["dim"].get<int>();
  if (s.dim < 1 || s.dim > 3) throw ConfigError("key 'dim' must be 1, 2 or 3");

  if (j.contains("domain")) {
    const auto& dom = j["domain"];
    if (!dom.is_array() || dom.size() != static_cast<std::size_t>(s.dim)) {
      throw ConfigError("key 'domain' must list [lo, hi] for each axis");
    }
    for (int d = 0; d < s.dim; ++d) {
      const auto& ax = dom[d];
      if (!ax.is_array() || ax.size() != 2 || !ax[0].is_number() || !ax[1].is_number()) {
        throw ConfigError("key 'domain' must list [lo, hi] for each axis");
      }
      s.domain_lo[d] = ax[0].get<double>();
      s.domain_hi[d] = ax[1].get<double>();
    }
  }
  s.t_final = get_number(j, "t_final", "scenario");
  if (j.contains("gamma")) s.gamma = get_number(j, "gamma", "scenario");
  if (j.contains("boundary")) {
    if (!j["boundary"].is_string()) throw ConfigError("key 'boundary' must be a string");
    s.boundary = boundary_from_string(j["boundary"].get<std::string>());
  }
  if (j.contains("reference")) {
    if (!j["reference"].is_string()) throw ConfigError("key 'reference' must be a string");
    s.reference = ReferenceSpec::parse(j["reference"].get<std::string>());
  } else {
    s.reference = {s.dim == 1 ? ReferenceSpec::Kind::Exact1D : ReferenceSpec::Kind::FineMesh,
                   256};
  }

  if (!j.contains("regions") || !j["regions"].is_array()) {
    throw ConfigError("key 'regions' must be an array");
  }
  static const char* kVel[] = {"u", "v", "w"};
  for (std::size_t i = 0; i < j["regions"].size(); ++i) {
    const auto& rj = j["regions"][i];
    const std::string label = "region " + std::to_string(i);
    if (!rj.is_object()) throw ConfigError(label + " must be an object");
    Region r{{-kInf, -kInf, -kInf}, {kInf, kInf, kInf}, {}};
    if (!rj.contains("where") || !rj["where"].is_string()) {
      throw ConfigError(label + ": key 'where' must be a string");
    }
    try {
      parse_where(rj["where"].get<std::string>(), r, s.dim);
    } catch (const ConfigError& e) {
      throw ConfigError(label + ": " + e.what());
    }
    for (const auto& [key, _] : rj.items()) {
      bool known = key == "where" || key == "rho" || key == "p";
      for (int d = 0; d < s.dim; ++d) known = known || key == kVel[d];
      if (!known) throw ConfigError(label + ": unknown key '" + key + "'");
    }
    r.state.rho = get_number(rj, "rho", label);
    r.state.p = get_number(rj, "p", label);
    for (int d = 0; d < s.dim; ++d) {
      r.state.vel[d] = rj.contains(kVel[d]) ? get_number(rj, kVel[d], label) : 0.0;
    }
    s.regions.push_back(r);
  }
  // Unused axes stay unbounded so scenarios compare equal however they are
  // written.
  for (auto& r : s.regions) {
    for (int d = s.dim; d < 3; ++d) {
      r.lo[d] = -kInf;
      r.hi[d] = kInf;
    }
  }
  validate(s);
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  j["dim"] = s.dim;
  j["domain"] = nlohmann::ordered_json::array();
  for (int d = 0; d < s.dim; ++d) j["domain"].push_back({s.domain_lo[d], s.domain_hi[d]});
  j["t_final"] = s.t_final;
  j["gamma"] = s.gamma;
  j["regions"] = nlohmann::ordered_json::array();
  static const char* kVel[] = {"u", "v", "w"};
  for (const auto& r : s.regions) {
    nlohmann::ordered_json rj;
    rj["where"] = where_text(r, s.dim);
    rj["rho"] = r.state.rho;
    for (int d = 0; d < s.dim; ++d) rj[kVel[d]] = r.state.vel[d];
    rj["p"] = r.state.p;
    j["regions"].push_back(rj);
  }
  j["boundary"] = std::string(to_string(s.boundary));
  j["reference"] = s.reference.to_string();
  return j.dump(2) + "\n";
}

}  // namespace eulerfv
