#include "eulerfv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "eulerfv/error.hpp"
#include "eulerfv/grid.hpp"
#include "eulerfv/riemann.hpp"

namespace eulerfv {

ReferenceChoice ReferenceChoice::parse(std::string_view text) {
  if (text.starts_with("file:")) {
    ReferenceChoice r;
    r.kind = Kind::File;
    r.path = std::string(text.substr(5));
    if (r.path.empty()) throw ConfigError("reference 'file:' needs a path");
    return r;
  }
  const ReferenceSpec parsed = ReferenceSpec::parse(text);
  ReferenceChoice r;
  r.kind = parsed.kind == ReferenceSpec::Kind::Exact1D ? Kind::Exact : Kind::Fine;
  r.n_ref = parsed.n_ref;
  return r;
}

ReferenceChoice ReferenceChoice::from_scenario(const Scenario& s) {
  ReferenceChoice r;
  r.kind = s.reference.kind == ReferenceSpec::Kind::Exact1D ? Kind::Exact : Kind::Fine;
  r.n_ref = s.reference.n_ref;
  return r;
}

std::string ReferenceChoice::label() const {
  switch (kind) {
    case Kind::Exact:
      return "exact";
    case Kind::Fine:
      return "fine:" + std::to_string(n_ref) + " (godunov)";
    case Kind::File:
      return "file:" + path;
  }
  return "exact";
}

std::vector<int> parse_ladder(std::string_view text) {
  const auto colon = text.find(':');
  auto to_int = [&](std::string_view part) {
    const std::string s(part);
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || v <= 0 || v > 1'000'000) {
      throw ConfigError("ladder bounds must be positive integers, got '" + std::string(text) +
                        "'");
    }
    return static_cast<int>(v);
  };
  if (colon == std::string_view::npos) throw ConfigError("ladder must look like A:B");
  const int a = to_int(text.substr(0, colon));
  const int b = to_int(text.substr(colon + 1));
  std::vector<int> ladder{a};
  while (ladder.back() < b) ladder.push_back(2 * ladder.back());
  if (ladder.back() != b || ladder.size() < 2) {
    throw ConfigError("ladder " + std::string(text) +
                      " must double from A to B over at least two meshes");
  }
  return ladder;
}

double default_cfl(const SchemeKind& scheme) {
  return scheme.flux == FluxKind::Vfv ? 0.3 : 0.9;
}

namespace {

RunConfig make_config(const Scenario& s, const SchemeKind& scheme, double cfl, DtRule rule) {
  RunConfig cfg;
  cfg.step.scheme = scheme;
  cfg.step.gas = GasLaw(s.gamma);
  cfg.step.boundary = BoundarySet::all(s.boundary);
  cfg.cfl = cfl;
  cfg.t_final = s.t_final;
  cfg.dt_rule = rule;
  return cfg;
}

void check_nested(const std::vector<int>& ladder, int n_ref) {
  for (int n : ladder) {
    if (n_ref % n != 0) {
      throw NonNestedMesh("ladder mesh " + std::to_string(n) + " does not divide reference mesh " +
                          std::to_string(n_ref));
    }
  }
}

}  // namespace

ErrorReport convergence_study(const Scenario& scenario, const StudyOptions& options) {
  validate(scenario);
  options.scheme.validate();
  if (options.ladder.size() < 2) throw ConfigError("a convergence study needs at least two meshes");
  for (std::size_t i = 1; i < options.ladder.size(); ++i) {
    if (options.ladder[i] != 2 * options.ladder[i - 1]) {
      throw ConfigError("ladder meshes must double");
    }
  }
  if (!(scenario.t_final > 0.0)) throw ConfigError("a convergence study needs t_final > 0");

  const GasLaw gas(scenario.gamma);
  const ReferenceChoice& ref = options.reference;

  std::optional<RiemannData> rp;
  std::optional<CellField> fine;
  if (ref.kind == ReferenceChoice::Kind::Exact) {
    rp = as_riemann_problem(scenario);
    if (!rp) throw ConfigError("exact reference needs a 1D two-state scenario");
  } else if (ref.kind == ReferenceChoice::Kind::Fine) {
    check_nested(options.ladder, ref.n_ref);
    if (options.log) *options.log << "reference: godunov n=" << ref.n_ref << std::endl;
    const StructMesh mesh = scenario_mesh(scenario, ref.n_ref);
    const RunConfig cfg = make_config(scenario, SchemeKind::godunov(), 0.9, options.dt_rule);
    fine = run(initial_field(scenario, mesh), cfg).field;
  } else {
    std::ifstream in(ref.path);
    if (!in) throw IoError("cannot open reference file '" + ref.path + "'");
    FieldDump dump = read_dump(in);
    const StructMesh& m = dump.field.mesh();
    if (m.dim != scenario.dim) throw ConfigError("reference file has the wrong dimension");
    check_nested(options.ladder, m.n[0]);
    fine = std::move(dump.field);
  }

  ErrorReport report;
  report.scenario = scenario.name;
  report.scheme = options.scheme.label();
  report.cfl = options.cfl;
  report.gamma = scenario.gamma;
  report.t_final = scenario.t_final;
  report.reference = ref.label();

  const RunConfig cfg = make_config(scenario, options.scheme, options.cfl, options.dt_rule);
  for (int n : options.ladder) {
    if (options.log) *options.log << "mesh n=" << n << std::endl;
    const StructMesh mesh = scenario_mesh(scenario, n);
    const RunResult result = run(initial_field(scenario, mesh), cfg);
    const bool on_reference = options.convention == ErrorConvention::ReferenceMesh;
    CellField reference;
    CellField solution;
    if (rp) {
      const int per_cell = std::max(1, (options.exact_cells + n - 1) / n);
      if (on_reference) {
        const StructMesh ref_mesh = scenario_mesh(scenario, n * per_cell);
        reference = exact_profile(rp->left, rp->right, rp->jump_position, scenario.t_final,
                                  ref_mesh, gas);
        solution = prolong_field(result.field, ref_mesh);
      } else {
        reference = exact_profile(rp->left, rp->right, rp->jump_position, scenario.t_final, mesh,
                                  gas, std::max(16, per_cell));
        solution = result.field;
      }
    } else if (on_reference) {
      reference = *fine;
      solution = prolong_field(result.field, fine->mesh());
    } else {
      reference = restrict_field(*fine, mesh);
      solution = result.field;
    }
    const std::vector<RefState> refs = ref_states(reference, gas);
    const ErrorNorms e = error_norms(solution, refs, gas);
    report.rows.push_back({n, e.rho, e.mom, e.eta, relative_energy_norm(solution, refs, gas)});
  }
  return report;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return 4;
  if (dynamic_cast<const MonitorViolation*>(&e) || dynamic_cast<const VacuumFormation*>(&e) ||
      dynamic_cast<const NoConvergence*>(&e)) {
    return 3;
  }
  if (dynamic_cast<const Error*>(&e) || dynamic_cast<const CLI::Error*>(&e)) return 2;
  return 3;
}

namespace {

struct CommonFlags {
  std::string scenario_name;
  std::string scenario_file;
  std::string scheme = "godunov";
  double cfl = 0.0;  ///< 0 selects the scheme default
  double gamma = 0.0;
  double vfv_epsilon = 1.0;
  double vfv_mu = 1.0;
  std::string dt_rule = "sum";
  std::string boundary;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("scenario", f.scenario_name, "builtin scenario name");
  cmd->add_option("--scenario-file", f.scenario_file, "JSON scenario document");
  cmd->add_option("--scheme", f.scheme, "godunov or vfv")
      ->check(CLI::IsMember({"godunov", "vfv"}));
  cmd->add_option("--cfl", f.cfl, "CFL number (default 0.9 godunov, 0.3 vfv)");
  cmd->add_option("--gamma", f.gamma, "override the adiabatic exponent");
  cmd->add_option("--vfv-epsilon", f.vfv_epsilon, "VFV mesh-viscosity exponent");
  cmd->add_option("--vfv-mu", f.vfv_mu, "VFV wave-speed multiplier");
  cmd->add_option("--dt-rule", f.dt_rule, "time-step rule: sum or per-axis")
      ->check(CLI::IsMember({"sum", "per-axis"}));
  cmd->add_option("--boundary", f.boundary, "override boundary: transmissive, reflective, periodic");
}

Scenario load_scenario(const CommonFlags& f) {
  Scenario s;
  if (!f.scenario_file.empty()) {
    std::ifstream in(f.scenario_file);
    if (!in) throw IoError("cannot open scenario file '" + f.scenario_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    s = parse_scenario(buf.str());
    if (s.name.empty()) s.name = std::filesystem::path(f.scenario_file).stem().string();
  } else if (!f.scenario_name.empty()) {
    s = builtin(f.scenario_name);
  } else {
    throw ConfigError("give a scenario name or --scenario-file");
  }
  if (f.gamma != 0.0) s.gamma = f.gamma;
  if (!f.boundary.empty()) s.boundary = boundary_from_string(f.boundary);
  validate(s);
  return s;
}

SchemeKind scheme_of(const CommonFlags& f) {
  SchemeKind k = f.scheme == "vfv" ? SchemeKind::vfv(f.vfv_epsilon, f.vfv_mu)
                                   : SchemeKind::godunov();
  k.validate();
  return k;
}

DtRule dt_rule_of(const CommonFlags& f) {
  return f.dt_rule == "per-axis" ? DtRule::PerAxisMin : DtRule::SumOverAxes;
}

void open_for_write(std::ofstream& os, const std::string& path) {
  os.open(path);
  if (!os) throw IoError("cannot write '" + path + "'");
}

std::string totals_line(const char* label, const ConsState& u, int dim) {
  char buf[64];
  std::string line = label;
  line.resize(10, ' ');
  std::snprintf(buf, sizeof buf, "%22.15g", u.rho);
  line += buf;
  for (int d = 0; d < dim; ++d) {
    std::snprintf(buf, sizeof buf, "%22.15g", u.mom[d]);
    line += buf;
  }
  std::snprintf(buf, sizeof buf, "%22.15g", u.energy);
  line += buf;
  return line + "\n";
}

int cmd_solve(const CommonFlags& f, int n, const std::string& dump_path,
              const std::string& stats_path, int stats_every, std::ostream& out) {
  const Scenario s = load_scenario(f);
  const SchemeKind scheme = scheme_of(f);
  const double cfl = f.cfl > 0.0 ? f.cfl : default_cfl(scheme);
  RunConfig cfg = make_config(s, scheme, cfl, dt_rule_of(f));
  if (!stats_path.empty()) cfg.stats_every = std::max(1, stats_every);
  cfg.validate();

  const StructMesh mesh = scenario_mesh(s, n);
  const CellField init = initial_field(s, mesh);
  const RunResult r = run(init, cfg);

  const std::string dump = dump_path.empty() ? s.name + "-n" + std::to_string(n) + ".dat"
                                             : dump_path;
  {
    std::ofstream os;
    open_for_write(os, dump);
    write_dump(os, r.field, s.gamma, s.t_final);
    if (!os) throw IoError("failed writing '" + dump + "'");
  }
  if (!stats_path.empty()) {
    std::ofstream os;
    open_for_write(os, stats_path);
    write_stats_csv(os, r.series, s.dim);
  }

  const ConsState final_totals = field_totals(r.field);
  ConsState balance;
  balance.rho = final_totals.rho - r.initial_totals.rho + r.boundary_outflow.rho;
  for (int d = 0; d < 3; ++d) {
    balance.mom[d] = final_totals.mom[d] - r.initial_totals.mom[d] + r.boundary_outflow.mom[d];
  }
  balance.energy = final_totals.energy - r.initial_totals.energy + r.boundary_outflow.energy;

  out << "scenario " << s.name << "  n=" << n << "  scheme=" << scheme.label()
      << "  cfl=" << cfl << "  T=" << s.t_final << "  steps=" << r.steps << '\n';
  std::string header = "totals";
  header.resize(10, ' ');
  char buf[64];
  std::snprintf(buf, sizeof buf, "%22s", "mass");
  header += buf;
  static const char* kMom[] = {"mom_x", "mom_y", "mom_z"};
  for (int d = 0; d < s.dim; ++d) {
    std::snprintf(buf, sizeof buf, "%22s", kMom[d]);
    header += buf;
  }
  std::snprintf(buf, sizeof buf, "%22s", "energy");
  header += buf;
  out << header << '\n';
  out << totals_line("initial", r.initial_totals, s.dim);
  out << totals_line("final", final_totals, s.dim);
  out << totals_line("outflow", r.boundary_outflow, s.dim);
  out << totals_line("balance", balance, s.dim);
  out << "dump written to " << dump << '\n';
  return 0;
}

int cmd_convergence(const CommonFlags& f, const std::string& ladder_text,
                    const std::string& ref_text, const std::string& out_path,
                    const std::string& json_path, const std::string& compare_on, bool quiet,
                    std::ostream& out,
                    std::ostream& err) {
  const Scenario s = load_scenario(f);
  StudyOptions opt;
  opt.scheme = scheme_of(f);
  opt.cfl = f.cfl > 0.0 ? f.cfl : default_cfl(opt.scheme);
  opt.dt_rule = dt_rule_of(f);
  opt.ladder = parse_ladder(ladder_text);
  opt.reference = ref_text.empty() ? ReferenceChoice::from_scenario(s)
                                   : ReferenceChoice::parse(ref_text);
  opt.convention =
      compare_on == "coarse" ? ErrorConvention::CoarseMesh : ErrorConvention::ReferenceMesh;
  if (!quiet) opt.log = &err;
  const ErrorReport report = convergence_study(s, opt);

  print_report_table(out, report);
  if (out_path.empty()) {
    write_report_csv(out, report);
  } else {
    std::ofstream os;
    open_for_write(os, out_path);
    write_report_csv(os, report);
  }
  std::string json = json_path;
  if (json.empty() && !out_path.empty()) {
    json = std::filesystem::path(out_path).replace_extension(".json").string();
  }
  if (!json.empty()) {
    std::ofstream os;
    open_for_write(os, json);
    write_report_json(os, report);
  }
  return 0;
}

PrimState parse_state(const std::vector<double>& v, const char* which) {
  if (v.size() != 3) throw ConfigError(std::string(which) + " state must be rho,u,p");
  PrimState w{v[0], {v[1], 0.0, 0.0}, v[2]};
  try {
    check_admissible(w);
  } catch (const Error& e) {
    throw ConfigError(std::string(which) + " state: " + e.what());
  }
  return w;
}

int cmd_riemann(const std::vector<double>& left_v, const std::vector<double>& right_v,
                double gamma, const std::vector<double>& profile, double jump,
                const std::string& out_path, std::ostream& out) {
  const GasLaw gas(gamma);
  const PrimState left = parse_state(left_v, "left");
  const PrimState right = parse_state(right_v, "right");
  const RiemannFan fan = solve_star(left, right, gas);

  char line[160];
  std::snprintf(line, sizeof line, "p_star        %.17g\nu_star        %.17g\n", fan.p_star,
                fan.u_star);
  out << line;
  if (left == right) {
    std::snprintf(line, sizeof line, "degenerate fan: rho=%.17g u=%.17g p=%.17g\n", left.rho,
                  left.vel[0], left.p);
    out << line;
  }
  out << "left wave     " << to_string(fan.left_wave) << '\n';
  out << "right wave    " << to_string(fan.right_wave) << '\n';
  std::snprintf(line, sizeof line, "rho_star_left %.17g\nrho_star_right %.17g\n",
                fan.rho_star_left, fan.rho_star_right);
  out << line;
  out << "iterations    " << fan.iterations << (fan.used_bisection ? " (bisection)" : "")
      << '\n';

  if (!profile.empty()) {
    if (profile.size() != 2 || !(profile[1] >= 1.0) || profile[1] != std::floor(profile[1])) {
      throw ConfigError("--profile takes a time and a cell count");
    }
    const StructMesh mesh = StructMesh::unit(1, static_cast<int>(profile[1]));
    const CellField field = exact_profile(left, right, jump, profile[0], mesh, gas);
    if (out_path.empty()) {
      write_dump(out, field, gamma, profile[0]);
    } else {
      std::ofstream os;
      open_for_write(os, out_path);
      write_dump(os, field, gamma, profile[0]);
      out << "profile written to " << out_path << '\n';
    }
  }
  return 0;
}

int cmd_list(std::ostream& out) {
  for (const auto& name : builtin_names()) {
    const Scenario s = builtin(name);
    char line[200];
    std::snprintf(line, sizeof line, "%-16s %dD  T=%-5g %s\n", name.c_str(), s.dim, s.t_final,
                  s.description.c_str());
    out << line;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite volume solver for the compressible Euler equations"};
  app.require_subcommand(1);

  CommonFlags solve_flags;
  int n = 100;
  std::string dump_path, stats_path;
  int stats_every = 1;
  auto* solve = app.add_subcommand("solve", "run one scenario on one mesh");
  add_common(solve, solve_flags);
  solve->add_option("--n", n, "cells per axis")->check(CLI::PositiveNumber);
  solve->add_option("--dump", dump_path, "final field dump (default <scenario>-n<N>.dat)");
  solve->add_option("--stats", stats_path, "per-step statistics CSV");
  solve->add_option("--stats-every", stats_every, "record statistics every K steps");

  CommonFlags conv_flags;
  std::string ladder = "32:1024", ref_text, out_path, json_path;
  bool quiet = false;
  std::string compare_on = "reference";
  auto* conv = app.add_subcommand("convergence", "errors and orders over a mesh ladder");
  add_common(conv, conv_flags);
  conv->add_option("--ladder", ladder, "meshes A:B, doubling from A to B");
  conv->add_option("--ref", ref_text, "exact, fine:N or file:PATH");
  std::string ref_file;
  conv->add_option("--reference-file", ref_file, "reference dump (same as --ref file:PATH)")
      ->excludes("--ref");
  conv->add_option("--out", out_path, "CSV report path; JSON goes next to it");
  conv->add_option("--json", json_path, "JSON report path");
  conv->add_flag("--quiet", quiet, "no progress lines");
  conv->add_option("--compare-on", compare_on,
                   "reference: integrate on the reference mesh; coarse: average the reference")
      ->check(CLI::IsMember({"reference", "coarse"}));

  std::vector<double> left_v, right_v, profile;
  double gamma = 1.4, jump = 0.5;
  std::string profile_out;
  auto* riem = app.add_subcommand("riemann", "exact Riemann problem for x-normal data");
  riem->add_option("--left", left_v, "rho,u,p")->delimiter(',')->required();
  riem->add_option("--right", right_v, "rho,u,p")->delimiter(',')->required();
  riem->add_option("--gamma", gamma, "adiabatic exponent");
  riem->add_option("--profile", profile, "t n: write exact cell averages on [0,1]")
      ->expected(2);
  riem->add_option("--jump", jump, "initial interface position for --profile");
  riem->add_option("--out", profile_out, "profile dump path (default stdout)");

  auto* list = app.add_subcommand("list-scenarios", "builtin scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_flags, n, dump_path, stats_path, stats_every, out);
    if (conv->parsed()) {
      if (!ref_file.empty()) ref_text = "file:" + ref_file;
      return cmd_convergence(conv_flags, ladder, ref_text, out_path, json_path, compare_on,
                             quiet, out, err);
    }
    if (riem->parsed()) return cmd_riemann(left_v, right_v, gamma, profile, jump, profile_out, out);
    if (list->parsed()) return cmd_list(out);
  } catch (const MonitorViolation& e) {
    err << "error: " << e.what() << " (t=" << e.time() << ", cell " << e.cell() << ")\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 2;
}

}  // namespace eulerfv
