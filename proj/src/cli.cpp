#include "heun/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <json.hpp>

#include "heun/error.hpp"
#include "heun/fixtures.hpp"
#include "heun/floquet.hpp"
#include "heun/parallel.hpp"
#include "heun/quasipoly.hpp"
#include "heun/shooting.hpp"
#include "heun/version.hpp"
#include "heun/wavefunction.hpp"

namespace heun::cli {

std::string format_float(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

namespace {

using json = nlohmann::ordered_json;

// Tolerance failure in a command that otherwise ran to completion.
struct ValidationFailure : Error {
  using Error::Error;
};

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string compiler() {
#if defined(__clang__)
  return "clang " __clang_version__;
#elif defined(__GNUC__)
  return "gcc " __VERSION__;
#else
  return "unknown";
#endif
}

json versions() {
  return {{"heun_spectra", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", std::to_string(BOOST_VERSION / 100000) + "." +
                        std::to_string(BOOST_VERSION / 100 % 1000) + "." +
                        std::to_string(BOOST_VERSION % 100)},
          {"compiler", compiler()}};
}

// ---- rendering -----------------------------------------------------------

void emit_json(const json& j, std::ostream& os, int level) {
  const std::string pad(2 * (level + 1), ' '), close(2 * level, ' ');
  switch (j.type()) {
    case json::value_t::number_float:
      if (std::isfinite(j.get<double>())) {
        os << format_float(j.get<double>());
      } else {
        os << "null";
      }
      return;
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(k).dump() << ": ";
        emit_json(v, os, level + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        emit_json(v, os, level + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    default:
      os << j.dump();
  }
}

std::string cell(const json& v) {
  if (v.is_number_float()) return format_float(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

using Flat = std::vector<std::pair<std::string, std::string>>;

void flatten(const json& j, const std::string& prefix, Flat& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "_" + k, out);
  } else if (j.is_array()) {
    std::string joined;
    for (const auto& v : j) joined += (joined.empty() ? "" : " ") + cell(v);
    out.emplace_back(prefix, joined);
  } else {
    out.emplace_back(prefix, cell(j));
  }
}

bool is_record_array(const json& v) { return v.is_array() && !v.empty() && v[0].is_object(); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void render_csv(const json& doc, std::ostream& os) {
  const json& outputs = doc["outputs"];
  for (const auto& [k, v] : outputs.items()) {
    if (!is_record_array(v)) continue;
    Flat head;
    flatten(v[0], "", head);
    for (std::size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << csv_cell(head[i].first);
    os << "\n";
    for (const auto& row : v) {
      Flat f;
      flatten(row, "", f);
      for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << csv_cell(f[i].second);
      os << "\n";
    }
    return;
  }
  Flat f;
  for (const auto& [k, v] : outputs.items()) flatten(v, k, f);
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << csv_cell(f[i].first);
  os << "\n";
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << csv_cell(f[i].second);
  os << "\n";
}

void render_text(const json& doc, std::ostream& os) {
  os << "method: " << doc["method"].get<std::string>() << "\n";
  Flat inputs;
  flatten(doc["inputs"], "", inputs);
  for (const auto& [k, v] : inputs) os << "input " << k << ": " << v << "\n";
  std::vector<std::pair<std::string, const json*>> tables;
  for (const auto& [k, v] : doc["outputs"].items()) {
    if (is_record_array(v)) {
      tables.emplace_back(k, &v);
      continue;
    }
    Flat f;
    flatten(v, k, f);
    for (const auto& [name, value] : f) os << name << ": " << value << "\n";
  }
  for (const auto& [name, rows] : tables) {
    std::vector<Flat> flat;
    for (const auto& r : *rows) {
      flat.emplace_back();
      flatten(r, "", flat.back());
    }
    std::vector<std::size_t> width;
    for (const auto& [k, v] : flat[0]) width.push_back(k.size());
    for (const auto& f : flat)
      for (std::size_t i = 0; i < f.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], f[i].second.size());
    os << "\n[" << name << "]\n";
    for (std::size_t i = 0; i < width.size(); ++i) {
      os << (i ? "  " : "") << std::string(width[i] - flat[0][i].first.size(), ' ')
         << flat[0][i].first;
    }
    os << "\n";
    for (const auto& f : flat) {
      for (std::size_t i = 0; i < f.size() && i < width.size(); ++i) {
        os << (i ? "  " : "") << std::string(width[i] - f[i].second.size(), ' ') << f[i].second;
      }
      os << "\n";
    }
  }
}

void render(const json& doc, const std::string& format, std::ostream& os) {
  if (format == "json") {
    emit_json(doc, os, 0);
    os << "\n";
  } else if (format == "csv") {
    render_csv(doc, os);
  } else {
    render_text(doc, os);
  }
}

json document(json inputs, json outputs, const std::string& method, json tolerances) {
  return {{"inputs", std::move(inputs)},
          {"outputs", std::move(outputs)},
          {"method", method},
          {"tolerances", std::move(tolerances)},
          {"versions", versions()}};
}

// ---- shared option sets ----------------------------------------------------

struct Physics {
  double A = 0.0;
  int l = 0;
  double Z = 1.0;

  ProblemParams params() const { return {A, Z, l}; }
  json inputs() const { return {{"A", A}, {"l", l}, {"Z", Z}}; }
};

void add_physics(CLI::App* cmd, Physics& ph) {
  cmd->add_option("--A", ph.A, "Strength of the A/r^4 term (> 0)")->required();
  cmd->add_option("--l", ph.l, "Angular momentum")->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--Z", ph.Z, "Coulomb charge (> 0)")->capture_default_str();
}

json shooting_tolerances() {
  const ShootingConfig c;
  return {{"rk_tolerance", c.rk_tolerance}, {"series_tolerance", c.series_tolerance}};
}

json connection_tolerances() {
  const ConnectionOptions o;
  return {{"series_tolerance", o.series_tolerance},
          {"energy_tolerance", o.energy_tolerance},
          {"annulus_tolerance", 1e-10}};
}

// ---- commands --------------------------------------------------------------

struct EnergyArgs {
  Physics ph;
  int n = 0;
  std::string method = "shooting";
};

json cmd_energy(const EnergyArgs& a) {
  const ProblemParams p = a.ph.params();
  json in = a.ph.inputs();
  in["n"] = a.n;
  json out = json::object();
  json tol = json::object();
  std::optional<double> es, ef;
  if (a.method != "floquet") {
    const BoundState st = find_energy(p, a.n);
    es = st.E;
    tol["shooting"] = shooting_tolerances();
  }
  if (a.method != "shooting") {
    const ConnectionResult r = find_energy_floquet(p, a.n);
    ef = r.E;
    tol["floquet"] = connection_tolerances();
    out["nu1"] = complex_json(r.nu1);
  }
  if (a.method == "both") {
    out["E_shooting"] = *es;
    out["E_floquet"] = *ef;
    out["difference"] = std::abs(*es - *ef);
    tol["agreement"] = 1e-9;
  } else {
    out["E"] = es ? *es : *ef;
  }
  json doc = document(in, out, a.method, tol);
  if (a.method == "both" && std::abs(*es - *ef) >= 1e-9) {
    throw ValidationFailure(doc.dump());
  }
  return doc;
}

struct SpectrumArgs {
  Physics ph;
  int nmax = 2;
  std::string method = "shooting";
};

json cmd_spectrum(const SpectrumArgs& a) {
  const ProblemParams p = a.ph.params();
  std::vector<double> E(a.nmax + 1);
  parallel_for(E.size(), [&](std::size_t n) {
    E[n] = a.method == "floquet" ? find_energy_floquet(p, static_cast<int>(n)).E
                                 : find_energy(p, static_cast<int>(n)).E;
  });
  json states = json::array();
  for (std::size_t n = 0; n < E.size(); ++n) states.push_back({{"n", n}, {"E", E[n]}});
  json in = a.ph.inputs();
  in["nmax"] = a.nmax;
  return document(in, {{"states", states}}, a.method,
                  a.method == "floquet" ? connection_tolerances() : shooting_tolerances());
}

struct FloquetArgs {
  Physics ph;
  std::optional<double> E;
  std::optional<int> n;
  int N = 20;
};

json cmd_floquet(const FloquetArgs& a) {
  const ProblemParams p = a.ph.params();
  json in = a.ph.inputs();
  json out = json::object();
  FloquetSolution w1;
  if (a.n) {
    in["n"] = *a.n;
    const ConnectionResult r = find_energy_floquet(p, *a.n);
    out["E"] = r.E;
    out["nu1"] = complex_json(r.nu1);
    out["nu2"] = complex_json(r.nu2);
    out["zeta1"] = complex_json(r.zeta1);
    out["zeta2"] = complex_json(r.zeta2);
    out["a0"] = complex_json(r.a0);
    out["b0"] = complex_json(r.b0);
    out["characteristic"] = r.characteristic;
    w1 = r.floquet1;
  } else {
    in["E"] = *a.E;
    const IndexPair idx = find_indices(*a.E, p);
    out["E"] = *a.E;
    out["nu1"] = complex_json(idx.nu1);
    out["nu2"] = complex_json(idx.nu2);
    out["determinant_residual"] = idx.residual;
    w1 = laurent_coefficients(idx.nu1, *a.E, p, std::max(2 * a.N, default_window(p, *a.E)));
  }
  in["N"] = a.N;
  if (w1.N < a.N) w1 = laurent_coefficients(w1.nu, w1.E, p, a.N);
  json coeffs = json::array();
  for (int n = -a.N; n <= a.N; ++n) {
    coeffs.push_back({{"n", n}, {"re", w1.c(n).real()}, {"im", w1.c(n).imag()}});
  }
  out["coefficients"] = coeffs;
  return document(in, out, a.n ? "floquet-connection" : "floquet-index", connection_tolerances());
}

struct WaveArgs {
  Physics ph;
  int n = 0;
  double zmin = 0.0, zmax = 0.0;
  int points = 101;
  std::string grid = "linear";
};

json cmd_wavefunction(const WaveArgs& a) {
  if (!(a.zmin > 0.0) || !(a.zmax > a.zmin)) throw DomainError("need 0 < zmin < zmax");
  if (a.points < 2) throw DomainError("need at least 2 points");
  std::vector<double> zs(a.points);
  for (int i = 0; i < a.points; ++i) {
    const double t = static_cast<double>(i) / (a.points - 1);
    zs[i] = a.grid == "log" ? a.zmin * std::pow(a.zmax / a.zmin, t) : a.zmin + t * (a.zmax - a.zmin);
  }
  const Wavefunction wf = sample_wavefunction(a.ph.params(), a.n, zs);
  json samples = json::array();
  for (const auto& s : wf.samples) {
    samples.push_back({{"z", s.z}, {"w", s.w}, {"source", to_string(s.source)}});
  }
  json in = a.ph.inputs();
  in["n"] = a.n;
  in["zmin"] = a.zmin;
  in["zmax"] = a.zmax;
  in["points"] = a.points;
  in["grid"] = a.grid;
  json out = {{"E", wf.E}, {"z_near", wf.connection.z_near}, {"z_far", wf.connection.z_far},
              {"samples", samples}};
  return document(in, out, "floquet-connection", connection_tolerances());
}

struct QuasiArgs {
  int p = 2;
  int l = 0;
  double Z = 1.0;
};

json cmd_quasipoly(const QuasiArgs& a) {
  const QuasiPolyResult r = solve_quasipoly({a.p, a.l, a.Z});
  const std::vector<QuasiPolyCheck> checks = validate_quasipoly(r);
  json roots = json::array();
  json xi = json::array();
  bool ok = true;
  for (std::size_t k = 0; k < r.beta_roots.size(); ++k) {
    const QuasiPolyCheck& c = checks[k];
    ok = ok && c.passed;
    roots.push_back({{"beta", c.beta},
                     {"A", c.A},
                     {"nodes", c.nodes},
                     {"shooting_mismatch", c.shooting_mismatch},
                     {"ode_residual", c.ode_residual},
                     {"termination", r.termination[k]},
                     {"passed", c.passed}});
    for (std::size_t j = 0; j < r.xi[k].size(); ++j) {
      xi.push_back({{"root", k}, {"j", j}, {"xi", r.xi[k][j]}});
    }
  }
  json rejected = json::array();
  for (cplx z : r.rejected_roots) rejected.push_back(complex_json(z));
  json polys = json::array();
  for (const auto& poly : r.polynomials) {
    json coeffs = json::array();
    for (const auto& s : poly.exact_text) coeffs.push_back(s);
    polys.push_back({{"procedure", to_string(poly.provenance)},
                     {"degree", poly.degree()},
                     {"exact", poly.exact},
                     {"coefficients", coeffs}});
  }
  json out = {{"roots", roots},       {"E", r.E},          {"cross_check", r.cross_check},
              {"rejected", rejected}, {"polynomials", polys}, {"xi", xi}};
  if (!r.note.empty()) out["note"] = r.note;
  json doc = document({{"p", a.p}, {"l", a.l}, {"Z", a.Z}}, out, "quasipoly",
                      {{"newton", 1e-13},
                       {"cross_check", 1e-10},
                       {"shooting_mismatch", 1e-9},
                       {"ode_residual", 1e-10}});
  if (!ok) throw ValidationFailure(doc.dump());
  return doc;
}

// ---- tables ----------------------------------------------------------------

struct TableReport {
  int table = 0;
  std::size_t cells = 0;
  double max_diff = 0.0;
  std::string measure;
  json records = json::array();  ///< every cell
  json failures = json::array();

  void add(json record, bool passed) {
    record["passed"] = passed;
    if (!passed) failures.push_back(record);
    records.push_back(std::move(record));
  }
};

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  for (const auto& l : lines) f << l << "\n";
}

// Every table reports failures in the same shape so they stack into one CSV.
json failure(int table, const std::string& where, cplx computed, cplx reference, double diff,
             double tol) {
  return {{"table", table},           {"cell", where},     {"computed", complex_json(computed)},
          {"reference", complex_json(reference)}, {"diff", diff}, {"tolerance", tol}};
}

std::string csv_join(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) s += (s.empty() ? "" : ",") + csv_cell(c);
  return s;
}

TableReport table_energies(const std::filesystem::path& outdir) {
  const auto fx = load_energy_table();
  std::vector<double> E(fx.size());
  parallel_for(fx.size(), [&](std::size_t i) {
    E[i] = find_energy({fx[i].A, 1.0, fx[i].l}, fx[i].n).E;
  });
  TableReport rep{1, fx.size(), 0.0, "absolute"};
  std::vector<std::string> lines{"l,A,n,E_computed,E_reference,abs_diff,tolerance"};
  for (std::size_t i = 0; i < fx.size(); ++i) {
    const double diff = std::abs(E[i] - fx[i].E);
    const double tol = fx[i].decimals < 9 ? 5e-8 : 1e-8;
    rep.max_diff = std::max(rep.max_diff, diff);
    lines.push_back(csv_join({std::to_string(fx[i].l), format_float(fx[i].A),
                              std::to_string(fx[i].n), format_float(E[i]), format_float(fx[i].E),
                              format_float(diff), format_float(tol)}));
    rep.add(failure(1, "l=" + std::to_string(fx[i].l) + " A=" + cell(fx[i].A) +
                           " n=" + std::to_string(fx[i].n),
                    E[i], fx[i].E, diff, tol),
            diff < tol);
  }
  write_lines(outdir / "table1.csv", lines);
  return rep;
}

TableReport table_coefficients(const std::filesystem::path& outdir) {
  const CoefficientTable fx = load_coefficient_table();
  const ProblemParams p{std::stod(fx.meta.at("A")), std::stod(fx.meta.at("Z")),
                        std::stoi(fx.meta.at("l"))};
  const double E = std::stod(fx.meta.at("E"));
  const cplx seed{std::stod(fx.meta.at("nu_re")), std::stod(fx.meta.at("nu_im"))};
  const IndexPair idx = find_indices(E, p, 0, seed);
  int top = 0;
  double cmax = 0.0;
  for (const auto& r : fx.rows) {
    top = std::max(top, std::abs(r.n));
    cmax = std::max(cmax, std::abs(r.c));
  }
  const FloquetSolution w = laurent_coefficients(idx.nu1, E, p, std::max(2 * top, default_window(p, E)));
  TableReport rep{2, fx.rows.size(), 0.0, "relative (|c| > 1e-6) or absolute / max|c|"};
  std::vector<std::string> lines{"n,re_computed,im_computed,re_reference,im_reference,error,rule"};
  for (const auto& r : fx.rows) {
    const cplx c = w.c(r.n);
    const bool big = std::abs(r.c) > 1e-6;
    double err = big ? std::abs(c - r.c) / std::abs(r.c) : std::abs(c - r.c) / cmax;
    bool ok = big ? err < 1e-6 : err < 1e-12;
    if (!big) {
      // Tail entries also keep their sign and order of magnitude.
      for (auto [x, y] : {std::pair{c.real(), r.c.real()}, std::pair{c.imag(), r.c.imag()}}) {
        if (y == 0.0) continue;
        ok = ok && (x > 0) == (y > 0) && std::abs(std::log10(std::abs(x / y))) < 1.0;
      }
    }
    rep.max_diff = std::max(rep.max_diff, err);
    lines.push_back(csv_join({std::to_string(r.n), format_float(c.real()), format_float(c.imag()),
                              format_float(r.c.real()), format_float(r.c.imag()),
                              format_float(err), big ? "relative" : "absolute"}));
    rep.add(failure(2, "n=" + std::to_string(r.n), c, r.c, err, big ? 1e-6 : 1e-12), ok);
  }
  write_lines(outdir / "table2.csv", lines);
  return rep;
}

TableReport table_indices(const std::filesystem::path& outdir) {
  const auto fx = load_index_table();
  std::vector<double> E(fx.size());
  std::vector<cplx> nu(fx.size());
  parallel_for(fx.size(), [&](std::size_t i) {
    const ProblemParams p{fx[i].A, 1.0, fx[i].l};
    E[i] = find_energy(p, 0).E;
    nu[i] = find_indices(E[i], p).nu1;
  });
  TableReport rep{3, fx.size(), 0.0, "absolute, per component"};
  std::vector<std::string> lines{
      "l,A,nu_re,nu_im,nu_re_reference,nu_im_reference,abs_diff,E_computed,E_reference"};
  for (std::size_t i = 0; i < fx.size(); ++i) {
    const double diff = std::max(std::abs(nu[i].real() - fx[i].nu.real()),
                                 std::abs(nu[i].imag() - fx[i].nu.imag()));
    rep.max_diff = std::max(rep.max_diff, diff);
    lines.push_back(csv_join({std::to_string(fx[i].l), format_float(fx[i].A),
                              format_float(nu[i].real()), format_float(nu[i].imag()),
                              format_float(fx[i].nu.real()), format_float(fx[i].nu.imag()),
                              format_float(diff), format_float(E[i]), format_float(fx[i].E)}));
    rep.add(failure(3, "l=" + std::to_string(fx[i].l) + " A=" + cell(fx[i].A), nu[i], fx[i].nu, diff, 1e-9),
            diff < 1e-9);
  }
  write_lines(outdir / "table3.csv", lines);
  return rep;
}

TableReport table_betas(const std::filesystem::path& outdir) {
  const auto fx = load_beta_table();
  std::map<std::pair<int, int>, QuasiPolyResult> solved;
  for (const auto& r : fx) {
    const auto key = std::pair{r.p, r.l};
    if (!solved.count(key)) solved.emplace(key, solve_quasipoly({r.p, r.l, 1.0}));
  }
  TableReport rep{4, fx.size(), 0.0, "relative"};
  std::vector<std::string> lines{"p,E,l,beta_computed,beta_reference,rel_diff,expression"};
  for (const auto& r : fx) {
    const auto& roots = solved.at({r.p, r.l}).beta_roots;
    double best = std::numeric_limits<double>::infinity(), match = 0.0;
    for (double b : roots) {
      const double d = std::abs(b - r.beta) / r.beta;
      if (d < best) best = d, match = b;
    }
    rep.max_diff = std::max(rep.max_diff, best);
    lines.push_back(csv_join({std::to_string(r.p), r.E, std::to_string(r.l), format_float(match),
                              format_float(r.beta), format_float(best), r.expression}));
    rep.add(failure(4, "p=" + std::to_string(r.p) + " l=" + std::to_string(r.l) +
                           " beta=" + r.expression,
                    match, r.beta, best, 1e-10),
            best < 1e-10);
  }
  write_lines(outdir / "table4.csv", lines);
  return rep;
}

struct TablesArgs {
  std::string which = "all";
  std::string outdir = "tables";
};

json cmd_tables(const TablesArgs& a) {
  std::filesystem::create_directories(a.outdir);
  std::vector<int> which;
  if (a.which == "all") {
    which = {1, 2, 3, 4};
  } else {
    which = {std::stoi(a.which)};
  }
  json summary = json::array();
  json failures = json::array();
  json records = json::array();
  for (int t : which) {
    TableReport r;
    switch (t) {
      case 1: r = table_energies(a.outdir); break;
      case 2: r = table_coefficients(a.outdir); break;
      case 3: r = table_indices(a.outdir); break;
      default: r = table_betas(a.outdir); break;
    }
    summary.push_back({{"table", r.table},
                       {"cells", r.cells},
                       {"failed", r.failures.size()},
                       {"max_diff", r.max_diff},
                       {"measure", r.measure},
                       {"file", (std::filesystem::path(a.outdir) /
                                 ("table" + std::to_string(t) + ".csv"))
                                    .generic_string()}});
    for (auto& f : r.failures) failures.push_back(f);
    for (auto& c : r.records) records.push_back(c);
  }
  {
    std::ofstream f(std::filesystem::path(a.outdir) / "diff_report.csv");
    if (!f) throw Error("cannot write diff report in " + a.outdir);
    render_csv(json{{"outputs", {{"cells", records}}}}, f);
  }
  json doc = document({{"which", a.which}, {"outdir", a.outdir}},
                      {{"summary", summary}, {"failures", failures}}, "tables",
                      {{"table1", 1e-8},
                       {"table1_short_cell", 5e-8},
                       {"table2_relative", 1e-6},
                       {"table2_tail", 1e-12},
                       {"table3", 1e-9},
                       {"table4_relative", 1e-10}});
  if (!failures.empty()) throw ValidationFailure(doc.dump());
  return doc;
}

// ---- validate --------------------------------------------------------------

struct ValidateArgs {
  Physics ph;
  int n = 0;
  double tolerance = 1e-9;
};

json cmd_validate(const ValidateArgs& a) {
  const ProblemParams p = a.ph.params();
  const BoundState st = find_energy(p, a.n);
  const ConnectionResult r = find_energy_floquet(p, a.n);
  json checks = json::array();
  bool ok = true;
  auto check = [&](const std::string& name, double value, double tol) {
    const bool pass = value < tol;
    ok = ok && pass;
    checks.push_back({{"check", name}, {"value", value}, {"tolerance", tol}, {"passed", pass}});
  };
  check("energy_agreement", std::abs(st.E - r.E), a.tolerance);
  check("node_count", std::abs(count_nodes(st.wave_samples) - a.n), 0.5);
  const double zc = std::sqrt(r.z_far * r.z_near);
  auto wr = [&](double z) {
    const FloquetValue u = eval_floquet(r.floquet1, z), v = eval_floquet(r.floquet2, z);
    return u.w * v.dw - u.dw * v.w;
  };
  const cplx w0 = wr(zc);
  check("floquet_wronskian", std::max(std::abs(wr(0.5 * zc) - w0), std::abs(wr(2.0 * zc) - w0)) /
                                 std::abs(w0),
        1e-9);
  check("zeta_null_residual", r.zeta_residual, 1e-8);
  json in = a.ph.inputs();
  in["n"] = a.n;
  json doc = document(in, {{"E_shooting", st.E}, {"E_floquet", r.E}, {"checks", checks}},
                      "validate", {{"agreement", a.tolerance}});
  if (!ok) throw ValidationFailure(doc.dump());
  return doc;
}

// ---- config ----------------------------------------------------------------

// Inserts "--key value" for config entries not given on the command line, so
// flags override the file and the file overrides built-in defaults.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw CLI::ValidationError("--config", "expected key=value: " + line);
    const std::string key = "--" + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& s) {
      return s == key || s.rfind(key + "=", 0) == 0;
    });
    if (!given) {
      extra.push_back(key);
      extra.push_back(value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states of the radial equation with a supersingular A/r^4 term"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text", output, config;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", output, "Write the result to this file instead of stdout");
  app.add_option("--config", config, "key=value file with default flag values");
  app.set_version_flag("--version", std::string(kVersion));

  std::function<json()> action;

  EnergyArgs ea;
  auto* energy = app.add_subcommand("energy", "Eigenvalue E with n nodes");
  add_physics(energy, ea.ph);
  energy->add_option("--n", ea.n, "Node count")->required()->check(CLI::NonNegativeNumber);
  energy->add_option("--method", ea.method)
      ->check(CLI::IsMember({"shooting", "floquet", "both"}))
      ->capture_default_str();
  energy->callback([&] { action = [&] { return cmd_energy(ea); }; });

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues E_0 .. E_nmax");
  add_physics(spectrum, sa.ph);
  spectrum->add_option("--nmax", sa.nmax)->check(CLI::NonNegativeNumber)->capture_default_str();
  spectrum->add_option("--method", sa.method)
      ->check(CLI::IsMember({"shooting", "floquet"}))
      ->capture_default_str();
  spectrum->callback([&] { action = [&] { return cmd_spectrum(sa); }; });

  FloquetArgs fa;
  auto* floquet = app.add_subcommand("floquet", "Floquet indices, Laurent coefficients, connection data");
  add_physics(floquet, fa.ph);
  auto* opt_e = floquet->add_option("--E", fa.E, "Energy (indices only)");
  auto* opt_n = floquet->add_option("--n", fa.n, "Solve the eigenvalue with n nodes first");
  opt_e->excludes(opt_n);
  floquet->add_option("--N", fa.N, "Coefficient window printed, c_-N .. c_N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  floquet->callback([&] {
    if (!fa.E && !fa.n) throw CLI::RequiredError("--E or --n");
    action = [&] { return cmd_floquet(fa); };
  });

  WaveArgs wa;
  auto* wave = app.add_subcommand("wavefunction", "Normalized eigenfunction samples");
  add_physics(wave, wa.ph);
  wave->add_option("--n", wa.n)->required()->check(CLI::NonNegativeNumber);
  wave->add_option("--zmin", wa.zmin)->required();
  wave->add_option("--zmax", wa.zmax)->required();
  wave->add_option("--points", wa.points)->capture_default_str();
  wave->add_option("--grid", wa.grid)->check(CLI::IsMember({"linear", "log"}))->capture_default_str();
  wave->callback([&] { action = [&] { return cmd_wavefunction(wa); }; });

  QuasiArgs qa;
  auto* quasi = app.add_subcommand("quasipoly", "Exact A values with quasi-polynomial solutions");
  quasi->add_option("--p", qa.p, "Polynomial degree plus one (E = -Z^2/(4p^2))")->required();
  quasi->add_option("--l", qa.l)->required()->check(CLI::NonNegativeNumber);
  quasi->add_option("--Z", qa.Z)->capture_default_str();
  quasi->callback([&] { action = [&] { return cmd_quasipoly(qa); }; });

  TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "Recompute the reference tables and diff them");
  tables->add_option("--which", ta.which)
      ->check(CLI::IsMember({"1", "2", "3", "4", "all"}))
      ->capture_default_str();
  tables->add_option("--outdir", ta.outdir, "Directory for the CSV tables")->capture_default_str();
  tables->callback([&] { action = [&] { return cmd_tables(ta); }; });

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Cross-check shooting and Floquet for one state");
  add_physics(validate, va.ph);
  validate->add_option("--n", va.n)->required()->check(CLI::NonNegativeNumber);
  validate->add_option("--tolerance", va.tolerance)->capture_default_str();
  validate->callback([&] { action = [&] { return cmd_validate(va); }; });

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = apply_config(std::move(args));
    std::vector<const char*> cargs;
    for (const auto& s : args) cargs.push_back(s.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  auto emit = [&](const json& doc) {
    if (output.empty()) {
      render(doc, format, out);
      return;
    }
    std::ofstream f(output);
    if (!f) throw Error("cannot write " + output);
    render(doc, format, f);
  };

  try {
    emit(action());
    return kSuccess;
  } catch (const ValidationFailure& e) {
    emit(json::parse(e.what()));
    err << "validation failed\n";
    return kValidationFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolverFailure;
  }
}

}  // namespace heun::cli
