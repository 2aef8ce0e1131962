// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ghope/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "ghope/collocation.hpp"
#include "ghope/error.hpp"
#include "ghope/solver.hpp"
#include "ghope/version.hpp"

namespace ghope
{

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> &known_keys()
{
  static const std::set<std::string> keys = {
      "eps_u",      "eps_w",        "d_um",        "theta_deg",
      "pol",        "f_THz",        "f_min_THz",   "f_max_THz",
      "n_f",        "graphene",     "E_F_eV",      "Gamma_meV",
      "vF_m_per_s", "tau_s",        "nonlocal",    "X0",
      "ribbon_width_fraction",      "delta",       "N_x",
      "L",          "pade",         "pade_M",      "pade_N",
      "pade_mode",  "dealias",      "sobolev_s",   "solver",
      "resonance_tol",              "threads"};
  return keys;
}

const std::string *find(const RawConfig &raw, const std::string &key)
{
  auto it = raw.find(key);
  return it == raw.end() ? nullptr : &it->second;
}

const std::string &require(const RawConfig &raw, const std::string &key)
{
  const auto *v = find(raw, key);
  if (!v)
  {
    throw ConfigError(key, "missing required key");
  }
  return *v;
}

std::string lower(std::string s)
{
  for (auto &c : s)
  {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::string format_list(const std::vector<double> &values, double unit)
{
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    if (i)
    {
      out += ", ";
    }
    out += format_double(values[i] / unit);
  }
  return out;
}

std::string csv_number(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string csv_text(std::string s)
{
  for (auto &c : s)
  {
    if (c == ',' || c == '\n' || c == '\r' || c == '"')
    {
      c = c == ',' ? ';' : ' ';
    }
  }
  return s;
}

struct ModelRun
{
  Observables obs;
  double min_abs_det = 0.0;
  int fallback = 0;
};

ModelRun run_model(const RunConfig &config, const SpectralGrid &grid, const Envelope &envelope,
                   bool nonlocal, bool use_collocation)
{
  const auto &phys = grid.config();
  const SigmaPair sigma =
      config.graphene ? sigma_pair(config.graphene_params(nonlocal), phys.f) : SigmaPair{};
  const InterfaceModel model = InterfaceModel::from(phys, sigma, config.x0);
  ModelRun run;
  if (use_collocation)
  {
    run.min_abs_det = determinant(grid, model, config.resonance_tol).min_abs;
    const auto sol = solve(assemble(grid, model, envelope, config.delta));
    run.obs = efficiencies(grid, sol.u, sol.w, !config.graphene);
    return run;
  }
  const HopeSeries series = hope_recursion(grid, model, envelope, config.max_order,
                                           config.sobolev_s, config.resonance_tol);
  run.min_abs_det = series.determinant.min_abs;
  SummedFields sum;
  if (config.summation == Summation::Taylor)
  {
    sum = taylor_sum(series, config.delta);
  }
  else
  {
    auto [m, n] = default_pade_split(config.max_order);
    if (config.pade_m >= 0)
    {
      m = config.pade_m;
      n = config.pade_n;
    }
    sum = pade_sum(series, config.delta, m, n, &grid, config.pade_mode);
  }
  run.fallback = sum.fallback_count;
  run.obs = efficiencies(grid, sum.u, sum.w, !config.graphene);
  return run;
}

}  // namespace

const char *to_string(SolverKind kind)
{
  switch (kind)
  {
    case SolverKind::Hope:
      return "hope";
    case SolverKind::Collocation:
      return "collocation";
    case SolverKind::Both:
      return "both";
  }
  return "?";
}

const char *to_string(Summation summation)
{
  return summation == Summation::Taylor ? "taylor" : "pade";
}

PhysicalConfig RunConfig::physical(double d, double f) const
{
  return make_physical_config(eps_u, eps_w, d, theta, f, polarization);
}

GrapheneParams RunConfig::graphene_params(bool nonlocal) const
{
  GrapheneParams p = params;
  p.nonlocal = nonlocal;
  return p;
}

RunConfig parse_run_config(const RawConfig &raw)
{
  for (const auto &[key, value] : raw)
  {
    if (!known_keys().count(key))
    {
      throw ConfigError(key, "unknown key");
    }
  }

  RunConfig c;
  c.eps_u = parse_double("eps_u", require(raw, "eps_u"));
  c.eps_w = parse_double("eps_w", require(raw, "eps_w"));
  c.theta = parse_double("theta_deg", require(raw, "theta_deg")) * units::deg;
  c.polarization = parse_polarization("pol", require(raw, "pol"));
  for (double d_um : parse_double_list("d_um", require(raw, "d_um")))
  {
    c.periods.push_back(d_um * units::um);
  }

  const auto *f_single = find(raw, "f_THz");
  const auto *f_min = find(raw, "f_min_THz");
  if (f_single && f_min)
  {
    throw ConfigError("f_THz", "give either f_THz or the sweep block f_min_THz/f_max_THz/n_f");
  }
  if (f_single)
  {
    for (double f : parse_double_list("f_THz", *f_single))
    {
      c.frequencies.push_back(f * units::THz);
    }
  }
  else if (f_min)
  {
    const double lo = parse_double("f_min_THz", *f_min);
    const double hi = parse_double("f_max_THz", require(raw, "f_max_THz"));
    const long n = parse_integer("n_f", require(raw, "n_f"));
    if (n < 1)
    {
      throw ConfigError("n_f", "need at least one frequency");
    }
    if (n > 1 && !(hi > lo))
    {
      throw ConfigError("f_max_THz", "must exceed f_min_THz");
    }
    for (long i = 0; i < n; ++i)
    {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      c.frequencies.push_back((lo + (hi - lo) * t) * units::THz);
    }
  }
  else
  {
    throw ConfigError("f_THz", "missing frequency (f_THz or f_min_THz/f_max_THz/n_f)");
  }
  for (std::size_t i = 1; i < c.frequencies.size(); ++i)
  {
    if (!(c.frequencies[i] > c.frequencies[i - 1]))
    {
      throw ConfigError(f_single ? "f_THz" : "n_f", "frequencies must be strictly increasing");
    }
  }
  // Range checks on the physical subset, reported under the user-facing keys.
  for (double d : c.periods)
  {
    if (!(d > 0.0))
    {
      throw ConfigError("d_um", "period must be positive");
    }
  }
  if (!(c.frequencies.front() > 0.0))
  {
    throw ConfigError(f_single ? "f_THz" : "f_min_THz", "frequency must be positive");
  }
  if (!(c.eps_u > 0.0))
  {
    throw ConfigError("eps_u", "permittivity must be positive");
  }
  if (!(c.eps_w > 0.0))
  {
    throw ConfigError("eps_w", "permittivity must be positive");
  }
  if (!(std::abs(c.theta) < std::numbers::pi / 2.0))
  {
    throw ConfigError("theta_deg", "incidence angle must satisfy |theta| < 90 deg");
  }

  if (const auto *v = find(raw, "graphene"))
  {
    c.graphene = parse_bool("graphene", *v);
  }
  if (const auto *v = find(raw, "nonlocal"))
  {
    if (lower(*v) == "both")
    {
      c.conductivity = ConductivityChoice::Both;
    }
    else
    {
      c.conductivity = parse_bool("nonlocal", *v) ? ConductivityChoice::Nonlocal
                                                  : ConductivityChoice::Local;
    }
  }
  if (c.graphene)
  {
    c.params.fermi_level = parse_double("E_F_eV", require(raw, "E_F_eV")) * units::eV;
    c.params.relaxation = parse_double("Gamma_meV", require(raw, "Gamma_meV")) * units::meV;
    if (c.conductivity != ConductivityChoice::Local)
    {
      c.params.fermi_velocity = parse_double("vF_m_per_s", require(raw, "vF_m_per_s"));
      c.params.lifetime = parse_double("tau_s", require(raw, "tau_s"));
    }
    else
    {
      // Unused by the local model; any positive placeholder keeps the parameter set valid.
      const auto *vf = find(raw, "vF_m_per_s");
      const auto *tau = find(raw, "tau_s");
      c.params.fermi_velocity = vf ? parse_double("vF_m_per_s", *vf) : 1.0;
      c.params.lifetime = tau ? parse_double("tau_s", *tau) : 1.0;
    }
    check(c.params);
  }

  if (const auto *v = find(raw, "X0"))
  {
    c.x0 = parse_double("X0", *v);
  }
  if (c.x0 == 0.0)
  {
    throw ConfigError("X0", "envelope baseline must be nonzero");
  }
  if (const auto *v = find(raw, "ribbon_width_fraction"))
  {
    c.width_fraction = parse_double("ribbon_width_fraction", *v);
  }
  if (!(c.width_fraction > 0.0 && c.width_fraction <= 1.0))
  {
    throw ConfigError("ribbon_width_fraction", "must lie in (0, 1]");
  }
  if (const auto *v = find(raw, "delta"))
  {
    c.delta = parse_double("delta", *v);
  }
  if (const auto *v = find(raw, "N_x"))
  {
    const long n = parse_integer("N_x", *v);
    if (n < 8 || (n & (n - 1)) != 0)
    {
      throw ConfigError("N_x", "must be a power of two >= 8");
    }
    c.n_x = static_cast<std::size_t>(n);
  }
  if (const auto *v = find(raw, "L"))
  {
    const long l = parse_integer("L", *v);
    if (l < 0)
    {
      throw ConfigError("L", "must be nonnegative");
    }
    c.max_order = static_cast<int>(l);
  }
  if (const auto *v = find(raw, "pade"))
  {
    c.summation = parse_bool("pade", *v) ? Summation::Pade : Summation::Taylor;
  }
  const auto *pm = find(raw, "pade_M");
  const auto *pn = find(raw, "pade_N");
  if (pm || pn)
  {
    if (!pm || !pn)
    {
      throw ConfigError(pm ? "pade_N" : "pade_M", "pade_M and pade_N must be given together");
    }
    c.pade_m = static_cast<int>(parse_integer("pade_M", *pm));
    c.pade_n = static_cast<int>(parse_integer("pade_N", *pn));
    if (c.pade_m < 0 || c.pade_n < 0 || c.pade_m + c.pade_n > c.max_order)
    {
      throw ConfigError("pade_M", "require M, N >= 0 and M + N <= L");
    }
  }
  if (const auto *v = find(raw, "pade_mode"))
  {
    const auto m = lower(*v);
    if (m == "coefficient")
    {
      c.pade_mode = PadeMode::Coefficient;
    }
    else if (m == "gridpoint")
    {
      c.pade_mode = PadeMode::Gridpoint;
    }
    else
    {
      throw ConfigError("pade_mode", "expected 'coefficient' or 'gridpoint'");
    }
  }
  if (const auto *v = find(raw, "dealias"))
  {
    c.dealias = parse_bool("dealias", *v);
  }
  if (const auto *v = find(raw, "sobolev_s"))
  {
    c.sobolev_s = parse_double("sobolev_s", *v);
    if (c.sobolev_s < 0.0)
    {
      throw ConfigError("sobolev_s", "must be nonnegative");
    }
  }
  if (const auto *v = find(raw, "solver"))
  {
    const auto s = lower(*v);
    if (s == "hope")
    {
      c.solver = SolverKind::Hope;
    }
    else if (s == "collocation")
    {
      c.solver = SolverKind::Collocation;
    }
    else if (s == "both")
    {
      c.solver = SolverKind::Both;
    }
    else
    {
      throw ConfigError("solver", "expected hope, collocation or both");
    }
  }
  if (const auto *v = find(raw, "resonance_tol"))
  {
    c.resonance_tol = parse_double("resonance_tol", *v);
    if (!(c.resonance_tol >= 0.0))
    {
      throw ConfigError("resonance_tol", "must be nonnegative");
    }
  }
  if (const auto *v = find(raw, "threads"))
  {
    const long t = parse_integer("threads", *v);
    if (t < 0)
    {
      throw ConfigError("threads", "must be nonnegative");
    }
    c.threads = static_cast<int>(t);
  }
  return c;
}

RunConfig load_run_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("--config", "cannot open '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(parse_keyed_text(buf.str()));
}

RawConfig to_raw(const RunConfig &c)
{
  RawConfig raw;
  raw["eps_u"] = format_double(c.eps_u);
  raw["eps_w"] = format_double(c.eps_w);
  raw["theta_deg"] = format_double(c.theta / units::deg);
  raw["pol"] = to_string(c.polarization);
  raw["d_um"] = format_list(c.periods, units::um);
  raw["f_THz"] = format_list(c.frequencies, units::THz);
  raw["graphene"] = c.graphene ? "true" : "false";
  if (c.graphene)
  {
    raw["E_F_eV"] = format_double(c.params.fermi_level / units::eV);
    raw["Gamma_meV"] = format_double(c.params.relaxation / units::meV);
    raw["vF_m_per_s"] = format_double(c.params.fermi_velocity);
    raw["tau_s"] = format_double(c.params.lifetime);
  }
  raw["nonlocal"] = c.conductivity == ConductivityChoice::Both
                        ? "both"
                        : (c.conductivity == ConductivityChoice::Nonlocal ? "true" : "false");
  raw["X0"] = format_double(c.x0);
  raw["ribbon_width_fraction"] = format_double(c.width_fraction);
  raw["delta"] = format_double(c.delta);
  raw["N_x"] = std::to_string(c.n_x);
  raw["L"] = std::to_string(c.max_order);
  raw["pade"] = c.summation == Summation::Pade ? "true" : "false";
  if (c.pade_m >= 0)
  {
    raw["pade_M"] = std::to_string(c.pade_m);
    raw["pade_N"] = std::to_string(c.pade_n);
  }
  raw["pade_mode"] = c.pade_mode == PadeMode::Coefficient ? "coefficient" : "gridpoint";
  raw["dealias"] = c.dealias ? "true" : "false";
  raw["sobolev_s"] = format_double(c.sobolev_s);
  raw["solver"] = to_string(c.solver);
  raw["resonance_tol"] = format_double(c.resonance_tol);
  raw["threads"] = std::to_string(c.threads);
  return raw;
}

std::string metadata_json(const RunConfig &config)
{
  nlohmann::ordered_json doc;
  doc["generator"] = "graphene-hope";
  doc["version"] = version_string;
  nlohmann::ordered_json keyed;
  for (const auto &[key, value] : to_raw(config))
  {
    keyed[key] = value;
  }
  doc["config"] = keyed;
  doc["constants"] = {{"e", constants::e},
                      {"h", constants::h},
                      {"hbar", constants::hbar},
                      {"eps0", constants::eps0},
                      {"c0", constants::c0}};
  doc["conventions"] = {
      {"time_dependence", "exp(-i omega t)"},
      {"absorbance", "A = 1 - R - (tau_w/tau_u) T"},
      {"drude", "(sigma0/(eps0 c0)) (4 E_F/pi) / (Gamma - i hbar omega)"},
      {"pade_split", "M = N = L/2 (even L), M = (L+1)/2 (odd L) unless pade_M/pade_N given"}};
  doc["columns"] = {"d_um",       "f_THz",         "solver",
                    "summation",  "status",        "R",
                    "T",          "A",             "A_local",
                    "A_nonlocal", "A_collocation", "energy_defect",
                    "min_abs_determinant",         "pade_fallback_count"};
  return doc.dump(2) + "\n";
}

PointResult solve_point(const RunConfig &config, double d, double f)
{
  PointResult row;
  row.d = d;
  row.f = f;
  row.solver = config.solver;
  row.summation = config.summation;
  row.A_local = nan;
  row.A_nonlocal = nan;
  row.A_collocation = nan;
  try
  {
    const PhysicalConfig phys = config.physical(d, f);
    const SpectralGrid grid(phys, config.n_x);
    const Envelope envelope =
        sample_envelope(d, config.x0, config.width_fraction, config.dealias ? 2 * config.n_x
                                                                            : config.n_x);
    const bool use_colloc = config.solver == SolverKind::Collocation;
    const bool primary_nonlocal = config.conductivity != ConductivityChoice::Local;

    const ModelRun primary = run_model(config, grid, envelope, primary_nonlocal, use_colloc);
    row.R = primary.obs.R;
    row.T = primary.obs.T;
    row.A = primary.obs.A;
    row.energy_defect = primary.obs.energy_defect;
    row.min_abs_determinant = primary.min_abs_det;
    row.pade_fallback_count = primary.fallback;

    if (config.conductivity == ConductivityChoice::Both)
    {
      const ModelRun local = run_model(config, grid, envelope, false, use_colloc);
      row.A_local = local.obs.A;
      row.A_nonlocal = primary.obs.A;
    }
    if (config.solver == SolverKind::Both)
    {
      row.A_collocation = run_model(config, grid, envelope, primary_nonlocal, true).obs.A;
    }
    row.ok = true;
    if (primary.obs.degenerate)
    {
      row.status = "warning: zero scattered field";
    }
  }
  catch (const Error &err)
  {
    row.ok = false;
    row.status = std::string("error: ") + err.what();
    row.R = row.T = row.A = row.energy_defect = row.min_abs_determinant = nan;
  }
  return row;
}

std::vector<PointResult> run_sweep(const RunConfig &config)
{
  struct Task
  {
    double d, f;
  };
  std::vector<Task> tasks;
  for (double d : config.periods)
  {
    for (double f : config.frequencies)
    {
      tasks.push_back({d, f});
    }
  }
  std::vector<PointResult> rows(tasks.size());

  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++)
    {
      rows[i] = solve_point(config, tasks[i].d, tasks[i].f);
    }
  };
  if (workers <= 1)
  {
    work();
  }
  else
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t)
    {
      pool.emplace_back(work);
    }
  }
  return rows;
}

void write_csv(std::ostream &out, const std::vector<PointResult> &rows)
{
  out << "d_um,f_THz,solver,summation,status,R,T,A,A_local,A_nonlocal,A_collocation,"
         "energy_defect,min_abs_determinant,pade_fallback_count\n";
  for (const auto &r : rows)
  {
    out << csv_number(r.d / units::um) << ',' << csv_number(r.f / units::THz) << ','
        << to_string(r.solver) << ',' << to_string(r.summation) << ',' << csv_text(r.status)
        << ',' << csv_number(r.R) << ',' << csv_number(r.T) << ',' << csv_number(r.A) << ','
        << csv_number(r.A_local) << ',' << csv_number(r.A_nonlocal) << ','
        << csv_number(r.A_collocation) << ',' << csv_number(r.energy_defect) << ','
        << csv_number(r.min_abs_determinant) << ',' << r.pade_fallback_count << '\n';
  }
}

std::vector<ConvergenceRow> convergence_report(const RunConfig &config, double d, double f)
{
  const PhysicalConfig phys = config.physical(d, f);
  const SpectralGrid grid(phys, config.n_x);
  const Envelope envelope = sample_envelope(d, config.x0, config.width_fraction,
                                            config.dealias ? 2 * config.n_x : config.n_x);
  const bool nonlocal = config.conductivity != ConductivityChoice::Local;
  const SigmaPair sigma =
      config.graphene ? sigma_pair(config.graphene_params(nonlocal), f) : SigmaPair{};
  const HopeSeries series =
      hope_recursion(grid, InterfaceModel::from(phys, sigma, config.x0), envelope,
                     config.max_order, config.sobolev_s, config.resonance_tol);

  std::vector<ConvergenceRow> rows;
  for (int l = 0; l <= series.max_order(); ++l)
  {
    ConvergenceRow row;
    row.d = d;
    row.f = f;
    row.order = l;
    row.norm_u = series.norm_u[static_cast<std::size_t>(l)];
    row.norm_w = series.norm_w[static_cast<std::size_t>(l)];
    row.ratio_u = nan;
    row.ratio_w = nan;
    if (l > 0)
    {
      const double pu = series.norm_u[static_cast<std::size_t>(l - 1)];
      const double pw = series.norm_w[static_cast<std::size_t>(l - 1)];
      // A ratio involving a vanishing order carries no decay information.
      row.ratio_u = pu > 0.0 && row.norm_u > 0.0 ? row.norm_u / pu : nan;
      row.ratio_w = pw > 0.0 && row.norm_w > 0.0 ? row.norm_w / pw : nan;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_sweep(const RunConfig &config)
{
  std::vector<ConvergenceRow> rows;
  for (double d : config.periods)
  {
    for (double f : config.frequencies)
    {
      auto part = convergence_report(config, d, f);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  }
  return rows;
}

void write_convergence_csv(std::ostream &out, const std::vector<ConvergenceRow> &rows)
{
  out << "d_um,f_THz,order,norm_U,norm_W,ratio_U,ratio_W\n";
  for (const auto &r : rows)
  {
    out << csv_number(r.d / units::um) << ',' << csv_number(r.f / units::THz) << ',' << r.order
        << ',' << csv_number(r.norm_u) << ',' << csv_number(r.norm_w) << ','
        << csv_number(r.ratio_u) << ',' << csv_number(r.ratio_w) << '\n';
  }
}

}  // namespace ghope
