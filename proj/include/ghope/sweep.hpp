// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_SWEEP_HPP
#define GHOPE_SWEEP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ghope/conductivity.hpp"
#include "ghope/hope.hpp"
#include "ghope/observables.hpp"
#include "ghope/units.hpp"

namespace ghope
{

enum class SolverKind
{
  Hope,
  Collocation,
  Both
};

enum class Summation
{
  Taylor,
  Pade
};

enum class ConductivityChoice
{
  Local,
  Nonlocal,
  Both
};

const char *to_string(SolverKind kind);
const char *to_string(Summation summation);

// Fully resolved run description: physics, graphene model, envelope, numerics and sweep.
struct RunConfig
{
  double eps_u = 1.0;
  double eps_w = 1.0;
  double theta = 0.0;  // rad
  Polarization polarization = Polarization::TM;
  std::vector<double> periods;      // m
  std::vector<double> frequencies;  // Hz, strictly increasing

  bool graphene = true;
  GrapheneParams params;
  ConductivityChoice conductivity = ConductivityChoice::Local;

  double x0 = 1.0;
  double width_fraction = 0.5;
  double delta = 1.0;
  std::size_t n_x = 128;
  int max_order = 16;
  Summation summation = Summation::Pade;
  int pade_m = -1;  // -1: default split
  int pade_n = -1;
  PadeMode pade_mode = PadeMode::Coefficient;
  bool dealias = false;
  double sobolev_s = 0.0;
  SolverKind solver = SolverKind::Hope;
  double resonance_tol = default_resonance_tol;
  int threads = 0;  // 0: hardware concurrency

  PhysicalConfig physical(double d, double f) const;
  GrapheneParams graphene_params(bool nonlocal) const;
};

// Parses and validates a flat keyed config. Unknown keys and out-of-range values raise
// ConfigError naming the key.
RunConfig parse_run_config(const RawConfig &raw);
RunConfig load_run_config(const std::string &path);

// Canonical keyed form; parse_run_config(to_raw(c)) reproduces c.
RawConfig to_raw(const RunConfig &config);

// Resolved configuration plus provenance as a JSON document (sidecar metadata).
std::string metadata_json(const RunConfig &config);

struct PointResult
{
  double d = 0.0;
  double f = 0.0;
  SolverKind solver = SolverKind::Hope;
  Summation summation = Summation::Pade;
  bool ok = false;
  std::string status = "ok";
  double R = 0.0;
  double T = 0.0;
  double A = 0.0;
  double A_local = 0.0;        // NaN unless both conductivity models were run
  double A_nonlocal = 0.0;     // NaN unless both conductivity models were run
  double A_collocation = 0.0;  // NaN unless solver == Both
  double energy_defect = 0.0;
  double min_abs_determinant = 0.0;
  int pade_fallback_count = 0;
};

// Single scattering problem at (d, f) with the configured solver(s).
PointResult solve_point(const RunConfig &config, double d, double f);

// One result per (d, f), ordered by d (as listed) then f, independent of thread count.
std::vector<PointResult> run_sweep(const RunConfig &config);

void write_csv(std::ostream &out, const std::vector<PointResult> &rows);

struct ConvergenceRow
{
  double d = 0.0;
  double f = 0.0;
  int order = 0;
  double norm_u = 0.0;
  double norm_w = 0.0;
  double ratio_u = 0.0;  // NaN when undefined (order 0, or either norm zero)
  double ratio_w = 0.0;
};

// Per-order Sobolev norms of the Taylor coefficients for one (d, f) point.
std::vector<ConvergenceRow> convergence_report(const RunConfig &config, double d, double f);
std::vector<ConvergenceRow> convergence_sweep(const RunConfig &config);
void write_convergence_csv(std::ostream &out, const std::vector<ConvergenceRow> &rows);

}  // namespace ghope

#endif  // GHOPE_SWEEP_HPP
