// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ghope/error.hpp"
#include "ghope/sweep.hpp"
#include "json.hpp"

using namespace ghope;

namespace
{

const char *base_text = R"(
eps_u = 3
eps_w = 4
d_um = 8, 2
theta_deg = 0
pol = TM
f_min_THz = 1
f_max_THz = 6
n_f = 6
E_F_eV = 0.4
Gamma_meV = 3.7
vF_m_per_s = 1e6
tau_s = 9e-14
nonlocal = false
N_x = 32
L = 8
)";

RawConfig base()
{
  return parse_keyed_text(base_text);
}

std::string error_key(const RawConfig &raw)
{
  try
  {
    parse_run_config(raw);
  }
  catch (const ConfigError &e)
  {
    return e.key();
  }
  return {};
}

std::string csv(const std::vector<PointResult> &rows)
{
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

}  // namespace

TEST_CASE("run config parsing and defaults")
{
  const auto c = parse_run_config(base());
  CHECK(c.periods.size() == 2);
  CHECK(c.periods[1] == doctest::Approx(2e-6));
  REQUIRE(c.frequencies.size() == 6);
  CHECK(c.frequencies.front() == doctest::Approx(1e12));
  CHECK(c.frequencies.back() == doctest::Approx(6e12));
  CHECK(c.n_x == 32);
  CHECK(c.max_order == 8);
  CHECK(c.summation == Summation::Pade);
  CHECK(c.solver == SolverKind::Hope);
  CHECK(c.x0 == 1.0);
  CHECK(c.width_fraction == 0.5);
  CHECK(c.delta == 1.0);
}

TEST_CASE("run config errors name the key")
{
  auto raw = base();
  raw["bogus"] = "1";
  CHECK(error_key(raw) == "bogus");
  raw = base();
  raw["N_x"] = "48";
  CHECK(error_key(raw) == "N_x");
  raw = base();
  raw["solver"] = "magic";
  CHECK(error_key(raw) == "solver");
  raw = base();
  raw.erase("f_min_THz");
  raw.erase("f_max_THz");
  raw.erase("n_f");
  CHECK(error_key(raw) == "f_THz");
  raw = base();
  raw["f_THz"] = "2";
  CHECK(error_key(raw) == "f_THz");
  raw = base();
  raw.erase("f_min_THz");
  raw.erase("f_max_THz");
  raw.erase("n_f");
  raw["f_THz"] = "3, 2";
  CHECK(error_key(raw) == "f_THz");
  raw = base();
  raw["X0"] = "0";
  CHECK(error_key(raw) == "X0");
  raw = base();
  raw["nonlocal"] = "true";
  raw.erase("tau_s");
  CHECK(error_key(raw) == "tau_s");
  raw = base();
  raw["pade_M"] = "6";
  raw["pade_N"] = "6";
  CHECK(error_key(raw) == "pade_M");
}

TEST_CASE("run config round trip")
{
  auto raw = base();
  raw["nonlocal"] = "both";
  raw["solver"] = "both";
  raw["pade_mode"] = "gridpoint";
  raw["delta"] = "0.3";
  const auto c = parse_run_config(raw);
  const auto back = parse_run_config(parse_keyed_text(emit_keyed_text(to_raw(c))));
  CHECK(emit_keyed_text(to_raw(back)) == emit_keyed_text(to_raw(c)));
  CHECK(back.conductivity == ConductivityChoice::Both);
  CHECK(back.solver == SolverKind::Both);
  CHECK(back.pade_mode == PadeMode::Gridpoint);
  CHECK(back.frequencies == c.frequencies);
}

TEST_CASE("metadata is valid JSON carrying the resolved configuration")
{
  const auto c = parse_run_config(base());
  const auto doc = nlohmann::json::parse(metadata_json(c));
  CHECK(doc.contains("version"));
  CHECK(doc["config"]["N_x"] == "32");
}

TEST_CASE("sweep rows are ordered by period then frequency")
{
  const auto c = parse_run_config(base());
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 12);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    CHECK(rows[i].d == c.periods[i / 6]);
    CHECK(rows[i].f == c.frequencies[i % 6]);
    CHECK(rows[i].ok);
    CHECK(rows[i].A > 0.0);
    CHECK(std::isnan(rows[i].A_collocation));
    CHECK(std::isnan(rows[i].A_local));
  }
}

TEST_CASE("parallel sweep is identical to a sequential one")
{
  auto raw = base();
  raw["solver"] = "both";
  raw["nonlocal"] = "both";
  raw["threads"] = "1";
  const auto sequential = csv(run_sweep(parse_run_config(raw)));
  raw["threads"] = "4";
  const auto parallel = csv(run_sweep(parse_run_config(raw)));
  CHECK(sequential == parallel);
  CHECK(sequential == csv(run_sweep(parse_run_config(raw))));
}

TEST_CASE("graphene-free point has zero absorbance")
{
  auto raw = base();
  raw["graphene"] = "false";
  raw["solver"] = "both";
  for (const auto &r : run_sweep(parse_run_config(raw)))
  {
    CHECK(std::abs(r.A) < 1e-10);
    CHECK(std::abs(r.A_collocation) < 1e-10);
    CHECK(r.energy_defect == r.A);
  }
}

TEST_CASE("per-point failures are recorded, not thrown")
{
  // A relative resonance threshold of 1 flags every determinant profile.
  auto raw = base();
  raw["resonance_tol"] = "1";
  const auto rows = run_sweep(parse_run_config(raw));
  REQUIRE(rows.size() == 12);
  for (const auto &r : rows)
  {
    CHECK_FALSE(r.ok);
    CHECK(r.status != "ok");
  }
  // Messages may contain separators; every CSV line must still have 14 fields.
  std::istringstream text(csv(rows));
  std::string line;
  while (std::getline(text, line))
  {
    CHECK(std::count(line.begin(), line.end(), ',') == 13);
  }
}

TEST_CASE("CSV formatting uses 17 significant digits")
{
  PointResult r;
  r.d = 8e-6;
  r.f = 2e12;
  r.ok = true;
  r.R = 0.1;
  r.A_local = std::nan("");
  const auto text = csv({r});
  CHECK(text.find("1.0000000000000001e-01") != std::string::npos);
  CHECK(text.find(",nan,") != std::string::npos);
}

TEST_CASE("convergence report: flat envelope leaves ratios undefined")
{
  auto raw = base();
  raw["ribbon_width_fraction"] = "1";
  raw["X0"] = "1";
  const auto c = parse_run_config(raw);
  const auto rows = convergence_report(c, 8e-6, 3e12);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].norm_u > 0.0);
  CHECK(std::isnan(rows[0].ratio_u));
  // Without graphene every order past zero vanishes.
  auto flat = raw;
  flat["graphene"] = "false";
  for (const auto &r : convergence_report(parse_run_config(flat), 8e-6, 3e12))
  {
    if (r.order > 0)
    {
      CHECK(r.norm_u == 0.0);
      CHECK(std::isnan(r.ratio_u));
    }
  }
}

TEST_CASE("convergence ratios stay bounded for the reference configuration")
{
  auto raw = base();
  raw["L"] = "16";
  raw["N_x"] = "128";
  const auto rows = convergence_report(parse_run_config(raw), 8e-6, 3e12);
  REQUIRE(rows.size() == 17);
  for (const auto &r : rows)
  {
    CHECK(std::isfinite(r.norm_w));
    if (r.order > 0)
    {
      CHECK(r.ratio_w < 10.0);
    }
  }
}
