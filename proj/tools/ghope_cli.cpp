// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: reads a keyed config, runs the (d, f) sweep through the C API and
// writes the result CSV plus a metadata sidecar.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "ghope/ghope.h"

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_numerical = 2;

int report(ghope_status status, const char *context)
{
  const char *key = ghope_last_error_key();
  if (key && *key)
  {
    std::fprintf(stderr, "ghope: %s: [%s] %s\n", context, key, ghope_last_error());
  }
  else
  {
    std::fprintf(stderr, "ghope: %s: %s\n", context, ghope_last_error());
  }
  return status == GHOPE_ERR_CONFIG || status == GHOPE_ERR_IO ? exit_config : exit_numerical;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Plane-wave scattering by periodic graphene ribbons (HOPE and collocation)"};
  app.set_version_flag("--version", std::string(ghope_version()));

  std::string config_path;
  std::string out_path = "ghope_sweep.csv";
  std::string solver;
  std::string summation;
  bool convergence = false;
  bool quiet = false;

  app.add_option("--config", config_path, "Keyed config file (key = value)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Output CSV path; sidecars are <out>.meta.json and "
                                    "<out>.convergence.csv")
      ->capture_default_str();
  app.add_option("--solver", solver, "Override the config solver")
      ->check(CLI::IsMember({"hope", "collocation", "both"}));
  app.add_option("--summation", summation, "Override the config summation")
      ->check(CLI::IsMember({"taylor", "pade"}));
  app.add_flag("--convergence", convergence, "Also write per-order coefficient norms");
  app.add_flag("--quiet", quiet, "Suppress the progress summary");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  ghope_config *config = nullptr;
  if (auto s = ghope_config_load(config_path.c_str(), &config); s != GHOPE_OK)
  {
    return report(s, config_path.c_str());
  }
  struct ConfigGuard
  {
    ghope_config *c;
    ~ConfigGuard() { ghope_config_free(c); }
  } config_guard{config};

  if (!solver.empty())
  {
    if (auto s = ghope_config_set(config, "solver", solver.c_str()); s != GHOPE_OK)
    {
      return report(s, "--solver");
    }
  }
  if (!summation.empty())
  {
    const char *pade = summation == "pade" ? "true" : "false";
    if (auto s = ghope_config_set(config, "pade", pade); s != GHOPE_OK)
    {
      return report(s, "--summation");
    }
  }

  const std::string meta_path = out_path + ".meta.json";
  if (auto s = ghope_config_write_metadata(config, meta_path.c_str()); s != GHOPE_OK)
  {
    return report(s, meta_path.c_str());
  }

  ghope_table *table = nullptr;
  if (auto s = ghope_sweep_run(config, &table); s != GHOPE_OK)
  {
    return report(s, "sweep");
  }
  struct TableGuard
  {
    ghope_table *t;
    ~TableGuard() { ghope_table_free(t); }
  } table_guard{table};

  if (auto s = ghope_table_write_csv(table, out_path.c_str()); s != GHOPE_OK)
  {
    return report(s, out_path.c_str());
  }

  const size_t rows = ghope_table_rows(table);
  const size_t failed = ghope_table_failed_rows(table);
  if (!quiet)
  {
    for (size_t i = 0; i < rows; ++i)
    {
      ghope_row row;
      ghope_table_get(table, i, &row);
      if (!row.ok)
      {
        std::fprintf(stderr, "ghope: d = %g um, f = %g THz: %s\n", row.d_um, row.f_THz,
                     ghope_table_status(table, i));
      }
    }
    std::fprintf(stderr, "ghope: %zu points, %zu failed -> %s\n", rows, failed,
                 out_path.c_str());
  }

  if (convergence)
  {
    ghope_convergence *report_handle = nullptr;
    if (auto s = ghope_convergence_run(config, &report_handle); s != GHOPE_OK)
    {
      return report(s, "convergence");
    }
    const std::string conv_path = out_path + ".convergence.csv";
    const auto s = ghope_convergence_write_csv(report_handle, conv_path.c_str());
    ghope_convergence_free(report_handle);
    if (s != GHOPE_OK)
    {
      return report(s, conv_path.c_str());
    }
    if (!quiet)
    {
      std::fprintf(stderr, "ghope: convergence diagnostics -> %s\n", conv_path.c_str());
    }
  }

  return rows > 0 && failed == rows ? exit_numerical : exit_ok;
}
