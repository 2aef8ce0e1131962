// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ghope/ghope.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "ghope/error.hpp"
#include "ghope/sweep.hpp"
#include "ghope/version.hpp"

struct ghope_config
{
  ghope::RawConfig raw;
  ghope::RunConfig resolved;
};

struct ghope_table
{
  std::vector<ghope::PointResult> rows;
};

struct ghope_convergence
{
  std::vector<ghope::ConvergenceRow> rows;
};

namespace
{

thread_local std::string last_error;
thread_local std::string last_error_key;

ghope_status fail(ghope_status status, std::string message, std::string key = {})
{
  last_error = std::move(message);
  last_error_key = std::move(key);
  return status;
}

// Runs fn, translating library exceptions into status codes.
template <typename Fn>
ghope_status guarded(Fn &&fn)
{
  try
  {
    return fn();
  }
  catch (const ghope::ConfigError &e)
  {
    return fail(GHOPE_ERR_CONFIG, e.what(), e.key());
  }
  catch (const ghope::ArgumentError &e)
  {
    return fail(GHOPE_ERR_ARGUMENT, e.what());
  }
  catch (const ghope::Error &e)
  {
    return fail(GHOPE_ERR_NUMERICAL, e.what());
  }
  catch (const std::bad_alloc &)
  {
    return fail(GHOPE_ERR_INTERNAL, "out of memory");
  }
  catch (const std::exception &e)
  {
    return fail(GHOPE_ERR_INTERNAL, e.what());
  }
  catch (...)
  {
    return fail(GHOPE_ERR_INTERNAL, "unknown exception");
  }
}

ghope_status null_argument(const char *what)
{
  return fail(GHOPE_ERR_ARGUMENT, std::string(what) + " is null");
}

template <typename Rows>
ghope_status write_to(const char *path, const Rows &rows,
                      void (*writer)(std::ostream &, const Rows &))
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    return fail(GHOPE_ERR_IO, std::string("cannot open '") + path + "' for writing");
  }
  writer(out, rows);
  out.flush();
  if (!out)
  {
    return fail(GHOPE_ERR_IO, std::string("write to '") + path + "' failed");
  }
  return GHOPE_OK;
}

}  // namespace

extern "C" {

const char *ghope_version(void)
{
  return ghope::version_string;
}

const char *ghope_last_error(void)
{
  return last_error.c_str();
}

const char *ghope_last_error_key(void)
{
  return last_error_key.c_str();
}

ghope_status ghope_config_parse(const char *text, ghope_config **out)
{
  if (!text || !out)
  {
    return null_argument(!text ? "text" : "out");
  }
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<ghope_config>();
    cfg->raw = ghope::parse_keyed_text(text);
    cfg->resolved = ghope::parse_run_config(cfg->raw);
    *out = cfg.release();
    return GHOPE_OK;
  });
}

ghope_status ghope_config_load(const char *path, ghope_config **out)
{
  if (!path || !out)
  {
    return null_argument(!path ? "path" : "out");
  }
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    return fail(GHOPE_ERR_IO, std::string("cannot open config '") + path + "'");
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ghope_config_parse(text.c_str(), out);
}

ghope_status ghope_config_set(ghope_config *config, const char *key, const char *value)
{
  if (!config || !key || !value)
  {
    return null_argument(!config ? "config" : (!key ? "key" : "value"));
  }
  return guarded([&] {
    auto raw = config->raw;
    raw[key] = value;
    config->resolved = ghope::parse_run_config(raw);
    config->raw = std::move(raw);
    return GHOPE_OK;
  });
}

ghope_status ghope_config_emit(const ghope_config *config, char *buf, size_t cap, size_t *needed)
{
  if (!config)
  {
    return null_argument("config");
  }
  return guarded([&] {
    const std::string text = ghope::emit_keyed_text(ghope::to_raw(config->resolved));
    if (needed)
    {
      *needed = text.size() + 1;
    }
    if (buf && cap > 0)
    {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
    return GHOPE_OK;
  });
}

ghope_status ghope_config_write_metadata(const ghope_config *config, const char *path)
{
  if (!config || !path)
  {
    return null_argument(!config ? "config" : "path");
  }
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
      return fail(GHOPE_ERR_IO, std::string("cannot open '") + path + "' for writing");
    }
    out << ghope::metadata_json(config->resolved);
    return out ? GHOPE_OK : fail(GHOPE_ERR_IO, std::string("write to '") + path + "' failed");
  });
}

void ghope_config_free(ghope_config *config)
{
  delete config;
}

ghope_status ghope_sweep_run(const ghope_config *config, ghope_table **out)
{
  if (!config || !out)
  {
    return null_argument(!config ? "config" : "out");
  }
  *out = nullptr;
  return guarded([&] {
    auto table = std::make_unique<ghope_table>();
    table->rows = ghope::run_sweep(config->resolved);
    *out = table.release();
    return GHOPE_OK;
  });
}

size_t ghope_table_rows(const ghope_table *table)
{
  return table ? table->rows.size() : 0;
}

size_t ghope_table_failed_rows(const ghope_table *table)
{
  if (!table)
  {
    return 0;
  }
  size_t failed = 0;
  for (const auto &r : table->rows)
  {
    failed += r.ok ? 0 : 1;
  }
  return failed;
}

ghope_status ghope_table_get(const ghope_table *table, size_t row, ghope_row *out)
{
  if (!table || !out)
  {
    return null_argument(!table ? "table" : "out");
  }
  if (row >= table->rows.size())
  {
    return fail(GHOPE_ERR_ARGUMENT, "row index out of range");
  }
  const auto &r = table->rows[row];
  out->d_um = r.d / ghope::units::um;
  out->f_THz = r.f / ghope::units::THz;
  out->solver = static_cast<int>(r.solver);
  out->summation = r.summation == ghope::Summation::Taylor ? GHOPE_SUMMATION_TAYLOR
                                                           : GHOPE_SUMMATION_PADE;
  out->ok = r.ok ? 1 : 0;
  out->R = r.R;
  out->T = r.T;
  out->A = r.A;
  out->A_local = r.A_local;
  out->A_nonlocal = r.A_nonlocal;
  out->A_collocation = r.A_collocation;
  out->energy_defect = r.energy_defect;
  out->min_abs_determinant = r.min_abs_determinant;
  out->pade_fallback_count = r.pade_fallback_count;
  return GHOPE_OK;
}

const char *ghope_table_status(const ghope_table *table, size_t row)
{
  if (!table || row >= table->rows.size())
  {
    return "";
  }
  return table->rows[row].status.c_str();
}

ghope_status ghope_table_write_csv(const ghope_table *table, const char *path)
{
  if (!table || !path)
  {
    return null_argument(!table ? "table" : "path");
  }
  return guarded([&] { return write_to(path, table->rows, &ghope::write_csv); });
}

void ghope_table_free(ghope_table *table)
{
  delete table;
}

ghope_status ghope_convergence_run(const ghope_config *config, ghope_convergence **out)
{
  if (!config || !out)
  {
    return null_argument(!config ? "config" : "out");
  }
  *out = nullptr;
  return guarded([&] {
    auto report = std::make_unique<ghope_convergence>();
    report->rows = ghope::convergence_sweep(config->resolved);
    *out = report.release();
    return GHOPE_OK;
  });
}

size_t ghope_convergence_rows(const ghope_convergence *report)
{
  return report ? report->rows.size() : 0;
}

ghope_status ghope_convergence_get(const ghope_convergence *report, size_t row,
                                   ghope_convergence_row *out)
{
  if (!report || !out)
  {
    return null_argument(!report ? "report" : "out");
  }
  if (row >= report->rows.size())
  {
    return fail(GHOPE_ERR_ARGUMENT, "row index out of range");
  }
  const auto &r = report->rows[row];
  *out = {r.d / ghope::units::um, r.f / ghope::units::THz, r.order, r.norm_u, r.norm_w,
          r.ratio_u, r.ratio_w};
  return GHOPE_OK;
}

ghope_status ghope_convergence_write_csv(const ghope_convergence *report, const char *path)
{
  if (!report || !path)
  {
    return null_argument(!report ? "report" : "path");
  }
  return guarded([&] { return write_to(path, report->rows, &ghope::write_convergence_csv); });
}

void ghope_convergence_free(ghope_convergence *report)
{
  delete report;
}

}  // extern "C"
