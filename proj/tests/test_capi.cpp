// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ghope/ghope.h"

namespace
{

const std::string data_dir = GHOPE_TEST_DATA_DIR;

std::string slurp(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string emit(const ghope_config *cfg)
{
  size_t needed = 0;
  REQUIRE(ghope_config_emit(cfg, nullptr, 0, &needed) == GHOPE_OK);
  std::string buf(needed, '\0');
  REQUIRE(ghope_config_emit(cfg, buf.data(), buf.size(), nullptr) == GHOPE_OK);
  buf.pop_back();
  return buf;
}

}  // namespace

TEST_CASE("version")
{
  CHECK(std::string(ghope_version()) == "0.1.0");
}

TEST_CASE("load, run and read back a sweep")
{
  ghope_config *cfg = nullptr;
  REQUIRE(ghope_config_load((data_dir + "/small.cfg").c_str(), &cfg) == GHOPE_OK);
  ghope_table *table = nullptr;
  REQUIRE(ghope_sweep_run(cfg, &table) == GHOPE_OK);
  REQUIRE(ghope_table_rows(table) == 4);
  CHECK(ghope_table_failed_rows(table) == 0);
  double prev_f = 0.0;
  for (size_t i = 0; i < 4; ++i)
  {
    ghope_row row;
    REQUIRE(ghope_table_get(table, i, &row) == GHOPE_OK);
    CHECK(row.ok == 1);
    CHECK(row.d_um == doctest::Approx(8.0));
    CHECK(row.f_THz > prev_f);
    prev_f = row.f_THz;
    CHECK(row.solver == GHOPE_SOLVER_HOPE);
    CHECK(row.summation == GHOPE_SUMMATION_PADE);
    CHECK(row.A > 0.0);
    CHECK(std::abs(1.0 - row.R - 0.75 * row.T - row.A) < 1e-12);
    CHECK(std::isnan(row.A_collocation));
    CHECK(std::string(ghope_table_status(table, i)) == "ok");
  }
  ghope_row row;
  CHECK(ghope_table_get(table, 4, &row) == GHOPE_ERR_ARGUMENT);
  CHECK(std::string(ghope_last_error()).find("range") != std::string::npos);

  const std::string out = "capi_sweep.csv";
  REQUIRE(ghope_table_write_csv(table, out.c_str()) == GHOPE_OK);
  const auto text = slurp(out);
  CHECK(text.rfind("d_um,f_THz,", 0) == 0);
  std::remove(out.c_str());
  ghope_table_free(table);
  ghope_config_free(cfg);
}

TEST_CASE("overrides revalidate and round-trip")
{
  ghope_config *cfg = nullptr;
  REQUIRE(ghope_config_load((data_dir + "/small.cfg").c_str(), &cfg) == GHOPE_OK);
  CHECK(ghope_config_set(cfg, "solver", "both") == GHOPE_OK);
  CHECK(ghope_config_set(cfg, "pade", "false") == GHOPE_OK);
  const std::string before = emit(cfg);
  CHECK(ghope_config_set(cfg, "N_x", "33") == GHOPE_ERR_CONFIG);
  CHECK(std::string(ghope_last_error_key()) == "N_x");
  CHECK(emit(cfg) == before);  // a rejected override leaves the config unchanged

  ghope_config *again = nullptr;
  REQUIRE(ghope_config_parse(before.c_str(), &again) == GHOPE_OK);
  CHECK(emit(again) == before);

  ghope_table *table = nullptr;
  REQUIRE(ghope_sweep_run(cfg, &table) == GHOPE_OK);
  ghope_row row;
  REQUIRE(ghope_table_get(table, 0, &row) == GHOPE_OK);
  CHECK(row.solver == GHOPE_SOLVER_BOTH);
  CHECK(row.summation == GHOPE_SUMMATION_TAYLOR);
  CHECK(std::isfinite(row.A_collocation));

  char small[8];
  size_t needed = 0;
  CHECK(ghope_config_emit(cfg, small, sizeof small, &needed) == GHOPE_OK);
  CHECK(needed > sizeof small);
  CHECK(std::string(small).size() == sizeof small - 1);

  ghope_table_free(table);
  ghope_config_free(again);
  ghope_config_free(cfg);
}

TEST_CASE("convergence diagnostics through the C API")
{
  ghope_config *cfg = nullptr;
  REQUIRE(ghope_config_load((data_dir + "/small.cfg").c_str(), &cfg) == GHOPE_OK);
  ghope_convergence *report = nullptr;
  REQUIRE(ghope_convergence_run(cfg, &report) == GHOPE_OK);
  CHECK(ghope_convergence_rows(report) == 4 * 9);
  ghope_convergence_row row;
  REQUIRE(ghope_convergence_get(report, 0, &row) == GHOPE_OK);
  CHECK(row.order == 0);
  CHECK(std::isnan(row.ratio_U));
  REQUIRE(ghope_convergence_get(report, 1, &row) == GHOPE_OK);
  CHECK(row.order == 1);
  CHECK(std::isfinite(row.ratio_W));
  ghope_convergence_free(report);
  ghope_config_free(cfg);
}

TEST_CASE("error codes")
{
  ghope_config *cfg = nullptr;
  CHECK(ghope_config_load("/nonexistent/ghope.cfg", &cfg) == GHOPE_ERR_IO);
  CHECK(cfg == nullptr);
  CHECK(ghope_config_load((data_dir + "/bad_key.cfg").c_str(), &cfg) == GHOPE_ERR_CONFIG);
  CHECK(std::string(ghope_last_error_key()) == "N_x");
  CHECK(ghope_config_parse("eps_u = 3\neps_u = 4\n", &cfg) == GHOPE_ERR_CONFIG);
  CHECK(ghope_config_parse(nullptr, &cfg) == GHOPE_ERR_ARGUMENT);
  CHECK(ghope_sweep_run(nullptr, nullptr) == GHOPE_ERR_ARGUMENT);
  CHECK(ghope_table_rows(nullptr) == 0);
  CHECK(std::string(ghope_table_status(nullptr, 0)).empty());
  ghope_config_free(nullptr);
  ghope_table_free(nullptr);

  REQUIRE(ghope_config_load((data_dir + "/small.cfg").c_str(), &cfg) == GHOPE_OK);
  CHECK(ghope_config_write_metadata(cfg, "/nonexistent/dir/meta.json") == GHOPE_ERR_IO);
  ghope_config_free(cfg);
}

TEST_CASE("failed points are reported per row")
{
  ghope_config *cfg = nullptr;
  REQUIRE(ghope_config_load((data_dir + "/all_fail.cfg").c_str(), &cfg) == GHOPE_OK);
  ghope_table *table = nullptr;
  REQUIRE(ghope_sweep_run(cfg, &table) == GHOPE_OK);
  CHECK(ghope_table_rows(table) == 2);
  CHECK(ghope_table_failed_rows(table) == 2);
  CHECK(std::string(ghope_table_status(table, 0)).rfind("error", 0) == 0);
  ghope_table_free(table);
  ghope_config_free(cfg);
}
