// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "ghope/error.hpp"
#include "ghope/units.hpp"

using namespace ghope;

namespace
{

std::string error_key(const RawConfig &raw)
{
  try
  {
    validate(raw);
  }
  catch (const ConfigError &e)
  {
    return e.key();
  }
  return {};
}

RawConfig base_config()
{
  return {{"eps_u", "3"}, {"eps_w", "4"}, {"d_um", "8"},
          {"theta_deg", "0"}, {"f_THz", "2"}, {"pol", "TM"}};
}

}  // namespace

TEST_CASE("normal incidence config has zero Bloch shift and TM weights 1/eps")
{
  const auto cfg = validate(base_config());
  CHECK(cfg.alpha == 0.0);
  CHECK(cfg.tau_u == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(cfg.tau_w == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(cfg.d == doctest::Approx(8e-6).epsilon(1e-15));
  CHECK(cfg.polarization == Polarization::TM);
}

TEST_CASE("TE weights are one")
{
  auto raw = base_config();
  raw["pol"] = "te";
  const auto cfg = validate(raw);
  CHECK(cfg.tau_u == 1.0);
  CHECK(cfg.tau_w == 1.0);
}

TEST_CASE("wavenumbers satisfy the dispersion relation")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> eps(1.0, 12.0), theta(-80.0, 80.0), f(0.1, 20.0);
  for (int i = 0; i < 200; ++i)
  {
    const auto cfg = make_physical_config(eps(rng), eps(rng), 3e-6, theta(rng) * units::deg,
                                          f(rng) * units::THz, Polarization::TE);
    const auto k = wavenumbers(cfg);
    CHECK(k.k0 == doctest::Approx(2.0 * std::numbers::pi * cfg.f / constants::c0).epsilon(1e-14));
    CHECK(k.ku == doctest::Approx(std::sqrt(cfg.eps_u) * k.k0).epsilon(1e-14));
    CHECK(k.alpha * k.alpha + k.gamma_u * k.gamma_u ==
          doctest::Approx(k.ku * k.ku).epsilon(1e-12));
    CHECK(k.gamma_u > 0.0);
  }
}

TEST_CASE("invalid physical values name their config key")
{
  auto raw = base_config();
  raw["eps_u"] = "0";
  CHECK(error_key(raw) == "eps_u");
  raw = base_config();
  raw["eps_w"] = "-2";
  CHECK(error_key(raw) == "eps_w");
  raw = base_config();
  raw["d_um"] = "0";
  CHECK(error_key(raw) == "d_um");
  raw = base_config();
  raw["f_THz"] = "-1";
  CHECK(error_key(raw) == "f_THz");
  raw = base_config();
  raw["theta_deg"] = "90";
  CHECK(error_key(raw) == "theta_deg");
  raw = base_config();
  raw["pol"] = "XY";
  CHECK(error_key(raw) == "pol");
  raw = base_config();
  raw.erase("eps_w");
  CHECK(error_key(raw) == "eps_w");
  raw = base_config();
  raw["eps_u"] = "3x";
  CHECK(error_key(raw) == "eps_u");
}

TEST_CASE("keyed text parsing")
{
  const auto raw = parse_keyed_text("# comment\n eps_u = 3 \n\neps_w: 4  # trailing\npol=TM\n");
  CHECK(raw.size() == 3);
  CHECK(raw.at("eps_u") == "3");
  CHECK(raw.at("eps_w") == "4");
  CHECK(raw.at("pol") == "TM");
  CHECK_THROWS_AS(parse_keyed_text("eps_u = 3\neps_u = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_keyed_text("just words\n"), ConfigError);
}

TEST_CASE("physical config round-trips through keyed text")
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i)
  {
    const auto cfg = make_physical_config(1.0 + 10.0 * u(rng), 1.0 + 10.0 * u(rng),
                                          (0.5 + 10.0 * u(rng)) * units::um,
                                          (-60.0 + 120.0 * u(rng)) * units::deg,
                                          (0.1 + 15.0 * u(rng)) * units::THz,
                                          u(rng) < 0.5 ? Polarization::TE : Polarization::TM);
    const auto back = validate(parse_keyed_text(emit_keyed_text(to_raw(cfg))));
    CHECK(back.eps_u == cfg.eps_u);
    CHECK(back.eps_w == cfg.eps_w);
    CHECK(back.d == doctest::Approx(cfg.d).epsilon(1e-15));
    CHECK(back.theta == doctest::Approx(cfg.theta).epsilon(1e-15));
    CHECK(back.f == doctest::Approx(cfg.f).epsilon(1e-15));
    CHECK(back.polarization == cfg.polarization);
  }
}

TEST_CASE("value helpers")
{
  CHECK(parse_double("k", "1e-3") == 1e-3);
  CHECK_THROWS_AS(parse_double("k", ""), ConfigError);
  CHECK_THROWS_AS(parse_double("k", "nan"), ConfigError);
  CHECK(parse_integer("k", "128") == 128);
  CHECK_THROWS_AS(parse_integer("k", "1.5"), ConfigError);
  CHECK(parse_bool("k", "true"));
  CHECK(parse_bool("k", "Yes"));
  CHECK_FALSE(parse_bool("k", "0"));
  CHECK_THROWS_AS(parse_bool("k", "maybe"), ConfigError);
  const auto list = parse_double_list("k", "8, 4,2 ,1");
  REQUIRE(list.size() == 4);
  CHECK(list[3] == 1.0);
  CHECK(std::stod(format_double(0.1)) == 0.1);
}
