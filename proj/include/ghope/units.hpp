// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_UNITS_HPP
#define GHOPE_UNITS_HPP

#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace ghope
{

//
// Physical constants (SI, exact 2019 SI values where defined; eps0 is CODATA 2018).
//
namespace constants
{
inline constexpr double e = 1.602176634e-19;       // elementary charge, C
inline constexpr double h = 6.62607015e-34;        // Planck constant, J s
inline constexpr double hbar = h / (2.0 * std::numbers::pi);
inline constexpr double eps0 = 8.8541878128e-12;   // vacuum permittivity, F/m
inline constexpr double c0 = 299792458.0;          // vacuum light speed, m/s
inline constexpr double sigma0 = std::numbers::pi * e * e / (2.0 * h);  // universal AC conductivity, S
}  // namespace constants

// Unit conversions applied once, at the config boundary.
namespace units
{
inline constexpr double eV = constants::e;
inline constexpr double meV = 1e-3 * constants::e;
inline constexpr double THz = 1e12;
inline constexpr double um = 1e-6;
inline constexpr double deg = std::numbers::pi / 180.0;
}  // namespace units

enum class Polarization
{
  TE,
  TM
};

const char *to_string(Polarization pol);

// Everything defining one scattering problem, in SI units, with derived wavenumbers.
struct PhysicalConfig
{
  double eps_u = 1.0;
  double eps_w = 1.0;
  double d = 1.0;      // lateral period, m
  double theta = 0.0;  // incidence angle, rad
  double f = 1.0;      // ordinary frequency, Hz
  Polarization polarization = Polarization::TM;

  // Derived.
  double omega = 0.0;
  double k0 = 0.0;
  double ku = 0.0;
  double kw = 0.0;
  double alpha = 0.0;
  double gamma_u = 0.0;
  double tau_u = 1.0;
  double tau_w = 1.0;
};

// Builds a PhysicalConfig from SI values, checking ranges and filling the derived fields.
// Errors name the SI quantity; the keyed-text front end re-labels them with the config key.
PhysicalConfig make_physical_config(double eps_u, double eps_w, double d, double theta, double f,
                                    Polarization pol);

struct Wavenumbers
{
  double k0, ku, kw, alpha, gamma_u;
};

Wavenumbers wavenumbers(const PhysicalConfig &config);

// Flat key/value text, as read from a config file ("key = value", '#' comments).
using RawConfig = std::map<std::string, std::string>;

RawConfig parse_keyed_text(const std::string &text);
std::string emit_keyed_text(const RawConfig &raw);

// Validates the physical subset of a raw config (eps_u, eps_w, d_um, theta_deg, pol, f_THz).
// Keys not belonging to the physical subset are ignored here.
PhysicalConfig validate(const RawConfig &raw);

// Inverse of validate for the physical subset, using 17 significant digits.
RawConfig to_raw(const PhysicalConfig &config);

// Value parsing helpers shared by the config front ends; errors name the key.
double parse_double(const std::string &key, const std::string &value);
long parse_integer(const std::string &key, const std::string &value);
bool parse_bool(const std::string &key, const std::string &value);
std::vector<double> parse_double_list(const std::string &key, const std::string &value);
Polarization parse_polarization(const std::string &key, const std::string &value);
std::string format_double(double value);

}  // namespace ghope

#endif  // GHOPE_UNITS_HPP
