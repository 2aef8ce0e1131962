// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ghope/units.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ghope/error.hpp"

namespace ghope
{

namespace
{

std::string trim(const std::string &s)
{
  const auto *ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string::npos)
  {
    return {};
  }
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s)
{
  for (auto &c : s)
  {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

const std::string &require(const RawConfig &raw, const std::string &key)
{
  auto it = raw.find(key);
  if (it == raw.end())
  {
    throw ConfigError(key, "missing required key");
  }
  return it->second;
}

}  // namespace

const char *to_string(Polarization pol)
{
  return pol == Polarization::TE ? "TE" : "TM";
}

PhysicalConfig make_physical_config(double eps_u, double eps_w, double d, double theta, double f,
                                    Polarization pol)
{
  if (!(eps_u > 0.0) || !std::isfinite(eps_u))
  {
    throw ConfigError("eps_u", "permittivity must be positive and finite");
  }
  if (!(eps_w > 0.0) || !std::isfinite(eps_w))
  {
    throw ConfigError("eps_w", "permittivity must be positive and finite");
  }
  if (!(d > 0.0) || !std::isfinite(d))
  {
    throw ConfigError("d", "period must be positive and finite");
  }
  if (!(f > 0.0) || !std::isfinite(f))
  {
    throw ConfigError("f", "frequency must be positive and finite");
  }
  if (!(std::abs(theta) < std::numbers::pi / 2.0))
  {
    throw ConfigError("theta", "incidence angle must satisfy |theta| < pi/2");
  }

  PhysicalConfig c;
  c.eps_u = eps_u;
  c.eps_w = eps_w;
  c.d = d;
  c.theta = theta;
  c.f = f;
  c.polarization = pol;
  c.omega = 2.0 * std::numbers::pi * f;
  c.k0 = c.omega / constants::c0;
  c.ku = std::sqrt(eps_u) * c.k0;
  c.kw = std::sqrt(eps_w) * c.k0;
  c.alpha = c.ku * std::sin(theta);
  c.gamma_u = c.ku * std::cos(theta);
  if (pol == Polarization::TM)
  {
    c.tau_u = 1.0 / eps_u;
    c.tau_w = 1.0 / eps_w;
  }
  return c;
}

Wavenumbers wavenumbers(const PhysicalConfig &config)
{
  return {config.k0, config.ku, config.kw, config.alpha, config.gamma_u};
}

RawConfig parse_keyed_text(const std::string &text)
{
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
    {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }
    auto sep = line.find('=');
    if (sep == std::string::npos)
    {
      sep = line.find(':');
    }
    if (sep == std::string::npos)
    {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    }
    auto key = trim(line.substr(0, sep));
    auto value = trim(line.substr(sep + 1));
    if (key.empty())
    {
      throw ConfigError("line " + std::to_string(lineno), "empty key");
    }
    if (raw.count(key))
    {
      throw ConfigError(key, "duplicate key");
    }
    raw.emplace(std::move(key), std::move(value));
  }
  return raw;
}

std::string emit_keyed_text(const RawConfig &raw)
{
  std::string out;
  for (const auto &[key, value] : raw)
  {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

std::string format_double(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(const std::string &key, const std::string &value)
{
  const auto v = trim(value);
  double out = 0.0;
  const auto *first = v.data();
  const auto *last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (v.empty() || ec != std::errc() || ptr != last)
  {
    throw ConfigError(key, "not a number: '" + value + "'");
  }
  if (!std::isfinite(out))
  {
    throw ConfigError(key, "value must be finite");
  }
  return out;
}

long parse_integer(const std::string &key, const std::string &value)
{
  const auto v = trim(value);
  long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
  {
    throw ConfigError(key, "not an integer: '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string &key, const std::string &value)
{
  const auto v = lower(trim(value));
  if (v == "true" || v == "1" || v == "yes" || v == "on")
  {
    return true;
  }
  if (v == "false" || v == "0" || v == "no" || v == "off")
  {
    return false;
  }
  throw ConfigError(key, "not a boolean: '" + value + "'");
}

std::vector<double> parse_double_list(const std::string &key, const std::string &value)
{
  std::vector<double> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ','))
  {
    out.push_back(parse_double(key, item));
  }
  if (out.empty())
  {
    throw ConfigError(key, "empty list");
  }
  return out;
}

Polarization parse_polarization(const std::string &key, const std::string &value)
{
  const auto v = lower(trim(value));
  if (v == "te")
  {
    return Polarization::TE;
  }
  if (v == "tm")
  {
    return Polarization::TM;
  }
  throw ConfigError(key, "unknown polarization '" + value + "' (expected TE or TM)");
}

PhysicalConfig validate(const RawConfig &raw)
{
  const double eps_u = parse_double("eps_u", require(raw, "eps_u"));
  const double eps_w = parse_double("eps_w", require(raw, "eps_w"));
  const double d_um = parse_double("d_um", require(raw, "d_um"));
  const double theta_deg = parse_double("theta_deg", require(raw, "theta_deg"));
  const double f_thz = parse_double("f_THz", require(raw, "f_THz"));
  const auto pol = parse_polarization("pol", require(raw, "pol"));

  // Re-label range errors with the user-facing (unit-suffixed) key.
  try
  {
    return make_physical_config(eps_u, eps_w, d_um * units::um, theta_deg * units::deg,
                                f_thz * units::THz, pol);
  }
  catch (const ConfigError &err)
  {
    static const std::map<std::string, std::string> keyed = {
        {"d", "d_um"}, {"f", "f_THz"}, {"theta", "theta_deg"}};
    auto it = keyed.find(err.key());
    if (it == keyed.end())
    {
      throw;
    }
    std::string msg = err.what();
    msg = msg.substr(msg.find(": ") + 2);
    throw ConfigError(it->second, msg);
  }
}

RawConfig to_raw(const PhysicalConfig &config)
{
  return {
      {"eps_u", format_double(config.eps_u)},
      {"eps_w", format_double(config.eps_w)},
      {"d_um", format_double(config.d / units::um)},
      {"theta_deg", format_double(config.theta / units::deg)},
      {"f_THz", format_double(config.f / units::THz)},
      {"pol", to_string(config.polarization)},
  };
}

}  // namespace ghope
