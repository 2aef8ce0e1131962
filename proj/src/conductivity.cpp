// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ghope/conductivity.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "ghope/error.hpp"
#include "ghope/units.hpp"

namespace ghope
{

void check(const GrapheneParams &params)
{
  if (!(params.fermi_level > 0.0))
  {
    throw ConfigError("E_F_eV", "Fermi level must be positive");
  }
  if (!(params.relaxation > 0.0))
  {
    throw ConfigError("Gamma_meV", "relaxation energy must be positive");
  }
  if (!(params.fermi_velocity > 0.0))
  {
    throw ConfigError("vF_m_per_s", "Fermi velocity must be positive");
  }
  if (!(params.lifetime > 0.0))
  {
    throw ConfigError("tau_s", "carrier lifetime must be positive");
  }
}

complex drude(const GrapheneParams &params, double f)
{
  if (!(f > 0.0))
  {
    throw ArgumentError("drude: frequency must be positive");
  }
  using namespace constants;
  // The alternative printed form 2 E_F e^2/(eps0 c0) / (Gamma - i h f) is off by a factor
  // of 1/h dimensionally; this is the standard intraband Drude term.
  const double prefactor = (sigma0 / (eps0 * c0)) * (4.0 * params.fermi_level / std::numbers::pi);
  const complex denom(params.relaxation, -hbar * 2.0 * std::numbers::pi * f);
  return prefactor / denom;
}

complex bgk_q(const GrapheneParams &params, double f)
{
  if (!(f > 0.0))
  {
    throw ArgumentError("bgk_q: frequency must be positive");
  }
  if (!(params.lifetime > 0.0))
  {
    throw ArgumentError("bgk_q: carrier lifetime must be positive");
  }
  // Rationalized form; avoids the cancellation in (f + i/tau)^2 when f tau is small.
  const double v2 = params.fermi_velocity * params.fermi_velocity;
  const double tau = params.lifetime;
  const double ft = f * tau;
  const double ft2 = ft * ft;
  const double denom = (ft2 + 1.0) * (ft2 + 1.0);
  const double re = v2 * tau * tau * (3.0 * ft2 + 1.0) / (4.0 * denom);
  const double im = -v2 * tau * (2.0 * ft2 + 1.0) / (2.0 * f * denom);
  return {re, im};
}

SigmaPair sigma_pair(const GrapheneParams &params, double f)
{
  SigmaPair out;
  out.sigma_loc = drude(params, f);
  if (params.nonlocal)
  {
    out.sigma_nloc = out.sigma_loc * bgk_q(params, f);
  }
  return out;
}

double ribbon_profile(double s, double width_fraction)
{
  s -= std::floor(s);
  const double t = (s - 0.5) / width_fraction;
  const double arg = 1.0 - 4.0 * t * t;
  return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

Envelope sample_envelope(double d, double x0, double width_fraction, std::size_t n)
{
  if (n < 2 || !std::has_single_bit(n))
  {
    throw ArgumentError("sample_envelope: N_x must be a power of two >= 2");
  }
  if (x0 == 0.0 || !std::isfinite(x0))
  {
    throw ConfigError("X0", "envelope baseline must be nonzero");
  }
  if (!(width_fraction > 0.0 && width_fraction <= 1.0))
  {
    throw ConfigError("ribbon_width_fraction", "must lie in (0, 1]");
  }
  if (!(d > 0.0))
  {
    throw ArgumentError("sample_envelope: period must be positive");
  }
  Envelope env;
  env.x0 = x0;
  env.width_fraction = width_fraction;
  env.x1.resize(n);
  for (std::size_t j = 0; j < n; ++j)
  {
    // x_j / d = j / n exactly.
    env.x1[j] = -x0 + ribbon_profile(static_cast<double>(j) / static_cast<double>(n),
                                     width_fraction);
  }
  return env;
}

}  // namespace ghope
