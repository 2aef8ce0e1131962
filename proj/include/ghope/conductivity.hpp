// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_CONDUCTIVITY_HPP
#define GHOPE_CONDUCTIVITY_HPP

#include <complex>
#include <vector>

namespace ghope
{

using complex = std::complex<double>;

struct GrapheneParams
{
  double fermi_level = 0.0;     // E_F, J
  double relaxation = 0.0;      // Gamma = hbar * (relaxation rate), J
  double fermi_velocity = 0.0;  // v_F, m/s
  double lifetime = 0.0;        // tau, s
  bool nonlocal = false;
};

// Throws ConfigError naming the first non-positive parameter.
void check(const GrapheneParams &params);

// Dimensionless surface conductivity sigma/(eps0 c0) split as sigma_loc - sigma_nloc d_x^2.
// Time dependence exp(-i omega t).
struct SigmaPair
{
  complex sigma_loc{0.0, 0.0};   // dimensionless
  complex sigma_nloc{0.0, 0.0};  // m^2

  // Fourier symbol of the conductivity at lateral wavenumber alpha (d_x^2 -> -alpha^2).
  complex symbol(double alpha) const { return sigma_loc + sigma_nloc * (alpha * alpha); }
};

// Local Drude conductivity, (sigma0/(eps0 c0)) (4 E_F/pi) / (Gamma - i hbar omega).
complex drude(const GrapheneParams &params, double f);

// Nonlocal BGK factor Q = v_F^2 (3f + 2i/tau) / (4f (f + i/tau)^2), units m^2.
complex bgk_q(const GrapheneParams &params, double f);

SigmaPair sigma_pair(const GrapheneParams &params, double f);

// Conductivity envelope X(x; delta) = X0 + delta X1(x) for a ribbon of width
// width_fraction * d centred at d/2 with a half-ellipse profile.
struct Envelope
{
  double x0 = 1.0;
  double width_fraction = 0.5;
  std::vector<double> x1;  // X1 at x_j = (d/N) j

  std::size_t size() const { return x1.size(); }
  double value(std::size_t j, double delta) const { return x0 + delta * x1[j]; }
};

// Profile value X0 + X1 at the fractional position s = x/d (periodic).
double ribbon_profile(double s, double width_fraction);

Envelope sample_envelope(double d, double x0, double width_fraction, std::size_t n);

}  // namespace ghope

#endif  // GHOPE_CONDUCTIVITY_HPP
