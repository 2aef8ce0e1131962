// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_SOLVER_HPP
#define GHOPE_SOLVER_HPP

#include <utility>
#include <vector>

#include "ghope/conductivity.hpp"
#include "ghope/spectral.hpp"
#include "ghope/units.hpp"

namespace ghope
{

// Coefficients of the constant-envelope interface operator
//   [ I         -I + A X0 tau_w J0 ] [U]
//   [ tau_u G0   tau_w J0 - B X0   ] [W]
// with A active in TM and B active in TE.
struct InterfaceModel
{
  Polarization polarization = Polarization::TM;
  SigmaPair sigma;
  double k0 = 0.0;
  double x0 = 1.0;
  double tau_u = 1.0;
  double tau_w = 1.0;

  static InterfaceModel from(const PhysicalConfig &config, const SigmaPair &sigma, double x0);
};

struct DeterminantProfile
{
  Polarization polarization = Polarization::TM;
  int pmin = 0;
  std::vector<complex> delta;  // delta[p - pmin]
  double min_abs = 0.0;
  double max_abs = 0.0;
  int argmin = 0;
  double min_relative = 0.0;  // min_p |Delta_p| / (sum of |terms of Delta_p|)

  complex at(int p) const { return delta[static_cast<std::size_t>(p - pmin)]; }
};

// Per-mode determinants of the order-zero operator. Both throw ResonanceError when some
// |Delta_p| <= rel_tol * (sum of the magnitudes of the terms of Delta_p), i.e. when the
// terms cancel to within rel_tol. rel_tol = 0 only rejects an exactly singular mode.
inline constexpr double default_resonance_tol = 1e-10;

DeterminantProfile determinant_te(const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                                  double x0, double rel_tol = default_resonance_tol);
DeterminantProfile determinant_tm(const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                                  double x0, double tau_u, double tau_w,
                                  double rel_tol = default_resonance_tol);
DeterminantProfile determinant(const SpectralGrid &grid, const InterfaceModel &model,
                               double rel_tol = default_resonance_tol);

// Which of the sign cases of the TM nonresonance argument mode p falls into:
// 0 Rayleigh singularity (some gamma vanishes), 1 both evanescent, 2 upper evanescent /
// lower propagating, 3 upper propagating / lower evanescent, 4 both propagating.
int tm_sign_case(const SpectralGrid &grid, int p);

using ModePair = std::pair<complex, complex>;

// Closed-form per-mode inverse of the TE operator
//   [ 1              -1                                  ] [U_p]   [Q_p]
//   [ -i gamma_u,p   -i gamma_w,p - i k0 X0 Sigma_p     ] [W_p] = [R_p].
ModePair solve_mode_te(int p, const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                       double x0, complex q, complex r);

// Closed-form per-mode inverse of the TM operator
//   [ 1                       -1 - a_p tau_w i gamma_w,p ] [U_p]   [Q_p]
//   [ -tau_u i gamma_u,p      -tau_w i gamma_w,p         ] [W_p] = [R_p],
// a_p = X0 Sigma_p / (i k0).
ModePair solve_mode_tm(int p, const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                       double x0, double tau_u, double tau_w, complex q, complex r);

ModePair solve_mode(int p, const SpectralGrid &grid, const InterfaceModel &model, complex q,
                    complex r);

// Forward action of the per-mode 2x2 matrix; used for residual checks.
ModePair apply_mode(int p, const SpectralGrid &grid, const InterfaceModel &model, complex u,
                    complex w);

// Mode-by-mode solve of the order-zero system.
std::pair<SurfaceField, SurfaceField> solve_order0(const SpectralGrid &grid,
                                                   const InterfaceModel &model,
                                                   const SurfaceField &q, const SurfaceField &r);

}  // namespace ghope

#endif  // GHOPE_SOLVER_HPP
