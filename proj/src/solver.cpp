// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ghope/solver.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ghope/error.hpp"

namespace ghope
{

namespace
{

constexpr complex I{0.0, 1.0};

// scale[i] is the sum of the magnitudes of the terms making up delta[i]; a mode is
// resonant when those terms cancel, |Delta_p| <= rel_tol * scale_p. Comparing against the
// mode's own terms rather than max_p |Delta_p| keeps the test meaningful when |Delta_p|
// grows like |alpha_p|^4 across the window.
void finish_profile(DeterminantProfile &prof, const std::vector<double> &scale, double rel_tol)
{
  prof.min_abs = std::abs(prof.delta.front());
  prof.max_abs = prof.min_abs;
  prof.argmin = prof.pmin;
  for (std::size_t i = 0; i < prof.delta.size(); ++i)
  {
    const double a = std::abs(prof.delta[i]);
    if (a < prof.min_abs)
    {
      prof.min_abs = a;
      prof.argmin = prof.pmin + static_cast<int>(i);
    }
    prof.max_abs = std::max(prof.max_abs, a);
  }
  prof.min_relative = std::numeric_limits<double>::infinity();
  int worst = prof.pmin;
  for (std::size_t i = 0; i < prof.delta.size(); ++i)
  {
    const double a = std::abs(prof.delta[i]);
    const double rel = scale[i] > 0.0 ? a / scale[i] : 0.0;
    if (rel < prof.min_relative)
    {
      prof.min_relative = rel;
      worst = prof.pmin + static_cast<int>(i);
    }
  }
  if (!(prof.min_relative > rel_tol))
  {
    const double a = std::abs(prof.at(worst));
    throw ResonanceError(worst, a,
                         std::string(to_string(prof.polarization)) +
                             " operator is resonant at mode p = " + std::to_string(worst) +
                             " (|Delta| = " + format_double(a) + ", " +
                             format_double(prof.min_relative) +
                             " of its term magnitudes; threshold " + format_double(rel_tol) + ")");
  }
}

complex delta_te(const SpectralGrid &grid, const SigmaPair &sigma, double k0, double x0, int p,
                 double &scale)
{
  const complex t1 = -I * grid.gamma_u(p);
  const complex t2 = -I * grid.gamma_w(p);
  const complex t3 = -I * k0 * x0 * sigma.symbol(grid.alpha(p));
  scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
  return t1 + t2 + t3;
}

complex delta_tm(const SpectralGrid &grid, const SigmaPair &sigma, double k0, double x0,
                 double tau_u, double tau_w, int p, double &scale)
{
  const complex gu = grid.gamma_u(p);
  const complex gw = grid.gamma_w(p);
  const complex a = x0 * sigma.symbol(grid.alpha(p)) / (I * k0);
  const complex t1 = -tau_u * I * gu;
  const complex t2 = -tau_w * I * gw;
  const complex t3 = tau_u * tau_w * a * gu * gw;
  scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
  return t1 + t2 + t3;
}

}  // namespace

InterfaceModel InterfaceModel::from(const PhysicalConfig &config, const SigmaPair &sigma,
                                    double x0)
{
  InterfaceModel m;
  m.polarization = config.polarization;
  m.sigma = sigma;
  m.k0 = config.k0;
  m.x0 = x0;
  m.tau_u = config.tau_u;
  m.tau_w = config.tau_w;
  return m;
}

DeterminantProfile determinant_te(const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                                  double x0, double rel_tol)
{
  if (x0 == 0.0)
  {
    throw ArgumentError("determinant_te: X0 must be nonzero");
  }
  DeterminantProfile prof;
  prof.polarization = Polarization::TE;
  prof.pmin = grid.pmin();
  prof.delta.resize(grid.size());
  std::vector<double> scale(grid.size());
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    const auto i = static_cast<std::size_t>(p - prof.pmin);
    prof.delta[i] = delta_te(grid, sigma, k0, x0, p, scale[i]);
  }
  finish_profile(prof, scale, rel_tol);
  return prof;
}

DeterminantProfile determinant_tm(const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                                  double x0, double tau_u, double tau_w, double rel_tol)
{
  if (x0 == 0.0)
  {
    throw ArgumentError("determinant_tm: X0 must be nonzero");
  }
  DeterminantProfile prof;
  prof.polarization = Polarization::TM;
  prof.pmin = grid.pmin();
  prof.delta.resize(grid.size());
  std::vector<double> scale(grid.size());
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    const auto i = static_cast<std::size_t>(p - prof.pmin);
    prof.delta[i] = delta_tm(grid, sigma, k0, x0, tau_u, tau_w, p, scale[i]);
  }
  finish_profile(prof, scale, rel_tol);
  return prof;
}

DeterminantProfile determinant(const SpectralGrid &grid, const InterfaceModel &model,
                               double rel_tol)
{
  if (model.polarization == Polarization::TE)
  {
    return determinant_te(grid, model.sigma, model.k0, model.x0, rel_tol);
  }
  return determinant_tm(grid, model.sigma, model.k0, model.x0, model.tau_u, model.tau_w,
                        rel_tol);
}

int tm_sign_case(const SpectralGrid &grid, int p)
{
  const complex gu = grid.gamma_u(p);
  const complex gw = grid.gamma_w(p);
  if (gu == 0.0 || gw == 0.0)
  {
    return 0;
  }
  const bool up = grid.propagating_u(p);
  const bool wp = grid.propagating_w(p);
  if (!up && !wp)
  {
    return 1;
  }
  if (!up && wp)
  {
    return 2;
  }
  if (up && !wp)
  {
    return 3;
  }
  return 4;
}

ModePair solve_mode_te(int p, const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                       double x0, complex q, complex r)
{
  double scale = 0.0;
  const complex det = delta_te(grid, sigma, k0, x0, p, scale);
  if (det == 0.0)
  {
    throw ResonanceError(p, 0.0, "TE operator is singular at mode p = " + std::to_string(p));
  }
  // Lower-right entry of the per-mode matrix.
  const complex d22 = -I * grid.gamma_w(p) - I * k0 * x0 * sigma.symbol(grid.alpha(p));
  const complex u = (d22 * q + r) / det;
  const complex w = (I * grid.gamma_u(p) * q + r) / det;
  return {u, w};
}

ModePair solve_mode_tm(int p, const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                       double x0, double tau_u, double tau_w, complex q, complex r)
{
  double scale = 0.0;
  const complex det = delta_tm(grid, sigma, k0, x0, tau_u, tau_w, p, scale);
  if (det == 0.0)
  {
    throw ResonanceError(p, 0.0, "TM operator is singular at mode p = " + std::to_string(p));
  }
  const complex a = x0 * sigma.symbol(grid.alpha(p)) / (I * k0);
  const complex twgw = tau_w * I * grid.gamma_w(p);
  const complex u = (-twgw * q + (1.0 + a * twgw) * r) / det;
  const complex w = (tau_u * I * grid.gamma_u(p) * q + r) / det;
  return {u, w};
}

ModePair solve_mode(int p, const SpectralGrid &grid, const InterfaceModel &model, complex q,
                    complex r)
{
  if (model.polarization == Polarization::TE)
  {
    return solve_mode_te(p, grid, model.sigma, model.k0, model.x0, q, r);
  }
  return solve_mode_tm(p, grid, model.sigma, model.k0, model.x0, model.tau_u, model.tau_w, q,
                       r);
}

ModePair apply_mode(int p, const SpectralGrid &grid, const InterfaceModel &model, complex u,
                    complex w)
{
  const complex g = -I * grid.gamma_u(p);
  const complex j = -I * grid.gamma_w(p);
  const complex sym = model.sigma.symbol(grid.alpha(p));
  if (model.polarization == Polarization::TE)
  {
    const complex b = I * model.k0 * sym * model.x0;
    return {u - w, g * u + (j - b) * w};
  }
  const complex a = model.x0 * sym / (I * model.k0);
  return {u + (-1.0 + a * model.tau_w * j) * w, model.tau_u * g * u + model.tau_w * j * w};
}

std::pair<SurfaceField, SurfaceField> solve_order0(const SpectralGrid &grid,
                                                   const InterfaceModel &model,
                                                   const SurfaceField &q, const SurfaceField &r)
{
  grid.check_compatible(q, "solve_order0");
  grid.check_compatible(r, "solve_order0");
  SurfaceField u(grid.size()), w(grid.size());
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    auto [up, wp] = solve_mode(p, grid, model, q[p], r[p]);
    u[p] = up;
    w[p] = wp;
  }
  return {std::move(u), std::move(w)};
}

}  // namespace ghope
