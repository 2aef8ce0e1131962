// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ghope/observables.hpp"

#include "ghope/error.hpp"

namespace ghope
{

Observables efficiencies(const SpectralGrid &grid, const SurfaceField &u, const SurfaceField &w,
                         bool graphene_free)
{
  grid.check_compatible(u, "efficiencies");
  grid.check_compatible(w, "efficiencies");
  const auto &cfg = grid.config();
  const double gamma_inc = cfg.gamma_u;
  if (!(gamma_inc > 0.0))
  {
    throw ArgumentError("efficiencies: incident order does not propagate (gamma_u = 0)");
  }

  Observables obs;
  for (int p : grid.prop_u())
  {
    const double e = grid.gamma_u(p).real() * std::norm(u[p]) / gamma_inc;
    obs.e_u[p] = e;
    obs.R += e;
  }
  for (int p : grid.prop_w())
  {
    const double e = grid.gamma_w(p).real() * std::norm(w[p]) / gamma_inc;
    obs.e_w[p] = e;
    obs.T += e;
  }
  const double flux_ratio = cfg.tau_w / cfg.tau_u;
  obs.A = 1.0 - obs.R - flux_ratio * obs.T;
  obs.energy_defect = graphene_free ? obs.A : 1.0 - obs.R - flux_ratio * obs.T - obs.A;
  obs.degenerate = u.norm() == 0.0 && w.norm() == 0.0;
  return obs;
}

}  // namespace ghope
