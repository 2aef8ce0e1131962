// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_OBSERVABLES_HPP
#define GHOPE_OBSERVABLES_HPP

#include <map>

#include "ghope/spectral.hpp"

namespace ghope
{

struct Observables
{
  std::map<int, double> e_u;  // reflected efficiency per propagating upper mode
  std::map<int, double> e_w;  // transmitted efficiency per propagating lower mode
  double R = 0.0;
  double T = 0.0;
  double A = 0.0;
  double energy_defect = 0.0;
  bool degenerate = false;  // no scattered energy at all (U = W = 0)
};

// e_{u,p} = gamma_{u,p} |U_p|^2 / gamma_u, e_{w,p} = gamma_{w,p} |W_p|^2 / gamma_u,
// R = sum e_u, T = sum e_w, A = 1 - R - (tau_w/tau_u) T.
// tau_w/tau_u equals eps_u/eps_w in TM and 1 in TE. graphene_free selects how the
// energy defect column is reported.
Observables efficiencies(const SpectralGrid &grid, const SurfaceField &u, const SurfaceField &w,
                         bool graphene_free = false);

}  // namespace ghope

#endif  // GHOPE_OBSERVABLES_HPP
