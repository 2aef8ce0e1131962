// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_HOPE_HPP
#define GHOPE_HOPE_HPP

#include <span>
#include <utility>
#include <vector>

#include "ghope/conductivity.hpp"
#include "ghope/solver.hpp"
#include "ghope/spectral.hpp"

namespace ghope
{

// Interface traces of the incident plane wave exp(i(alpha x - gamma_u z)):
// xi = -exp(i alpha x), nu = i gamma_u exp(i alpha x).
std::pair<SurfaceField, SurfaceField> incident_traces(const SpectralGrid &grid);

// Right-hand side (xi, -tau_u nu) of the order-zero problem.
std::pair<SurfaceField, SurfaceField> incident_rhs(const SpectralGrid &grid,
                                                   const InterfaceModel &model);

// Right-hand side of order l >= 1 from W_{l-1}:
//   TM: ( -A[X1 (tau_w J0 W_{l-1})], 0 ),   TE: ( 0, B[X1 W_{l-1}] ).
// A and B act after the product with X1.
std::pair<SurfaceField, SurfaceField> order_rhs(const SpectralGrid &grid,
                                                const InterfaceModel &model,
                                                const Envelope &envelope,
                                                const SurfaceField &w_prev);

// Mode-wise action of the order-zero operator.
std::pair<SurfaceField, SurfaceField> apply_order0(const SpectralGrid &grid,
                                                   const InterfaceModel &model,
                                                   const SurfaceField &u, const SurfaceField &w);

// Matrix-free action of the full patterned operator with envelope X0 + delta X1, using
// transforms for the envelope product.
std::pair<SurfaceField, SurfaceField> apply_full_operator(const SpectralGrid &grid,
                                                          const InterfaceModel &model,
                                                          const Envelope &envelope,
                                                          double delta, const SurfaceField &u,
                                                          const SurfaceField &w);

// Discrete Sobolev norm (sum_p <p>^{2s} |U_p|^2)^{1/2}, <p>^2 = 1 + p^2.
double sobolev_norm(const SurfaceField &field, double s);

// Taylor coefficients {U_l, W_l}, l = 0..L, of the traces in the envelope parameter.
struct HopeSeries
{
  std::vector<SurfaceField> u;
  std::vector<SurfaceField> w;
  double sobolev_s = 0.0;
  std::vector<double> norm_u;
  std::vector<double> norm_w;
  DeterminantProfile determinant;

  int max_order() const { return static_cast<int>(u.size()) - 1; }
  std::size_t size() const { return u.empty() ? 0 : u.front().size(); }
};

HopeSeries hope_recursion(const SpectralGrid &grid, const InterfaceModel &model,
                          const Envelope &envelope, int max_order, double sobolev_s = 0.0,
                          double resonance_tol = default_resonance_tol);

struct SummedFields
{
  SurfaceField u;
  SurfaceField w;
  int fallback_count = 0;  // modes where a Pade denominator was singular at every degree
};

SummedFields taylor_sum(const HopeSeries &series, double delta);

//
// Pade summation.
//

enum class PadeMode
{
  Coefficient,  // one approximant per Fourier coefficient sequence
  Gridpoint     // one approximant per physical gridpoint sequence
};

struct PadeValue
{
  complex value;
  bool fallback = false;       // returned the Taylor sum
  int denominator_degree = 0;  // degree actually used (may be below the requested N)
};

// Pivot ratio below which a denominator system is treated as singular.
inline constexpr double pade_singular_tol = 1e-13;

// [M/N](delta) from Taylor coefficients c_0..c_{M+N}. When the N x N denominator
// system is singular the denominator degree is lowered (numerator raised so all
// coefficients are still used); if no degree >= 1 works the Taylor sum is returned.
PadeValue pade_evaluate(std::span<const complex> coeffs, double delta, int m, int n);

// Default split: M = N = L/2 for even L, M = (L+1)/2 otherwise.
std::pair<int, int> default_pade_split(int max_order);

SummedFields pade_sum(const HopeSeries &series, double delta, int m, int n,
                      const SpectralGrid *grid = nullptr, PadeMode mode = PadeMode::Coefficient);

}  // namespace ghope

#endif  // GHOPE_HOPE_HPP
