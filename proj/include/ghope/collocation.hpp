// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_COLLOCATION_HPP
#define GHOPE_COLLOCATION_HPP

#include <Eigen/Dense>

#include "ghope/conductivity.hpp"
#include "ghope/solver.hpp"
#include "ghope/spectral.hpp"

namespace ghope
{

//
// Dense discretization of the patterned interface system at a fixed envelope parameter.
// Unknown ordering: U block then W block, modes in ascending p. The envelope product is
// the convolution matrix of the envelope's discrete Fourier coefficients, which is the
// Fourier-basis image of enforcing the equations pointwise at the gridpoints.
//
struct DenseSystem
{
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  std::size_t modes = 0;

  std::size_t u_index(int p) const { return static_cast<std::size_t>(p + static_cast<int>(modes / 2)); }
  std::size_t w_index(int p) const { return modes + u_index(p); }
};

// Convolution matrix C with (X f)_p = sum_q C(p, q) f_q for the envelope X0 + delta X1.
// N samples give the circulant (aliased) product; 2N samples the zero-padded one.
Eigen::MatrixXcd envelope_convolution(const SpectralGrid &grid, const Envelope &envelope,
                                      double delta);

DenseSystem assemble(const SpectralGrid &grid, const InterfaceModel &model,
                     const Envelope &envelope, double delta);

struct CollocationSolution
{
  SurfaceField u;
  SurfaceField w;
  double residual = 0.0;         // ||M x - b|| / ||b||
  double condition_estimate = 0.0;
};

// Reciprocal condition number estimate above which the system is declared singular.
inline constexpr double collocation_max_condition = 1e14;

CollocationSolution solve(const DenseSystem &system);

}  // namespace ghope

#endif  // GHOPE_COLLOCATION_HPP
