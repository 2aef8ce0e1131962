// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ghope/collocation.hpp"

#include <cmath>
#include <string>

#include "ghope/error.hpp"
#include "ghope/hope.hpp"

namespace ghope
{

namespace
{

constexpr complex I{0.0, 1.0};

}  // namespace

Eigen::MatrixXcd envelope_convolution(const SpectralGrid &grid, const Envelope &envelope,
                                      double delta)
{
  const std::size_t n = grid.size();
  const std::size_t m = envelope.size();
  if (m != n && m != 2 * n)
  {
    throw ArgumentError("envelope_convolution: envelope sample count does not match grid");
  }
  // Discrete Fourier coefficients of X1 on its own sampling grid.
  std::vector<complex> samples(m), xhat(m);
  for (std::size_t j = 0; j < m; ++j)
  {
    samples[j] = envelope.x1[j];
  }
  FftPlan::get(m)->forward(samples, xhat);
  for (auto &c : xhat)
  {
    c /= static_cast<double>(m);
  }

  const auto mi = static_cast<long>(m);
  Eigen::MatrixXcd conv(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    for (int q = grid.pmin(); q <= grid.pmax(); ++q)
    {
      const long k = (((p - q) % mi) + mi) % mi;
      complex entry = delta * xhat[static_cast<std::size_t>(k)];
      if (p == q)
      {
        entry += envelope.x0;
      }
      conv(p - grid.pmin(), q - grid.pmin()) = entry;
    }
  }
  return conv;
}

DenseSystem assemble(const SpectralGrid &grid, const InterfaceModel &model,
                     const Envelope &envelope, double delta)
{
  const std::size_t n = grid.size();
  const auto ni = static_cast<Eigen::Index>(n);
  DenseSystem sys;
  sys.modes = n;
  sys.matrix = Eigen::MatrixXcd::Zero(2 * ni, 2 * ni);
  sys.rhs = Eigen::VectorXcd::Zero(2 * ni);

  Eigen::VectorXcd g(ni), j(ni), symbol(ni);
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    const auto i = p - grid.pmin();
    g(i) = -I * grid.gamma_u(p);
    j(i) = -I * grid.gamma_w(p);
    symbol(i) = model.sigma.symbol(grid.alpha(p));
  }

  const Eigen::MatrixXcd conv = envelope_convolution(grid, envelope, delta);
  auto uu = sys.matrix.topLeftCorner(ni, ni);
  auto uw = sys.matrix.topRightCorner(ni, ni);
  auto wu = sys.matrix.bottomLeftCorner(ni, ni);
  auto ww = sys.matrix.bottomRightCorner(ni, ni);

  uu.setIdentity();
  if (model.polarization == Polarization::TM)
  {
    // -I + diag(A) C diag(tau_w J): A multiplies from the left of the envelope product.
    const Eigen::VectorXcd a = symbol / (I * model.k0);
    uw = a.asDiagonal() * conv * (model.tau_w * j).asDiagonal();
    uw.diagonal().array() -= 1.0;
    wu.diagonal() = model.tau_u * g;
    ww.diagonal() = model.tau_w * j;
  }
  else
  {
    const Eigen::VectorXcd b = (I * model.k0) * symbol;
    uw.diagonal().setConstant(-1.0);
    wu.diagonal() = g;
    ww = -(b.asDiagonal() * conv);
    ww.diagonal() += j;
  }

  auto [xi, rhs_w] = incident_rhs(grid, model);
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    sys.rhs(static_cast<Eigen::Index>(sys.u_index(p))) = xi[p];
    sys.rhs(static_cast<Eigen::Index>(sys.w_index(p))) = rhs_w[p];
  }
  return sys;
}

CollocationSolution solve(const DenseSystem &system)
{
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system.matrix);
  const double rcond = lu.rcond();
  CollocationSolution out;
  out.condition_estimate = rcond > 0.0 ? 1.0 / rcond : INFINITY;
  if (!(out.condition_estimate < collocation_max_condition))
  {
    throw NumericalError("collocation matrix is numerically singular (condition estimate " +
                         std::to_string(out.condition_estimate) +
                         "); check for resonance or degenerate parameters");
  }
  Eigen::VectorXcd x = lu.solve(system.rhs);
  // One step of iterative refinement.
  const Eigen::VectorXcd res = system.rhs - system.matrix * x;
  x += lu.solve(res);

  const double bnorm = system.rhs.norm();
  out.residual = (system.matrix * x - system.rhs).norm() / (bnorm > 0.0 ? bnorm : 1.0);
  if (!x.allFinite())
  {
    throw NumericalError("collocation solve produced non-finite values");
  }

  const std::size_t n = system.modes;
  out.u = SurfaceField(n);
  out.w = SurfaceField(n);
  const int pmin = -static_cast<int>(n / 2);
  for (int p = pmin; p < -pmin; ++p)
  {
    out.u[p] = x(static_cast<Eigen::Index>(system.u_index(p)));
    out.w[p] = x(static_cast<Eigen::Index>(system.w_index(p)));
  }
  return out;
}

}  // namespace ghope
