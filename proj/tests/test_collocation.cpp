// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "ghope/collocation.hpp"
#include "ghope/error.hpp"
#include "ghope/hope.hpp"

using namespace ghope;

namespace
{

GrapheneParams graphene(bool nonlocal)
{
  GrapheneParams p;
  p.fermi_level = 0.4 * units::eV;
  p.relaxation = 3.7 * units::meV;
  p.fermi_velocity = 1e6;
  p.lifetime = 9e-14;
  p.nonlocal = nonlocal;
  return p;
}

}  // namespace

TEST_CASE("convolution matrix reproduces the pointwise product")
{
  const auto cfg = make_physical_config(3.0, 4.0, 8e-6, 0.0, 3e12, Polarization::TM);
  const SpectralGrid grid(cfg, 32);
  const auto env = sample_envelope(cfg.d, 1.0, 0.5, 32);
  const auto c = envelope_convolution(grid, env, 0.7);
  std::vector<double> x(32);
  for (std::size_t j = 0; j < 32; ++j)
  {
    x[j] = env.value(j, 0.7);
  }
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  SurfaceField f(32);
  Eigen::VectorXcd fv(32);
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    f[p] = {g(rng), g(rng)};
    fv(p - grid.pmin()) = f[p];
  }
  const auto prod = pointwise_multiply(grid, x, f);
  const Eigen::VectorXcd cv = c * fv;
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    CHECK(std::abs(cv(p - grid.pmin()) - prod[p]) < 1e-13 * f.norm());
  }
}

TEST_CASE("dense system matches the matrix-free operator")
{
  for (auto pol : {Polarization::TE, Polarization::TM})
  {
    const auto cfg = make_physical_config(3.0, 4.0, 4e-6, 5.0 * units::deg, 5e12, pol);
    const SpectralGrid grid(cfg, 32);
    const auto model = InterfaceModel::from(cfg, sigma_pair(graphene(true), cfg.f), 1.0);
    const auto env = sample_envelope(cfg.d, 1.0, 0.5, 32);
    const double delta = 0.8;
    const auto sys = assemble(grid, model, env, delta);
    REQUIRE(sys.matrix.rows() == 64);

    std::mt19937_64 rng(6);
    std::normal_distribution<double> g;
    SurfaceField u(32), w(32);
    Eigen::VectorXcd x(64);
    for (int p = grid.pmin(); p <= grid.pmax(); ++p)
    {
      u[p] = {g(rng), g(rng)};
      w[p] = {g(rng), g(rng)};
      x(static_cast<Eigen::Index>(sys.u_index(p))) = u[p];
      x(static_cast<Eigen::Index>(sys.w_index(p))) = w[p];
    }
    const Eigen::VectorXcd y = sys.matrix * x;
    const auto [q, r] = apply_full_operator(grid, model, env, delta, u, w);
    double err = 0.0, ref = 0.0;
    for (int p = grid.pmin(); p <= grid.pmax(); ++p)
    {
      err += std::norm(y(static_cast<Eigen::Index>(sys.u_index(p))) - q[p]) +
             std::norm(y(static_cast<Eigen::Index>(sys.w_index(p))) - r[p]);
      ref += std::norm(q[p]) + std::norm(r[p]);
    }
    CHECK(std::sqrt(err / ref) < 1e-12);

    const auto [q0, r0] = incident_rhs(grid, model);
    for (int p = grid.pmin(); p <= grid.pmax(); ++p)
    {
      CHECK(sys.rhs(static_cast<Eigen::Index>(sys.u_index(p))) == q0[p]);
      CHECK(sys.rhs(static_cast<Eigen::Index>(sys.w_index(p))) == r0[p]);
    }
  }
}

TEST_CASE("collocation agrees with HOPE Taylor summation at small delta")
{
  for (auto pol : {Polarization::TE, Polarization::TM})
  {
    const auto cfg = make_physical_config(3.0, 4.0, 8e-6, 0.0, 3e12, pol);
    const SpectralGrid grid(cfg, 64);
    const auto model = InterfaceModel::from(cfg, sigma_pair(graphene(false), cfg.f), 1.0);
    const auto env = sample_envelope(cfg.d, 1.0, 0.5, 64);
    const auto col = solve(assemble(grid, model, env, 0.1));
    CHECK(col.residual < 1e-12);
    CHECK(col.condition_estimate >= 1.0);
    const auto hope = taylor_sum(hope_recursion(grid, model, env, 16), 0.1);
    CHECK((col.u - hope.u).norm() + (col.w - hope.w).norm() <
          1e-10 * (col.u.norm() + col.w.norm()));
  }
}

TEST_CASE("singular dense system is reported")
{
  DenseSystem sys;
  sys.modes = 2;
  sys.matrix = Eigen::MatrixXcd::Zero(4, 4);
  sys.matrix(0, 0) = 1.0;
  sys.rhs = Eigen::VectorXcd::Ones(4);
  CHECK_THROWS_AS(solve(sys), NumericalError);
}
