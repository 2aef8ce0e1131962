// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ghope/hope.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "ghope/error.hpp"

namespace ghope
{

namespace
{

constexpr complex I{0.0, 1.0};

bool all_finite(const SurfaceField &f)
{
  for (const auto &c : f.coeffs())
  {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    {
      return false;
    }
  }
  return true;
}

// X * f for X = X0 + delta X1.
SurfaceField envelope_product(const SpectralGrid &grid, const Envelope &envelope, double delta,
                              const SurfaceField &f)
{
  SurfaceField out = complex(envelope.x0) * f;
  if (delta != 0.0)
  {
    out += complex(delta) * pointwise_multiply(grid, envelope.x1, f);
  }
  return out;
}

complex horner(std::span<const complex> c, double x)
{
  complex acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it)
  {
    acc = acc * x + *it;
  }
  return acc;
}

}  // namespace

std::pair<SurfaceField, SurfaceField> incident_traces(const SpectralGrid &grid)
{
  const std::size_t n = grid.size();
  return {SurfaceField::mode(n, 0, -1.0),
          SurfaceField::mode(n, 0, I * grid.config().gamma_u)};
}

std::pair<SurfaceField, SurfaceField> incident_rhs(const SpectralGrid &grid,
                                                   const InterfaceModel &model)
{
  auto [xi, nu] = incident_traces(grid);
  nu *= -model.tau_u;
  return {std::move(xi), std::move(nu)};
}

std::pair<SurfaceField, SurfaceField> order_rhs(const SpectralGrid &grid,
                                                const InterfaceModel &model,
                                                const Envelope &envelope,
                                                const SurfaceField &w_prev)
{
  const std::size_t n = grid.size();
  if (model.polarization == Polarization::TM)
  {
    SurfaceField jw = dno_lower(grid, w_prev);
    jw *= model.tau_w;
    SurfaceField q = apply_A(grid, model.sigma, model.k0, pointwise_multiply(grid, envelope.x1, jw));
    q *= -1.0;
    return {std::move(q), SurfaceField(n)};
  }
  SurfaceField r = apply_B(grid, model.sigma, model.k0, pointwise_multiply(grid, envelope.x1, w_prev));
  return {SurfaceField(n), std::move(r)};
}

std::pair<SurfaceField, SurfaceField> apply_order0(const SpectralGrid &grid,
                                                   const InterfaceModel &model,
                                                   const SurfaceField &u, const SurfaceField &w)
{
  grid.check_compatible(u, "apply_order0");
  grid.check_compatible(w, "apply_order0");
  SurfaceField q(grid.size()), r(grid.size());
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    auto [qp, rp] = apply_mode(p, grid, model, u[p], w[p]);
    q[p] = qp;
    r[p] = rp;
  }
  return {std::move(q), std::move(r)};
}

std::pair<SurfaceField, SurfaceField> apply_full_operator(const SpectralGrid &grid,
                                                          const InterfaceModel &model,
                                                          const Envelope &envelope,
                                                          double delta, const SurfaceField &u,
                                                          const SurfaceField &w)
{
  grid.check_compatible(u, "apply_full_operator");
  grid.check_compatible(w, "apply_full_operator");
  SurfaceField gu = dno_upper(grid, u);
  SurfaceField jw = dno_lower(grid, w);
  if (model.polarization == Polarization::TM)
  {
    SurfaceField twjw = complex(model.tau_w) * jw;
    SurfaceField q = u - w + apply_A(grid, model.sigma, model.k0,
                                     envelope_product(grid, envelope, delta, twjw));
    SurfaceField r = complex(model.tau_u) * gu + twjw;
    return {std::move(q), std::move(r)};
  }
  SurfaceField q = u - w;
  SurfaceField r = gu + jw - apply_B(grid, model.sigma, model.k0,
                                     envelope_product(grid, envelope, delta, w));
  return {std::move(q), std::move(r)};
}

double sobolev_norm(const SurfaceField &field, double s)
{
  if (s < 0.0)
  {
    throw ArgumentError("sobolev_norm: s must be nonnegative");
  }
  double sum = 0.0;
  for (int p = field.pmin(); p <= field.pmax(); ++p)
  {
    const double weight = std::pow(1.0 + static_cast<double>(p) * p, s);
    sum += weight * std::norm(field[p]);
  }
  return std::sqrt(sum);
}

HopeSeries hope_recursion(const SpectralGrid &grid, const InterfaceModel &model,
                          const Envelope &envelope, int max_order, double sobolev_s,
                          double resonance_tol)
{
  if (max_order < 0)
  {
    throw ArgumentError("hope_recursion: L must be nonnegative");
  }
  if (envelope.size() != grid.size() && envelope.size() != 2 * grid.size())
  {
    throw ArgumentError("hope_recursion: envelope sample count does not match grid");
  }

  HopeSeries series;
  series.sobolev_s = sobolev_s;
  series.determinant = determinant(grid, model, resonance_tol);

  auto [q, r] = incident_rhs(grid, model);
  for (int l = 0; l <= max_order; ++l)
  {
    if (l > 0)
    {
      std::tie(q, r) = order_rhs(grid, model, envelope, series.w.back());
    }
    auto [u, w] = solve_order0(grid, model, q, r);
    if (!all_finite(u) || !all_finite(w))
    {
      throw NumericalError("perturbation recursion produced non-finite values at order " +
                               std::to_string(l),
                           l);
    }
    series.norm_u.push_back(sobolev_norm(u, sobolev_s));
    series.norm_w.push_back(sobolev_norm(w, sobolev_s));
    series.u.push_back(std::move(u));
    series.w.push_back(std::move(w));
  }
  return series;
}

SummedFields taylor_sum(const HopeSeries &series, double delta)
{
  const std::size_t n = series.size();
  SummedFields out{SurfaceField(n), SurfaceField(n), 0};
  std::vector<complex> cu(series.u.size()), cw(series.w.size());
  for (int p = out.u.pmin(); p <= out.u.pmax(); ++p)
  {
    for (std::size_t l = 0; l < series.u.size(); ++l)
    {
      cu[l] = series.u[l][p];
      cw[l] = series.w[l][p];
    }
    out.u[p] = horner(cu, delta);
    out.w[p] = horner(cw, delta);
  }
  return out;
}

std::pair<int, int> default_pade_split(int max_order)
{
  if (max_order % 2 == 0)
  {
    return {max_order / 2, max_order / 2};
  }
  return {(max_order + 1) / 2, max_order / 2};
}

PadeValue pade_evaluate(std::span<const complex> coeffs, double delta, int m, int n)
{
  if (m < 0 || n < 0 || static_cast<std::size_t>(m + n) + 1 > coeffs.size())
  {
    throw ArgumentError("pade_evaluate: need M + N + 1 coefficients");
  }
  const int total = m + n;
  auto c = [&](int k) { return k < 0 ? complex{0.0, 0.0} : coeffs[static_cast<std::size_t>(k)]; };
  auto taylor = coeffs.first(static_cast<std::size_t>(total) + 1);

  // Constant (or empty-tail) series: the Taylor polynomial is already exact.
  bool tail_zero = true;
  for (int k = 1; k <= total; ++k)
  {
    tail_zero = tail_zero && c(k) == 0.0;
  }
  if (n == 0 || tail_zero)
  {
    return {horner(taylor, delta), false, 0};
  }

  for (int nd = n; nd >= 1; --nd)
  {
    const int md = total - nd;
    Eigen::MatrixXcd mat(nd, nd);
    Eigen::VectorXcd rhs(nd);
    for (int i = 1; i <= nd; ++i)
    {
      for (int j = 1; j <= nd; ++j)
      {
        mat(i - 1, j - 1) = c(md + i - j);
      }
      rhs(i - 1) = -c(md + i);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(mat);
    const auto diag = lu.matrixLU().diagonal().cwiseAbs();
    const double dmax = diag.maxCoeff();
    if (!(dmax > 0.0) || !(diag.minCoeff() / dmax > pade_singular_tol))
    {
      continue;
    }
    Eigen::VectorXcd b = lu.solve(rhs);
    std::vector<complex> den(static_cast<std::size_t>(nd) + 1), num(static_cast<std::size_t>(md) + 1);
    den[0] = 1.0;
    for (int j = 1; j <= nd; ++j)
    {
      den[static_cast<std::size_t>(j)] = b(j - 1);
    }
    for (int k = 0; k <= md; ++k)
    {
      complex a{0.0, 0.0};
      for (int j = 0; j <= std::min(k, nd); ++j)
      {
        a += den[static_cast<std::size_t>(j)] * c(k - j);
      }
      num[static_cast<std::size_t>(k)] = a;
    }
    const complex value = horner(num, delta) / horner(den, delta);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    {
      continue;
    }
    return {value, false, nd};
  }
  return {horner(taylor, delta), true, 0};
}

SummedFields pade_sum(const HopeSeries &series, double delta, int m, int n,
                      const SpectralGrid *grid, PadeMode mode)
{
  if (m < 0 || n < 0 || m + n > series.max_order())
  {
    throw ArgumentError("pade_sum: require M + N <= L");
  }
  const std::size_t nx = series.size();
  const std::size_t orders = static_cast<std::size_t>(m + n) + 1;
  SummedFields out{SurfaceField(nx), SurfaceField(nx), 0};
  std::vector<complex> cu(orders), cw(orders);

  if (mode == PadeMode::Coefficient)
  {
    for (int p = out.u.pmin(); p <= out.u.pmax(); ++p)
    {
      for (std::size_t l = 0; l < orders; ++l)
      {
        cu[l] = series.u[l][p];
        cw[l] = series.w[l][p];
      }
      const auto pu = pade_evaluate(cu, delta, m, n);
      const auto pw = pade_evaluate(cw, delta, m, n);
      out.u[p] = pu.value;
      out.w[p] = pw.value;
      out.fallback_count += (pu.fallback || pw.fallback) ? 1 : 0;
    }
    return out;
  }

  if (grid == nullptr)
  {
    throw ArgumentError("pade_sum: gridpoint mode requires the spectral grid");
  }
  std::vector<std::vector<complex>> phys_u(orders), phys_w(orders);
  for (std::size_t l = 0; l < orders; ++l)
  {
    phys_u[l] = grid->to_physical(series.u[l]);
    phys_w[l] = grid->to_physical(series.w[l]);
  }
  std::vector<complex> su(nx), sw(nx);
  for (std::size_t j = 0; j < nx; ++j)
  {
    for (std::size_t l = 0; l < orders; ++l)
    {
      cu[l] = phys_u[l][j];
      cw[l] = phys_w[l][j];
    }
    const auto pu = pade_evaluate(cu, delta, m, n);
    const auto pw = pade_evaluate(cw, delta, m, n);
    su[j] = pu.value;
    sw[j] = pw.value;
    out.fallback_count += (pu.fallback || pw.fallback) ? 1 : 0;
  }
  out.u = grid->from_physical(su);
  out.w = grid->from_physical(sw);
  return out;
}

}  // namespace ghope
