// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ghope/spectral.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "ghope/error.hpp"

namespace ghope
{

namespace
{

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex &planner_mutex()
{
  static std::mutex m;
  return m;
}

// Map signed mode index p to its FFT bin.
std::size_t bin(int p, std::size_t n)
{
  const auto ni = static_cast<long>(n);
  return static_cast<std::size_t>(((p % ni) + ni) % ni);
}

}  // namespace

//
// SurfaceField
//

SurfaceField SurfaceField::mode(std::size_t n, int p, complex value)
{
  SurfaceField f(n);
  f[p] = value;
  return f;
}

SurfaceField &SurfaceField::operator+=(const SurfaceField &other)
{
  if (other.size() != size())
  {
    throw ArgumentError("SurfaceField: size mismatch in addition");
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
  {
    coeffs_[i] += other.coeffs_[i];
  }
  return *this;
}

SurfaceField &SurfaceField::operator-=(const SurfaceField &other)
{
  if (other.size() != size())
  {
    throw ArgumentError("SurfaceField: size mismatch in subtraction");
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
  {
    coeffs_[i] -= other.coeffs_[i];
  }
  return *this;
}

SurfaceField &SurfaceField::operator*=(complex scale)
{
  for (auto &c : coeffs_)
  {
    c *= scale;
  }
  return *this;
}

double SurfaceField::norm() const
{
  double s = 0.0;
  for (const auto &c : coeffs_)
  {
    s += std::norm(c);
  }
  return std::sqrt(s);
}

SurfaceField operator+(SurfaceField a, const SurfaceField &b)
{
  return a += b;
}

SurfaceField operator-(SurfaceField a, const SurfaceField &b)
{
  return a -= b;
}

SurfaceField operator*(complex s, SurfaceField a)
{
  return a *= s;
}

//
// FftPlan
//

FftPlan::FftPlan(std::size_t n) : n_(n)
{
  std::vector<complex> scratch(n);
  auto *buf = reinterpret_cast<fftw_complex *>(scratch.data());
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, flags);
  if (!forward_ || !backward_)
  {
    throw NumericalError("FFTW failed to create a plan of length " + std::to_string(n));
  }
}

FftPlan::~FftPlan()
{
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void FftPlan::forward(std::span<const complex> in, std::span<complex> out) const
{
  std::copy(in.begin(), in.end(), out.begin());
  auto *buf = reinterpret_cast<fftw_complex *>(out.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_), buf, buf);
}

void FftPlan::backward(std::span<const complex> in, std::span<complex> out) const
{
  std::copy(in.begin(), in.end(), out.begin());
  auto *buf = reinterpret_cast<fftw_complex *>(out.data());
  fftw_execute_dft(static_cast<fftw_plan>(backward_), buf, buf);
}

std::shared_ptr<const FftPlan> FftPlan::get(std::size_t n)
{
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard lock(cache_mutex);
  auto &slot = cache[n];
  if (!slot)
  {
    slot = std::make_shared<const FftPlan>(n);
  }
  return slot;
}

//
// SpectralGrid
//

complex vertical_wavenumber(double k, double a)
{
  // (k - |a|)(k + |a|) keeps relative accuracy near the Rayleigh-Wood point.
  const double aa = std::abs(a);
  const double disc = (k - aa) * (k + aa);
  if (disc >= 0.0)
  {
    return {std::sqrt(disc), 0.0};
  }
  return {0.0, std::sqrt(-disc)};
}

std::size_t SpectralGrid::minimum_size(const PhysicalConfig &config)
{
  const double kmax = std::max(config.ku, config.kw);
  const double scale = config.d / (2.0 * std::numbers::pi);
  const auto lo = static_cast<long>(std::ceil((-kmax - config.alpha) * scale));
  const auto hi = static_cast<long>(std::floor((kmax - config.alpha) * scale));
  std::size_t n = 8;
  while (-static_cast<long>(n / 2) > lo || static_cast<long>(n / 2) - 1 < hi)
  {
    n *= 2;
  }
  return n;
}

SpectralGrid::SpectralGrid(const PhysicalConfig &config, std::size_t n) : config_(config), n_(n)
{
  if (n < 8 || !std::has_single_bit(n))
  {
    throw ArgumentError("SpectralGrid: N_x must be a power of two >= 8, got " +
                        std::to_string(n));
  }
  const std::size_t need = minimum_size(config);
  if (n < need)
  {
    throw ArgumentError("SpectralGrid: N_x = " + std::to_string(n) +
                        " cannot hold all propagating modes; need N_x >= " +
                        std::to_string(need));
  }

  const double kappa = 2.0 * std::numbers::pi / config.d;
  alpha_.resize(n);
  gamma_u_.resize(n);
  gamma_w_.resize(n);
  prop_u_flag_.assign(n, false);
  prop_w_flag_.assign(n, false);
  x_.resize(n);
  for (int p = pmin(); p <= pmax(); ++p)
  {
    const auto i = index(p);
    const double a = config.alpha + kappa * p;
    alpha_[i] = a;
    gamma_u_[i] = vertical_wavenumber(config.ku, a);
    gamma_w_[i] = vertical_wavenumber(config.kw, a);
    if (a * a <= config.ku * config.ku)
    {
      prop_u_flag_[i] = true;
      prop_u_.push_back(p);
    }
    if (a * a <= config.kw * config.kw)
    {
      prop_w_flag_[i] = true;
      prop_w_.push_back(p);
    }
  }
  for (std::size_t j = 0; j < n; ++j)
  {
    x_[j] = config.d * static_cast<double>(j) / static_cast<double>(n);
  }
  fft_ = FftPlan::get(n);
}

void SpectralGrid::check_compatible(const SurfaceField &field, const char *where) const
{
  if (field.size() != n_)
  {
    throw ArgumentError(std::string(where) + ": field has " + std::to_string(field.size()) +
                        " modes, grid has " + std::to_string(n_));
  }
}

std::vector<complex> SpectralGrid::to_physical(const SurfaceField &field) const
{
  check_compatible(field, "to_physical");
  std::vector<complex> bins(n_), out(n_);
  for (int p = pmin(); p <= pmax(); ++p)
  {
    bins[bin(p, n_)] = field[p];
  }
  fft_->backward(bins, out);
  for (std::size_t j = 0; j < n_; ++j)
  {
    out[j] *= std::polar(1.0, config_.alpha * x_[j]);
  }
  return out;
}

SurfaceField SpectralGrid::from_physical(std::span<const complex> samples) const
{
  if (samples.size() != n_)
  {
    throw ArgumentError("from_physical: sample count does not match grid");
  }
  std::vector<complex> periodic(n_), bins(n_);
  for (std::size_t j = 0; j < n_; ++j)
  {
    periodic[j] = samples[j] * std::polar(1.0, -config_.alpha * x_[j]);
  }
  fft_->forward(periodic, bins);
  SurfaceField out(n_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (int p = pmin(); p <= pmax(); ++p)
  {
    out[p] = bins[bin(p, n_)] * scale;
  }
  return out;
}

//
// Fourier multipliers
//

SurfaceField dno_upper(const SpectralGrid &grid, const SurfaceField &u)
{
  grid.check_compatible(u, "dno_upper");
  SurfaceField out(u.size());
  const complex mi(0.0, -1.0);
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    out[p] = mi * grid.gamma_u(p) * u[p];
  }
  return out;
}

SurfaceField dno_lower(const SpectralGrid &grid, const SurfaceField &w)
{
  grid.check_compatible(w, "dno_lower");
  SurfaceField out(w.size());
  const complex mi(0.0, -1.0);
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    out[p] = mi * grid.gamma_w(p) * w[p];
  }
  return out;
}

SurfaceField apply_A(const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                     const SurfaceField &field)
{
  grid.check_compatible(field, "apply_A");
  SurfaceField out(field.size());
  const complex scale = 1.0 / complex(0.0, k0);
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    out[p] = scale * sigma.symbol(grid.alpha(p)) * field[p];
  }
  return out;
}

SurfaceField apply_B(const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                     const SurfaceField &field)
{
  grid.check_compatible(field, "apply_B");
  SurfaceField out(field.size());
  const complex scale(0.0, k0);
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    out[p] = scale * sigma.symbol(grid.alpha(p)) * field[p];
  }
  return out;
}

SurfaceField pointwise_multiply(const SpectralGrid &grid, std::span<const double> samples,
                                const SurfaceField &field)
{
  grid.check_compatible(field, "pointwise_multiply");
  const std::size_t n = grid.size();
  std::size_t m = 0;
  if (samples.size() == n)
  {
    m = n;
  }
  else if (samples.size() == 2 * n)
  {
    m = 2 * n;
  }
  else
  {
    throw ArgumentError("pointwise_multiply: expected " + std::to_string(n) + " or " +
                        std::to_string(2 * n) + " samples, got " +
                        std::to_string(samples.size()));
  }

  // The Bloch phase cancels in a product with a periodic function, so work on the
  // periodic part only.
  auto plan = m == n ? nullptr : FftPlan::get(m);
  const FftPlan &fft = m == n ? grid.fft() : *plan;
  std::vector<complex> bins(m), phys(m);
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    bins[bin(p, m)] = field[p];
  }
  fft.backward(bins, phys);
  for (std::size_t j = 0; j < m; ++j)
  {
    phys[j] *= samples[j];
  }
  fft.forward(phys, bins);
  SurfaceField out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (int p = grid.pmin(); p <= grid.pmax(); ++p)
  {
    out[p] = bins[bin(p, m)] * scale;
  }
  return out;
}

}  // namespace ghope
