// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_SPECTRAL_HPP
#define GHOPE_SPECTRAL_HPP

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "ghope/conductivity.hpp"
#include "ghope/units.hpp"

namespace ghope
{

//
// Truncated quasiperiodic Fourier representation of an interface trace:
//   U(x) = sum_{p=-N/2}^{N/2-1} U_p exp(i alpha_p x).
// Coefficients are addressed by the signed mode index p.
//
class SurfaceField
{
public:
  SurfaceField() = default;
  explicit SurfaceField(std::size_t n) : coeffs_(n, complex{0.0, 0.0}) {}
  explicit SurfaceField(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {}

  // Single mode value * exp(i alpha_p x).
  static SurfaceField mode(std::size_t n, int p, complex value);

  std::size_t size() const { return coeffs_.size(); }
  int pmin() const { return -static_cast<int>(coeffs_.size() / 2); }
  int pmax() const { return static_cast<int>(coeffs_.size() / 2) - 1; }

  complex &operator[](int p) { return coeffs_[static_cast<std::size_t>(p - pmin())]; }
  const complex &operator[](int p) const { return coeffs_[static_cast<std::size_t>(p - pmin())]; }

  std::span<complex> coeffs() { return coeffs_; }
  std::span<const complex> coeffs() const { return coeffs_; }

  SurfaceField &operator+=(const SurfaceField &other);
  SurfaceField &operator-=(const SurfaceField &other);
  SurfaceField &operator*=(complex scale);

  // Discrete L2 norm sqrt(sum |U_p|^2).
  double norm() const;

private:
  std::vector<complex> coeffs_;
};

SurfaceField operator+(SurfaceField a, const SurfaceField &b);
SurfaceField operator-(SurfaceField a, const SurfaceField &b);
SurfaceField operator*(complex s, SurfaceField a);

class FftPlan;

//
// Lateral wavenumber lattice alpha_p = alpha + (2 pi/d) p and vertical wavenumbers
// gamma_{m,p} on the truncated window p = -N/2 .. N/2-1, plus equispaced gridpoints.
//
class SpectralGrid
{
public:
  SpectralGrid(const PhysicalConfig &config, std::size_t n);

  const PhysicalConfig &config() const { return config_; }
  std::size_t size() const { return n_; }
  int pmin() const { return -static_cast<int>(n_ / 2); }
  int pmax() const { return static_cast<int>(n_ / 2) - 1; }

  double alpha(int p) const { return alpha_[index(p)]; }
  complex gamma_u(int p) const { return gamma_u_[index(p)]; }
  complex gamma_w(int p) const { return gamma_w_[index(p)]; }
  double x(std::size_t j) const { return x_[j]; }

  bool propagating_u(int p) const { return prop_u_flag_[index(p)]; }
  bool propagating_w(int p) const { return prop_w_flag_[index(p)]; }
  const std::vector<int> &prop_u() const { return prop_u_; }
  const std::vector<int> &prop_w() const { return prop_w_; }

  // Smallest power-of-two window holding every propagating mode of both layers.
  static std::size_t minimum_size(const PhysicalConfig &config);

  // Quasiperiodic samples U(x_j), including the Bloch phase exp(i alpha x_j).
  std::vector<complex> to_physical(const SurfaceField &field) const;
  SurfaceField from_physical(std::span<const complex> samples) const;

  void check_compatible(const SurfaceField &field, const char *where) const;

  const FftPlan &fft() const { return *fft_; }

private:
  std::size_t index(int p) const { return static_cast<std::size_t>(p + static_cast<int>(n_ / 2)); }

  PhysicalConfig config_;
  std::size_t n_;
  std::vector<double> alpha_, x_;
  std::vector<complex> gamma_u_, gamma_w_;
  std::vector<int> prop_u_, prop_w_;
  std::vector<bool> prop_u_flag_, prop_w_flag_;
  std::shared_ptr<const FftPlan> fft_;
};

// Vertical wavenumber with the outgoing branch: sqrt(k^2 - a^2) >= 0 when a^2 <= k^2,
// otherwise i sqrt(a^2 - k^2).
complex vertical_wavenumber(double k, double a);

// Flat-interface Dirichlet-Neumann operators, -i gamma_{u,p} and -i gamma_{w,p}.
SurfaceField dno_upper(const SpectralGrid &grid, const SurfaceField &u);
SurfaceField dno_lower(const SpectralGrid &grid, const SurfaceField &w);

// TM boundary coefficient: (1/(i k0)) (sigma_loc + sigma_nloc alpha_p^2) per mode.
SurfaceField apply_A(const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                     const SurfaceField &field);

// TE boundary coefficient: (i k0) (sigma_loc + sigma_nloc alpha_p^2) per mode.
SurfaceField apply_B(const SpectralGrid &grid, const SigmaPair &sigma, double k0,
                     const SurfaceField &field);

// Product with a real periodic function sampled at the gridpoints. With N samples the
// product is formed on the bare grid (aliased, identical to a circular convolution of
// coefficients). With 2N samples on the refined grid x_j = (d/2N) j the field is
// zero-padded first and the product truncated back to N modes.
SurfaceField pointwise_multiply(const SpectralGrid &grid, std::span<const double> samples,
                                const SurfaceField &field);

//
// Thin RAII wrapper over FFTW plans for one transform length. Plans are created with
// FFTW_ESTIMATE so the transform (and thus every result) is deterministic across runs,
// and with FFTW_UNALIGNED so they may execute on any buffer from any thread.
//
class FftPlan
{
public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan &) = delete;
  FftPlan &operator=(const FftPlan &) = delete;

  std::size_t size() const { return n_; }

  // out_k = sum_j in_j exp(-2 pi i jk/n); unnormalized.
  void forward(std::span<const complex> in, std::span<complex> out) const;
  // out_j = sum_k in_k exp(+2 pi i jk/n); unnormalized.
  void backward(std::span<const complex> in, std::span<complex> out) const;

  // Shared, cached plan for length n.
  static std::shared_ptr<const FftPlan> get(std::size_t n);

private:
  std::size_t n_;
  void *forward_ = nullptr;
  void *backward_ = nullptr;
};

}  // namespace ghope

#endif  // GHOPE_SPECTRAL_HPP
