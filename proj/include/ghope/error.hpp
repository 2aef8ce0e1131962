// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_ERROR_HPP
#define GHOPE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ghope
{

// Base class for all library errors. The C API maps each subclass onto a status code.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value; carries the offending key.
class ConfigError : public Error
{
public:
  ConfigError(std::string key, const std::string &what)
    : Error("config key '" + key + "': " + what), key_(std::move(key))
  {
  }
  const std::string &key() const { return key_; }

private:
  std::string key_;
};

// Invalid argument to a numerical routine (size mismatch, bad range, ...).
class ArgumentError : public Error
{
public:
  using Error::Error;
};

// The per-mode operator is (numerically) singular at some wavenumber index.
class ResonanceError : public Error
{
public:
  ResonanceError(int mode, double abs_det, const std::string &what)
    : Error(what), mode_(mode), abs_det_(abs_det)
  {
  }
  int mode() const { return mode_; }
  double abs_determinant() const { return abs_det_; }

private:
  int mode_;
  double abs_det_;
};

// Non-finite values, singular dense systems and similar numerical breakdowns. When the
// failure happens inside the perturbation recursion, order() names the offending order.
class NumericalError : public Error
{
public:
  explicit NumericalError(const std::string &what, int order = -1) : Error(what), order_(order)
  {
  }
  int order() const { return order_; }

private:
  int order_;
};

}  // namespace ghope

#endif  // GHOPE_ERROR_HPP
