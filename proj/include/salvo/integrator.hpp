#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace salvo {

/// Classical fourth-order Runge-Kutta over a flat state vector. The slope and
/// work buffers are members so repeated steps do not allocate.
///
/// Deriv is callable as deriv(double t, std::span<const double> y,
/// std::span<double> dydt).
class Rk4Stepper {
 public:
  explicit Rk4Stepper(std::size_t n) : k1_(n), k2_(n), k3_(n), k4_(n), w_(n) {}

  std::size_t size() const noexcept { return w_.size(); }

  template <typename Deriv>
  void step(Deriv&& deriv, double t, std::span<double> y, double h) {
    const std::size_t n = y.size();
    deriv(t, std::span<const double>(y), std::span<double>(k1_));
    for (std::size_t i = 0; i < n; ++i) w_[i] = y[i] + 0.5 * h * k1_[i];
    deriv(t + 0.5 * h, std::span<const double>(w_), std::span<double>(k2_));
    for (std::size_t i = 0; i < n; ++i) w_[i] = y[i] + 0.5 * h * k2_[i];
    deriv(t + 0.5 * h, std::span<const double>(w_), std::span<double>(k3_));
    for (std::size_t i = 0; i < n; ++i) w_[i] = y[i] + h * k3_[i];
    deriv(t + h, std::span<const double>(w_), std::span<double>(k4_));
    for (std::size_t i = 0; i < n; ++i)
      y[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  std::vector<double> k1_, k2_, k3_, k4_, w_;
};

}  // namespace salvo
