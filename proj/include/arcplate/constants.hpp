#pragma once

#include <numbers>

namespace arcplate {

// CODATA 2018 exact/recommended values, SI.
struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;  // J s
  static constexpr double c = 299792458.0;         // m/s
  static constexpr double pi = std::numbers::pi;
  static constexpr double hbar_c = hbar * c;       // J m
};

}  // namespace arcplate
