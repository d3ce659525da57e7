#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "spheroconal/asymmetry.hpp"
#include "spheroconal/error.hpp"
#include "spheroconal/species.hpp"

namespace testing {

template <typename F>
bool throws_code(F&& fn, spheroconal::ErrorCode code) {
  try {
    fn();
  } catch (const spheroconal::Error& e) {
    return e.code() == code;
  }
  return false;
}

// e₁ with the requested k₁², by bisection (k₁² falls from 1 to 0 as e₁ runs over (1/2, 1)).
inline spheroconal::AsymmetryConfig config_with_k1sq(double k1sq) {
  double lo = 0.5 + 1e-9;
  double hi = 1.0 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (spheroconal::from_e1(mid).k1sq > k1sq) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return spheroconal::from_e1(0.5 * (lo + hi));
}

// Lᵢ/i of a function on the unit sphere, from cartesian derivatives of its degree-0
// extension: Lᵢ/i = −(xⱼ∂ₖ − xₖ∂ⱼ).
inline double cartesian_l_over_i(spheroconal::Axis axis,
                                 const std::function<double(const Eigen::Vector3d&)>& f,
                                 const Eigen::Vector3d& point, double h = 1e-4) {
  auto extended = [&](const Eigen::Vector3d& p) { return f(p.normalized()); };
  auto partial = [&](int k) {
    Eigen::Vector3d a = point;
    Eigen::Vector3d b = point;
    a[k] += h;
    b[k] -= h;
    Eigen::Vector3d a2 = point;
    Eigen::Vector3d b2 = point;
    a2[k] += 2 * h;
    b2[k] -= 2 * h;
    return (-extended(a2) + 8 * extended(a) - 8 * extended(b) + extended(b2)) / (12 * h);
  };
  const int i = static_cast<int>(axis);
  const int j = (i + 1) % 3;
  const int k = (i + 2) % 3;
  return -(point[j] * partial(k) - point[k] * partial(j));
}

}  // namespace testing
