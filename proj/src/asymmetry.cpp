#include "spheroconal/asymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spheroconal/error.hpp"

namespace spheroconal {

namespace {

void fill_elliptic_parameters(AsymmetryConfig& config) {
  const double span = config.e1() - config.e3();
  const double k1sq = (config.e2() - config.e3()) / span;
  const double k2sq = (config.e1() - config.e2()) / span;
  if (k1sq < kDegeneracyTolerance || k2sq < kDegeneracyTolerance) {
    std::ostringstream msg;
    msg << "e = (" << config.e1() << ", " << config.e2() << ", " << config.e3()
        << ") has two equal components (k1sq=" << k1sq << ", k2sq=" << k2sq << ")";
    throw Error(ErrorCode::SymmetricTop, msg.str());
  }
  config.k1sq = k1sq;
  config.k2sq = k2sq;
}

}  // namespace

AsymmetryConfig from_moments(double i1, double i2, double i3) {
  if (!(i1 > 0.0) || !(i1 <= i2) || !(i2 <= i3)) {
    std::ostringstream msg;
    msg << "moments must satisfy 0 < i1 <= i2 <= i3, got (" << i1 << ", " << i2 << ", "
        << i3 << ")";
    throw Error(ErrorCode::InvalidOrdering, msg.str());
  }
  const Eigen::Vector3d inv(1.0 / i1, 1.0 / i2, 1.0 / i3);
  const double q = inv.mean();
  const double p = std::sqrt(2.0 / 9.0 *
                             (std::pow(inv[0] - inv[1], 2) + std::pow(inv[0] - inv[2], 2) +
                              std::pow(inv[1] - inv[2], 2)));
  if (p <= kDegeneracyTolerance * q) {
    throw Error(ErrorCode::SphericalTop, "all moments of inertia are equal (P = 0)");
  }

  AsymmetryConfig config;
  config.q = q;
  config.p = p;
  config.e = (inv.array() - q) / p;
  fill_elliptic_parameters(config);
  return config;
}

AsymmetryConfig from_e1(double e1) {
  if (!(e1 > 0.5 && e1 < 1.0)) {
    std::ostringstream msg;
    msg << "e1 must lie in the open interval (1/2, 1), got " << e1;
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  // e2, e3 are the roots of t² + e1 t + (2e1² − 3/2)/2.
  const double root = std::sqrt(std::max(0.0, 3.0 - 3.0 * e1 * e1));
  AsymmetryConfig config;
  config.e = Eigen::Vector3d(e1, 0.5 * (-e1 + root), 0.5 * (-e1 - root));
  fill_elliptic_parameters(config);
  return config;
}

double constraint_residual(const AsymmetryConfig& config) {
  const double sum = config.e.sum();
  const double squares = config.e.squaredNorm() - 1.5;
  const double ks = config.k1sq + config.k2sq - 1.0;
  return std::max({std::abs(sum), std::abs(squares), std::abs(ks)});
}

}  // namespace spheroconal
