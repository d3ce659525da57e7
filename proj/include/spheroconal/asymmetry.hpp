#pragma once

#include <Eigen/Core>
#include <optional>

namespace spheroconal {

/// Dynamic and geometric parameters of an asymmetric rotor.
///
/// The rigid-rotor Hamiltonian is written as H = Q L²/2 + P H*, with
/// H* = (e₁Lx² + e₂Ly² + e₃Lz²)/2. The asymmetry triple e satisfies
/// e₁ ≥ e₂ ≥ e₃, Σeᵢ = 0, Σeᵢ² = 3/2, and fixes the elliptic parameters
/// of the spheroconal coordinates, k₁² + k₂² = 1.
///
/// q and p are only known when the config is built from moments of inertia.
struct AsymmetryConfig {
  std::optional<double> q;
  std::optional<double> p;
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  double k1sq = 0.5;
  double k2sq = 0.5;

  double e1() const { return e[0]; }
  double e2() const { return e[1]; }
  double e3() const { return e[2]; }
  bool has_scale() const { return q.has_value() && p.has_value(); }
};

/// Relative tolerance below which two inverse inertias are considered equal.
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Builds the config from principal moments of inertia, 0 < i1 ≤ i2 ≤ i3.
/// Throws InvalidOrdering, SphericalTop or SymmetricTop.
AsymmetryConfig from_moments(double i1, double i2, double i3);

/// Pure-asymmetry config from the single parameter e₁ ∈ (1/2, 1).
/// Throws OutOfRange (or SymmetricTop when e₁ sits within tolerance of an endpoint).
AsymmetryConfig from_e1(double e1);

/// Largest absolute violation among the constraint invariants.
double constraint_residual(const AsymmetryConfig& config);

}  // namespace spheroconal
