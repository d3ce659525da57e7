#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <vector>

#include "spheroconal/asymmetry.hpp"
#include "spheroconal/lame.hpp"
#include "spheroconal/polyalg.hpp"
#include "spheroconal/species.hpp"

namespace spheroconal {

/// (ℓ, AB, n₁, n₂): identifies a spheroconal harmonic within a basis.
struct StateId {
  int ell = 0;
  HarmonicLabel label;
  int n1 = 0;
  int n2 = 0;

  std::string to_string() const;
  friend bool operator==(const StateId&, const StateId&) = default;
};

/// Ψ(χ₁, χ₂) = Λᴬ_{n₁}(χ₁) Λᴮ_{n₂}(χ₂), a common eigenfunction of L² and H*.
struct SpheroconalHarmonic {
  int ell = 0;
  HarmonicLabel label;
  int n1 = 0;
  int n2 = 0;
  double h1 = 0.0;
  double h2 = 0.0;
  /// Dimensionless energy 2E* = e₁h₁ + e₃h₂.
  double estar2 = 0.0;
  LamePolynomial first;
  LamePolynomial second;
  BiSnPoly wavefunction;

  StateId id() const { return {ell, label, n1, n2}; }
  std::array<int, 3> parities() const {
    return {label.parity(Axis::x), label.parity(Axis::y), label.parity(Axis::z)};
  }
};

inline constexpr double kMatchTolerance = 1e-9;

/// States of one species pair, ordered by increasing n₁ (equivalently h₁).
/// Rank r of A pairs with rank N−1−r of B. Throws MatchFailure on a broken h-sum.
std::vector<SpheroconalHarmonic> build_species_states(int ell, HarmonicLabel label,
                                                      const AsymmetryConfig& config);

/// All 2ℓ+1 harmonics of order ℓ, sorted by 2E* (ties by tag order 1, x, …, xyz).
std::vector<SpheroconalHarmonic> build_basis(int ell, const AsymmetryConfig& config);

/// E = Q ℓ(ℓ+1)/2 + P·2E*/2 with ħ = 1. Throws MissingScale for configs without Q, P.
double total_energy(const SpheroconalHarmonic& state, const AsymmetryConfig& config);

double evaluate(const SpheroconalHarmonic& state, double chi1, double chi2);

/// Signed sn, cn, dn of both angles for a point on the unit sphere.
struct SpheroconalPoint {
  JacobiTriple<double> first;
  JacobiTriple<double> second;
};

/// (x, y, z)/r = (dn₁sn₂, cn₁cn₂, sn₁dn₂).
Eigen::Vector3d direction(const SpheroconalPoint& point);
Eigen::Vector3d direction(double chi1, double chi2, double k1sq, double k2sq);

/// Inverts the transformation for a unit vector: sn²(χ₁) is found by bisection in one
/// octant and signs are restored by parity. Throws InversionFailure if it does not converge.
SpheroconalPoint spheroconal_from_direction(const Eigen::Vector3d& unit, double k1sq,
                                            double k2sq);

double evaluate_xyz(const SpheroconalHarmonic& state, const Eigen::Vector3d& unit);

}  // namespace spheroconal
