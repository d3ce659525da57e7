#pragma once

#include <Eigen/Core>
#include <vector>

#include "spheroconal/polyalg.hpp"
#include "spheroconal/species.hpp"

namespace spheroconal {

/// One polynomial solution Λ(χ) = A(χ) Σ āₛ sn²ˢ(χ) of the Lamé equation
/// −Λ'' + ℓ(ℓ+1)k²sn²(χ)Λ = hΛ, normalized so that ā₀ = 1.
struct LamePolynomial {
  int ell = 0;
  Species species;
  Side side = Side::first;
  /// Total node count on this coordinate: node_base(species, side) + 2·rank.
  int n = 0;
  double h = 0.0;
  SnPoly poly;
};

/// Number of sn² coefficients for (ℓ, species): (ℓ − #factors)/2 + 1, or 0 when the
/// prefactor alone already exceeds ℓ. Throws WrongKind if the factor parity differs from ℓ's.
int matrix_size(int ell, Species species);

/// Tridiagonal matrix M with M·a = h·a, generated by applying −d²/dχ² + ℓ(ℓ+1)k²sn²
/// to each basis element A(χ)sn²ˢ(χ). Column s holds the image of sn²ˢ.
Eigen::MatrixXd build_matrix(int ell, Species species, double ksq);

/// Real, simple eigenvalues of a tridiagonal matrix: sign changes of the characteristic
/// polynomial are located on the Gershgorin interval and refined by bisection.
/// Returned in increasing order. Throws DegenerateEigenvalues if roots cannot be isolated.
Eigen::VectorXd tridiagonal_eigenvalues_bisection(const Eigen::MatrixXd& tridiagonal);

/// All Lamé polynomials of (ℓ, species) at parameter ksq, in increasing h.
/// Throws DegenerateEigenvalues if two eigenvalues are closer than 1e-10.
std::vector<LamePolynomial> solve(int ell, Species species, double ksq,
                                  Side side = Side::first);

/// Max over `samples` points of one period of |−Λ'' + ℓ(ℓ+1)k²sn²Λ − hΛ|, relative to
/// the largest magnitude of the individual terms.
double ode_residual(const LamePolynomial& lame, int samples = 50);

/// Coefficient rows āₛ(hₙ) of a full solution set, one row per state.
Eigen::MatrixXd coefficient_matrix(const std::vector<LamePolynomial>& states);

}  // namespace spheroconal
