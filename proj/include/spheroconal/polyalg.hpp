#pragma once

#include <Eigen/Core>

#include "spheroconal/elliptic.hpp"
#include "spheroconal/species.hpp"

namespace spheroconal {

/// Polynomials in t = sn²(χ). coeffs[s] multiplies tˢ.
namespace sn2 {

Eigen::VectorXd multiply(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
Eigen::VectorXd add(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
Eigen::VectorXd derivative(const Eigen::VectorXd& a);
double evaluate(const Eigen::VectorXd& a, double t);
/// tˢ, cn² = 1 − t and dn² = 1 − k²t as coefficient vectors.
Eigen::VectorXd square_of(Factor f, double ksq);
/// Drops trailing coefficients whose magnitude is below `threshold`.
Eigen::VectorXd trimmed(const Eigen::VectorXd& a, double threshold);

}  // namespace sn2

/// Relative threshold under which a reduced coefficient counts as zero.
inline constexpr double kZeroThreshold = 1e-13;

/// A(χ) · Σ coeffs[s] sn²ˢ(χ | ksq), with A the species prefactor.
struct SnPoly {
  Species species;
  Eigen::VectorXd coeffs;
  double ksq = 0.0;
};

double evaluate(const SnPoly& p, double chi);
/// Evaluates with already computed (possibly sign-extended) sn, cn, dn values.
double evaluate(const SnPoly& p, const JacobiTriple<double>& values);

/// d/dχ, reduced to the sn² basis; the species toggles every factor.
SnPoly differentiate(const SnPoly& p);
/// Multiplies by sn, cn or dn; squares are reduced via cn² = 1 − sn², dn² = 1 − k²sn².
SnPoly mul_factor(const SnPoly& p, Factor f);

bool is_zero(const SnPoly& p, double scale = 1.0);

/// A(χ₁)B(χ₂) · Σ coeffs(i, j) sn²ⁱ(χ₁|k₁²) sn²ʲ(χ₂|k₂²).
struct BiSnPoly {
  Species first;
  Species second;
  Eigen::MatrixXd coeffs;
  double k1sq = 0.0;
  double k2sq = 0.0;

  /// Largest absolute coefficient (0 for an empty matrix).
  double max_abs() const { return coeffs.size() == 0 ? 0.0 : coeffs.cwiseAbs().maxCoeff(); }
};

double evaluate(const BiSnPoly& p, double chi1, double chi2);
double evaluate(const BiSnPoly& p, const JacobiTriple<double>& first,
                const JacobiTriple<double>& second);

/// Product a(χ₁) b(χ₂) of two single-coordinate polynomials.
BiSnPoly outer(const SnPoly& a, const SnPoly& b);

BiSnPoly differentiate(const BiSnPoly& p, Side side);
BiSnPoly mul_factor(const BiSnPoly& p, Side side, Factor f);
BiSnPoly operator*(double scalar, const BiSnPoly& p);
/// Sum of two terms of the same species pair; a zero term may carry any species.
BiSnPoly operator+(const BiSnPoly& a, const BiSnPoly& b);

bool is_zero(const BiSnPoly& p, double scale = 1.0);

/// The scale-factor polynomial 1 − k₁²sn²(χ₁) − k₂²sn²(χ₂), species (1, 1).
BiSnPoly scale_polynomial(double k1sq, double k2sq);
BiSnPoly multiply_by_scale(const BiSnPoly& p);

struct ScaleQuotient {
  BiSnPoly quotient;
  /// Largest remainder coefficient relative to the largest coefficient of the dividend.
  double relative_remainder = 0.0;
};

/// Exact division by 1 − k₁²sn²(χ₁) − k₂²sn²(χ₂), reporting the remainder.
ScaleQuotient divide_by_scale_checked(const BiSnPoly& p);

inline constexpr double kDivisibilityTolerance = 1e-10;

/// Exact division; throws NotDivisible when the remainder exceeds 1e-10 relative.
BiSnPoly divide_by_scale(const BiSnPoly& p);

/// Inverse of the coefficient matrix F(n, s) = āₛ(hₙ) of one (ℓ, species) eigenbasis.
/// Entry (s, n) of the result is the weight of Λₙ in the expansion of A(χ)sn²ˢ(χ).
/// Throws Singular when the condition number exceeds 1e12.
Eigen::MatrixXd invert_basis(const Eigen::MatrixXd& forward);

}  // namespace spheroconal
