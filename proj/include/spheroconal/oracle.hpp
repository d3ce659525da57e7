#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "spheroconal/asymmetry.hpp"
#include "spheroconal/harmonics.hpp"

namespace spheroconal {

using ScalarField = std::function<double(double chi1, double chi2)>;

/// Samples of a function of (χ₁, χ₂) on a uniform tensor grid.
/// `function` is kept so that derivatives can be taken with steps finer than the grid.
struct GridField {
  Eigen::VectorXd chi1;
  Eigen::VectorXd chi2;
  Eigen::MatrixXd values;  // values(i, j) at (chi1[i], chi2[j])
  double k1sq = 0.0;
  double k2sq = 0.0;
  ScalarField function;
};

inline constexpr int kDefaultGridPoints = 40;
/// Fraction of the fundamental domain covered by the default grid.
inline constexpr double kGridMargin = 0.9;

/// Uniform grid over χ₁ ∈ ±0.9·2K₁, χ₂ ∈ ±0.9·K₂ (covers the sphere, avoids the
/// zeros of the scale factor at χ₁ = ±K₁, χ₂ = ±K₂).
GridField make_grid(const AsymmetryConfig& config, int points1 = kDefaultGridPoints,
                    int points2 = kDefaultGridPoints);

/// Fills the grid with samples of `function` (and keeps it for derivatives).
GridField sample(const GridField& grid, ScalarField function);
GridField sample(const GridField& grid, const SpheroconalHarmonic& state);

enum class OperatorKind { L2, Hstar, Lx, Ly, Lz, Px, Py, Pz };

std::string_view to_string(OperatorKind kind);
std::optional<OperatorKind> parse_operator_kind(std::string_view name);

inline constexpr double kDefaultStep = 1e-2;
inline constexpr double kRichardsonTolerance = 1e-4;

/// Applies an operator with 4th-order central differences of step h and h/2,
/// returning the Richardson-extrapolated field. ħ = 1 and:
///   L2    → L²Ψ
///   Hstar → E*Ψ (half of 2E*)
///   Li    → LᵢΨ / i
///   Pi    → angular-derivative term of pᵢ with the −i/r prefactor and scale factor removed
/// Throws GridTooCoarse when the h and h/2 results differ by more than 1e-4 (relative).
GridField fd_operator(OperatorKind kind, const GridField& field, const AsymmetryConfig& config,
                      double step = kDefaultStep);

struct BasisFit {
  Eigen::VectorXd coefficients;
  /// RMS misfit over RMS field.
  double residual = 0.0;
};

inline constexpr double kMaxGramCondition = 1e10;

/// Least-squares expansion of a sampled field in a list of harmonics.
/// Throws RankDeficient if the Gram matrix condition number exceeds 1e10.
BasisFit fit_in_basis(const GridField& field, const std::vector<SpheroconalHarmonic>& basis);

/// 2E* values of order ℓ obtained by diagonalizing −Σ eᵢ Dᵢ² (Dᵢ the cartesian rotation
/// generators) on harmonic homogeneous polynomials of degree ℓ. Sorted ascending.
Eigen::VectorXd cartesian_rotor_energies(int ell, const AsymmetryConfig& config);

}  // namespace spheroconal
