#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spheroconal/asymmetry.hpp"
#include "spheroconal/harmonics.hpp"

namespace spheroconal {

enum class LadderOperator { Lx, Ly, Lz, Px, Py, Pz };

std::string_view to_string(LadderOperator op);
std::optional<LadderOperator> parse_operator(std::string_view name);
Axis axis_of(LadderOperator op);
bool is_angular_momentum(LadderOperator op);
LadderOperator angular_momentum_operator(Axis axis);
LadderOperator linear_momentum_operator(Axis axis);

struct LadderTerm {
  StateId target;
  double coefficient = 0.0;
};

/// Coefficients of an operator action expanded in the basis of target harmonics.
struct LadderDecomposition {
  LadderOperator op = LadderOperator::Lx;
  StateId source;
  std::vector<LadderTerm> terms;
  std::string convention;
  /// Size of the part left outside the target basis, relative to the largest coefficient.
  double projection_residual = 0.0;
  /// Remainder of the exact division by the scale-factor polynomial (relative).
  double division_remainder = 0.0;
};

inline constexpr std::string_view kAngularMomentumConvention = "L_i Psi = i hbar sum c Psi'";
inline constexpr std::string_view kLinearMomentumConvention =
    "p_i[f(r) Psi] = -i hbar [(f' - l f/r) sum_{l+1} c Psi' + (f' + (l+1) f/r) sum_{l-1} c Psi']";
inline constexpr std::string_view kAngularGradientConvention =
    "(r^2/h_chi^2)[angular derivative bracket] Psi, -i hbar/r stripped";
inline constexpr std::string_view kDirectionCosineConvention = "(x_i/r) Psi";

inline constexpr double kProjectionTolerance = 1e-8;

enum class NodeShift { up, down };

/// Neighbouring state of the same (ℓ, AB) with n₁ → n₁ ± 2 and n₂ → n₂ ∓ 2.
/// Throws LadderEnd at either end of the species ladder.
SpheroconalHarmonic shift_nodes(const SpheroconalHarmonic& state, NodeShift direction,
                                const AsymmetryConfig& config);

/// Bracketed derivative term of Lᵢ (or pᵢ) applied to Ψ, before division by h_χ²/r².
BiSnPoly angular_momentum_numerator(Axis axis, const BiSnPoly& psi);
BiSnPoly linear_momentum_numerator(Axis axis, const BiSnPoly& psi);

/// Lᵢ Ψ divided by iħ, expanded in the ℓ-multiplet of the target species.
LadderDecomposition apply_angular_momentum(Axis axis, const SpheroconalHarmonic& state,
                                           const AsymmetryConfig& config);

/// Linear momentum on f(r)Ψ: the ℓ+1 group holds the harmonic part of (xᵢ/r)Ψ,
/// the ℓ−1 group the remainder, so that on the solid harmonic rˡΨ only the ℓ−1 group
/// survives with weight 2ℓ+1.
LadderDecomposition apply_linear_momentum(Axis axis, const SpheroconalHarmonic& state,
                                          const AsymmetryConfig& config);

/// The angular-derivative term of pᵢ alone (scale factor cancelled): r times the
/// surface gradient, which equals −ℓ·(ℓ+1 group) + (ℓ+1)·(ℓ−1 group).
LadderDecomposition apply_angular_gradient(Axis axis, const SpheroconalHarmonic& state,
                                           const AsymmetryConfig& config);

/// Multiplication by the direction cosine xᵢ/r, split into ℓ±1 harmonics.
LadderDecomposition multiply_direction_cosine(Axis axis, const SpheroconalHarmonic& state,
                                              const AsymmetryConfig& config);

/// Species pair reached by the operator: Lᵢ toggles the two other cartesian letters,
/// pᵢ toggles letter i.
HarmonicLabel species_transition(LadderOperator op, HarmonicLabel label);

/// Matrix of Lᵢ over an ℓ-multiplet (entry (k, j) is the Ψₖ component of LᵢΨⱼ, ħ = 1).
Eigen::MatrixXcd angular_momentum_matrix(Axis axis, const std::vector<SpheroconalHarmonic>& basis,
                                         const AsymmetryConfig& config);

/// Same matrix assembled from precomputed decompositions (one per basis state, in order).
Eigen::MatrixXcd angular_momentum_matrix(const std::vector<LadderDecomposition>& columns,
                                         const std::vector<SpheroconalHarmonic>& basis);

}  // namespace spheroconal
