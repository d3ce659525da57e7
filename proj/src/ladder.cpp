#include "spheroconal/ladder.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <cmath>
#include <cctype>
#include <complex>
#include <stdexcept>

#include "spheroconal/error.hpp"

namespace spheroconal {

namespace {

constexpr std::array<std::string_view, 6> kOperatorNames = {"Lx", "Ly", "Lz", "Px", "Py", "Pz"};

// Coefficient c · [factors on χ₁] · [factors on χ₂] · ∂_side, with c possibly carrying k².
struct BracketTerm {
  double sign;
  int ksq_power_side;  // 0: none, 1: k₁², 2: k₂²
  std::array<Factor, 2> first;
  int first_count;
  std::array<Factor, 2> second;
  int second_count;
  Side derivative;
};

BiSnPoly apply_bracket(const std::array<BracketTerm, 2>& terms, const BiSnPoly& psi) {
  BiSnPoly total;
  bool started = false;
  for (const auto& term : terms) {
    BiSnPoly piece = differentiate(psi, term.derivative);
    for (int i = 0; i < term.first_count; ++i) piece = mul_factor(piece, Side::first, term.first[i]);
    for (int i = 0; i < term.second_count; ++i) {
      piece = mul_factor(piece, Side::second, term.second[i]);
    }
    double c = term.sign;
    if (term.ksq_power_side == 1) c *= psi.k1sq;
    if (term.ksq_power_side == 2) c *= psi.k2sq;
    piece = c * piece;
    total = started ? total + piece : piece;
    started = true;
  }
  return total;
}

using F = Factor;

std::array<BracketTerm, 2> angular_bracket(Axis axis) {
  switch (axis) {
    case Axis::x:
      return {{{1.0, 0, {F::d}, 1, {F::c, F::d}, 2, Side::first},
               {1.0, 1, {F::s, F::c}, 2, {F::s}, 1, Side::second}}};
    case Axis::y:
      return {{{-1.0, 0, {F::c}, 1, {F::s, F::d}, 2, Side::first},
               {1.0, 0, {F::s, F::d}, 2, {F::c}, 1, Side::second}}};
    case Axis::z:
      return {{{-1.0, 2, {F::s}, 1, {F::s, F::c}, 2, Side::first},
               {-1.0, 0, {F::c, F::d}, 2, {F::d}, 1, Side::second}}};
  }
  throw std::logic_error("unknown axis");
}

std::array<BracketTerm, 2> gradient_bracket(Axis axis) {
  switch (axis) {
    case Axis::x:
      return {{{-1.0, 1, {F::s, F::c}, 2, {F::s}, 1, Side::first},
               {1.0, 0, {F::d}, 1, {F::c, F::d}, 2, Side::second}}};
    case Axis::y:
      return {{{-1.0, 0, {F::s, F::d}, 2, {F::c}, 1, Side::first},
               {-1.0, 0, {F::c}, 1, {F::s, F::d}, 2, Side::second}}};
    case Axis::z:
      return {{{1.0, 0, {F::c, F::d}, 2, {F::d}, 1, Side::first},
               {-1.0, 2, {F::s}, 1, {F::s, F::c}, 2, Side::second}}};
  }
  throw std::logic_error("unknown axis");
}

BiSnPoly times_direction_cosine(Axis axis, const BiSnPoly& psi) {
  switch (axis) {
    case Axis::x:
      return mul_factor(mul_factor(psi, Side::first, F::d), Side::second, F::s);
    case Axis::y:
      return mul_factor(mul_factor(psi, Side::first, F::c), Side::second, F::c);
    case Axis::z:
      return mul_factor(mul_factor(psi, Side::first, F::s), Side::second, F::d);
  }
  throw std::logic_error("unknown axis");
}

struct Projection {
  std::vector<LadderTerm> terms;
  double residual = 0.0;
};

// Expands p in the products Λᴬ_r(χ₁)Λᴮ_q(χ₂) of order `ell`; only matched pairs are states.
Projection project(const BiSnPoly& p, int ell, const AsymmetryConfig& config, double reference) {
  Projection out;
  const double scale = std::max(reference, p.max_abs());
  if (scale == 0.0 || is_zero(p, scale)) return out;
  if (ell < 0) {
    out.residual = p.max_abs() / scale;
    return out;
  }
  const HarmonicLabel label = HarmonicLabel::from_species(p.first, Side::first);
  if (!(label.species(Side::second) == p.second)) {
    throw std::logic_error("operator produced an unpaired species combination");
  }
  if ((label.degree() % 2) != (ell % 2)) {
    throw std::logic_error("operator produced a species of the wrong parity");
  }
  const auto states = build_species_states(ell, label, config);
  const auto n = static_cast<Eigen::Index>(states.size());

  double excess = 0.0;
  for (Eigen::Index i = 0; i < p.coeffs.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.coeffs.cols(); ++j) {
      if (i >= n || j >= n) excess = std::max(excess, std::abs(p.coeffs(i, j)));
    }
  }
  if (n == 0) {
    out.residual = excess / scale;
    return out;
  }

  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  const Eigen::Index rows = std::min(n, p.coeffs.rows());
  const Eigen::Index cols = std::min(n, p.coeffs.cols());
  r.topLeftCorner(rows, cols) = p.coeffs.topLeftCorner(rows, cols);

  Eigen::MatrixXd f1(n, n);
  Eigen::MatrixXd f2(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    f1.row(k) = states[static_cast<std::size_t>(k)].first.poly.coeffs.transpose();
    f2.row(k) = states[static_cast<std::size_t>(k)].second.poly.coeffs.transpose();
  }
  const Eigen::MatrixXd c = invert_basis(f1).transpose() * r * invert_basis(f2);

  double off = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) off = std::max(off, std::abs(c(i, j)));
    }
  }
  const double diag_scale = std::max(c.diagonal().cwiseAbs().maxCoeff(), scale);
  out.residual = std::max(off / diag_scale, excess / scale);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double value = c(k, k);
    if (std::abs(value) <= kZeroThreshold * diag_scale) continue;
    out.terms.push_back({states[static_cast<std::size_t>(k)].id(), value});
  }
  return out;
}

void require_projection(double residual) {
  if (!(residual <= kProjectionTolerance)) {
    throw Error(ErrorCode::ProjectionResidual,
                "operator image leaves the target basis (residual " + std::to_string(residual) + ")");
  }
}

struct MomentumParts {
  Projection raise;  // harmonic of order ℓ+1 in (xᵢ/r)Ψ
  Projection lower;  // harmonic of order ℓ−1 in (xᵢ/r)Ψ
  double division_remainder = 0.0;
};

MomentumParts momentum_parts(Axis axis, const SpheroconalHarmonic& state,
                             const AsymmetryConfig& config) {
  const BiSnPoly& psi = state.wavefunction;
  const double ell = state.ell;
  const BiSnPoly cosine = times_direction_cosine(axis, psi);
  const ScaleQuotient gradient = divide_by_scale_checked(linear_momentum_numerator(axis, psi));
  if (gradient.relative_remainder > kDivisibilityTolerance) {
    throw Error(ErrorCode::NotDivisible, "gradient bracket is not divisible by the scale factor");
  }
  const BiSnPoly lower = (1.0 / (2.0 * ell + 1.0)) * (ell * cosine + gradient.quotient);
  const BiSnPoly raise = cosine + (-1.0) * lower;
  MomentumParts parts;
  parts.division_remainder = gradient.relative_remainder;
  const double reference = psi.max_abs();
  parts.raise = project(raise, state.ell + 1, config, reference);
  parts.lower = project(lower, state.ell - 1, config, reference);
  require_projection(parts.raise.residual);
  require_projection(parts.lower.residual);
  return parts;
}

LadderDecomposition combine(LadderOperator op, const SpheroconalHarmonic& state,
                            std::string_view convention, const MomentumParts& parts,
                            double raise_weight, double lower_weight) {
  LadderDecomposition out;
  out.op = op;
  out.source = state.id();
  out.convention = std::string(convention);
  out.projection_residual = std::max(parts.raise.residual, parts.lower.residual);
  out.division_remainder = parts.division_remainder;
  for (const auto& t : parts.raise.terms) out.terms.push_back({t.target, raise_weight * t.coefficient});
  for (const auto& t : parts.lower.terms) out.terms.push_back({t.target, lower_weight * t.coefficient});
  return out;
}

}  // namespace

std::string_view to_string(LadderOperator op) { return kOperatorNames[static_cast<int>(op)]; }

std::optional<LadderOperator> parse_operator(std::string_view name) {
  if (name.size() != 2) return std::nullopt;
  const auto lower = [](char ch) { return std::tolower(static_cast<unsigned char>(ch)); };
  for (std::size_t i = 0; i < kOperatorNames.size(); ++i) {
    const std::string_view candidate = kOperatorNames[i];
    if (lower(name[0]) == lower(candidate[0]) && lower(name[1]) == lower(candidate[1])) {
      return static_cast<LadderOperator>(i);
    }
  }
  return std::nullopt;
}

Axis axis_of(LadderOperator op) { return static_cast<Axis>(static_cast<int>(op) % 3); }

bool is_angular_momentum(LadderOperator op) { return static_cast<int>(op) < 3; }

LadderOperator angular_momentum_operator(Axis axis) {
  return static_cast<LadderOperator>(static_cast<int>(axis));
}

LadderOperator linear_momentum_operator(Axis axis) {
  return static_cast<LadderOperator>(3 + static_cast<int>(axis));
}

SpheroconalHarmonic shift_nodes(const SpheroconalHarmonic& state, NodeShift direction,
                                const AsymmetryConfig& config) {
  const auto states = build_species_states(state.ell, state.label, config);
  const auto it = std::find_if(states.begin(), states.end(),
                               [&](const auto& s) { return s.n1 == state.n1; });
  if (it == states.end()) throw std::invalid_argument("state not found in its species ladder");
  if (direction == NodeShift::up) {
    if (it + 1 == states.end()) {
      throw Error(ErrorCode::LadderEnd, "no state with more nodes on the first coordinate");
    }
    return *(it + 1);
  }
  if (it == states.begin()) {
    throw Error(ErrorCode::LadderEnd, "no state with fewer nodes on the first coordinate");
  }
  return *(it - 1);
}

BiSnPoly angular_momentum_numerator(Axis axis, const BiSnPoly& psi) {
  return apply_bracket(angular_bracket(axis), psi);
}

BiSnPoly linear_momentum_numerator(Axis axis, const BiSnPoly& psi) {
  return apply_bracket(gradient_bracket(axis), psi);
}

LadderDecomposition apply_angular_momentum(Axis axis, const SpheroconalHarmonic& state,
                                           const AsymmetryConfig& config) {
  const ScaleQuotient q = divide_by_scale_checked(angular_momentum_numerator(axis, state.wavefunction));
  if (q.relative_remainder > kDivisibilityTolerance) {
    throw Error(ErrorCode::NotDivisible, "angular momentum bracket is not divisible by the scale factor");
  }
  const Projection proj = project((-1.0) * q.quotient, state.ell, config, state.wavefunction.max_abs());
  require_projection(proj.residual);
  LadderDecomposition out;
  out.op = angular_momentum_operator(axis);
  out.source = state.id();
  out.terms = proj.terms;
  out.convention = std::string(kAngularMomentumConvention);
  out.projection_residual = proj.residual;
  out.division_remainder = q.relative_remainder;
  return out;
}

LadderDecomposition apply_linear_momentum(Axis axis, const SpheroconalHarmonic& state,
                                          const AsymmetryConfig& config) {
  return combine(linear_momentum_operator(axis), state, kLinearMomentumConvention,
                 momentum_parts(axis, state, config), 1.0, 1.0);
}

LadderDecomposition apply_angular_gradient(Axis axis, const SpheroconalHarmonic& state,
                                           const AsymmetryConfig& config) {
  const double ell = state.ell;
  return combine(linear_momentum_operator(axis), state, kAngularGradientConvention,
                 momentum_parts(axis, state, config), -ell, ell + 1.0);
}

LadderDecomposition multiply_direction_cosine(Axis axis, const SpheroconalHarmonic& state,
                                              const AsymmetryConfig& config) {
  return combine(linear_momentum_operator(axis), state, kDirectionCosineConvention,
                 momentum_parts(axis, state, config), 1.0, 1.0);
}

HarmonicLabel species_transition(LadderOperator op, HarmonicLabel label) {
  const auto axis_bit = static_cast<std::uint8_t>(1u << static_cast<int>(axis_of(op)));
  const std::uint8_t toggle = is_angular_momentum(op) ? static_cast<std::uint8_t>(7u ^ axis_bit) : axis_bit;
  return HarmonicLabel(static_cast<std::uint8_t>(label.mask() ^ toggle));
}

Eigen::MatrixXcd angular_momentum_matrix(const std::vector<LadderDecomposition>& columns,
                                         const std::vector<SpheroconalHarmonic>& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(columns.size()); ++j) {
    for (const auto& term : columns[static_cast<std::size_t>(j)].terms) {
      const auto it = std::find_if(basis.begin(), basis.end(),
                                   [&](const auto& s) { return s.id() == term.target; });
      if (it == basis.end()) throw std::logic_error("target state missing from basis");
      m(it - basis.begin(), j) += std::complex<double>(0.0, term.coefficient);
    }
  }
  return m;
}

Eigen::MatrixXcd angular_momentum_matrix(Axis axis, const std::vector<SpheroconalHarmonic>& basis,
                                         const AsymmetryConfig& config) {
  std::vector<LadderDecomposition> columns;
  columns.reserve(basis.size());
  for (const auto& state : basis) columns.push_back(apply_angular_momentum(axis, state, config));
  return angular_momentum_matrix(columns, basis);
}

}  // namespace spheroconal
