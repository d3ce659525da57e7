#include "spheroconal/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spheroconal/error.hpp"

namespace spheroconal {

std::string StateId::to_string() const {
  std::ostringstream out;
  out << "l=" << ell << " (" << label.species_name(Side::first) << ","
      << label.species_name(Side::second) << ") n=(" << n1 << "," << n2 << ")";
  return out.str();
}

std::vector<SpheroconalHarmonic> build_species_states(int ell, HarmonicLabel label,
                                                      const AsymmetryConfig& config) {
  const Species a = label.species(Side::first);
  const Species b = label.species(Side::second);
  if (matrix_size(ell, a) == 0) return {};
  const auto first = solve(ell, a, config.k1sq, Side::first);
  const auto second = solve(ell, b, config.k2sq, Side::second);
  const double target = static_cast<double>(ell) * (ell + 1);

  std::vector<SpheroconalHarmonic> out;
  const std::size_t n = first.size();
  for (std::size_t r = 0; r < n; ++r) {
    const LamePolynomial& lam1 = first[r];
    const LamePolynomial& lam2 = second[n - 1 - r];
    if (std::abs(lam1.h + lam2.h - target) > kMatchTolerance * std::max(1.0, target)) {
      std::ostringstream msg;
      msg << "h1 + h2 = " << lam1.h + lam2.h << " differs from l(l+1) = " << target
          << " for species " << label.name();
      throw Error(ErrorCode::MatchFailure, msg.str());
    }
    SpheroconalHarmonic state;
    state.ell = ell;
    state.label = label;
    state.n1 = lam1.n;
    state.n2 = lam2.n;
    state.h1 = lam1.h;
    state.h2 = lam2.h;
    state.estar2 = config.e[0] * lam1.h + config.e[2] * lam2.h;
    state.first = lam1;
    state.second = lam2;
    state.wavefunction = outer(lam1.poly, lam2.poly);
    out.push_back(std::move(state));
  }
  return out;
}

std::vector<SpheroconalHarmonic> build_basis(int ell, const AsymmetryConfig& config) {
  std::vector<SpheroconalHarmonic> out;
  for (HarmonicLabel label : all_labels()) {
    if (label.overall_parity() != (ell % 2 == 0 ? 1 : -1)) continue;
    auto states = build_species_states(ell, label, config);
    std::move(states.begin(), states.end(), std::back_inserter(out));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SpheroconalHarmonic& lhs, const SpheroconalHarmonic& rhs) {
                     return lhs.estar2 < rhs.estar2;
                   });
  return out;
}

double total_energy(const SpheroconalHarmonic& state, const AsymmetryConfig& config) {
  if (!config.has_scale()) {
    throw Error(ErrorCode::MissingScale,
                "total energy needs Q and P; the config was built from e1 alone");
  }
  return *config.q * state.ell * (state.ell + 1) / 2.0 + *config.p * state.estar2 / 2.0;
}

double evaluate(const SpheroconalHarmonic& state, double chi1, double chi2) {
  return evaluate(state.wavefunction, chi1, chi2);
}

Eigen::Vector3d direction(const SpheroconalPoint& p) {
  return {p.first.dn * p.second.sn, p.first.cn * p.second.cn, p.first.sn * p.second.dn};
}

Eigen::Vector3d direction(double chi1, double chi2, double k1sq, double k2sq) {
  return direction(SpheroconalPoint{jacobi(chi1, k1sq), jacobi(chi2, k2sq)});
}

SpheroconalPoint spheroconal_from_direction(const Eigen::Vector3d& unit, double k1sq,
                                            double k2sq) {
  if (std::abs(unit.norm() - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "direction must be a unit vector, |v| = " << unit.norm();
    throw Error(ErrorCode::InversionFailure, msg.str());
  }
  const double xx = unit.x() * unit.x();
  const double yy = unit.y() * unit.y();
  const double zz = unit.z() * unit.z();

  // With t₁ = sn²χ₁ and t₂ = sn²χ₂: x² = (1 − k₁²t₁)t₂ and z² = t₁(1 − k₂²t₂).
  // Eliminating t₂ leaves a concave quadratic g(t₁), ≤ 0 at t₁ = 0 and ≥ 0 at t₁ = 1.
  // In u₁ = 1 − t₁ it reads q(u₁) = k₂²y² + b·u₁ − k₁²u₁², ≥ 0 at u₁ = 0.
  auto g = [&](double t1) { return (t1 - zz) * (1.0 - k1sq * t1) - k2sq * xx * t1; };
  const double b = k1sq * (xx + yy) - k2sq * (1.0 - xx);
  auto q = [&](double u1) { return k2sq * yy + u1 * (b - k1sq * u1); };
  // Bisect on |sn χ₁| or |cn χ₁|, whichever is small, to keep precision near the nodal planes.
  const bool near_zero = g(0.5) >= 0.0;
  double lo = 0.0;
  double hi = near_zero ? 1.0 : std::sqrt(0.5);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const bool below = near_zero ? g(mid * mid) < 0.0 : q(mid * mid) > 0.0;
    if (below) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  const double sn1 = near_zero ? root : std::sqrt(1.0 - root * root);
  const double cn1 = near_zero ? std::sqrt(1.0 - root * root) : root;
  const double t1 = sn1 * sn1;
  const double dn1 = std::sqrt(1.0 - k1sq * t1);
  const double sn2 = std::clamp(unit.x() / dn1, -1.0, 1.0);
  const double t2 = sn2 * sn2;
  // y = cn₁cn₂ fixes the smaller cosine more accurately than √(1 − t₂).
  const double cn2 = cn1 > 0.0 && cn1 * cn1 >= std::abs(unit.y()) ? std::min(1.0, std::abs(unit.y()) / cn1)
                                                     : std::sqrt(1.0 - t2);

  SpheroconalPoint point;
  point.first = {std::copysign(sn1, unit.z()), std::copysign(cn1, unit.y()), dn1};
  point.second = {sn2, cn2, std::sqrt(1.0 - k2sq * t2)};
  const double miss = (direction(point) - unit).norm();
  if (!(miss < 1e-7)) {
    std::ostringstream msg;
    msg << "coordinate inversion misses the direction by " << miss;
    throw Error(ErrorCode::InversionFailure, msg.str());
  }
  return point;
}

double evaluate_xyz(const SpheroconalHarmonic& state, const Eigen::Vector3d& unit) {
  const SpheroconalPoint point =
      spheroconal_from_direction(unit, state.wavefunction.k1sq, state.wavefunction.k2sq);
  return evaluate(state.wavefunction, point.first, point.second);
}

}  // namespace spheroconal
