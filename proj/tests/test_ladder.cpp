#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spheroconal/ladder.hpp"
#include "support.hpp"

using namespace spheroconal;

namespace {

const SpheroconalHarmonic& find_state(const std::vector<SpheroconalHarmonic>& basis, std::uint8_t label,
                                      int n1, int n2) {
  for (const auto& s : basis) {
    if (s.label.mask() == label && s.n1 == n1 && s.n2 == n2) return s;
  }
  FAIL("state not found");
  return basis.front();
}

double coefficient_of(const LadderDecomposition& d, const StateId& target) {
  for (const auto& t : d.terms) {
    if (t.target == target) return t.coefficient;
  }
  return 0.0;
}

Eigen::Vector3d random_direction(std::mt19937& rng) {
  std::normal_distribution<double> g;
  return Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
}

constexpr int kAllOrders = -100;

// Σ c·Ψ_target at a direction, with targets looked up in the bases by id.
double expand_at(const LadderDecomposition& d, const std::vector<std::vector<SpheroconalHarmonic>>& bases,
                 const Eigen::Vector3d& u, int ell_filter = kAllOrders) {
  double sum = 0.0;
  for (const auto& t : d.terms) {
    if (ell_filter != kAllOrders && t.target.ell != ell_filter) continue;
    const auto& basis = bases[static_cast<std::size_t>(t.target.ell)];
    sum += t.coefficient * evaluate_xyz(find_state(basis, t.target.label.mask(), t.target.n1, t.target.n2), u);
  }
  return sum;
}

// ∂ᵢ of a function of position, by a fourth-order central stencil.
double cartesian_partial(const std::function<double(const Eigen::Vector3d&)>& f, const Eigen::Vector3d& p,
                         int axis, double h = 1e-4) {
  auto at = [&](double step) {
    Eigen::Vector3d q = p;
    q[axis] += step;
    return f(q);
  };
  return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("node shifts") {
  const AsymmetryConfig config = from_e1(0.8);
  const auto four = build_basis(4, config);
  const auto up = shift_nodes(find_state(four, 0, 0, 4), NodeShift::up, config);
  CHECK(up.id() == StateId{4, HarmonicLabel(0), 2, 2});
  CHECK(std::abs(up.h1 + up.h2 - 20.0) < 1e-9);
  CHECK(shift_nodes(up, NodeShift::down, config).id() == StateId{4, HarmonicLabel(0), 0, 4});
  CHECK(testing::throws_code([&] { shift_nodes(find_state(four, 0, 4, 0), NodeShift::up, config); },
                             ErrorCode::LadderEnd));
  CHECK(testing::throws_code([&] { shift_nodes(find_state(four, 0, 0, 4), NodeShift::down, config); },
                             ErrorCode::LadderEnd));

  const auto two = build_basis(2, config);
  CHECK(testing::throws_code([&] { shift_nodes(find_state(two, 6, 2, 0), NodeShift::up, config); },
                             ErrorCode::LadderEnd));
  const auto zero = build_basis(0, config);
  for (NodeShift dir : {NodeShift::up, NodeShift::down}) {
    CHECK(testing::throws_code([&] { shift_nodes(zero[0], dir, config); }, ErrorCode::LadderEnd));
  }

  for (int ell = 0; ell <= 8; ++ell) {
    for (const auto& s : build_basis(ell, config)) {
      try {
        const auto next = shift_nodes(s, NodeShift::up, config);
        CHECK(next.label == s.label);
        CHECK(next.n1 == s.n1 + 2);
        CHECK(next.n2 == s.n2 - 2);
        CHECK(shift_nodes(next, NodeShift::down, config).id() == s.id());
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LadderEnd);
      }
    }
  }
}

TEST_CASE("species transitions") {
  const HarmonicLabel x = HarmonicLabel::of(Axis::x);
  CHECK(species_transition(LadderOperator::Lz, x) == HarmonicLabel::of(Axis::y));
  CHECK(species_transition(LadderOperator::Px, HarmonicLabel(0)) == x);
  CHECK(species_transition(LadderOperator::Ly, HarmonicLabel(5)) == HarmonicLabel(0));
  for (const HarmonicLabel label : all_labels()) {
    for (Axis axis : kAxes) {
      const HarmonicLabel l = species_transition(angular_momentum_operator(axis), label);
      CHECK(l.overall_parity() == label.overall_parity());
      CHECK(l.has(axis) == label.has(axis));
      const HarmonicLabel p = species_transition(linear_momentum_operator(axis), label);
      CHECK(p.overall_parity() == -label.overall_parity());
      CHECK(p == label.flipped(axis));
    }
  }
}

TEST_CASE("operator names") {
  for (auto op : {LadderOperator::Lx, LadderOperator::Ly, LadderOperator::Lz, LadderOperator::Px,
                  LadderOperator::Py, LadderOperator::Pz}) {
    CHECK(parse_operator(to_string(op)) == op);
  }
  CHECK(parse_operator("lz") == LadderOperator::Lz);
  CHECK_FALSE(parse_operator("Lw").has_value());
  CHECK_FALSE(parse_operator("Lxx").has_value());
}

TEST_CASE("angular momentum on l = 1") {
  const AsymmetryConfig config = from_e1(0.9);
  const auto basis = build_basis(1, config);
  const StateId x{1, HarmonicLabel(1), 0, 1};
  const StateId y{1, HarmonicLabel(2), 1, 0};
  const StateId z{1, HarmonicLabel(4), 1, 0};
  // Lᵢ/i from L = −i r × ∇: Lx y = z, Lx z = −y, Ly z = x, Ly x = −z, Lz x = y, Lz y = −x.
  const double expected[3][3][3] = {
      // source x         source y          source z     (targets x, y, z)
      {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},   // Lx
      {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},   // Ly
      {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};  // Lz
  const StateId ids[3] = {x, y, z};
  for (int a = 0; a < 3; ++a) {
    for (int src = 0; src < 3; ++src) {
      const auto& s = find_state(basis, ids[src].label.mask(), ids[src].n1, ids[src].n2);
      const LadderDecomposition d = apply_angular_momentum(kAxes[static_cast<std::size_t>(a)], s, config);
      CHECK(d.convention == kAngularMomentumConvention);
      for (int t = 0; t < 3; ++t) CHECK(coefficient_of(d, ids[t]) == doctest::Approx(expected[a][src][t]));
      int nonzero = 0;
      for (int t = 0; t < 3; ++t) nonzero += expected[a][src][t] != 0.0;
      CHECK(d.terms.size() == static_cast<std::size_t>(nonzero));
    }
  }
}

TEST_CASE("Ly on the l = 2 xz state") {
  for (double k1sq : {0.3, 0.5, 0.7}) {
    const AsymmetryConfig config = testing::config_with_k1sq(k1sq);
    const auto basis = build_basis(2, config);
    const LadderDecomposition d = apply_angular_momentum(Axis::y, find_state(basis, 5, 1, 1), config);
    REQUIRE(d.terms.size() == 2);
    const double c1 = 1.0 / (-4.0 * std::sqrt(1.0 - k1sq * (1.0 - k1sq)));
    const double a = coefficient_of(d, {2, HarmonicLabel(0), 2, 0});
    const double b = coefficient_of(d, {2, HarmonicLabel(0), 0, 2});
    CHECK(std::abs(a) == doctest::Approx(std::abs(2 * c1)).epsilon(1e-10));
    CHECK(a == doctest::Approx(-b).epsilon(1e-10));
  }
}

TEST_CASE("angular momentum matches cartesian derivatives") {
  std::mt19937 rng(42);
  for (double e1 : {0.6, 0.9}) {
    const AsymmetryConfig config = from_e1(e1);
    for (int ell = 1; ell <= 3; ++ell) {
      const auto basis = build_basis(ell, config);
      std::vector<std::vector<SpheroconalHarmonic>> bases(static_cast<std::size_t>(ell + 1));
      bases[static_cast<std::size_t>(ell)] = basis;
      for (const auto& s : basis) {
        for (Axis axis : kAxes) {
          const LadderDecomposition d = apply_angular_momentum(axis, s, config);
          for (const auto& t : d.terms) CHECK(t.target.ell == ell);
          for (int trial = 0; trial < 4; ++trial) {
            const Eigen::Vector3d u = random_direction(rng);
            const double truth = testing::cartesian_l_over_i(
                axis, [&](const Eigen::Vector3d& p) { return evaluate_xyz(s, p); }, u);
            CHECK(expand_at(d, bases, u) == doctest::Approx(truth).epsilon(1e-6).scale(1.0));
          }
        }
      }
    }
  }
}

TEST_CASE("commutators and closure") {
  for (double e1 : {0.55, 0.8, 0.97}) {
    const AsymmetryConfig config = from_e1(e1);
    for (int ell = 0; ell <= 4; ++ell) {
      const auto basis = build_basis(ell, config);
      const Eigen::MatrixXcd lx = angular_momentum_matrix(Axis::x, basis, config);
      const Eigen::MatrixXcd ly = angular_momentum_matrix(Axis::y, basis, config);
      const Eigen::MatrixXcd lz = angular_momentum_matrix(Axis::z, basis, config);
      const std::complex<double> i(0.0, 1.0);
      CHECK((lx * ly - ly * lx - i * lz).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((ly * lz - lz * ly - i * lx).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((lz * lx - lx * lz - i * ly).cwiseAbs().maxCoeff() < 1e-8);
      const auto n = static_cast<Eigen::Index>(basis.size());
      const Eigen::MatrixXcd l2 = lx * lx + ly * ly + lz * lz;
      CHECK((l2 - ell * (ell + 1.0) * Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("scale factor divides every numerator") {
  const AsymmetryConfig config = from_e1(0.77);
  for (int ell = 0; ell <= 6; ++ell) {
    for (const auto& s : build_basis(ell, config)) {
      for (Axis axis : kAxes) {
        CHECK(apply_angular_momentum(axis, s, config).division_remainder < 1e-10);
        CHECK(divide_by_scale_checked(angular_momentum_numerator(axis, s.wavefunction)).relative_remainder < 1e-10);
      }
    }
  }
}

TEST_CASE("linear momentum on l = 0") {
  const AsymmetryConfig config = from_e1(0.9);
  const auto zero = build_basis(0, config);
  const StateId targets[3] = {{1, HarmonicLabel(1), 0, 1}, {1, HarmonicLabel(2), 1, 0}, {1, HarmonicLabel(4), 1, 0}};
  for (int a = 0; a < 3; ++a) {
    const LadderDecomposition d = apply_linear_momentum(kAxes[static_cast<std::size_t>(a)], zero[0], config);
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].target == targets[a]);
    CHECK(d.terms[0].coefficient == doctest::Approx(1.0));
    CHECK(d.convention == kLinearMomentumConvention);
  }
}

TEST_CASE("angular gradient of the x harmonic") {
  const AsymmetryConfig config = from_e1(0.9);
  const auto one = build_basis(1, config);
  const LadderDecomposition d = apply_angular_gradient(Axis::y, find_state(one, 1, 0, 1), config);
  // r∇_surface(x/r) along y is −xy/r², and the xy state is exactly x̂ŷ.
  REQUIRE(d.terms.size() == 1);
  CHECK(d.terms[0].target == StateId{2, HarmonicLabel(3), 1, 1});
  CHECK(d.terms[0].coefficient == doctest::Approx(-1.0));
}

TEST_CASE("linear momentum against solid harmonics") {
  std::mt19937 rng(8);
  const AsymmetryConfig config = from_e1(0.72);
  std::vector<std::vector<SpheroconalHarmonic>> bases;
  for (int ell = 0; ell <= 4; ++ell) bases.push_back(build_basis(ell, config));
  for (int ell = 0; ell <= 3; ++ell) {
    for (const auto& s : bases[static_cast<std::size_t>(ell)]) {
      auto solid = [&](double power) {
        return [&s, power](const Eigen::Vector3d& p) { return std::pow(p.norm(), power) * evaluate_xyz(s, p.normalized()); };
      };
      for (Axis axis : kAxes) {
        const int a = static_cast<int>(axis);
        const LadderDecomposition d = apply_linear_momentum(axis, s, config);
        CHECK(d.projection_residual < 1e-8);
        for (const auto& t : d.terms) {
          CHECK((t.target.ell == ell + 1 || t.target.ell == ell - 1));
          CHECK(t.target.label == s.label.flipped(axis));
        }
        for (int trial = 0; trial < 3; ++trial) {
          const Eigen::Vector3d u = random_direction(rng);
          // ∂ᵢ(rˡΨ) keeps only the ℓ−1 group, ∂ᵢ(r^(−ℓ−1)Ψ) only the ℓ+1 group.
          const double regular = cartesian_partial(solid(ell), u, a);
          const double irregular = cartesian_partial(solid(-ell - 1.0), u, a);
          CHECK(regular == doctest::Approx((2 * ell + 1) * expand_at(d, bases, u, ell - 1)).epsilon(1e-6).scale(1.0));
          CHECK(irregular == doctest::Approx(-(2 * ell + 1) * expand_at(d, bases, u, ell + 1)).epsilon(1e-6).scale(1.0));
        }
        // The direction cosine splits into the same groups with unit weights.
        const LadderDecomposition cosine = multiply_direction_cosine(axis, s, config);
        const LadderDecomposition gradient = apply_angular_gradient(axis, s, config);
        const Eigen::Vector3d u = random_direction(rng);
        CHECK(expand_at(cosine, bases, u) == doctest::Approx(u[a] * evaluate_xyz(s, u)).epsilon(1e-9).scale(1.0));
        CHECK(expand_at(gradient, bases, u) ==
              doctest::Approx(-ell * expand_at(d, bases, u, ell + 1) + (ell + 1) * expand_at(d, bases, u, ell - 1))
                  .epsilon(1e-9)
                  .scale(1.0));
      }
    }
  }
}

TEST_CASE("projection onto a foreign basis is rejected") {
  const AsymmetryConfig built = from_e1(0.9);
  const AsymmetryConfig other = from_e1(0.6);
  const auto two = build_basis(2, built);
  try {
    apply_angular_momentum(Axis::x, find_state(two, 6, 2, 0), other);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ProjectionResidual);
  }
}
