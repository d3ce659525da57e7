#include <doctest.h>

#include <cmath>
#include <random>

#include "closed_forms.hpp"
#include "spheroconal/harmonics.hpp"
#include "spheroconal/oracle.hpp"
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

Eigen::Vector3d random_direction(std::mt19937& rng) {
  std::normal_distribution<double> g;
  return Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
}

}  // namespace

TEST_CASE("basis size and bookkeeping") {
  const AsymmetryConfig config = from_e1(0.8);
  for (int ell = 0; ell <= 20; ++ell) {
    const auto basis = build_basis(ell, config);
    REQUIRE(basis.size() == static_cast<std::size_t>(2 * ell + 1));
    double trace = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& s = basis[i];
      CHECK(s.n1 + s.n2 == ell);
      CHECK(std::abs(s.h1 + s.h2 - ell * (ell + 1.0)) < 1e-9);
      CHECK(s.estar2 == doctest::Approx(config.e1() * s.h1 + config.e3() * s.h2).epsilon(1e-14));
      const auto p = s.parities();
      CHECK(p[0] * p[1] * p[2] == (ell % 2 == 0 ? 1 : -1));
      if (i > 0) {
        CHECK(s.estar2 >= basis[i - 1].estar2);
        if (s.estar2 == basis[i - 1].estar2) CHECK(s.label.order() >= basis[i - 1].label.order());
      }
      trace += s.estar2;
    }
    CHECK(std::abs(trace) < 1e-9);
  }
}

TEST_CASE("low orders against the energy table") {
  for (double e1 : {0.55, 0.75, std::sqrt(3.0) / 2.0, 0.95}) {
    const AsymmetryConfig config = from_e1(e1);
    for (int ell = 0; ell <= 4; ++ell) {
      const auto basis = build_basis(ell, config);
      const auto rows = testing::energy_rows(ell, config);
      REQUIRE(rows.size() == basis.size());
      for (const auto& row : rows) {
        CAPTURE(ell);
        CAPTURE(static_cast<int>(row.label));
        const auto& s = find_state(basis, row.label, row.n1, row.n2);
        CHECK(std::abs(s.estar2 - row.estar2) < 1e-9);
      }
    }
  }
}

TEST_CASE("e1 at the most asymmetric point") {
  const AsymmetryConfig config = from_e1(std::sqrt(3.0) / 2.0);
  const auto one = build_basis(1, config);
  CHECK(one[0].estar2 == doctest::Approx(-std::sqrt(3.0) / 2.0));
  CHECK(std::abs(one[1].estar2) < 1e-12);
  CHECK(one[2].estar2 == doctest::Approx(std::sqrt(3.0) / 2.0));

  const auto zero = build_basis(0, config);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].estar2 == 0.0);

  for (double e1 : {0.6, 0.9}) {
    for (const auto& s : build_basis(3, from_e1(e1))) {
      if (s.label.mask() == 7) CHECK(std::abs(s.estar2) < 1e-12);
    }
  }
}

TEST_CASE("energies agree with the cartesian rotor") {
  for (double e1 : {0.52, 0.7, 0.97}) {
    const AsymmetryConfig config = from_e1(e1);
    for (int ell = 0; ell <= 8; ++ell) {
      const auto basis = build_basis(ell, config);
      const Eigen::VectorXd cartesian = cartesian_rotor_energies(ell, config);
      REQUIRE(cartesian.size() == static_cast<Eigen::Index>(basis.size()));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(std::abs(basis[i].estar2 - cartesian[static_cast<Eigen::Index>(i)]) < 1e-8);
      }
    }
  }
}

TEST_CASE("total energy") {
  const AsymmetryConfig config = from_moments(1.0, 2.0, 3.0);
  // Σ Lᵢ²/(2Iᵢ) directly: a config whose e holds 1/(2Iᵢ).
  AsymmetryConfig direct = config;
  direct.e = Eigen::Vector3d(0.5, 0.25, 1.0 / 6.0);
  for (int ell = 0; ell <= 3; ++ell) {
    const auto basis = build_basis(ell, config);
    const Eigen::VectorXd expected = cartesian_rotor_energies(ell, direct);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(total_energy(basis[i], config) == doctest::Approx(expected[static_cast<Eigen::Index>(i)]).epsilon(1e-10));
    }
  }
  CHECK(total_energy(build_basis(0, config)[0], config) == 0.0);
  // ℓ = 1 eigenvalues are ½(1/I₂ + 1/I₃), ½(1/I₁ + 1/I₃), ½(1/I₁ + 1/I₂).
  const auto one = build_basis(1, config);
  CHECK(total_energy(one[0], config) == doctest::Approx(0.5 * (0.5 + 1.0 / 3.0)));
  CHECK(total_energy(one[1], config) == doctest::Approx(0.5 * (1.0 + 1.0 / 3.0)));
  CHECK(total_energy(one[2], config) == doctest::Approx(0.5 * (1.0 + 0.5)));

  const AsymmetryConfig bare = from_e1(0.8);
  CHECK(testing::throws_code([&] { total_energy(build_basis(1, bare)[0], bare); }, ErrorCode::MissingScale));
}

TEST_CASE("evaluation in cartesian directions") {
  const AsymmetryConfig config = from_e1(0.9);
  const auto one = build_basis(1, config);
  const auto& x = find_state(one, 1, 0, 1);
  CHECK(evaluate_xyz(x, Eigen::Vector3d(1, 0, 0)) == doctest::Approx(1.0));

  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Vector3d u = random_direction(rng);
    CHECK(evaluate_xyz(x, u) == doctest::Approx(u.x()).epsilon(1e-9));
    CHECK(evaluate_xyz(find_state(one, 2, 1, 0), u) == doctest::Approx(u.y()).epsilon(1e-9));
    CHECK(evaluate_xyz(find_state(one, 4, 1, 0), u) == doctest::Approx(u.z()).epsilon(1e-9));
  }

  const auto two = build_basis(2, config);
  const auto& xy = find_state(two, 3, 1, 1);
  const double ratio = evaluate_xyz(xy, Eigen::Vector3d(0.6, 0.8, 0.0)) / 0.48;
  CHECK(std::abs(ratio) > 1e-3);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Vector3d u = random_direction(rng);
    CHECK(evaluate_xyz(xy, u) == doctest::Approx(ratio * u.x() * u.y()).epsilon(1e-8));
  }
}

TEST_CASE("reflection parities and nodal planes") {
  const AsymmetryConfig config = from_e1(0.7);
  std::mt19937 rng(3);
  for (int ell = 0; ell <= 5; ++ell) {
    for (const auto& s : build_basis(ell, config)) {
      const auto p = s.parities();
      for (int trial = 0; trial < 5; ++trial) {
        const Eigen::Vector3d u = random_direction(rng);
        const double value = evaluate_xyz(s, u);
        const double scale = std::max(1.0, std::abs(value));
        for (int axis = 0; axis < 3; ++axis) {
          Eigen::Vector3d mirrored = u;
          mirrored[axis] = -mirrored[axis];
          CHECK(std::abs(evaluate_xyz(s, mirrored) - p[axis] * value) < 1e-9 * scale);
          if (p[axis] < 0) {
            Eigen::Vector3d on_plane = u;
            on_plane[axis] = 0.0;
            CHECK(std::abs(evaluate_xyz(s, on_plane.normalized())) < 1e-9 * scale);
          }
        }
        CHECK(std::abs(evaluate_xyz(s, -u) - (ell % 2 == 0 ? 1 : -1) * value) < 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("coordinate inversion round trip") {
  const AsymmetryConfig config = from_e1(0.83);
  std::mt19937 rng(17);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Vector3d u = random_direction(rng);
    const SpheroconalPoint p = spheroconal_from_direction(u, config.k1sq, config.k2sq);
    CHECK((direction(p) - u).norm() < 1e-9);
  }
  for (const Eigen::Vector3d& u : {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(0, 0, -1),
                                  Eigen::Vector3d(0.6, 0, 0.8), Eigen::Vector3d(0, -0.6, 0.8),
                                  Eigen::Vector3d(std::sqrt(config.k2sq), 0, std::sqrt(config.k1sq))}) {
    const SpheroconalPoint p = spheroconal_from_direction(u, config.k1sq, config.k2sq);
    CHECK((direction(p) - u).norm() < 1e-9);
  }
  const double k1 = config.k1sq;
  const double k2 = config.k2sq;
  CHECK(testing::throws_code([&] { spheroconal_from_direction(Eigen::Vector3d(1, 1, 0), k1, k2); },
                             ErrorCode::InversionFailure));
}

TEST_CASE("sum rules through l = 20 over several asymmetries") {
  for (double e1 : {0.51, 0.66, 0.9, 0.99}) {
    const AsymmetryConfig config = from_e1(e1);
    for (int ell = 0; ell <= 20; ++ell) {
      double trace = 0.0;
      for (const auto& s : build_basis(ell, config)) {
        CHECK(std::abs(s.h1 + s.h2 - ell * (ell + 1.0)) < 1e-9);
        trace += s.estar2;
      }
      CHECK(std::abs(trace) < 1e-9);
    }
  }
}
