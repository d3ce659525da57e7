#include "spheroconal/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "spheroconal/elliptic.hpp"
#include "spheroconal/error.hpp"

namespace spheroconal {

namespace {

constexpr std::array<std::string_view, 8> kKindNames = {"L2", "Hstar", "Lx", "Ly",
                                                        "Lz", "Px",    "Py", "Pz"};

struct Derivatives {
  double d1 = 0.0;
  double d2 = 0.0;
  double d11 = 0.0;
  double d22 = 0.0;
};

Derivatives differences(const ScalarField& f, double c1, double c2, double h) {
  const double f0 = f(c1, c2);
  const double a1 = f(c1 + h, c2), a2 = f(c1 + 2 * h, c2);
  const double b1 = f(c1 - h, c2), b2 = f(c1 - 2 * h, c2);
  const double p1 = f(c1, c2 + h), p2 = f(c1, c2 + 2 * h);
  const double q1 = f(c1, c2 - h), q2 = f(c1, c2 - 2 * h);
  Derivatives d;
  d.d1 = (-a2 + 8 * a1 - 8 * b1 + b2) / (12 * h);
  d.d2 = (-p2 + 8 * p1 - 8 * q1 + q2) / (12 * h);
  d.d11 = (-a2 + 16 * a1 - 30 * f0 + 16 * b1 - b2) / (12 * h * h);
  d.d22 = (-p2 + 16 * p1 - 30 * f0 + 16 * q1 - q2) / (12 * h * h);
  return d;
}

double apply_kind(OperatorKind kind, const Derivatives& d, double chi1, double chi2,
                  const AsymmetryConfig& config) {
  const double k1 = config.k1sq;
  const double k2 = config.k2sq;
  const auto u = jacobi(chi1, k1);
  const auto v = jacobi(chi2, k2);
  const double s = 1.0 - k1 * u.sn * u.sn - k2 * v.sn * v.sn;
  switch (kind) {
    case OperatorKind::L2:
      return -(d.d11 + d.d22) / s;
    case OperatorKind::Hstar: {
      const double w1 = config.e1() - (config.e1() - config.e2()) * v.sn * v.sn;
      const double w2 = config.e3() + (config.e2() - config.e3()) * u.sn * u.sn;
      return -(w1 * d.d11 + w2 * d.d22) / (2.0 * s);
    }
    case OperatorKind::Lx:
      return -(u.dn * v.cn * v.dn * d.d1 + k1 * u.sn * u.cn * v.sn * d.d2) / s;
    case OperatorKind::Ly:
      return -(-u.cn * v.sn * v.dn * d.d1 + u.sn * u.dn * v.cn * d.d2) / s;
    case OperatorKind::Lz:
      return -(-k2 * u.sn * v.sn * v.cn * d.d1 - u.cn * u.dn * v.dn * d.d2) / s;
    case OperatorKind::Px:
      return (-k1 * u.sn * u.cn * v.sn * d.d1 + u.dn * v.cn * v.dn * d.d2) / s;
    case OperatorKind::Py:
      return (-u.sn * u.dn * v.cn * d.d1 - u.cn * v.sn * v.dn * d.d2) / s;
    case OperatorKind::Pz:
      return (u.cn * u.dn * v.dn * d.d1 - k2 * u.sn * v.sn * v.cn * d.d2) / s;
  }
  throw std::logic_error("unknown operator kind");
}

Eigen::VectorXd uniform(double lo, double hi, int n) {
  return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

}  // namespace

std::string_view to_string(OperatorKind kind) { return kKindNames[static_cast<int>(kind)]; }

std::optional<OperatorKind> parse_operator_kind(std::string_view name) {
  const auto same = [](std::string_view a, std::string_view b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
      return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
  };
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (same(name, kKindNames[i])) return static_cast<OperatorKind>(i);
  }
  return std::nullopt;
}

GridField make_grid(const AsymmetryConfig& config, int points1, int points2) {
  if (points1 < 2 || points2 < 2) throw std::invalid_argument("grid needs at least two points per axis");
  const double span1 = kGridMargin * 2.0 * quarter_period(config.k1sq);
  const double span2 = kGridMargin * quarter_period(config.k2sq);
  GridField grid;
  grid.chi1 = uniform(-span1, span1, points1);
  grid.chi2 = uniform(-span2, span2, points2);
  grid.values = Eigen::MatrixXd::Zero(points1, points2);
  grid.k1sq = config.k1sq;
  grid.k2sq = config.k2sq;
  return grid;
}

GridField sample(const GridField& grid, ScalarField function) {
  GridField out = grid;
  out.values.resize(grid.chi1.size(), grid.chi2.size());
  for (Eigen::Index i = 0; i < grid.chi1.size(); ++i) {
    for (Eigen::Index j = 0; j < grid.chi2.size(); ++j) {
      out.values(i, j) = function(grid.chi1[i], grid.chi2[j]);
    }
  }
  out.function = std::move(function);
  return out;
}

GridField sample(const GridField& grid, const SpheroconalHarmonic& state) {
  return sample(grid, [state](double c1, double c2) { return evaluate(state, c1, c2); });
}

GridField fd_operator(OperatorKind kind, const GridField& field, const AsymmetryConfig& config,
                      double step) {
  if (!field.function) throw std::invalid_argument("field carries no function to differentiate");
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const ScalarField f = field.function;

  const auto coarse = [f, kind, config, step](double c1, double c2) {
    return apply_kind(kind, differences(f, c1, c2, step), c1, c2, config);
  };
  const auto fine = [f, kind, config, step](double c1, double c2) {
    return apply_kind(kind, differences(f, c1, c2, 0.5 * step), c1, c2, config);
  };

  const auto rows = field.chi1.size();
  const auto cols = field.chi2.size();
  Eigen::MatrixXd a(rows, cols);
  Eigen::MatrixXd b(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      a(i, j) = coarse(field.chi1[i], field.chi2[j]);
      b(i, j) = fine(field.chi1[i], field.chi2[j]);
    }
  }
  const double scale = std::max({field.values.size() ? field.values.cwiseAbs().maxCoeff() : 0.0,
                                 b.size() ? b.cwiseAbs().maxCoeff() : 0.0,
                                 std::numeric_limits<double>::min()});
  const double spread = a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
  if (spread > kRichardsonTolerance * scale) {
    throw Error(ErrorCode::GridTooCoarse,
                "step and half step disagree by " + std::to_string(spread / scale));
  }

  GridField out = field;
  out.values = b + (b - a) / 15.0;
  out.function = [coarse, fine](double c1, double c2) {
    const double hi = fine(c1, c2);
    return hi + (hi - coarse(c1, c2)) / 15.0;
  };
  return out;
}

BasisFit fit_in_basis(const GridField& field, const std::vector<SpheroconalHarmonic>& basis) {
  const auto rows = field.chi1.size();
  const auto cols = field.chi2.size();
  const Eigen::Index points = rows * cols;
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd design(points, n);
  Eigen::VectorXd target(points);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Eigen::Index p = i * cols + j;
      target[p] = field.values(i, j);
      for (Eigen::Index k = 0; k < n; ++k) {
        design(p, k) = evaluate(basis[static_cast<std::size_t>(k)], field.chi1[i], field.chi2[j]);
      }
    }
  }
  BasisFit fit;
  fit.coefficients = Eigen::VectorXd::Zero(n);
  if (n > 0) {
    const Eigen::VectorXd norms = design.colwise().norm().transpose();
    if (norms.minCoeff() == 0.0) throw Error(ErrorCode::RankDeficient, "basis state vanishes on the grid");
    const Eigen::MatrixXd scaled = design * norms.cwiseInverse().asDiagonal();
    const Eigen::VectorXd gram = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                                     scaled.transpose() * scaled, Eigen::EigenvaluesOnly)
                                     .eigenvalues();
    if (!(gram[0] > 0.0) || gram[n - 1] / gram[0] > kMaxGramCondition) {
      throw Error(ErrorCode::RankDeficient, "basis is numerically dependent on the grid");
    }
    const Eigen::VectorXd y = scaled.colPivHouseholderQr().solve(target);
    fit.coefficients = y.cwiseQuotient(norms);
  }
  const double field_norm = target.norm();
  const double misfit = (design * fit.coefficients - target).norm();
  fit.residual = field_norm > 0.0 ? misfit / field_norm : misfit;
  return fit;
}

Eigen::VectorXd cartesian_rotor_energies(int ell, const AsymmetryConfig& config) {
  if (ell < 0) throw Error(ErrorCode::OutOfRange, "negative order");
  using Exponents = std::array<int, 3>;
  const auto monomials = [](int degree) {
    std::vector<Exponents> out;
    for (int a = degree; a >= 0; --a) {
      for (int b = degree - a; b >= 0; --b) out.push_back({a, b, degree - a - b});
    }
    return out;
  };
  const auto basis = monomials(ell);
  std::map<Exponents, Eigen::Index> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<Eigen::Index>(i);
  const auto n = static_cast<Eigen::Index>(basis.size());

  // Dᵢ = xⱼ∂ₖ − xₖ∂ⱼ for cyclic (i, j, k).
  std::array<Eigen::MatrixXd, 3> generators;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
      const Exponents m = basis[static_cast<std::size_t>(col)];
      if (m[k] > 0) {
        Exponents t = m;
        t[k] -= 1;
        t[j] += 1;
        d(index.at(t), col) += m[k];
      }
      if (m[j] > 0) {
        Exponents t = m;
        t[j] -= 1;
        t[k] += 1;
        d(index.at(t), col) -= m[j];
      }
    }
    generators[static_cast<std::size_t>(i)] = d;
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < 3; ++i) {
    const auto& d = generators[static_cast<std::size_t>(i)];
    h -= config.e[i] * d * d;
  }

  Eigen::MatrixXd harmonic = Eigen::MatrixXd::Identity(n, n);
  if (ell >= 2) {
    const auto lower = monomials(ell - 2);
    std::map<Exponents, Eigen::Index> lower_index;
    for (std::size_t i = 0; i < lower.size(); ++i) lower_index[lower[i]] = static_cast<Eigen::Index>(i);
    Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(lower.size()), n);
    for (Eigen::Index col = 0; col < n; ++col) {
      const Exponents m = basis[static_cast<std::size_t>(col)];
      for (int axis = 0; axis < 3; ++axis) {
        if (m[axis] < 2) continue;
        Exponents t = m;
        t[axis] -= 2;
        laplacian(lower_index.at(t), col) += m[axis] * (m[axis] - 1);
      }
    }
    harmonic = laplacian.fullPivLu().kernel();
  }
  const Eigen::MatrixXd restricted = harmonic.colPivHouseholderQr().solve(h * harmonic);
  Eigen::VectorXd values = Eigen::EigenSolver<Eigen::MatrixXd>(restricted, false).eigenvalues().real();
  std::sort(values.data(), values.data() + values.size());
  return values;
}

}  // namespace spheroconal
