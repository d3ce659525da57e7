#include "spheroconal/lame.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <limits>
#include <vector>

#include "spheroconal/error.hpp"

namespace spheroconal {

int matrix_size(int ell, Species species) {
  if (ell < 0 || species.factor_count() % 2 != ell % 2) {
    std::ostringstream msg;
    msg << "species " << species.name() << " does not belong to the kind of l = " << ell;
    throw Error(ErrorCode::WrongKind, msg.str());
  }
  return std::max(0, (ell - species.factor_count()) / 2 + 1);
}

Eigen::MatrixXd build_matrix(int ell, Species species, double ksq) {
  const int size = matrix_size(ell, species);
  const double coupling = static_cast<double>(ell) * (ell + 1) * ksq;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (int s = 0; s < size; ++s) {
    SnPoly basis{species, Eigen::VectorXd::Unit(s + 1, s), ksq};
    const SnPoly second = differentiate(differentiate(basis));
    Eigen::VectorXd image = Eigen::VectorXd::Zero(std::max<Eigen::Index>({second.coeffs.size(), s + 2, size}));
    image.head(second.coeffs.size()) -= second.coeffs;
    image[s + 1] += coupling;
    // The sn²ˢ⁺¹ term cancels only for the top basis element of a properly sized matrix.
    for (Eigen::Index r = size; r < image.size(); ++r) {
      if (std::abs(image[r]) > 1e-9 * (1.0 + coupling)) {
        throw std::logic_error("Lame operator does not close on the polynomial basis");
      }
    }
    m.col(s) = image.head(size);
  }
  return m;
}

namespace {

// det(M − xI) of a tridiagonal M by the three-term recurrence, rescaled to stay finite.
// Only the sign is meaningful.
double characteristic_value(const Eigen::MatrixXd& tridiagonal, double x) {
  const Eigen::Index n = tridiagonal.rows();
  double prev = 1.0;
  double cur = tridiagonal(0, 0) - x;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double next = (tridiagonal(i, i) - x) * cur -
                        tridiagonal(i, i - 1) * tridiagonal(i - 1, i) * prev;
    prev = cur;
    cur = next;
    const double size = std::max(std::abs(prev), std::abs(cur));
    if (size > 1e100) {
      prev /= size;
      cur /= size;
    }
  }
  return cur;
}

// Bisection on a sign change of the characteristic polynomial inside [left, right].
double bisect_root(const Eigen::MatrixXd& tridiagonal, double left, double right) {
  double fl = characteristic_value(tridiagonal, left);
  for (int iter = 0; iter < 200 && right - left > 1e-15 * std::max(1.0, std::abs(left)); ++iter) {
    const double mid = 0.5 * (left + right);
    const double fm = characteristic_value(tridiagonal, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fl < 0.0)) {
      left = mid;
      fl = fm;
    } else {
      right = mid;
    }
  }
  return 0.5 * (left + right);
}

}  // namespace

Eigen::VectorXd tridiagonal_eigenvalues_bisection(const Eigen::MatrixXd& tridiagonal) {
  const Eigen::Index n = tridiagonal.rows();
  if (n == 0) return {};
  double lo = 0.0;
  double hi = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i + 1 < n) radius += std::abs(tridiagonal(i, i + 1));
    if (i > 0) radius += std::abs(tridiagonal(i, i - 1));
    const double d = tridiagonal(i, i);
    lo = i == 0 ? d - radius : std::min(lo, d - radius);
    hi = i == 0 ? d + radius : std::max(hi, d + radius);
  }

  auto characteristic = [&](double x) { return characteristic_value(tridiagonal, x); };

  std::vector<double> roots;
  const int cells = 4000 * static_cast<int>(n);
  const double width = (hi - lo) + 2.0;
  double a = lo - 1.0;
  double fa = characteristic(a);
  for (int c = 1; c <= cells && static_cast<Eigen::Index>(roots.size()) < n; ++c) {
    const double b = lo - 1.0 + width * c / cells;
    const double fb = characteristic(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0)) {
      roots.push_back(bisect_root(tridiagonal, a, b));
    }
    a = b;
    fa = fb;
  }
  if (static_cast<Eigen::Index>(roots.size()) != n) {
    throw Error(ErrorCode::DegenerateEigenvalues, "characteristic polynomial roots not isolated");
  }
  return Eigen::Map<Eigen::VectorXd>(roots.data(), n);
}

namespace {

constexpr double kImaginaryTolerance = 1e-9;

// Tridiagonal matrix held as diagonal and off-diagonal products in extended precision.
struct ExtendedTridiagonal {
  std::vector<long double> diagonal;
  std::vector<long double> product;

  long double characteristic(long double x) const {
    long double prev = 1;
    long double cur = diagonal[0] - x;
    for (std::size_t i = 1; i < diagonal.size(); ++i) {
      const long double next = (diagonal[i] - x) * cur - product[i] * prev;
      prev = cur;
      cur = next;
      const long double size = std::max(std::abs(prev), std::abs(cur));
      if (size > 1e100L) {
        prev /= size;
        cur /= size;
      }
    }
    return cur;
  }

  long double bisect(long double left, long double right) const {
    const bool negative_left = characteristic(left) < 0;
    for (int iter = 0; iter < 200; ++iter) {
      const long double mid = (left + right) / 2;
      if (mid == left || mid == right) break;
      const long double fm = characteristic(mid);
      if (fm == 0) return mid;
      if ((fm < 0) == negative_left) {
        left = mid;
      } else {
        right = mid;
      }
    }
    return (left + right) / 2;
  }
};

// Entries of M are polynomials of degree ≤ 2 in k² with integer values at k² = 0, 1, 2,
// so interpolating those samples reproduces them without the rounding of k²-products.
ExtendedTridiagonal extended_matrix(int ell, Species species, double ksq) {
  const Eigen::MatrixXd m0 = build_matrix(ell, species, 0.0);
  const Eigen::MatrixXd m1 = build_matrix(ell, species, 1.0);
  const Eigen::MatrixXd m2 = build_matrix(ell, species, 2.0);
  const long double x = ksq;
  auto entry = [&](Eigen::Index i, Eigen::Index j) {
    const long double a = m0(i, j);
    const long double b = m1(i, j);
    const long double c = m2(i, j);
    return a + x * (-3 * a + 4 * b - c) / 2 + x * x * (a - 2 * b + c) / 2;
  };
  ExtendedTridiagonal out;
  const Eigen::Index n = m0.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    out.diagonal.push_back(entry(i, i));
    out.product.push_back(i == 0 ? 0 : entry(i, i - 1) * entry(i - 1, i));
  }
  return out;
}


Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& m, double h) {
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXd shifted = m - h * Eigen::MatrixXd::Identity(n, n);
  // The eigenvalue is simple, so the kernel is the null singular vector.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
  return svd.matrixV().col(n - 1);
}

}  // namespace

std::vector<LamePolynomial> solve(int ell, Species species, double ksq, Side side) {
  const Eigen::MatrixXd m = build_matrix(ell, species, ksq);
  const Eigen::Index n = m.rows();
  if (n == 0) return {};

  // The power basis gives negative off-diagonal products, so no diagonal similarity
  // symmetrizes M; the spectrum is still real and simple.
  // Equal off-diagonal magnitudes keep the Hessenberg iteration well conditioned.
  Eigen::MatrixXd balanced = m;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double product = std::abs(m(k, k + 1) * m(k + 1, k));
    const double magnitude = std::sqrt(product);
    balanced(k, k + 1) = std::copysign(magnitude, m(k, k + 1));
    balanced(k + 1, k) = std::copysign(magnitude, m(k + 1, k));
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(balanced, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::DegenerateEigenvalues, "Lame eigenvalue iteration failed");
  }
  const Eigen::VectorXcd raw = solver.eigenvalues();
  const double magnitude = std::max(1.0, raw.cwiseAbs().maxCoeff());
  Eigen::VectorXd values(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(raw[k].imag()) > kImaginaryTolerance * magnitude) {
      throw Error(ErrorCode::DegenerateEigenvalues, "Lame matrix has a complex eigenvalue pair");
    }
    values[k] = raw[k].real();
  }
  std::sort(values.data(), values.data() + n);

  // The Hessenberg estimates lose digits in the middle of the spectrum for large ℓ;
  // refine each one on the nearest sign change of the extended-precision characteristic polynomial.
  const ExtendedTridiagonal extended = extended_matrix(ell, species, ksq);
  const Eigen::VectorXd estimates = values;
  for (Eigen::Index k = 0; k < n; ++k) {
    double limit = std::numeric_limits<double>::infinity();
    if (k > 0) limit = std::min(limit, 0.5 * (estimates[k] - estimates[k - 1]));
    if (k + 1 < n) limit = std::min(limit, 0.5 * (estimates[k + 1] - estimates[k]));
    double reach = std::min(limit, 1e-7 * std::max(1.0, std::abs(estimates[k])));
    for (int widen = 0; widen < 8 && reach > 0.0; ++widen, reach = std::min(limit, 4.0 * reach)) {
      const long double left = estimates[k] - reach;
      const long double right = estimates[k] + reach;
      if ((extended.characteristic(left) < 0) != (extended.characteristic(right) < 0)) {
        values[k] = static_cast<double>(extended.bisect(left, right));
        break;
      }
    }
  }

  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (values[k + 1] - values[k] < 1e-10) {
      std::ostringstream msg;
      msg << "eigenvalues " << values[k] << " and " << values[k + 1] << " of (l="
          << ell << ", " << species.name() << ", ksq=" << ksq << ") are degenerate";
      throw Error(ErrorCode::DegenerateEigenvalues, msg.str());
    }
  }

std::vector<LamePolynomial> out;
  out.reserve(static_cast<std::size_t>(n));
  const int base = node_base(species, side);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd coeffs = kernel_vector(m, values[k]);
    coeffs /= coeffs[0];
    out.push_back({ell, species, side, base + 2 * static_cast<int>(k), values[k],
                   SnPoly{species, coeffs, ksq}});
  }
  return out;
}

double ode_residual(const LamePolynomial& lame, int samples) {
  const double ksq = lame.poly.ksq;
  const double period = 4.0 * quarter_period(ksq);
  const double coupling = static_cast<double>(lame.ell) * (lame.ell + 1) * ksq;
  const SnPoly second = differentiate(differentiate(lame.poly));
  double worst = 0.0;
  double scale = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double chi = -0.5 * period + period * (j + 0.5) / samples;
    const auto values = jacobi(chi, ksq);
    const double t = values.sn * values.sn;
    const double f = evaluate(lame.poly, values);
    const double f2 = evaluate(second, values);
    const double potential = coupling * t * f;
    worst = std::max(worst, std::abs(-f2 + potential - lame.h * f));
    scale = std::max(scale, std::abs(f2) + std::abs(potential) + std::abs(lame.h * f));
  }
  return scale == 0.0 ? worst : worst / scale;
}

Eigen::MatrixXd coefficient_matrix(const std::vector<LamePolynomial>& states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.row(k) = states[static_cast<std::size_t>(k)].poly.coeffs.transpose();
  }
  return out;
}

}  // namespace spheroconal
