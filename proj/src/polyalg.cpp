#include "spheroconal/polyalg.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <sstream>

#include "spheroconal/error.hpp"

namespace spheroconal {

namespace sn2 {

Eigen::VectorXd multiply(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() == 0 || b.size() == 0) return Eigen::VectorXd();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i, b.size()) += a[i] * b;
  }
  return out;
}

Eigen::VectorXd add(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(std::max(a.size(), b.size()));
  out.head(a.size()) += a;
  out.head(b.size()) += b;
  return out;
}

Eigen::VectorXd derivative(const Eigen::VectorXd& a) {
  if (a.size() <= 1) return Eigen::VectorXd::Zero(1);
  Eigen::VectorXd out(a.size() - 1);
  for (Eigen::Index i = 1; i < a.size(); ++i) out[i - 1] = static_cast<double>(i) * a[i];
  return out;
}

double evaluate(const Eigen::VectorXd& a, double t) {
  double acc = 0.0;
  for (Eigen::Index i = a.size() - 1; i >= 0; --i) acc = acc * t + a[i];
  return acc;
}

Eigen::VectorXd square_of(Factor f, double ksq) {
  switch (f) {
    case Factor::s: return Eigen::Vector2d(0.0, 1.0);
    case Factor::c: return Eigen::Vector2d(1.0, -1.0);
    case Factor::d: return Eigen::Vector2d(1.0, -ksq);
  }
  return Eigen::VectorXd();
}

Eigen::VectorXd trimmed(const Eigen::VectorXd& a, double threshold) {
  Eigen::Index n = a.size();
  while (n > 1 && std::abs(a[n - 1]) <= threshold) --n;
  return a.head(n);
}

}  // namespace sn2

namespace {

double prefactor(Species species, const JacobiTriple<double>& v) {
  double out = 1.0;
  if (species.has(Factor::s)) out *= v.sn;
  if (species.has(Factor::c)) out *= v.cn;
  if (species.has(Factor::d)) out *= v.dn;
  return out;
}

Eigen::VectorXd constant(double value) { return Eigen::VectorXd::Constant(1, value); }

// Coefficient polynomials Q with d/dχ [A·P(t)] = A' · Q(t), where A' is the complement
// species. Derived from sn' = cn dn, cn' = −sn dn, dn' = −k² sn cn and dt/dχ = 2 sn cn dn.
Eigen::VectorXd derivative_coefficients(Species species, const Eigen::VectorXd& p, double ksq) {
  const bool has_s = species.has(Factor::s);
  const bool has_c = species.has(Factor::c);
  const bool has_d = species.has(Factor::d);
  const Eigen::VectorXd s2 = has_s ? sn2::square_of(Factor::s, ksq) : constant(1.0);
  const Eigen::VectorXd c2 = has_c ? sn2::square_of(Factor::c, ksq) : constant(1.0);
  const Eigen::VectorXd d2 = has_d ? sn2::square_of(Factor::d, ksq) : constant(1.0);

  Eigen::VectorXd out = 2.0 * sn2::multiply(sn2::multiply(sn2::multiply(s2, c2), d2),
                                            sn2::derivative(p));
  if (has_s) out = sn2::add(out, sn2::multiply(sn2::multiply(c2, d2), p));
  if (has_c) out = sn2::add(out, -sn2::multiply(sn2::multiply(s2, d2), p));
  if (has_d) out = sn2::add(out, -ksq * sn2::multiply(sn2::multiply(s2, c2), p));
  return out;
}

Eigen::MatrixXd padded(const Eigen::MatrixXd& m, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

}  // namespace

double evaluate(const SnPoly& p, double chi) { return evaluate(p, jacobi(chi, p.ksq)); }

double evaluate(const SnPoly& p, const JacobiTriple<double>& values) {
  return prefactor(p.species, values) * sn2::evaluate(p.coeffs, values.sn * values.sn);
}

SnPoly differentiate(const SnPoly& p) {
  return {p.species.complement(), derivative_coefficients(p.species, p.coeffs, p.ksq), p.ksq};
}

SnPoly mul_factor(const SnPoly& p, Factor f) {
  if (!p.species.has(f)) return {p.species.flipped(f), p.coeffs, p.ksq};
  return {p.species.flipped(f), sn2::multiply(sn2::square_of(f, p.ksq), p.coeffs), p.ksq};
}

bool is_zero(const SnPoly& p, double scale) {
  return p.coeffs.size() == 0 || p.coeffs.cwiseAbs().maxCoeff() < kZeroThreshold * scale;
}

double evaluate(const BiSnPoly& p, double chi1, double chi2) {
  return evaluate(p, jacobi(chi1, p.k1sq), jacobi(chi2, p.k2sq));
}

double evaluate(const BiSnPoly& p, const JacobiTriple<double>& first,
                const JacobiTriple<double>& second) {
  const double t1 = first.sn * first.sn;
  const double t2 = second.sn * second.sn;
  double acc = 0.0;
  for (Eigen::Index i = p.coeffs.rows() - 1; i >= 0; --i) {
    double row = 0.0;
    for (Eigen::Index j = p.coeffs.cols() - 1; j >= 0; --j) row = row * t2 + p.coeffs(i, j);
    acc = acc * t1 + row;
  }
  return prefactor(p.first, first) * prefactor(p.second, second) * acc;
}

BiSnPoly outer(const SnPoly& a, const SnPoly& b) {
  return {a.species, b.species, a.coeffs * b.coeffs.transpose(), a.ksq, b.ksq};
}

BiSnPoly differentiate(const BiSnPoly& p, Side side) {
  BiSnPoly out{p.first, p.second, Eigen::MatrixXd(), p.k1sq, p.k2sq};
  if (side == Side::first) {
    out.first = p.first.complement();
    for (Eigen::Index j = 0; j < p.coeffs.cols(); ++j) {
      const Eigen::VectorXd column = derivative_coefficients(p.first, p.coeffs.col(j), p.k1sq);
      if (j == 0) out.coeffs = Eigen::MatrixXd::Zero(column.size(), p.coeffs.cols());
      out.coeffs.col(j) = column;
    }
  } else {
    out.second = p.second.complement();
    for (Eigen::Index i = 0; i < p.coeffs.rows(); ++i) {
      const Eigen::VectorXd row =
          derivative_coefficients(p.second, p.coeffs.row(i).transpose(), p.k2sq);
      if (i == 0) out.coeffs = Eigen::MatrixXd::Zero(p.coeffs.rows(), row.size());
      out.coeffs.row(i) = row.transpose();
    }
  }
  return out;
}

BiSnPoly mul_factor(const BiSnPoly& p, Side side, Factor f) {
  BiSnPoly out = p;
  if (side == Side::first) {
    out.first = p.first.flipped(f);
    if (!p.first.has(f)) return out;
    const Eigen::VectorXd square = sn2::square_of(f, p.k1sq);
    out.coeffs = Eigen::MatrixXd::Zero(p.coeffs.rows() + 1, p.coeffs.cols());
    for (Eigen::Index j = 0; j < p.coeffs.cols(); ++j) {
      out.coeffs.col(j) = sn2::multiply(square, p.coeffs.col(j));
    }
  } else {
    out.second = p.second.flipped(f);
    if (!p.second.has(f)) return out;
    const Eigen::VectorXd square = sn2::square_of(f, p.k2sq);
    out.coeffs = Eigen::MatrixXd::Zero(p.coeffs.rows(), p.coeffs.cols() + 1);
    for (Eigen::Index i = 0; i < p.coeffs.rows(); ++i) {
      out.coeffs.row(i) = sn2::multiply(square, p.coeffs.row(i).transpose()).transpose();
    }
  }
  return out;
}

BiSnPoly operator*(double scalar, const BiSnPoly& p) {
  BiSnPoly out = p;
  out.coeffs *= scalar;
  return out;
}

bool is_zero(const BiSnPoly& p, double scale) {
  return p.coeffs.size() == 0 || p.max_abs() < kZeroThreshold * scale;
}

BiSnPoly operator+(const BiSnPoly& a, const BiSnPoly& b) {
  if (a.coeffs.size() == 0 || a.max_abs() == 0.0) return b;
  if (b.coeffs.size() == 0 || b.max_abs() == 0.0) return a;
  if (!(a.first == b.first) || !(a.second == b.second)) {
    throw std::invalid_argument("cannot add BiSnPoly terms of species (" + a.first.name() +
                                "," + a.second.name() + ") and (" + b.first.name() + "," +
                                b.second.name() + ")");
  }
  const Eigen::Index rows = std::max(a.coeffs.rows(), b.coeffs.rows());
  const Eigen::Index cols = std::max(a.coeffs.cols(), b.coeffs.cols());
  BiSnPoly out = a;
  out.coeffs = padded(a.coeffs, rows, cols) + padded(b.coeffs, rows, cols);
  return out;
}

BiSnPoly scale_polynomial(double k1sq, double k2sq) {
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(2, 2);
  coeffs(0, 0) = 1.0;
  coeffs(1, 0) = -k1sq;
  coeffs(0, 1) = -k2sq;
  return {Species::one(), Species::one(), coeffs, k1sq, k2sq};
}

BiSnPoly multiply_by_scale(const BiSnPoly& p) {
  BiSnPoly out = p;
  const Eigen::Index rows = p.coeffs.rows();
  const Eigen::Index cols = p.coeffs.cols();
  out.coeffs = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  out.coeffs.topLeftCorner(rows, cols) += p.coeffs;
  out.coeffs.bottomLeftCorner(rows, cols) -= p.k1sq * p.coeffs;
  out.coeffs.topRightCorner(rows, cols) -= p.k2sq * p.coeffs;
  return out;
}

ScaleQuotient divide_by_scale_checked(const BiSnPoly& p) {
  ScaleQuotient result;
  result.quotient = p;
  const double scale = p.max_abs();
  if (p.coeffs.rows() < 2 || p.coeffs.cols() < 2 || scale == 0.0) {
    result.quotient.coeffs = Eigen::MatrixXd::Zero(1, 1);
    result.relative_remainder = scale == 0.0 ? 0.0 : 1.0;
    return result;
  }

  // p = S q with S = 1 − k₁²t₁ − k₂²t₂ gives q(i,j) = p(i,j) + k₁² q(i−1,j) + k₂² q(i,j−1);
  // each degree of q is one less than that of p.
  const Eigen::Index rows = p.coeffs.rows() - 1;
  const Eigen::Index cols = p.coeffs.cols() - 1;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double value = p.coeffs(i, j);
      if (i > 0) value += p.k1sq * q(i - 1, j);
      if (j > 0) value += p.k2sq * q(i, j - 1);
      q(i, j) = value;
    }
  }
  result.quotient.coeffs = q;
  const Eigen::MatrixXd remainder = p.coeffs - multiply_by_scale(result.quotient).coeffs;
  result.relative_remainder = remainder.cwiseAbs().maxCoeff() / scale;
  return result;
}

BiSnPoly divide_by_scale(const BiSnPoly& p) {
  ScaleQuotient result = divide_by_scale_checked(p);
  if (result.relative_remainder > kDivisibilityTolerance) {
    std::ostringstream msg;
    msg << "polynomial of species (" << p.first.name() << "," << p.second.name()
        << ") leaves relative remainder " << result.relative_remainder
        << " after division by the scale factor";
    throw Error(ErrorCode::NotDivisible, msg.str());
  }
  return std::move(result.quotient);
}

Eigen::MatrixXd invert_basis(const Eigen::MatrixXd& forward) {
  if (forward.rows() != forward.cols() || forward.rows() == 0) {
    throw Error(ErrorCode::Singular, "basis coefficient matrix must be square and non-empty");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(forward);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double condition = sigma[0] / sigma[sigma.size() - 1];
  if (!(condition <= 1e12)) {
    std::ostringstream msg;
    msg << "basis coefficient matrix has condition number " << condition;
    throw Error(ErrorCode::Singular, msg.str());
  }
  return forward.partialPivLu().inverse();
}

}  // namespace spheroconal
