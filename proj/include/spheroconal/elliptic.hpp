#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spheroconal/error.hpp"

namespace spheroconal {

// Parameter convention throughout: ksq is the parameter m = k², never the modulus k.

template <typename Scalar>
struct JacobiTriple {
  Scalar sn;
  Scalar cn;
  Scalar dn;
};

namespace detail {

template <typename Scalar>
void require_parameter(Scalar ksq) {
  if (!(ksq >= Scalar(0) && ksq <= Scalar(1))) {
    std::ostringstream msg;
    msg << "elliptic parameter must lie in [0, 1], got " << ksq;
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
}

}  // namespace detail

/// sn, cn, dn of (u | ksq) by the descending Landen (AGM) transformation,
/// seeded with the circular amplitude 2ᴺ aₙ u.
template <typename Scalar>
JacobiTriple<Scalar> jacobi(Scalar u, Scalar ksq) {
  using std::abs;
  using std::asin;
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sqrt;
  using std::tanh;
  detail::require_parameter(ksq);

  if (ksq == Scalar(0)) return {sin(u), cos(u), Scalar(1)};
  if (ksq == Scalar(1)) {
    const Scalar sech = Scalar(1) / cosh(u);
    return {tanh(u), sech, sech};
  }

  constexpr int kMaxSteps = 40;
  std::array<Scalar, kMaxSteps + 1> a{};
  std::array<Scalar, kMaxSteps + 1> c{};
  a[0] = Scalar(1);
  c[0] = sqrt(ksq);
  Scalar b = sqrt(Scalar(1) - ksq);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  int n = 0;
  while (n < kMaxSteps && abs(c[n]) > eps * a[n]) {
    a[n + 1] = (a[n] + b) / Scalar(2);
    c[n + 1] = (a[n] - b) / Scalar(2);
    b = sqrt(a[n] * b);
    ++n;
  }

  Scalar phi = std::ldexp(Scalar(1), n) * a[n] * u;
  for (int j = n; j > 0; --j) {
    phi = (phi + asin(c[j] / a[j] * sin(phi))) / Scalar(2);
  }
  const Scalar sn = sin(phi);
  const Scalar cn = cos(phi);
  // dn ≥ √(1−k²) > 0 on the real line.
  const Scalar dn = sqrt(Scalar(1) - ksq * sn * sn);
  return {sn, cn, dn};
}

/// Arithmetic-geometric mean of two non-negative numbers.
template <typename Scalar>
Scalar agm(Scalar x, Scalar y) {
  using std::abs;
  using std::sqrt;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int i = 0; i < 64 && abs(x - y) > eps * x; ++i) {
    const Scalar mean = (x + y) / Scalar(2);
    y = sqrt(x * y);
    x = mean;
  }
  return x;
}

/// Complete elliptic integral of the first kind K(ksq) = π / (2 agm(1, √(1−ksq))).
template <typename Scalar>
Scalar quarter_period(Scalar ksq) {
  detail::require_parameter(ksq);
  if (ksq == Scalar(1)) {
    throw Error(ErrorCode::Divergent, "quarter period K(1) is logarithmically infinite");
  }
  using std::sqrt;
  return std::numbers::pi_v<Scalar> / (Scalar(2) * agm(Scalar(1), sqrt(Scalar(1) - ksq)));
}

}  // namespace spheroconal
