#pragma once

// Truncated power series in one variable and the Taylor recurrence of the
// radial Monge-Ampere problem (y'/r)^{n-1} y'' = e^y at the origin.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tycz {

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real power series c_0 + c_1 t + ... + c_N t^N centred at 0, truncated at
/// degree N. Every operation keeps the truncation degree; nothing is ever
/// silently extended.
template <typename T>
class TaylorPoly {
 public:
  TaylorPoly() : c_(1, T(0)) {}

  explicit TaylorPoly(int order) : c_(checked_size(order), T(0)) {}

  explicit TaylorPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw SeriesError("TaylorPoly needs at least one coefficient");
  }

  static TaylorPoly constant(T value, int order) {
    TaylorPoly p(order);
    p.c_[0] = value;
    return p;
  }

  /// The series of x0 + t.
  static TaylorPoly variable(T x0, int order) {
    TaylorPoly p(order);
    p.c_[0] = x0;
    if (order >= 1) p.c_[1] = T(1);
    return p;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  T center() const { return T(0); }
  const std::vector<T>& coeffs() const { return c_; }
  T operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  T& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  T eval(T t) const {
    T acc = T(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  /// Term-wise derivative. The result is only known through degree N-1.
  TaylorPoly derivative() const {
    if (order() == 0) return TaylorPoly(0);
    TaylorPoly d(order() - 1);
    for (int k = 1; k <= order(); ++k) d.c_[k - 1] = T(k) * c_[k];
    return d;
  }

  TaylorPoly truncated(int new_order) const {
    if (new_order > order())
      throw SeriesError("cannot extend a truncated series from order " + std::to_string(order()) +
                        " to " + std::to_string(new_order));
    return TaylorPoly(std::vector<T>(c_.begin(), c_.begin() + new_order + 1));
  }

  /// Exact division by t^k: drops the first k coefficients, which must vanish
  /// to within `tol` relative to `scale`.
  TaylorPoly divided_by_power(int k, T scale = T(1), T tol = T(-1)) const {
    if (k > order()) throw SeriesError("division by t^k leaves no coefficients");
    if (tol < T(0)) tol = T(64) * std::numeric_limits<T>::epsilon();
    for (int j = 0; j < k; ++j) {
      using std::abs;
      if (abs(c_[j]) > tol * std::max(T(1), abs(scale)))
        throw SeriesError("leading coefficient of degree " + std::to_string(j) +
                          " does not cancel; cannot divide by t^" + std::to_string(k));
    }
    return TaylorPoly(std::vector<T>(c_.begin() + k, c_.end()));
  }

  TaylorPoly operator-() const {
    TaylorPoly r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }
  TaylorPoly& operator+=(const TaylorPoly& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  TaylorPoly& operator-=(const TaylorPoly& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  TaylorPoly& operator+=(T s) {
    c_[0] += s;
    return *this;
  }
  TaylorPoly& operator-=(T s) {
    c_[0] -= s;
    return *this;
  }
  TaylorPoly& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  TaylorPoly& operator/=(T s) {
    for (auto& v : c_) v /= s;
    return *this;
  }

  void require_same_order(const TaylorPoly& o) const {
    if (o.order() != order())
      throw SeriesError("order mismatch: " + std::to_string(order()) + " vs " +
                        std::to_string(o.order()));
  }

 private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw SeriesError("negative truncation order");
    return static_cast<std::size_t>(order) + 1;
  }

  std::vector<T> c_;
};

/// Cauchy product truncated at the common order.
template <typename T>
TaylorPoly<T> series_mul(const TaylorPoly<T>& a, const TaylorPoly<T>& b) {
  a.require_same_order(b);
  const int n = a.order();
  TaylorPoly<T> r(n);
  for (int k = 0; k <= n; ++k) {
    T acc = T(0);
    for (int i = 0; i <= k; ++i) acc += a[i] * b[k - i];
    r[k] = acc;
  }
  return r;
}

/// a / b with b_0 != 0. Constant terms smaller than 1e-300 are rejected.
template <typename T>
TaylorPoly<T> series_div(const TaylorPoly<T>& a, const TaylorPoly<T>& b) {
  a.require_same_order(b);
  using std::abs;
  if (!(abs(b[0]) > T(1e-300)))
    throw SeriesError("division by a series with vanishing constant term");
  const int n = a.order();
  TaylorPoly<T> q(n);
  for (int k = 0; k <= n; ++k) {
    T acc = a[k];
    for (int i = 1; i <= k; ++i) acc -= b[i] * q[k - i];
    q[k] = acc / b[0];
  }
  return q;
}

/// exp(a) via E' = a' E, seeded with e^{a_0}.
template <typename T>
TaylorPoly<T> series_exp(const TaylorPoly<T>& a) {
  using std::exp;
  const int n = a.order();
  TaylorPoly<T> e(n);
  e[0] = exp(a[0]);
  for (int k = 1; k <= n; ++k) {
    T acc = T(0);
    for (int j = 1; j <= k; ++j) acc += T(j) * a[j] * e[k - j];
    e[k] = acc / T(k);
  }
  return e;
}

/// Non-negative integer power by repeated squaring.
template <typename T>
TaylorPoly<T> series_pow(const TaylorPoly<T>& a, int p) {
  if (p < 0) throw SeriesError("negative power of a series; use series_div");
  TaylorPoly<T> result = TaylorPoly<T>::constant(T(1), a.order());
  TaylorPoly<T> base = a;
  while (p > 0) {
    if (p & 1) result = series_mul(result, base);
    p >>= 1;
    if (p) base = series_mul(base, base);
  }
  return result;
}

template <typename T>
TaylorPoly<T> operator+(TaylorPoly<T> a, const TaylorPoly<T>& b) { return a += b; }
template <typename T>
TaylorPoly<T> operator-(TaylorPoly<T> a, const TaylorPoly<T>& b) { return a -= b; }
template <typename T>
TaylorPoly<T> operator*(const TaylorPoly<T>& a, const TaylorPoly<T>& b) { return series_mul(a, b); }
template <typename T>
TaylorPoly<T> operator/(const TaylorPoly<T>& a, const TaylorPoly<T>& b) { return series_div(a, b); }
template <typename T>
TaylorPoly<T> operator+(TaylorPoly<T> a, T s) { return a += s; }
template <typename T>
TaylorPoly<T> operator+(T s, TaylorPoly<T> a) { return a += s; }
template <typename T>
TaylorPoly<T> operator-(TaylorPoly<T> a, T s) { return a -= s; }
template <typename T>
TaylorPoly<T> operator-(T s, const TaylorPoly<T>& a) { return (-a) += s; }
template <typename T>
TaylorPoly<T> operator*(TaylorPoly<T> a, T s) { return a *= s; }
template <typename T>
TaylorPoly<T> operator*(T s, TaylorPoly<T> a) { return a *= s; }
template <typename T>
TaylorPoly<T> operator/(TaylorPoly<T> a, T s) { return a /= s; }
template <typename T>
TaylorPoly<T> operator/(T s, const TaylorPoly<T>& a) {
  return series_div(TaylorPoly<T>::constant(s, a.order()), a);
}

// ADL hook so generic closed forms can be written once for scalars and series.
template <typename T>
TaylorPoly<T> exp(const TaylorPoly<T>& a) { return series_exp(a); }

/// Integer power usable for both scalars and series.
template <typename S>
S ipow(const S& x, int p) {
  S result = x;
  for (int k = 1; k < p; ++k) result = result * x;
  return result;
}

// ---------------------------------------------------------------------------
// Calabi's Cauchy problem at the origin.

/// Even Taylor series of the solution of (y'/r)^{n-1} y'' = e^y, y'(0) = 0,
/// y''(0) = e^{y0/n}, truncated at even degree `order` >= 6.
///
/// The coefficient b_{2k} (k >= 2) enters the degree-(2k-2) coefficient of
/// P^{n-1} y'' (P = y'/r) linearly with weight P_0^{n-1} 2k (2k+n-2), and the
/// matching coefficient of e^y only involves b_2 .. b_{2k-2}; the recurrence
/// is solved degree by degree from the seed b_2 = e^{y0/n}/2.
template <typename T>
TaylorPoly<T> calabi_series(T y0, int n, int order) {
  if (n < 1) throw SeriesError("complex dimension must be positive");
  if (order < 6 || order % 2 != 0)
    throw SeriesError("calabi_series needs an even truncation order >= 6, got " +
                      std::to_string(order));
  using std::exp;
  TaylorPoly<T> y(order);
  y[0] = y0;
  y[2] = exp(y0 / T(n)) / T(2);
  const T p0 = T(2) * y[2];
  const T p0_pow = std::pow(p0, n - 1);

  for (int k = 2; 2 * k <= order; ++k) {
    const int deg = 2 * k - 2;
    // P = y'/r and y'' with b_{2k} still zero, truncated at degree `deg`.
    TaylorPoly<T> P(deg), ypp(deg);
    for (int j = 1; 2 * j - 2 <= deg; ++j) {
      P[2 * j - 2] = T(2 * j) * y[2 * j];
      ypp[2 * j - 2] = T(2 * j) * T(2 * j - 1) * y[2 * j];
    }
    const TaylorPoly<T> lhs = series_mul(series_pow(P, n - 1), ypp);
    const TaylorPoly<T> rhs = series_exp(y.truncated(deg));
    y[2 * k] = (rhs[deg] - lhs[deg]) / (p0_pow * T(2 * k) * T(2 * k + n - 2));
    if (!std::isfinite(static_cast<double>(y[2 * k])))
      throw SeriesError("nonconvergent recurrence at degree " + std::to_string(2 * k));
  }
  return y;
}

/// P = y'/r, Q = P'/r, S = Q'/r. Each is truncated at the highest degree the
/// input determines (N-2, N-4, N-6).
template <typename T>
struct PQSTriple {
  TaylorPoly<T> P, Q, S;
};

template <typename T>
bool has_vanishing_odd_part(const TaylorPoly<T>& y) {
  for (int k = 1; k <= y.order(); k += 2)
    if (y[k] != T(0)) return false;
  return true;
}

template <typename T>
PQSTriple<T> pqs_series(const TaylorPoly<T>& y) {
  if (!has_vanishing_odd_part(y)) throw SeriesError("pqs_series needs an even series");
  if (y.order() < 6) throw SeriesError("pqs_series needs order >= 6");
  // Odd coefficients are exactly zero, so the t^0 term of y' and the constant
  // parts of P', Q' vanish exactly and the shifts below lose nothing.
  PQSTriple<T> out;
  out.P = y.derivative().divided_by_power(1, T(1), T(0));
  out.Q = out.P.derivative().divided_by_power(1, T(1), T(0));
  out.S = out.Q.derivative().divided_by_power(1, T(1), T(0));
  return out;
}

/// The two origin limits that show lim_{r->0} |R|^2 = 3/2 for n = 2.
///   L1 = lim (r^3/y'^3)(-8e^{3y} + 4 y'^2 e^{2y}/r^2 - 2 y'^4 e^y/r^4 + 6 y'^6/r^6) r^-2 e^{-2y}
///   L2 = lim (r^6/y'^6)(e^{4y} - e^{3y} y'^2/r^2 - e^y y'^6/r^6 + y'^8/r^8) r^-4 e^{-2y}
/// `*_series` read the constant term of the full series after exact
/// cancellation; `*_pqs` evaluate the de l'Hopital-reduced forms in P, Q, S.
template <typename T>
struct OriginLimits {
  T L1 = 0, L2 = 0;
  T inner1 = 0, inner2 = 0;  // limits before the r^3/y'^3 e^{-2y} (resp. r^6/y'^6 e^{-2y}) factor
  T L1_pqs = 0, L2_pqs = 0;
  T inner1_pqs = 0, inner2_pqs = 0;
  int order = 0;
};

/// Numerators of the two origin-limit brackets as even series in r.
template <typename T>
struct OriginNumerators {
  TaylorPoly<T> E;   // e^y
  TaylorPoly<T> P;   // y'/r
  TaylorPoly<T> N1;  // -8E^3 + 4E^2P^2 - 2EP^4 + 6P^6
  TaylorPoly<T> N2;  // E^4 - E^3P^2 - EP^6 + P^8
};

template <typename T>
OriginNumerators<T> origin_numerators(const TaylorPoly<T>& y) {
  if (!has_vanishing_odd_part(y)) throw SeriesError("origin expressions need an even series");
  if (y.order() < 6)
    throw SeriesError("order " + std::to_string(y.order()) +
                      " cannot resolve the r^4 cancellation (need >= 6)");
  const int m = y.order() - 2;
  OriginNumerators<T> out;
  out.P = y.derivative().divided_by_power(1, T(1), T(0));
  out.E = series_exp(y.truncated(m));
  const auto& E = out.E;
  const auto& P = out.P;
  const auto P2 = series_mul(P, P);
  const auto P4 = series_mul(P2, P2);
  const auto P6 = series_mul(P4, P2);
  const auto E2 = series_mul(E, E);
  const auto E3 = series_mul(E2, E);
  out.N1 = T(-8) * E3 + T(4) * series_mul(E2, P2) - T(2) * series_mul(E, P4) + T(6) * P6;
  out.N2 = series_mul(E3, E) - series_mul(E3, P2) - series_mul(E, P6) + series_mul(P6, P2);
  return out;
}

template <typename T>
OriginLimits<T> limit_origin_expressions(const TaylorPoly<T>& y) {
  using std::abs;
  const auto num = origin_numerators(y);
  const T e0 = num.E[0];
  const T p0 = num.P[0];
  // The cancelled coefficients are differences of terms of size ~ P0^8.
  const T scale = T(8) * std::pow(std::max(abs(e0), p0 * p0), 4);
  const T tol = T(1e3) * std::numeric_limits<T>::epsilon();

  OriginLimits<T> out;
  out.order = y.order();
  const auto n1 = num.N1.divided_by_power(2, scale, tol);
  const auto n2 = num.N2.divided_by_power(4, scale, tol);
  out.inner1 = n1[0];
  out.inner2 = n2[0];

  const int m1 = n1.order();
  const auto den1 = series_mul(series_pow(num.P.truncated(m1), 3),
                               series_pow(num.E.truncated(m1), 2));
  out.L1 = series_div(n1, den1)[0];
  const int m2 = n2.order();
  const auto den2 = series_mul(series_pow(num.P.truncated(m2), 6),
                               series_pow(num.E.truncated(m2), 2));
  out.L2 = series_div(n2, den2)[0];

  const auto pqs = pqs_series(y);
  const T P = pqs.P[0], Q = pqs.Q[0], S = pqs.S[0];
  const T E = e0;
  const T E2 = E * E, E3 = E2 * E, E4 = E3 * E;
  auto pw = [](T x, int k) { return std::pow(x, k); };
  out.inner1_pqs = T(0.5) * (T(-24) * E3 * P + T(8) * E2 * pw(P, 3) + T(8) * E2 * P * Q -
                             T(8) * E * pw(P, 3) * Q - T(2) * E * pw(P, 5) + T(36) * pw(P, 5) * Q);
  out.inner2_pqs =
      T(0.125) * (T(16) * E4 * P * P + T(4) * E4 * Q - T(9) * E3 * pw(P, 4) - T(9) * E3 * P * P * Q -
                  T(6) * E3 * P * P * Q - T(2) * E3 * Q * Q - T(2) * E3 * P * S - E * pw(P, 8) -
                  T(7) * E * pw(P, 6) * Q - T(6) * E * pw(P, 6) * Q - T(30) * E * pw(P, 4) * Q * Q -
                  T(6) * E * pw(P, 5) * S + T(56) * pw(P, 6) * Q * Q + T(8) * pw(P, 7) * S);
  out.L1_pqs = out.inner1_pqs / (pw(P, 3) * E2);
  out.L2_pqs = out.inner2_pqs / (pw(P, 6) * E2);
  return out;
}

}  // namespace tycz
