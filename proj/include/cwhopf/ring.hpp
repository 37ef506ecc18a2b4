#pragma once

#include <stdexcept>
#include <vector>

#include "cwhopf/poly.hpp"
#include "cwhopf/scalar.hpp"

namespace cw {

// a + b eps with eps^2 = 0
template <class R>
struct Dual {
  R a{}, b{};
  Dual() = default;
  Dual(const R& x) : a(x) {}  // NOLINT(google-explicit-constructor)
  Dual(const R& x, const R& y) : a(x), b(y) {}
  Dual operator-() const { return {-a, -b}; }
  Dual& operator+=(const Dual& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    R nb = a * o.b + b * o.a;
    a = a * o.a;
    b = nb;
    return *this;
  }
  friend Dual operator+(Dual x, const Dual& y) { return x += y; }
  friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
  friend Dual operator*(Dual x, const Dual& y) { return x *= y; }
  bool operator==(const Dual& o) const { return a == o.a && b == o.b; }
};

using DualScalar = Dual<Scalar>;

template <class R>
struct Ring;

template <>
struct Ring<Scalar> {
  static Scalar from(const Scalar& c) { return c; }
  static bool is_zero(const Scalar& x) { return x.is_zero(); }
  static Scalar inv(const Scalar& x) { return x.inverse(); }
};

template <>
struct Ring<DualScalar> {
  static DualScalar from(const Scalar& c) { return DualScalar(c); }
  static bool is_zero(const DualScalar& x) { return x.a.is_zero() && x.b.is_zero(); }
  static DualScalar inv(const DualScalar& x) {
    Scalar ia = x.a.inverse();
    return {ia, -(x.b * ia * ia)};
  }
};

// Poly is invertible here only as c + (terms carrying eps).
template <>
struct Ring<Poly> {
  static Poly from(const Scalar& c) { return Poly(c); }
  static bool is_zero(const Poly& x) { return x.is_zero(); }
  static Poly inv(const Poly& x) {
    Scalar c = x.constant_term();
    if (c.is_zero()) throw std::domain_error("Poly inverse: zero constant term");
    Poly rest = x - Poly(c);
    for (auto& [m, k] : rest.terms())
      if (m.exponent(Var::eps()) == 0) throw std::domain_error("Poly inverse: not a unit");
    Scalar ic = c.inverse();
    return Poly(ic) - rest * (ic * ic);
  }
};

template <class R>
using Matrix = std::vector<std::vector<R>>;

template <class R>
Matrix<R> identity_matrix(int n) {
  Matrix<R> m(n, std::vector<R>(n, Ring<R>::from(Scalar(0))));
  for (int i = 0; i < n; ++i) m[i][i] = Ring<R>::from(Scalar(1));
  return m;
}

template <class R>
Matrix<R> mat_mul(const Matrix<R>& a, const Matrix<R>& b) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  Matrix<R> r(n, std::vector<R>(m, Ring<R>::from(Scalar(0))));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (Ring<R>::is_zero(a[i][l])) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

// Gauss-Jordan, pivots must be units of R
template <class R>
Matrix<R> mat_inverse(Matrix<R> a) {
  int n = static_cast<int>(a.size());
  Matrix<R> inv = identity_matrix<R>(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r) {
      try {
        (void)Ring<R>::inv(a[r][c]);
        piv = r;
        break;
      } catch (const std::domain_error&) {
      }
    }
    if (piv < 0) throw std::domain_error("mat_inverse: singular");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    R p = Ring<R>::inv(a[c][c]);
    for (int j = 0; j < n; ++j) {
      a[c][j] = a[c][j] * p;
      inv[c][j] = inv[c][j] * p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || Ring<R>::is_zero(a[r][c])) continue;
      R f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// Evaluate a Poly with values in R.
template <class R>
R eval_poly(const Poly& p, const std::function<R(const Var&)>& val) {
  R out = Ring<R>::from(Scalar(0));
  std::map<Var, R> cache;
  for (auto& [m, c] : p.terms()) {
    R t = Ring<R>::from(c);
    for (auto& [v, e] : m.f) {
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, val(v)).first;
      for (int k = 0; k < e; ++k) t = t * it->second;
    }
    out += t;
  }
  return out;
}

}  // namespace cw
