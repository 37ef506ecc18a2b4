#pragma once

#include <gmpxx.h>

#include <string>

namespace cw {

// Exact rational times an integer power of lambda = 1/(2 pi i).
// Zero is canonical: 0/1 with exponent 0.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpq_class& q, int lam = 0);

  static Scalar frac(long num, long den);
  static Scalar lambda(int k);

  const mpq_class& q() const { return q_; }
  int lam() const { return lam_; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return lam_ == 0 && q_ == 1; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  bool operator==(const Scalar& o) const { return lam_ == o.lam_ && q_ == o.q_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // "num/den" or "num/den*l^k"
  std::string str() const;
  static Scalar parse(const std::string& s);

 private:
  void canon();
  mpq_class q_{0};
  int lam_ = 0;
};

}  // namespace cw
