#pragma once

#include <map>
#include <string>
#include <vector>

#include "cwhopf/poly.hpp"

namespace cw {

// num/den, not reduced. Equality by cross multiplication.
class RationalFn {
 public:
  RationalFn() : num_(0), den_(1) {}
  RationalFn(const Poly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFn(long c) : num_(c), den_(1) {}         // NOLINT(google-explicit-constructor)
  RationalFn(const Poly& n, const Poly& d);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFn operator-() const { return RationalFn(-num_, den_); }
  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
  bool operator==(const RationalFn& o) const;
  bool operator!=(const RationalFn& o) const { return !(*this == o); }

  RationalFn derivative(const Var& v) const;
  RationalFn substitute(const std::map<Var, RationalFn>& sub) const;
  Scalar evaluate(const std::map<Var, Scalar>& val) const;
  std::string str() const;

 private:
  void tidy();
  Poly num_, den_;
};

RationalFn pow(const RationalFn& r, int e);

using RMatrix = std::vector<std::vector<RationalFn>>;
RationalFn determinant(const RMatrix& m);
// adjugate over determinant; throws std::domain_error when singular
RMatrix matrix_inverse(const RMatrix& m);
RMatrix matmul(const RMatrix& a, const RMatrix& b);

}  // namespace cw
