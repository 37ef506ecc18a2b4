#include "cwhopf/scalar.hpp"

#include <stdexcept>

namespace cw {

Scalar::Scalar(const mpq_class& q, int lam) : q_(q), lam_(lam) {
  q_.canonicalize();
  canon();
}

Scalar Scalar::frac(long num, long den) {
  if (den == 0) throw std::domain_error("Scalar: zero denominator");
  return Scalar(mpq_class(num, den));
}

Scalar Scalar::lambda(int k) { return Scalar(mpq_class(1), k); }

void Scalar::canon() {
  if (sgn(q_) == 0) lam_ = 0;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.q_ = -r.q_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (lam_ != o.lam_) throw std::domain_error("Scalar: adding different lambda powers");
  q_ += o.q_;
  canon();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  q_ *= o.q_;
  lam_ += o.lam_;
  canon();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar: division by zero");
  Scalar r;
  r.q_ = 1 / q_;
  r.lam_ = -lam_;
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

std::string Scalar::str() const {
  std::string s = q_.get_num().get_str() + "/" + q_.get_den().get_str();
  if (lam_ != 0) s += "*l^" + std::to_string(lam_);
  return s;
}

Scalar Scalar::parse(const std::string& s) {
  std::string body = s;
  int lam = 0;
  auto star = s.find("*l^");
  if (star != std::string::npos) {
    body = s.substr(0, star);
    lam = std::stoi(s.substr(star + 3));
  }
  mpq_class q;
  if (q.set_str(body, 10) != 0) throw std::invalid_argument("Scalar: cannot parse '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("Scalar: zero denominator in '" + s + "'");
  q.canonicalize();
  return Scalar(q, lam);
}

}  // namespace cw
