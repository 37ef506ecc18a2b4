#include "cwhopf/rational.hpp"

#include <stdexcept>

namespace cw {

RationalFn::RationalFn(const Poly& n, const Poly& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw std::domain_error("RationalFn: zero denominator");
  tidy();
}

void RationalFn::tidy() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    num_ *= den_.constant_term().inverse();
    den_ = Poly(1);
    return;
  }
  // leading coefficient of the denominator normalised to 1
  Scalar lc = den_.leading().second;
  if (!lc.is_one()) {
    Scalar inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  tidy();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  num_ *= o.num_;
  if (!o.den_.is_constant() || !o.den_.constant_term().is_one()) den_ *= o.den_;
  tidy();
  return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) {
  if (o.is_zero()) throw std::domain_error("RationalFn: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  tidy();
  return *this;
}

bool RationalFn::operator==(const RationalFn& o) const { return num_ * o.den_ == o.num_ * den_; }

RationalFn RationalFn::derivative(const Var& v) const {
  Poly dn = num_.derivative(v);
  if (den_.is_constant()) return RationalFn(dn, den_);
  Poly dd = den_.derivative(v);
  return RationalFn(dn * den_ - num_ * dd, den_ * den_);
}

namespace {
RationalFn subst_poly(const Poly& p, const std::map<Var, RationalFn>& sub) {
  RationalFn r;
  std::map<std::pair<Var, int>, RationalFn> powers;
  for (auto& [m, c] : p.terms()) {
    RationalFn t{Poly(c)};
    for (auto& [v, e] : m.f) {
      auto it = sub.find(v);
      if (it == sub.end()) {
        t *= RationalFn(Poly::var(v).pow(e));
        continue;
      }
      auto key = std::make_pair(v, e);
      auto pw = powers.find(key);
      if (pw == powers.end()) pw = powers.emplace(key, pow(it->second, e)).first;
      t *= pw->second;
    }
    r += t;
  }
  return r;
}
}  // namespace

RationalFn RationalFn::substitute(const std::map<Var, RationalFn>& sub) const {
  return subst_poly(num_, sub) / subst_poly(den_, sub);
}

Scalar RationalFn::evaluate(const std::map<Var, Scalar>& val) const {
  Scalar d = den_.evaluate(val);
  if (d.is_zero()) throw std::domain_error("RationalFn: pole at evaluation point");
  return num_.evaluate(val) / d;
}

std::string RationalFn::str() const {
  if (den_.is_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFn pow(const RationalFn& r, int e) {
  RationalFn out(1), b = r;
  while (e) {
    if (e & 1) out *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return out;
}

RationalFn determinant(const RMatrix& m) {
  size_t n = m.size();
  if (n == 0) return RationalFn(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  RationalFn d;
  for (size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    RMatrix minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<RationalFn> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    RationalFn t = m[0][c] * determinant(minor);
    if (c % 2) d -= t;
    else d += t;
  }
  return d;
}

RMatrix matrix_inverse(const RMatrix& m) {
  size_t n = m.size();
  RationalFn det = determinant(m);
  if (det.is_zero()) throw std::domain_error("matrix_inverse: singular");
  RMatrix inv(n, std::vector<RationalFn>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      // cofactor of (j, i)
      RMatrix minor;
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<RationalFn> row;
        for (size_t k = 0; k < n; ++k)
          if (k != i) row.push_back(m[r][k]);
        minor.push_back(row);
      }
      RationalFn c = determinant(minor);
      if ((i + j) % 2) c = -c;
      inv[i][j] = c / det;
    }
  }
  return inv;
}

RMatrix matmul(const RMatrix& a, const RMatrix& b) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  RMatrix r(n, std::vector<RationalFn>(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j)
      for (size_t l = 0; l < k; ++l)
        if (!a[i][l].is_zero() && !b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
  return r;
}

}  // namespace cw
