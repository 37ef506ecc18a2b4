#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cwhopf/scalar.hpp"

namespace cw {

enum class VarKind : uint8_t {
  Free = 0,
  Sim = 1,    // simplex coordinate t_r
  Par = 2,    // transgression parameter u
  Eps = 3,    // dual unit, eps^2 = 0 is enforced on every product
  Coord = 4,  // x^mu
  Frame = 5,  // y^mu_nu
  Gamma = 6,  // gamma^i_{jkL}(phi_slot)
  Eta = 7,    // eta^i_{jkL}(psi_slot)
  Alpha = 8,  // alpha^i_{beta}(psi_slot), beta a sorted multiset, |beta| >= 2
  Ser = 9,    // series variable s_l
};

// Structural variable: kind, slot, up to 8 one-based indices (0 terminates).
// For Free the bytes after the kind hold the name.
struct Var {
  std::array<uint8_t, 10> b{};

  static Var free(const std::string& name);
  static Var sim(int r);
  static Var par();
  static Var eps();
  static Var coord(int mu);
  static Var frame(int mu, int nu);
  // lower = (j, k, L...)
  static Var gamma(int slot, int i, const std::vector<int>& lower);
  static Var eta(int slot, int i, const std::vector<int>& lower);
  // beta sorted on construction
  static Var alpha(int slot, int i, std::vector<int> beta);
  static Var ser(int l);

  VarKind kind() const { return static_cast<VarKind>(b[0]); }
  int slot() const { return b[1]; }
  std::vector<int> idx() const;
  // gamma/eta/alpha: the upper index; lower indices follow
  int upper() const { return b[2]; }
  std::vector<int> lower() const;

  std::string name() const;
  static Var parse(const std::string& s);

  auto operator<=>(const Var&) const = default;
  bool operator==(const Var&) const = default;
};

struct Monomial {
  std::vector<std::pair<Var, int>> f;  // sorted by Var, exponents > 0
  int degree() const;
  int exponent(const Var& v) const;
  bool is_one() const { return f.empty(); }
  Monomial operator*(const Monomial& o) const;
  std::string str() const;
  bool operator==(const Monomial&) const = default;
};

// graded lexicographic: total degree first
struct GrLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

Monomial mono(const Var& v, int e = 1);

class Poly {
 public:
  using Map = std::map<Monomial, Scalar, GrLex>;

  Poly() = default;
  Poly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(const Var& v);
  static Poly term(const Monomial& m, const Scalar& c);

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  Scalar coeff(const Monomial& m) const;
  int degree() const;
  int degree_in(const std::function<bool(const Var&)>& pred) const;
  std::vector<Var> variables() const;
  // largest monomial under GrLex
  std::pair<Monomial, Scalar> leading() const;

  void add_term(const Monomial& m, const Scalar& c);
  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(t_ == o.t_); }
  Poly pow(int e) const;

  Poly derivative(const Var& v) const;
  Poly substitute(const std::map<Var, Poly>& sub) const;
  // Replace every variable through f (variables mapped to themselves when f
  // returns nullopt-like: f returns false).
  Poly map_vars(const std::function<bool(const Var&, Poly&)>& f) const;
  Scalar evaluate(const std::map<Var, Scalar>& val) const;
  Poly filter(const std::function<bool(const Monomial&)>& keep) const;

  std::string str() const;

 private:
  Map t_;
};

// d/dv applied through a table: for each variable, its derivative as a Poly.
Poly apply_derivation(const Poly& p, const std::function<Poly(const Var&)>& dv);

}  // namespace cw
