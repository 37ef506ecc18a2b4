#pragma once

#include <map>
#include <string>
#include <vector>

#include "cwhopf/ce.hpp"
#include "cwhopf/rational.hpp"

namespace cw {

// Ordered basis of g for PBW words: Y(a,a) and S_ab = Y(a,b) + Y(b,a)
// (a < b) first, then X_k, then K_ab = Y(a,b) - Y(b,a). The K's span o_n
// and sit at the right end, so H_n U^+(o_n) is spanned by the words that
// end in a K.
struct HopfBasis {
  int n = 1;
  int dim = 0;
  int first_skew = 0;
  std::vector<std::vector<Scalar>> elem;   // e_i in the GGen index basis
  std::vector<std::vector<Scalar>> coord;  // GGen index g -> coordinates of g in e
  std::vector<std::vector<std::vector<Scalar>>> c;  // [e_i, e_j] = sum_k c[i][j][k] e_k
  std::vector<std::string> names;                   // Y11, S12, X1, K12, ...
  std::vector<Scalar> delta;                        // modular character on e_i
};
const HopfBasis& hopf_basis(int n);

using PBWWord = std::vector<int>;  // nondecreasing basis positions
// normal form in U(g) of the product e_{l_1} ... e_{l_m}
const std::map<PBWWord, Scalar>& pbw_normal(int n, const std::vector<int>& letters);

struct HopfGenerator {
  enum Kind { X, Y, D } kind = X;
  int i = 1, j = 1, k = 1;  // X: i = k; Y: (i, j); D: upper i, lower j, k
  std::vector<int> L;
  static HopfGenerator x(int k) { return {X, k, 0, 0, {}}; }
  static HopfGenerator y(int i, int j) { return {Y, i, j, 0, {}}; }
  static HopfGenerator d(int i, int j, int k, std::vector<int> L = {}) { return {D, i, j, k, std::move(L)}; }
  std::string str() const;
};

// Element of H_n^{(x) q}: sums of F (x) U_0 (x) .. (x) U_{q-1}. F is a
// polynomial in alpha symbols; the symbols of slot r form the D-part of leg
// r, written in free coordinates on N (delta^i_{jkL} <-> eta^i_{jkL}).
class HopfTensor {
 public:
  using Key = std::vector<PBWWord>;
  int n = 1, q = 1;

  HopfTensor() = default;
  HopfTensor(int nn, int qq) : n(nn), q(qq) {}
  static HopfTensor unit(int n, int q);
  static HopfTensor generator(int n, const HopfGenerator& g);
  static HopfTensor basis_element(int n, int idx);
  // F * 1, F in alpha symbols of slot 0
  static HopfTensor function(int n, const Poly& f);

  const std::map<Key, Poly>& terms() const { return t_; }
  void add(const Key& k, const Poly& c);
  bool is_zero() const { return t_.empty(); }
  HopfTensor& operator+=(const HopfTensor& o);
  HopfTensor& operator-=(const HopfTensor& o);
  HopfTensor operator-() const;
  HopfTensor& operator*=(const Scalar& c);
  friend HopfTensor operator+(HopfTensor a, const HopfTensor& b) { return a += b; }
  friend HopfTensor operator-(HopfTensor a, const HopfTensor& b) { return a -= b; }
  friend HopfTensor operator*(HopfTensor a, const Scalar& c) { return a *= c; }
  bool operator==(const HopfTensor& o) const { return n == o.n && q == o.q && t_ == o.t_; }
  bool operator!=(const HopfTensor& o) const { return !(*this == o); }
  std::string str() const;

 private:
  std::map<Key, Poly> t_;
};

// leg-wise product
HopfTensor operator*(const HopfTensor& a, const HopfTensor& b);
// a (x) b
HopfTensor tensor(const HopfTensor& a, const HopfTensor& b);

HopfTensor coproduct(const HopfTensor& h);
HopfTensor coproduct_leg(const HopfTensor& t, int leg);
HopfTensor counit_leg(const HopfTensor& t, int leg);
Scalar counit(const HopfTensor& h);
Scalar character_delta(const HopfTensor& h);
HopfTensor twisted_antipode(const HopfTensor& h);
// m : H (x) H -> H
HopfTensor multiply_legs(const HopfTensor& t);
// Delta^{(q-1)}
HopfTensor iterated_coproduct(const HopfTensor& h, int q);

// cyclic structure on C^q = H_n^{(x) q}
HopfTensor face(const HopfTensor& t, int i);        // C^q -> C^{q+1}, 0 <= i <= q+1
HopfTensor degeneracy(const HopfTensor& t, int i);  // C^q -> C^{q-1}, 0 <= i <= q-1
HopfTensor cyclic_tau(const HopfTensor& t);
HopfTensor hochschild_b(const HopfTensor& t);
// (sum_k (-1)^{(q-1)k} tau_{q-1}^k) sigma_{q-1} tau_q on C^q, q >= 1
HopfTensor connes_B(const HopfTensor& t);

// image in Q_n^{(x) q}
HopfTensor project_quotient(const HopfTensor& t);
// o_n acting diagonally by left multiplication annihilates the image
bool is_on_invariant(const HopfTensor& t);
// project_quotient after the invariance check; throws std::invalid_argument
HopfTensor relative_project(const HopfTensor& t);

// f U*_phi with f a rational function of x, y
struct ModelMonomial {
  RationalFn f;
  TruncatedMap phi;
};
// f U*_phi . g U*_psi = f (g o phi~) U*_{psi o phi}
ModelMonomial operator*(const ModelMonomial& a, const ModelMonomial& b);
// X_k, Y(a,b) on rational functions of (x, y)
RationalFn apply_field(int n, const GGen& z, const RationalFn& f);
// h(a), symbolic in (x, y); h must have q = 1
ModelMonomial act(const HopfTensor& h, const ModelMonomial& a);
// f-part of sum t_0(a_0) .. t_{q-1}(a_{q-1}) at the frame (x, y)
Scalar act_value(const HopfTensor& t, const std::vector<ModelMonomial>& a, const std::vector<Scalar>& x,
                 const Matrix<Scalar>& y);

// gamma^i_{jkL}(phi) as rational functions of (x, y), |L| <= maxL
std::map<Var, RationalFn> gamma_symbolic(const TruncatedMap& phi, int maxL, int slot);

}  // namespace cw
