#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cwhopf/jets.hpp"
#include "cwhopf/poly.hpp"

namespace cw {

// A coframe word is a set of letters, stored as a bitmask whose bit order
// is the letter order dt_1 < ... < dt_8 < theta^1 < ... < omega^1_1 < omega^1_2 < ...
using Word = uint64_t;

constexpr int kMaxN = 6;
inline Word letter_dt(int r) { return Word{1} << (r - 1); }
inline Word letter_theta(int k) { return Word{1} << (8 + k - 1); }
inline Word letter_omega(int a, int b) { return Word{1} << (16 + (a - 1) * kMaxN + (b - 1)); }
constexpr Word kDtMask = 0xff;
inline int word_degree(Word w) { return __builtin_popcountll(w); }
inline int dt_degree(Word w) { return __builtin_popcountll(w & kDtMask); }
// sign of w1 ^ w2 relative to the sorted word w1 | w2, 0 when they overlap
int wedge_sign(Word a, Word b);
std::vector<std::string> word_letters(Word w);
Word word_from_letters(const std::vector<std::string>& letters);
std::string word_str(Word w);

class Form {
 public:
  using Map = std::map<Word, Poly>;
  int n = 0;

  Form() = default;
  explicit Form(int nn) : n(nn) {}
  static Form scalar(int n, const Poly& c);
  static Form letter(int n, Word w, const Poly& c = Poly(1));
  static Form theta(int n, int k) { return letter(n, letter_theta(k)); }
  static Form omega(int n, int a, int b) { return letter(n, letter_omega(a, b)); }
  static Form dt(int n, int r) { return letter(n, letter_dt(r)); }

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(Word w, const Poly& c);
  Poly coeff(Word w) const;
  int max_degree() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form operator-() const;
  Form& operator*=(const Poly& c);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Poly& c) { return a *= c; }
  friend Form operator*(const Poly& c, Form a) { return a *= c; }
  bool operator==(const Form& o) const { return t_ == o.t_; }
  bool operator!=(const Form& o) const { return !(t_ == o.t_); }

  // keep terms with the given number of dt letters
  Form dt_part(int deg) const;
  Form map_coeffs(const std::function<Poly(const Poly&)>& f) const;
  std::string str() const;

 private:
  Map t_;
};

Form wedge(const Form& a, const Form& b);

// X_l and Y(a,b) as derivations on coefficients (gamma table, x, y coordinates)
Poly derive_x(int n, int l, const Poly& f);
Poly derive_y(int n, int a, int b, const Poly& f);
// d on forms over G (and the simplex when coefficients involve t_r)
Form d(const Form& a);
// contraction with a basis field of g
Form contract(const Form& a, const GGen& z);
// Lie derivative L_z = i_z d + d i_z
Form lie_derivative(const Form& a, const GGen& z);

// phi_slot^*: theta -> theta, omega^i_j -> omega^i_j + gamma^i_{jk}(slot) theta^k.
// Coefficients must not depend on the point of G.
Form pullback_prolonged(const Form& a, int slot);

// gamma values for each bound slot at the frame (x, y)
std::map<Var, Scalar> gamma_bindings(const std::map<int, TruncatedMap>& slots, const std::vector<Scalar>& x,
                                     const Matrix<Scalar>& y, int maxL);
// substitute the bound jet symbols; remaining variables stay symbolic
Form evaluate_form(const Form& a, const std::map<Var, Scalar>& values);

// matrices of forms
using FormMatrix = std::vector<std::vector<Form>>;
FormMatrix fm_mul(const FormMatrix& a, const FormMatrix& b);
FormMatrix fm_add(const FormMatrix& a, const FormMatrix& b);
FormMatrix fm_scale(const FormMatrix& a, const Poly& c);
FormMatrix fm_transpose(const FormMatrix& a);
FormMatrix fm_zero(int n);

}  // namespace cw
