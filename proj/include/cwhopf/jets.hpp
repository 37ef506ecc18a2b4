#pragma once

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "cwhopf/lie.hpp"
#include "cwhopf/rational.hpp"
#include "cwhopf/series.hpp"

namespace cw {

// Polynomial map R^n -> R^n of degree <= K, one series per component.
template <class R>
struct JetMap {
  int n = 0, K = 0;
  std::vector<Series<R>> comp;

  static JetMap identity(int n, int K) {
    JetMap f{n, K, {}};
    for (int i = 0; i < n; ++i) f.comp.push_back(Series<R>::variable(n, i));
    return f;
  }
  std::vector<R> value0() const {
    std::vector<R> v;
    for (auto& s : comp) v.push_back(s.at0());
    return v;
  }
  Matrix<R> linear() const {
    Matrix<R> a(n, std::vector<R>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = comp[i].coeff(midx_unit(j));
    return a;
  }
  int degree() const {
    int d = -1;
    for (auto& s : comp) d = std::max(d, s.degree());
    return d;
  }
  bool fixes_origin() const {
    for (auto& s : comp)
      if (!Ring<R>::is_zero(s.at0())) return false;
    return true;
  }
  bool operator==(const JetMap& o) const { return n == o.n && comp == o.comp; }
};

using TruncatedMap = JetMap<Scalar>;

template <class R>
JetMap<R> affine_map(const std::vector<R>& b, const Matrix<R>& a, int K) {
  int n = static_cast<int>(b.size());
  JetMap<R> f{n, K, {}};
  for (int i = 0; i < n; ++i) {
    Series<R> s = Series<R>::constant(n, b[i]);
    for (int j = 0; j < n; ++j) s.add(midx_unit(j), a[i][j]);
    f.comp.push_back(s);
  }
  return f;
}

// f o g truncated at K (default min of both orders)
template <class R>
JetMap<R> compose(const JetMap<R>& f, const JetMap<R>& g, int K = -1) {
  if (K < 0) K = std::min(f.K, g.K);
  JetMap<R> r{f.n, K, {}};
  for (auto& s : f.comp) r.comp.push_back(s.compose(g.comp, K));
  return r;
}

// A^{-1} (f - f(0)), the part of f fixing 0 with unit derivative there
template <class R>
JetMap<R> normalise(const JetMap<R>& f) {
  Matrix<R> inv = mat_inverse(f.linear());
  auto b = f.value0();
  JetMap<R> r{f.n, f.K, {}};
  for (int i = 0; i < f.n; ++i) {
    Series<R> s(f.n);
    for (int a = 0; a < f.n; ++a) {
      if (Ring<R>::is_zero(inv[i][a])) continue;
      Series<R> c = f.comp[a];
      c.add(0, -b[a]);
      s += c.scaled(inv[i][a]);
    }
    r.comp.push_back(s);
  }
  return r;
}

// phi = phi_aff o psi with phi_aff(x) = phi'(0) x + phi(0)
template <class R>
std::pair<JetMap<R>, JetMap<R>> kac(const JetMap<R>& f) {
  return {affine_map(f.value0(), f.linear(), f.K), normalise(f)};
}

// Jet inverse. For f(0) = 0 this is series reversion; otherwise
// f^{-1} := g^{-1} o (y - f(0)) with g = f - f(0).
// compose(invert(f), f) is the identity at order K in all cases.
template <class R>
JetMap<R> invert(const JetMap<R>& f) {
  int n = f.n, K = f.K;
  auto b = f.value0();
  Matrix<R> a = f.linear();
  Matrix<R> ainv = mat_inverse(a);
  // nonlinear part of g = f - f(0)
  std::vector<Series<R>> nl;
  for (auto& s : f.comp) {
    Series<R> t(n);
    for (auto& [m, v] : s.c)
      if (midx_deg(m) >= 2) t.c.emplace(m, v);
    nl.push_back(t);
  }
  // h = A^{-1} (y - N(h)), iterated K times
  JetMap<R> h = affine_map(std::vector<R>(n, Ring<R>::from(Scalar(0))), ainv, K);
  for (int it = 1; it < K; ++it) {
    std::vector<Series<R>> nh;
    for (int i = 0; i < n; ++i) nh.push_back(nl[i].compose(h.comp, K));
    JetMap<R> next{n, K, {}};
    for (int i = 0; i < n; ++i) {
      Series<R> s(n);
      for (int j = 0; j < n; ++j) {
        if (Ring<R>::is_zero(ainv[i][j])) continue;
        Series<R> y = Series<R>::variable(n, j) - nh[j];
        s += y.scaled(ainv[i][j]);
      }
      next.comp.push_back(s);
    }
    h = next;
  }
  bool zero = true;
  for (auto& v : b) zero = zero && Ring<R>::is_zero(v);
  if (zero) return h;
  std::vector<R> mb;
  for (auto& v : b) mb.push_back(-v);
  auto shift = affine_map(mb, identity_matrix<R>(n), K);
  return compose(h, shift, K);
}

// psi in N, phi affine: psi o phi = (psi |> phi) o (psi <| phi)
template <class R>
std::pair<JetMap<R>, JetMap<R>> act_right(const JetMap<R>& psi, const JetMap<R>& phi) {
  return kac(compose(psi, phi, psi.K));
}

// exp(eps Z) as an affine map, eps a nilpotent unit of R
template <class R>
JetMap<R> exp_affine(int n, int K, const GGen& z, const R& eps) {
  std::vector<R> b(n, Ring<R>::from(Scalar(0)));
  Matrix<R> a = identity_matrix<R>(n);
  if (z.kind == GGen::X)
    b[z.a - 1] = eps;
  else
    a[z.a - 1][z.b - 1] += eps;
  return affine_map(b, a, K);
}

// ---- coordinates on N and the jet expressions gamma, eta ----

Var gamma_var(int slot, int i, int j, int k, std::vector<int> L);
Var eta_var(int slot, int i, int j, int k, std::vector<int> L);

// alpha^i_beta(psi) = d^beta psi^i (0), |beta| >= 2
template <class R>
std::map<Var, R> alpha_coords(const JetMap<R>& psi, int slot, int maxorder) {
  std::map<Var, R> out;
  for (int d = 2; d <= maxorder; ++d)
    for (MIdx m : midx_of_degree(psi.n, d))
      for (int i = 0; i < psi.n; ++i) {
        R v = psi.comp[i].coeff(m) * Ring<R>::from(Scalar(midx_factorial(m, psi.n)));
        out.emplace(Var::alpha(slot, i + 1, midx_multiset(m, psi.n)), v);
      }
  return out;
}

// For psi with psi(0) = 0, psi'(0) = Id: all
// eta^i_{jkL} = d^L [ (psi'(s)^{-1})^i_a d_j d_k psi^a(s) ]_{s=0}, |L| <= maxL,
// keyed by canonical Eta (or Gamma) variables of the given slot.
template <class R>
std::map<Var, R> eta_from_series(const std::vector<Series<R>>& psi, int n, int maxL, int slot, bool as_gamma) {
  int K = maxL;
  Matrix<Series<R>> nm(n, std::vector<Series<R>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Series<R> d = psi[i].derivative(j).truncated(K);
      if (i == j) d.add(0, -Ring<R>::from(Scalar(1)));
      nm[i][j] = d;
    }
  // (I + N)^{-1} = sum (-N)^m
  auto mul = [&](const Matrix<Series<R>>& a, const Matrix<Series<R>>& b) {
    Matrix<Series<R>> r(n, std::vector<Series<R>>(n, Series<R>(n)));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (a[i][l].is_zero()) continue;
        for (int j = 0; j < n; ++j) r[i][j] += a[i][l].mul(b[l][j], K);
      }
    return r;
  };
  Matrix<Series<R>> inv(n, std::vector<Series<R>>(n, Series<R>(n)));
  for (int i = 0; i < n; ++i) inv[i][i] = Series<R>::constant(n, Ring<R>::from(Scalar(1)));
  Matrix<Series<R>> term = inv;
  Matrix<Series<R>> minus(n, std::vector<Series<R>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) minus[i][j] = -nm[i][j];
  for (int m = 1; m <= K; ++m) {
    term = mul(term, minus);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv[i][j] += term[i][j];
  }
  std::map<Var, R> out;
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      std::vector<Series<R>> h;
      for (int a = 0; a < n; ++a) h.push_back(psi[a].derivative(j).derivative(k).truncated(K));
      for (int i = 0; i < n; ++i) {
        Series<R> e(n);
        for (int a = 0; a < n; ++a) e += inv[i][a].mul(h[a], K);
        for (int d = 0; d <= maxL; ++d)
          for (MIdx m : midx_of_degree(n, d)) {
            R v = e.coeff(m) * Ring<R>::from(Scalar(midx_factorial(m, n)));
            auto L = midx_multiset(m, n);
            Var key = as_gamma ? gamma_var(slot, i + 1, j + 1, k + 1, L) : eta_var(slot, i + 1, j + 1, k + 1, L);
            out.emplace(key, v);
          }
      }
    }
  return out;
}

// gamma^i_{jkL}(phi) at the frame (x, y), |L| <= maxL, by the series route:
// the N-part of phi o (s -> x + y s).
template <class R>
std::map<Var, R> gamma_series(const TruncatedMap& phi, const std::vector<R>& x, const Matrix<R>& y, int maxL,
                              int slot) {
  int n = phi.n, K = maxL + 2;
  std::vector<Series<R>> aff;
  for (int mu = 0; mu < n; ++mu) {
    Series<R> s = Series<R>::constant(n, x[mu]);
    for (int nu = 0; nu < n; ++nu) s.add(midx_unit(nu), y[mu][nu]);
    aff.push_back(s);
  }
  JetMap<R> f{n, K, {}};
  for (auto& comp : phi.comp) {
    Series<R> s(n);
    for (auto& [m, v] : comp.c) s.c.emplace(m, Ring<R>::from(v));
    f.comp.push_back(s.compose(aff, K));
  }
  JetMap<R> psi = normalise(f);
  return eta_from_series(psi.comp, n, maxL, slot, true);
}

// Literal formula: (y^{-1} phi'(x)^{-1} d_mu phi'(x) y)^i_j y^mu_k, followed
// by X_l = y^mu_l d_mu. Symbolic in x, numeric y.
std::map<Var, Scalar> gamma_direct(const TruncatedMap& phi, const std::vector<Scalar>& x,
                                   const Matrix<Scalar>& y, int maxL, int slot);

// single coefficient; requires |L| + 2 <= K
Scalar gamma_jet(const TruncatedMap& phi, int i, int j, int k, const std::vector<int>& L,
                 const std::vector<Scalar>& x, const Matrix<Scalar>& y);

// eta(psi) = gamma(psi) at the identity frame
std::map<Var, Scalar> eta_values(const TruncatedMap& psi, int maxL, int slot);

// element of N with symbolic alpha coordinates of the slot, |beta| <= order
JetMap<Poly> generic_n(int n, int order, int slot);

// eta^i_{jkL} in alpha coordinates (slot 0), memoised
const Poly& eta_in_alpha(int n, const Var& eta);
// alpha^i_beta as a polynomial in the sorted eta^i_{beta}, memoised
const Poly& alpha_in_eta(int n, const Var& alpha);
// Z |> alpha (slot preserved), memoised
const Poly& g_action_alpha(int n, const GGen& z, const Var& alpha);
// Z |> f for f in the alpha algebra (a derivation)
Poly g_act(int n, const GGen& z, const Poly& f);

// ---- samplers ----

struct MapSampler {
  int lo = -3, hi = 3;
  // random polynomial map of the given degree, invertible linear part
  TruncatedMap map(std::mt19937_64& rng, int n, int K, int degree, bool fix_origin = false) const;
  TruncatedMap n_element(std::mt19937_64& rng, int n, int K, int degree) const;
  TruncatedMap affine(std::mt19937_64& rng, int n, int K) const;
  std::vector<Scalar> point(std::mt19937_64& rng, int n) const;
  Matrix<Scalar> frame(std::mt19937_64& rng, int n) const;
  Scalar value(std::mt19937_64& rng) const;
};

bool invertible(const Matrix<Scalar>& a);
Matrix<Scalar> jacobian_at(const TruncatedMap& phi, const std::vector<Scalar>& x);
std::vector<Scalar> eval_map(const TruncatedMap& phi, const std::vector<Scalar>& x);

}  // namespace cw
