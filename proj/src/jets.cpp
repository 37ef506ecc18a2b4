#include "cwhopf/jets.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace cw {

namespace {
std::vector<int> lower_of(int j, int k, std::vector<int> L) {
  if (j > k) std::swap(j, k);
  std::sort(L.begin(), L.end());
  std::vector<int> low{j, k};
  low.insert(low.end(), L.begin(), L.end());
  return low;
}
}  // namespace

Var gamma_var(int slot, int i, int j, int k, std::vector<int> L) {
  return Var::gamma(slot, i, lower_of(j, k, std::move(L)));
}

Var eta_var(int slot, int i, int j, int k, std::vector<int> L) {
  return Var::eta(slot, i, lower_of(j, k, std::move(L)));
}

namespace {

Poly series_to_poly(const Series<Scalar>& s, int n) {
  Poly p;
  for (auto& [m, v] : s.c) {
    Monomial mo;
    for (int l = 0; l < n; ++l)
      if (midx_get(m, l)) mo.f.emplace_back(Var::coord(l + 1), midx_get(m, l));
    std::sort(mo.f.begin(), mo.f.end());
    p.add_term(mo, v);
  }
  return p;
}

// generic element of N with alpha symbols of the slot up to the given order
Series<Poly> generic_component(int n, int i, int order, int slot) {
  Series<Poly> s = Series<Poly>::variable(n, i);
  for (int d = 2; d <= order; ++d)
    for (MIdx m : midx_of_degree(n, d)) {
      Poly a = Poly::var(Var::alpha(slot, i + 1, midx_multiset(m, n)));
      s.add(m, a * Scalar::frac(1, midx_factorial(m, n)));
    }
  return s;
}

}  // namespace

JetMap<Poly> generic_n(int n, int order, int slot) {
  JetMap<Poly> f{n, order, {}};
  for (int i = 0; i < n; ++i) f.comp.push_back(generic_component(n, i, order, slot));
  return f;
}

std::map<Var, Scalar> gamma_direct(const TruncatedMap& phi, const std::vector<Scalar>& x,
                                   const Matrix<Scalar>& y, int maxL, int slot) {
  int n = phi.n;
  if (maxL + 2 > phi.K) throw std::invalid_argument("gamma_direct: jet order too small");
  std::vector<Poly> comp;
  for (auto& s : phi.comp) comp.push_back(series_to_poly(s, n));
  RMatrix J(n, std::vector<RationalFn>(n));
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) J[b][c] = comp[b].derivative(Var::coord(c + 1));
  RMatrix Jinv = matrix_inverse(J);
  Matrix<Scalar> yinv = mat_inverse(y);
  // G^i_{jk}
  std::vector<std::vector<std::vector<RationalFn>>> G(
      n, std::vector<std::vector<RationalFn>>(n, std::vector<RationalFn>(n)));
  for (int mu = 0; mu < n; ++mu) {
    RMatrix dJ(n, std::vector<RationalFn>(n));
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) dJ[b][c] = J[b][c].derivative(Var::coord(mu + 1));
    RMatrix W = matmul(Jinv, dJ);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        RationalFn v;
        for (int a = 0; a < n; ++a)
          for (int c = 0; c < n; ++c) {
            Scalar coef = yinv[i][a] * y[c][j];
            if (coef.is_zero() || W[a][c].is_zero()) continue;
            v += W[a][c] * RationalFn(Poly(coef));
          }
        for (int k = 0; k < n; ++k)
          if (!y[mu][k].is_zero()) G[i][j][k] += v * RationalFn(Poly(y[mu][k]));
      }
  }
  std::map<Var, Scalar> at;
  for (int mu = 0; mu < n; ++mu) at[Var::coord(mu + 1)] = x[mu];
  auto Xl = [&](const RationalFn& f, int l) {
    RationalFn r;
    for (int mu = 0; mu < n; ++mu)
      if (!y[mu][l - 1].is_zero()) r += f.derivative(Var::coord(mu + 1)) * RationalFn(Poly(y[mu][l - 1]));
    return r;
  };
  std::map<Var, Scalar> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        // breadth over sorted multisets L
        std::map<std::vector<int>, RationalFn> level{{{}, G[i][j][k]}};
        for (int d = 0; d <= maxL; ++d) {
          std::map<std::vector<int>, RationalFn> next;
          for (auto& [L, f] : level) {
            out.emplace(gamma_var(slot, i + 1, j + 1, k + 1, L), f.evaluate(at));
            if (d == maxL) continue;
            int start = L.empty() ? 1 : L.back();
            for (int l = start; l <= n; ++l) {
              auto L2 = L;
              L2.push_back(l);
              next.emplace(L2, Xl(f, l));
            }
          }
          level = std::move(next);
        }
      }
  return out;
}

Scalar gamma_jet(const TruncatedMap& phi, int i, int j, int k, const std::vector<int>& L,
                 const std::vector<Scalar>& x, const Matrix<Scalar>& y) {
  int maxL = static_cast<int>(L.size());
  if (maxL + 2 > phi.K) throw std::invalid_argument("gamma_jet: |L| + 2 exceeds the jet order");
  auto all = gamma_series<Scalar>(phi, x, y, maxL, 0);
  return all.at(gamma_var(0, i, j, k, L));
}

std::map<Var, Scalar> eta_values(const TruncatedMap& psi, int maxL, int slot) {
  std::vector<Scalar> x(psi.n);
  return gamma_series<Scalar>(psi, x, identity_matrix<Scalar>(psi.n), maxL, slot);
}

const Poly& eta_in_alpha(int n, const Var& eta) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::map<Var, Poly>> cache;
  auto low = eta.lower();
  int order = static_cast<int>(low.size());
  Var key = eta_var(eta.slot(), eta.upper(), low[0], low[1], std::vector<int>(low.begin() + 2, low.end()));
  std::lock_guard<std::mutex> lock(mu);
  auto ck = std::make_tuple(n, order, eta.slot());
  auto it = cache.find(ck);
  if (it == cache.end()) {
    auto psi = generic_n(n, order, eta.slot());
    auto tab = eta_from_series(psi.comp, n, order - 2, eta.slot(), false);
    it = cache.emplace(ck, std::move(tab)).first;
  }
  return it->second.at(key);
}

const Poly& alpha_in_eta(int n, const Var& alpha) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::map<Var, Poly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& tab = cache[{n, alpha.slot()}];
  auto found = tab.find(alpha);
  if (found != tab.end()) return found->second;
  int slot = alpha.slot();
  int order = static_cast<int>(alpha.lower().size());
  for (int d = 2; d <= order; ++d) {
    for (MIdx m : midx_of_degree(n, d))
      for (int i = 1; i <= n; ++i) {
        auto beta = midx_multiset(m, n);
        Var a = Var::alpha(slot, i, beta);
        if (tab.count(a)) continue;
        Var e = eta_var(slot, i, beta[0], beta[1], std::vector<int>(beta.begin() + 2, beta.end()));
        Poly ex = eta_in_alpha(n, e);
        if (ex.coeff(mono(a)) != Scalar(1)) throw std::logic_error("alpha_in_eta: not triangular");
        Poly rest = ex - Poly::var(a);
        // rest only involves alpha of lower order, already expressed in eta
        Poly sub = rest.map_vars([&](const Var& v, Poly& out) {
          auto t = tab.find(v);
          if (t == tab.end()) throw std::logic_error("alpha_in_eta: missing " + v.name());
          out = t->second;
          return true;
        });
        tab.emplace(a, Poly::var(e) - sub);
      }
  }
  return tab.at(alpha);
}

const Poly& g_action_alpha(int n, const GGen& z, const Var& alpha) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int, int, int>, std::map<Var, Poly>> cache;
  int order = static_cast<int>(alpha.lower().size());
  int slot = alpha.slot();
  std::lock_guard<std::mutex> lock(mu);
  auto ck = std::make_tuple(n, static_cast<int>(z.kind), z.a, z.b, order, slot);
  auto it = cache.find(ck);
  if (it == cache.end()) {
    auto psi = generic_n(n, order + 1, slot);
    Poly eps = Poly::var(Var::eps());
    auto moved = compose(psi, exp_affine<Poly>(n, order + 1, z, eps), order + 1);
    auto np = normalise(moved);
    auto coords = alpha_coords(np, slot, order);
    std::map<Var, Poly> tab;
    for (auto& [v, p] : coords) tab.emplace(v, p.derivative(Var::eps()));
    it = cache.emplace(ck, std::move(tab)).first;
  }
  return it->second.at(alpha);
}

Poly g_act(int n, const GGen& z, const Poly& f) {
  return apply_derivation(f, [&](const Var& v) -> Poly {
    if (v.kind() != VarKind::Alpha) return Poly();
    return g_action_alpha(n, z, v);
  });
}

Scalar MapSampler::value(std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> d(lo, hi);
  return Scalar(d(rng));
}

std::vector<Scalar> MapSampler::point(std::mt19937_64& rng, int n) const {
  std::vector<Scalar> x;
  for (int i = 0; i < n; ++i) x.push_back(value(rng));
  return x;
}

bool invertible(const Matrix<Scalar>& a) {
  try {
    (void)mat_inverse(a);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

Matrix<Scalar> MapSampler::frame(std::mt19937_64& rng, int n) const {
  for (;;) {
    Matrix<Scalar> a(n, std::vector<Scalar>(n));
    for (auto& row : a)
      for (auto& v : row) v = value(rng);
    if (invertible(a)) return a;
  }
}

TruncatedMap MapSampler::map(std::mt19937_64& rng, int n, int K, int degree, bool fix_origin) const {
  std::vector<Scalar> b(n);
  if (!fix_origin) b = point(rng, n);
  auto f = affine_map(b, frame(rng, n), K);
  for (int d = 2; d <= std::min(degree, K); ++d)
    for (MIdx m : midx_of_degree(n, d))
      for (int i = 0; i < n; ++i) f.comp[i].add(m, value(rng));
  return f;
}

TruncatedMap MapSampler::n_element(std::mt19937_64& rng, int n, int K, int degree) const {
  auto f = TruncatedMap::identity(n, K);
  for (int d = 2; d <= std::min(degree, K); ++d)
    for (MIdx m : midx_of_degree(n, d))
      for (int i = 0; i < n; ++i) f.comp[i].add(m, value(rng));
  return f;
}

TruncatedMap MapSampler::affine(std::mt19937_64& rng, int n, int K) const {
  return affine_map(point(rng, n), frame(rng, n), K);
}

std::vector<Scalar> eval_map(const TruncatedMap& phi, const std::vector<Scalar>& x) {
  std::vector<Scalar> out;
  for (auto& s : phi.comp) {
    Scalar v;
    for (auto& [m, c] : s.c) {
      Scalar t = c;
      for (int l = 0; l < phi.n; ++l)
        for (int e = 0; e < midx_get(m, l); ++e) t *= x[l];
      v += t;
    }
    out.push_back(v);
  }
  return out;
}

Matrix<Scalar> jacobian_at(const TruncatedMap& phi, const std::vector<Scalar>& x) {
  Matrix<Scalar> a(phi.n, std::vector<Scalar>(phi.n));
  for (int i = 0; i < phi.n; ++i)
    for (int j = 0; j < phi.n; ++j) {
      TruncatedMap d{phi.n, phi.K, {phi.comp[i].derivative(j)}};
      a[i][j] = eval_map(d, x)[0];
    }
  return a;
}

}  // namespace cw
