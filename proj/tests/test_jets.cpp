#include <gtest/gtest.h>

#include <random>

#include "cwhopf/jets.hpp"

using namespace cw;

namespace {

// gamma^i_{jkL} value with canonical lookup
Scalar G(const std::map<Var, Scalar>& g, int i, int j, int k, std::vector<int> L = {}) {
  return g.at(gamma_var(0, i, j, k, std::move(L)));
}

}  // namespace

TEST(JetGroup, ComposeAssociativeOnOriginFixingMaps) {
  std::mt19937_64 rng(11);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 20; ++t) {
      auto f = ms.map(rng, n, 4, 3, true), g = ms.map(rng, n, 4, 3, true), h = ms.map(rng, n, 4, 3, true);
      EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
    }
}

TEST(JetGroup, InverseIdentities) {
  std::mt19937_64 rng(12);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 20; ++t) {
      auto f = ms.map(rng, n, 4, 3, false);
      auto id = TruncatedMap::identity(n, 4);
      EXPECT_EQ(compose(invert(f), f), id);
      auto f0 = ms.map(rng, n, 4, 3, true);
      EXPECT_EQ(compose(invert(f0), f0), id);
      EXPECT_EQ(compose(f0, invert(f0)), id);
    }
}

TEST(JetGroup, KacRoundTrip) {
  std::mt19937_64 rng(13);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 20; ++t) {
      auto f = ms.map(rng, n, 4, 3);
      auto [aff, psi] = kac(f);
      EXPECT_EQ(compose(aff, psi), f);
      EXPECT_TRUE(psi.fixes_origin());
      EXPECT_EQ(psi.linear(), identity_matrix<Scalar>(n));
      EXPECT_LE(aff.degree(), 1);
    }
}

TEST(JetGroup, MatchedPair) {
  std::mt19937_64 rng(14);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 20; ++t) {
      auto psi = ms.n_element(rng, n, 4, 3);
      auto phi = ms.affine(rng, n, 4);
      auto [lhs, rhs] = act_right(psi, phi);
      EXPECT_EQ(compose(psi, phi), compose(lhs, rhs));
      EXPECT_LE(lhs.degree(), 1);
      EXPECT_EQ(rhs.linear(), identity_matrix<Scalar>(n));
    }
}

TEST(Gamma, DirectFormulaMatchesSeries) {
  std::mt19937_64 rng(15);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 8; ++t) {
      auto phi = ms.map(rng, n, 4, 3);
      auto x = ms.point(rng, n);
      if (!invertible(jacobian_at(phi, x))) continue;
      auto y = ms.frame(rng, n);
      auto a = gamma_direct(phi, x, y, 2, 0);
      auto b = gamma_series<Scalar>(phi, x, y, 2, 0);
      EXPECT_EQ(a, b);
    }
}

TEST(Gamma, JetOrderPrecondition) {
  auto f = TruncatedMap::identity(1, 3);
  std::vector<Scalar> x{Scalar(0)};
  EXPECT_THROW(gamma_jet(f, 1, 1, 1, {1, 1}, x, identity_matrix<Scalar>(1)), std::invalid_argument);
  EXPECT_EQ(gamma_jet(f, 1, 1, 1, {1}, x, identity_matrix<Scalar>(1)), Scalar(0));
}

TEST(Gamma, CocycleIdentity) {
  std::mt19937_64 rng(16);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 10; ++t) {
      auto phi = ms.map(rng, n, 12, 3), psi = ms.map(rng, n, 12, 3);
      auto comp = compose(phi, psi, 12);
      auto x = ms.point(rng, n);
      auto y = ms.frame(rng, n);
      auto px = eval_map(psi, x);
      auto py = mat_mul(jacobian_at(psi, x), y);
      if (!invertible(jacobian_at(comp, x)) || !invertible(py)) continue;
      // only the 2-jet part is additive; higher jets pick up Y-terms
      auto lhs = gamma_series<Scalar>(comp, x, y, 0, 0);
      auto a = gamma_series<Scalar>(psi, x, y, 0, 0);
      auto b = gamma_series<Scalar>(phi, px, py, 0, 0);
      for (auto& [v, val] : lhs) EXPECT_EQ(val, a.at(v) + b.at(v)) << v.name();
    }
}

TEST(Gamma, LeftAffineInvarianceAndFing) {
  std::mt19937_64 rng(17);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 8; ++t) {
      auto psi = ms.n_element(rng, n, 4, 3);
      auto phi = ms.affine(rng, n, 4);
      auto right = act_right(psi, phi).second;
      // gamma(psi) at the frame phi(e) = (b, A)
      auto lhs = gamma_direct(psi, phi.value0(), phi.linear(), 2, 0);
      auto rhs = eta_values(right, 2, 0);
      EXPECT_EQ(lhs, rhs);
      auto rho = ms.affine(rng, n, 4);
      auto x = ms.point(rng, n);
      auto y = ms.frame(rng, n);
      if (!invertible(jacobian_at(psi, x))) continue;
      EXPECT_EQ(gamma_series<Scalar>(compose(rho, psi), x, y, 2, 0), gamma_series<Scalar>(psi, x, y, 2, 0));
    }
}

TEST(Gamma, BianchiAsFunctions) {
  std::mt19937_64 rng(18);
  MapSampler ms;
  int n = 2;
  for (int t = 0; t < 8; ++t) {
    auto phi = ms.map(rng, n, 4, 3);
    auto x = ms.point(rng, n);
    if (!invertible(jacobian_at(phi, x))) continue;
    auto g = gamma_series<Scalar>(phi, x, ms.frame(rng, n), 1, 0);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            Scalar lhs = G(g, i, j, l, {k}) - G(g, i, j, k, {l});
            Scalar rhs;
            for (int s = 1; s <= n; ++s) rhs += G(g, s, j, k) * G(g, i, s, l) - G(g, s, j, l) * G(g, i, s, k);
            EXPECT_EQ(lhs, rhs);
          }
  }
}

TEST(Gamma, DerivativeTableAgainstDualNumbers) {
  std::mt19937_64 rng(19);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 5; ++t) {
      auto phi = ms.map(rng, n, 5, 3);
      auto x = ms.point(rng, n);
      if (!invertible(jacobian_at(phi, x))) continue;
      auto y = ms.frame(rng, n);
      auto g = gamma_series<Scalar>(phi, x, y, 2, 0);
      DualScalar eps(Scalar(0), Scalar(1));
      for (int l = 1; l <= n; ++l) {
        std::vector<DualScalar> xd;
        Matrix<DualScalar> yd(n, std::vector<DualScalar>(n));
        for (int mu = 0; mu < n; ++mu) xd.push_back(DualScalar(x[mu], y[mu][l - 1]));
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) yd[a][b] = y[a][b];
        auto gd = gamma_series<DualScalar>(phi, xd, yd, 1, 0);
        for (auto& [v, val] : gd) {
          auto low = v.lower();
          std::vector<int> L(low.begin() + 2, low.end());
          L.push_back(l);
          EXPECT_EQ(val.b, G(g, v.upper(), low[0], low[1], L));
        }
      }
      // Y(a,b) = y^mu_a d/dy^mu_b
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
          std::vector<DualScalar> xd(x.begin(), x.end());
          Matrix<DualScalar> yd(n, std::vector<DualScalar>(n));
          for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) yd[mu][nu] = DualScalar(y[mu][nu], nu == b - 1 ? y[mu][a - 1] : Scalar());
          auto gd = gamma_series<DualScalar>(phi, xd, yd, 1, 0);
          for (auto& [v, val] : gd) {
            int i = v.upper();
            auto low = v.lower();
            // -delta^i_a T^b_{...} + sum_s delta_{j_s b} T^i_{.. a ..}
            auto lookup = [&](int up, std::vector<int> lw) {
              std::vector<int> L(lw.begin() + 2, lw.end());
              return G(g, up, lw[0], lw[1], L);
            };
            Scalar expect;
            if (i == a) expect -= lookup(b, low);
            for (size_t s = 0; s < low.size(); ++s)
              if (low[s] == b) {
                auto lw = low;
                lw[s] = a;
                expect += lookup(i, lw);
              }
            EXPECT_EQ(val.b, expect) << v.name();
          }
        }
    }
}

TEST(Alpha, EtaInAlphaMatchesValues) {
  std::mt19937_64 rng(20);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 10; ++t) {
      auto psi = ms.n_element(rng, n, 5, 5);
      auto al = alpha_coords(psi, 0, 5);
      auto eta = eta_values(psi, 3, 0);
      for (auto& [gv, val] : eta) {
        Var ev = Var::eta(0, gv.upper(), gv.lower());
        EXPECT_EQ(eta_in_alpha(n, ev).evaluate(al), val) << ev.name();
      }
    }
}

TEST(Alpha, AlphaInEtaInvertsEtaInAlpha) {
  for (int n = 1; n <= 2; ++n)
    for (int d = 2; d <= 4; ++d)
      for (MIdx m : midx_of_degree(n, d))
        for (int i = 1; i <= n; ++i) {
          Var a = Var::alpha(0, i, midx_multiset(m, n));
          Poly back = alpha_in_eta(n, a).map_vars([&](const Var& v, Poly& out) {
            out = eta_in_alpha(n, v);
            return true;
          });
          EXPECT_EQ(back, Poly::var(a));
        }
}

TEST(Alpha, GActionOnEtaMatchesGammaDerivatives) {
  for (int n = 1; n <= 2; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = j; k <= n; ++k) {
          Poly e = eta_in_alpha(n, eta_var(0, i, j, k, {}));
          for (int l = 1; l <= n; ++l)
            EXPECT_EQ(g_act(n, GGen::x(l), e), eta_in_alpha(n, eta_var(0, i, j, k, {l})));
          for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
              Poly expect;
              if (i == a) expect -= eta_in_alpha(n, eta_var(0, b, j, k, {}));
              if (j == b) expect += eta_in_alpha(n, eta_var(0, i, a, k, {}));
              if (k == b) expect += eta_in_alpha(n, eta_var(0, i, j, a, {}));
              EXPECT_EQ(g_act(n, GGen::y(a, b), e), expect);
            }
        }
}

TEST(Alpha, GActionIsLieAction) {
  int n = 2;
  int d = gdim(n);
  auto& c = structure_constants(n);
  Poly f = Poly::var(Var::alpha(0, 1, {1, 2})) * Poly::var(Var::alpha(0, 2, {2, 2})) +
           Poly::var(Var::alpha(0, 2, {1, 1, 2}));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      GGen za = GGen::from_index(n, a), zb = GGen::from_index(n, b);
      Poly lhs = g_act(n, za, g_act(n, zb, f)) - g_act(n, zb, g_act(n, za, f));
      Poly rhs;
      for (int k = 0; k < d; ++k)
        if (!c[a][b][k].is_zero()) rhs += g_act(n, GGen::from_index(n, k), f) * c[a][b][k];
      EXPECT_EQ(lhs, rhs) << za.str() << " " << zb.str();
    }
}

TEST(Lie, StructureConstants) {
  auto& c = structure_constants(1);
  // [Y, X] = X at n = 1
  EXPECT_EQ(c[1][0][0], Scalar(1));
  EXPECT_EQ(c[0][1][0], Scalar(-1));
  auto& c2 = structure_constants(2);
  int n = 2;
  // [Y(a,b), Y(c,d)] = delta_bc Y(a,d) - delta_ad Y(c,b)
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int cc = 1; cc <= n; ++cc)
        for (int dd = 1; dd <= n; ++dd) {
          std::vector<Scalar> expect(gdim(n));
          if (b == cc) expect[GGen::y(a, dd).index(n)] += Scalar(1);
          if (a == dd) expect[GGen::y(cc, b).index(n)] -= Scalar(1);
          EXPECT_EQ(c2[GGen::y(a, b).index(n)][GGen::y(cc, dd).index(n)], expect);
        }
}
