#include <gtest/gtest.h>

#include <random>

#include "cwhopf/hopf.hpp"

using namespace cw;

namespace {

HopfTensor G(int n, const HopfGenerator& g) { return HopfTensor::generator(n, g); }

std::vector<HopfTensor> generators(int n, bool higher = true) {
  std::vector<HopfTensor> out;
  for (int k = 1; k <= n; ++k) out.push_back(G(n, HopfGenerator::x(k)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) out.push_back(G(n, HopfGenerator::y(i, j)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        out.push_back(G(n, HopfGenerator::d(i, j, k)));
        if (higher) out.push_back(G(n, HopfGenerator::d(i, j, k, {1})));
      }
  return out;
}

std::vector<HopfTensor> degree_two(int n) {
  auto g = generators(n, false);
  std::vector<HopfTensor> out;
  for (auto& a : g)
    for (auto& b : g) out.push_back(a * b);
  return out;
}

// t in H (x) H as sum of (leg 0) (x) (leg 1)
std::vector<std::pair<HopfTensor, HopfTensor>> split_legs(const HopfTensor& t) {
  std::vector<std::pair<HopfTensor, HopfTensor>> out;
  for (auto& [k, f] : t.terms())
    for (auto& [m, c] : f.terms()) {
      Monomial a, b;
      for (auto& [v, e] : m.f) (v.slot() == 0 ? a : b).f.emplace_back(v, e);
      HopfTensor l(t.n, 1), r(t.n, 1);
      l.add({k[0]}, Poly::term(a, c));
      r.add({k[1]}, retag(Poly::term(b, Scalar(1)), [](int s) { return s - 1; }));
      out.emplace_back(l, r);
    }
  return out;
}

HopfTensor convolve_antipode(const HopfTensor& h) {
  HopfTensor out(h.n, 1);
  for (auto& [a, b] : split_legs(coproduct(h))) out += twisted_antipode(a) * b;
  return out;
}

RationalFn random_f(std::mt19937_64& rng, int n, int deg) {
  std::uniform_int_distribution<int> cf(-3, 3), coin(0, 2);
  std::vector<Var> vars;
  for (int mu = 1; mu <= n; ++mu) {
    vars.push_back(Var::coord(mu));
    for (int nu = 1; nu <= n; ++nu) vars.push_back(Var::frame(mu, nu));
  }
  std::uniform_int_distribution<size_t> pick(0, vars.size() - 1);
  Poly p(Scalar(cf(rng)));
  for (int t = 0; t < 3; ++t) {
    Poly m(Scalar(cf(rng)));
    int d = 1 + static_cast<int>(rng() % deg);
    for (int i = 0; i < d; ++i) m *= Poly::var(vars[pick(rng)]);
    p += m;
  }
  if (coin(rng) == 0) {
    // divide by the frame determinant
    Poly det = n == 1 ? Poly::var(Var::frame(1, 1))
                      : Poly::var(Var::frame(1, 1)) * Poly::var(Var::frame(2, 2)) -
                            Poly::var(Var::frame(1, 2)) * Poly::var(Var::frame(2, 1));
    return RationalFn(p, det);
  }
  return p;
}

ModelMonomial random_monomial(std::mt19937_64& rng, int n) {
  MapSampler ms{-2, 2};
  return {random_f(rng, n, 2), ms.map(rng, n, 6, 2)};
}

std::map<Var, Scalar> point_values(const std::vector<Scalar>& x, const Matrix<Scalar>& y) {
  std::map<Var, Scalar> v;
  int n = static_cast<int>(x.size());
  for (int mu = 0; mu < n; ++mu) {
    v[Var::coord(mu + 1)] = x[mu];
    for (int nu = 0; nu < n; ++nu) v[Var::frame(mu + 1, nu + 1)] = y[mu][nu];
  }
  return v;
}

// random frame with a nonzero value of every relevant denominator
bool sample_point(std::mt19937_64& rng, int n, std::vector<Scalar>& x, Matrix<Scalar>& y) {
  MapSampler ms{-4, 4};
  x = ms.point(rng, n);
  y = ms.frame(rng, n);
  return invertible(y);
}

Scalar value_at(const ModelMonomial& a, const std::map<Var, Scalar>& pt) { return a.f.evaluate(pt); }

bool jac_ok(const TruncatedMap& phi, const std::vector<Scalar>& x) { return invertible(jacobian_at(phi, x)); }

}  // namespace

TEST(Hopf, BasisAndCharacter) {
  for (int n : {1, 2, 3}) {
    const HopfBasis& B = hopf_basis(n);
    EXPECT_EQ(B.dim, n + n * n);
    EXPECT_EQ(B.dim - B.first_skew, n * (n - 1) / 2);
    // structure constants in the new basis satisfy Jacobi
    for (int a = 0; a < B.dim; ++a)
      for (int b = 0; b < B.dim; ++b)
        for (int c = 0; c < B.dim; ++c)
          for (int m = 0; m < B.dim; ++m) {
            Scalar s;
            for (int l = 0; l < B.dim; ++l)
              s += B.c[a][b][l] * B.c[l][c][m] + B.c[b][c][l] * B.c[l][a][m] + B.c[c][a][l] * B.c[l][b][m];
            EXPECT_TRUE(s.is_zero());
          }
  }
  EXPECT_EQ(character_delta(G(1, HopfGenerator::y(1, 1))), Scalar(1));
  EXPECT_EQ(character_delta(G(1, HopfGenerator::x(1))), Scalar(0));
  EXPECT_EQ(character_delta(G(1, HopfGenerator::d(1, 1, 1))), Scalar(0));
  EXPECT_EQ(character_delta(G(2, HopfGenerator::y(1, 1)) * G(2, HopfGenerator::y(2, 2))), Scalar(1));
  EXPECT_EQ(character_delta(G(2, HopfGenerator::y(1, 2))), Scalar(0));
  EXPECT_EQ(character_delta(G(2, HopfGenerator::y(2, 2))), Scalar(1));
  // delta is a character on products of mixed words
  for (auto& a : degree_two(2))
    for (auto& b : generators(2, false))
      EXPECT_EQ(character_delta(a * b), character_delta(a) * character_delta(b));
}

TEST(Hopf, NormalFormRespectsCommutators) {
  // [Y(1,1), X_1] = X_1 from the vector-field realisation
  auto X = G(1, HopfGenerator::x(1)), Y = G(1, HopfGenerator::y(1, 1)), D = G(1, HopfGenerator::d(1, 1, 1));
  EXPECT_EQ(Y * X - X * Y, X);
  EXPECT_EQ(Y * D - D * Y, D);
  EXPECT_EQ(X * D - D * X, G(1, HopfGenerator::d(1, 1, 1, {1})));
  // associativity on random triple products
  auto g = generators(2, false);
  std::mt19937_64 rng(70);
  for (int t = 0; t < 40; ++t) {
    auto& a = g[rng() % g.size()];
    auto& b = g[rng() % g.size()];
    auto& c = g[rng() % g.size()];
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Hopf, CoproductOfGenerators) {
  for (int n : {1, 2}) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        auto y = G(n, HopfGenerator::y(i, j));
        EXPECT_EQ(coproduct(y), tensor(y, HopfTensor::unit(n, 1)) + tensor(HopfTensor::unit(n, 1), y));
        for (int k = j; k <= n; ++k) {
          auto d = G(n, HopfGenerator::d(i, j, k));
          EXPECT_EQ(coproduct(d), tensor(d, HopfTensor::unit(n, 1)) + tensor(HopfTensor::unit(n, 1), d));
        }
      }
    for (int k = 1; k <= n; ++k) {
      auto x = G(n, HopfGenerator::x(k));
      auto expect = tensor(x, HopfTensor::unit(n, 1)) + tensor(HopfTensor::unit(n, 1), x);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          expect += tensor(G(n, HopfGenerator::d(i, std::min(j, k), std::max(j, k))), G(n, HopfGenerator::y(i, j)));
      EXPECT_EQ(coproduct(x), expect);
    }
  }
}

TEST(Hopf, CoassociativityAndMultiplicativity) {
  for (int n : {1, 2}) {
    std::vector<HopfTensor> corpus = generators(n);
    if (n == 1)
      for (auto& h : degree_two(n)) corpus.push_back(h);
    for (auto& h : corpus) {
      auto c = coproduct(h);
      EXPECT_EQ(coproduct_leg(c, 0), coproduct_leg(c, 1)) << h.str();
      // counit laws
      EXPECT_EQ(counit_leg(c, 0), h);
      EXPECT_EQ(counit_leg(c, 1), h);
    }
    auto g = generators(n, false);
    for (auto& a : g)
      for (auto& b : g) EXPECT_EQ(coproduct(a * b), coproduct(a) * coproduct(b));
  }
  // degree-two words at n = 2, sampled
  std::mt19937_64 rng(71);
  auto w = degree_two(2);
  for (int t = 0; t < 12; ++t) {
    auto c = coproduct(w[rng() % w.size()]);
    EXPECT_EQ(coproduct_leg(c, 0), coproduct_leg(c, 1));
  }
}

TEST(Hopf, HigherCoproductFromCommutator) {
  // Delta(D^i_{jkl}) = Delta([X_l, D^i_{jk}])
  for (int n : {1, 2})
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = j; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            auto x = G(n, HopfGenerator::x(l)), d = G(n, HopfGenerator::d(i, j, k));
            auto dl = G(n, HopfGenerator::d(i, j, k, {l}));
            EXPECT_EQ(x * d - d * x, dl);
            auto cx = coproduct(x), cd = coproduct(d);
            EXPECT_EQ(coproduct(dl), cx * cd - cd * cx);
          }
}

TEST(Hopf, AntipodeAndConvolution) {
  EXPECT_EQ(twisted_antipode(G(1, HopfGenerator::y(1, 1))), HopfTensor::unit(1, 1) - G(1, HopfGenerator::y(1, 1)));
  EXPECT_EQ(twisted_antipode(G(1, HopfGenerator::d(1, 1, 1))), -G(1, HopfGenerator::d(1, 1, 1)));
  for (int n : {1, 2}) {
    std::vector<HopfTensor> corpus = generators(n);
    for (auto& h : degree_two(n)) corpus.push_back(h);
    for (auto& h : corpus) {
      EXPECT_EQ(convolve_antipode(h), HopfTensor::unit(n, 1) * Scalar(character_delta(h))) << h.str();
      EXPECT_EQ(twisted_antipode(twisted_antipode(h)), h) << h.str();
    }
    // anti-homomorphism
    auto g = generators(n, false);
    for (auto& a : g)
      for (auto& b : g) EXPECT_EQ(twisted_antipode(a * b), twisted_antipode(b) * twisted_antipode(a));
  }
}

TEST(Hopf, ActionOnModelMonomials) {
  // Y^1_1 (y^1_1 U*_id) = y^1_1 U*_id
  ModelMonomial a{Poly::var(Var::frame(1, 1)), TruncatedMap::identity(1, 4)};
  EXPECT_EQ(act(G(1, HopfGenerator::y(1, 1)), a).f, RationalFn(Poly::var(Var::frame(1, 1))));
  std::mt19937_64 rng(72);
  for (int n : {1, 2})
    for (int t = 0; t < 10; ++t) {
      auto m = random_monomial(rng, n);
      auto gam = gamma_symbolic(m.phi, 1, 0);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = j; k <= n; ++k) {
            // D^i_{jk}(f U*) = gamma^i_{jk}(phi) f U*
            EXPECT_EQ(act(G(n, HopfGenerator::d(i, j, k)), m).f, gam.at(gamma_var(0, i, j, k, {})) * m.f);
            for (int l = 1; l <= n; ++l) {
              auto x = G(n, HopfGenerator::x(l)), d = G(n, HopfGenerator::d(i, j, k));
              auto lhs = act(x, act(d, m)).f - act(d, act(x, m)).f;
              EXPECT_EQ(lhs, act(G(n, HopfGenerator::d(i, j, k, {l})), m).f);
            }
          }
    }
}

TEST(Hopf, GammaSymbolicMatchesSeries) {
  std::mt19937_64 rng(73);
  for (int n : {1, 2})
    for (int t = 0; t < 10; ++t) {
      MapSampler ms{-3, 3};
      auto phi = ms.map(rng, n, 6, 3);
      std::vector<Scalar> x;
      Matrix<Scalar> y;
      if (!sample_point(rng, n, x, y) || !jac_ok(phi, x)) continue;
      int L = n == 1 ? 2 : 1;
      auto sym = gamma_symbolic(phi, L, 0);
      auto num = gamma_series<Scalar>(phi, x, y, L, 0);
      auto pt = point_values(x, y);
      for (auto& [v, g] : sym) EXPECT_EQ(g.evaluate(pt), num.at(v)) << v.name();
    }
}

TEST(Hopf, ActionIsAlgebraMapAndModuleAlgebra) {
  std::mt19937_64 rng(74);
  for (int n : {1, 2}) {
    auto g = generators(n);
    const int budget = 100;
    int done = 0;
    for (int t = 0; done < budget && t < 4 * budget; ++t) {
      auto a = random_monomial(rng, n), b = random_monomial(rng, n);
      std::vector<Scalar> x;
      Matrix<Scalar> y;
      if (!sample_point(rng, n, x, y) || !jac_ok(a.phi, x) || !jac_ok(b.phi, eval_map(a.phi, x))) continue;
      ++done;
      auto& h = g[rng() % g.size()];
      auto pt = point_values(x, y);
      Scalar lhs = act_value(h, {a * b}, x, y);
      Scalar rhs = act_value(coproduct(h), {a, b}, x, y);
      EXPECT_EQ(lhs, rhs) << h.str();
      if (n == 1) EXPECT_EQ(value_at(act(h, a * b), pt), rhs) << h.str();
      // h2 h1 acts as h2 after h1
      auto& h2 = g[rng() % g.size()];
      EXPECT_EQ(act_value(h2 * h, {a}, x, y), act_value(h2, {act(h, a)}, x, y)) << h2.str() << " . " << h.str();
    }
    EXPECT_EQ(done, budget);
  }
  // the Leibniz rule without the D (x) Y term is detected
  auto x1 = G(1, HopfGenerator::x(1)), one = HopfTensor::unit(1, 1);
  auto naive = tensor(x1, one) + tensor(one, x1);
  int caught = 0;
  for (int t = 0; t < 10; ++t) {
    auto a = random_monomial(rng, 1), b = random_monomial(rng, 1);
    std::vector<Scalar> x;
    Matrix<Scalar> y;
    if (!sample_point(rng, 1, x, y) || !jac_ok(a.phi, x) || !jac_ok(b.phi, eval_map(a.phi, x))) continue;
    caught += act_value(x1, {a * b}, x, y) != act_value(naive, {a, b}, x, y);
  }
  EXPECT_GT(caught, 0);
}

TEST(Hopf, BianchiIdentity) {
  const int n = 2;
  std::mt19937_64 rng(75);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          auto D = [&](int a, int b, int c, std::vector<int> L = {}) {
            return G(n, HopfGenerator::d(a, std::min(b, c), std::max(b, c), std::move(L)));
          };
          auto lhs = D(i, j, l, {k}) - D(i, j, k, {l});
          HopfTensor rhs(n, 1);
          for (int s = 1; s <= n; ++s) rhs += D(s, j, k) * D(i, s, l) - D(s, j, l) * D(i, s, k);
          EXPECT_EQ(lhs, rhs);
          for (int t = 0; t < 3; ++t) {
            auto m = random_monomial(rng, n);
            EXPECT_EQ(act(lhs, m).f, act(rhs, m).f);
          }
        }
}

TEST(Hopf, CyclicStructure) {
  const int n = 1;
  auto g = generators(n);
  auto one = HopfTensor::unit(n, 1);
  // tau_1 = S_delta, tau_1^2 = Id
  for (auto& h : g) {
    EXPECT_EQ(cyclic_tau(h), twisted_antipode(h));
    EXPECT_EQ(cyclic_tau(cyclic_tau(h)), h);
  }
  std::mt19937_64 rng(76);
  for (int q = 2; q <= 3; ++q)
    for (int t = 0; t < 6; ++t) {
      HopfTensor x = g[rng() % g.size()];
      for (int r = 1; r < q; ++r) x = tensor(x, g[rng() % g.size()]);
      HopfTensor y = x;
      for (int r = 0; r <= q; ++r) y = cyclic_tau(y);
      EXPECT_EQ(y, x) << x.str();
    }
  // sigma_0 (1 (x) h) = h
  for (auto& h : g) EXPECT_EQ(degeneracy(tensor(one, h), 0), h);
  EXPECT_THROW(face(one, 3), std::invalid_argument);
  EXPECT_THROW(degeneracy(one, 1), std::invalid_argument);

  auto D = G(n, HopfGenerator::d(1, 1, 1));
  EXPECT_TRUE(hochschild_b(D).is_zero());
  EXPECT_TRUE(connes_B(D).is_zero());
  // a non-cocycle control
  EXPECT_FALSE(hochschild_b(G(n, HopfGenerator::x(1))).is_zero());
}

TEST(Hopf, MixedComplexIdentities) {
  const int n = 1;
  auto g = generators(n);
  std::mt19937_64 rng(77);
  // normalised corpus: legs in the kernel of the counit
  for (int q = 1; q <= 3; ++q)
    for (int t = 0; t < 4; ++t) {
      HopfTensor x = g[rng() % g.size()];
      for (int r = 1; r < q; ++r) x = tensor(x, g[rng() % g.size()]);
      EXPECT_TRUE(hochschild_b(hochschild_b(x)).is_zero());
      auto bx = hochschild_b(x);
      auto lhs = connes_B(bx);
      if (q >= 1) lhs += hochschild_b(connes_B(x));
      EXPECT_TRUE(lhs.is_zero()) << x.str() << " -> " << lhs.str();
      if (q >= 2) EXPECT_TRUE(connes_B(connes_B(x)).is_zero());
    }
}

TEST(Hopf, RelativeQuotient) {
  const int n = 2;
  const HopfBasis& B = hopf_basis(n);
  auto sym = G(n, HopfGenerator::y(1, 2)) + G(n, HopfGenerator::y(2, 1));
  auto skew = G(n, HopfGenerator::y(1, 2)) - G(n, HopfGenerator::y(2, 1));
  EXPECT_EQ(project_quotient(sym), sym);
  EXPECT_TRUE(project_quotient(skew).is_zero());
  EXPECT_TRUE(project_quotient(G(n, HopfGenerator::x(1)) * skew).is_zero());
  EXPECT_EQ(B.names[B.first_skew], "K12");
  // the trace of Y and the unit are invariant; X_1 is not
  auto tr = G(n, HopfGenerator::y(1, 1)) + G(n, HopfGenerator::y(2, 2));
  EXPECT_TRUE(is_on_invariant(tr));
  EXPECT_TRUE(is_on_invariant(HopfTensor::unit(n, 2)));
  EXPECT_FALSE(is_on_invariant(G(n, HopfGenerator::x(1))));
  EXPECT_THROW(relative_project(G(n, HopfGenerator::x(1))), std::invalid_argument);
  // sum_k X_k (x) X_k is invariant in Q (x) Q
  HopfTensor xx(n, 2);
  for (int k = 1; k <= n; ++k) xx += tensor(G(n, HopfGenerator::x(k)), G(n, HopfGenerator::x(k)));
  EXPECT_TRUE(is_on_invariant(xx));
}

TEST(Hopf, TauIndependentOfRepresentative) {
  const int n = 2;
  auto g = generators(n, false);
  auto skew = G(n, HopfGenerator::y(1, 2)) - G(n, HopfGenerator::y(2, 1));
  std::mt19937_64 rng(78);
  for (int q = 2; q <= 3; ++q)
    for (int t = 0; t < 4; ++t) {
      HopfTensor x = g[rng() % g.size()];
      for (int r = 1; r < q; ++r) x = tensor(x, g[rng() % g.size()]);
      // x + (stuff ending in o_n) on a leg after the first
      HopfTensor z = HopfTensor::unit(n, 0);
      int leg = 1 + static_cast<int>(rng() % (q - 1));
      for (int r = 0; r < q; ++r) {
        auto h = g[rng() % g.size()];
        z = tensor(z, r == leg ? h * skew : h);
      }
      EXPECT_TRUE(project_quotient(z).is_zero());
      EXPECT_TRUE(project_quotient(cyclic_tau(z)).is_zero()) << z.str();
      EXPECT_EQ(project_quotient(cyclic_tau(x + z)), project_quotient(cyclic_tau(x)));
    }
}

TEST(Hopf, SymbolicActionMatchesEvaluation) {
  std::mt19937_64 rng(79);
  for (int n : {1, 2}) {
    auto g = generators(n);
    for (int t = 0; t < 15; ++t) {
      auto a = random_monomial(rng, n);
      std::vector<Scalar> x;
      Matrix<Scalar> y;
      if (!sample_point(rng, n, x, y)) continue;
      auto h = g[rng() % g.size()] * g[rng() % g.size()];
      EXPECT_EQ(act(h, a).f.evaluate(point_values(x, y)), act_value(h, {a}, x, y)) << h.str();
    }
  }
}
