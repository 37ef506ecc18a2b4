#include <gtest/gtest.h>

#include <random>

#include "cwhopf/simplicial.hpp"

using namespace cw;

namespace {

std::vector<Word> letters(int n, int p) {
  std::vector<Word> ls;
  for (int r = 1; r <= p; ++r) ls.push_back(letter_dt(r));
  for (int k = 1; k <= n; ++k) ls.push_back(letter_theta(k));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) ls.push_back(letter_omega(a, b));
  return ls;
}

Poly random_coeff(std::mt19937_64& rng, int n, int p, int slots) {
  std::uniform_int_distribution<int> c(-3, 3), pick(0, 3);
  Poly f(Scalar(c(rng)));
  for (int t = 0; t < 2; ++t) {
    Poly m(Scalar(c(rng)));
    int kind = pick(rng);
    std::uniform_int_distribution<int> ix(1, n), sl(0, slots - 1);
    if (kind == 0 && p > 0) m *= Poly::var(Var::sim(std::uniform_int_distribution<int>(1, p)(rng)));
    if (kind == 1) m *= Poly::var(gamma_var(sl(rng), ix(rng), ix(rng), ix(rng), {}));
    if (kind == 2) m *= Poly::var(gamma_var(sl(rng), ix(rng), ix(rng), ix(rng), {ix(rng)}));
    if (kind == 3) m *= Poly::var(gamma_var(sl(rng), ix(rng), ix(rng), ix(rng), {}));
    f += m;
  }
  return f;
}

Form random_form(std::mt19937_64& rng, int n, int p, int deg, int slots, bool constant = false) {
  auto ls = letters(n, p);
  Form f(n);
  std::uniform_int_distribution<size_t> pick(0, ls.size() - 1);
  for (int t = 0; t < 3; ++t) {
    Word w = 0;
    int guard = 0;
    while (word_degree(w) < deg && guard++ < 100) w |= ls[pick(rng)];
    if (word_degree(w) != deg) continue;
    Poly c = constant ? Poly(Scalar(std::uniform_int_distribution<int>(-3, 3)(rng))) : random_coeff(rng, n, p, slots);
    f.add(w, c);
  }
  return f;
}

}  // namespace

TEST(Forms, WedgeGradedCommutative) {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 30; ++t) {
      int da = t % 3, db = (t / 3) % 3;
      Form a = random_form(rng, n, 1, da, 2), b = random_form(rng, n, 1, db, 2);
      Form ab = wedge(a, b), ba = wedge(b, a);
      EXPECT_EQ(ab, (da * db) % 2 ? -ba : ba);
      Form c = random_form(rng, n, 1, 1, 2);
      EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
    }
}

TEST(Forms, LettersRoundTrip) {
  Word w = letter_dt(2) | letter_theta(1) | letter_omega(2, 1);
  EXPECT_EQ(word_from_letters(word_letters(w)), w);
  EXPECT_EQ(word_str(w), "dt2^t1^w21");
  EXPECT_THROW(word_from_letters({"t1", "t1"}), std::invalid_argument);
}

TEST(Forms, DSquaredVanishesSymbolically) {
  std::mt19937_64 rng(32);
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 20; ++t) {
      Form a = random_form(rng, n, 2, t % 3, 2);
      EXPECT_TRUE(d(d(a)).is_zero()) << a.str();
    }
  // coordinates close up too
  for (int n = 1; n <= 2; ++n) {
    EXPECT_TRUE(d(d(Form::scalar(n, Poly::var(Var::coord(1)) * Poly::var(Var::frame(n, 1))))).is_zero());
  }
}

TEST(Forms, DIsGradedDerivation) {
  std::mt19937_64 rng(33);
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 20; ++t) {
      int da = t % 3;
      Form a = random_form(rng, n, 1, da, 2), b = random_form(rng, n, 1, (t / 3) % 2, 2);
      Form lhs = d(wedge(a, b));
      Form rhs = wedge(d(a), b) + (da % 2 ? -wedge(a, d(b)) : wedge(a, d(b)));
      EXPECT_EQ(lhs, rhs);
    }
}

TEST(Forms, MaurerCartan) {
  int n = 2;
  // d theta^1 = -omega^1_mu theta^mu
  Form expect = -(wedge(Form::omega(n, 1, 1), Form::theta(n, 1)) + wedge(Form::omega(n, 1, 2), Form::theta(n, 2)));
  EXPECT_EQ(d(Form::theta(n, 1)), expect);
  Form e2 = -(wedge(Form::omega(n, 1, 1), Form::omega(n, 1, 2)) + wedge(Form::omega(n, 1, 2), Form::omega(n, 2, 2)));
  EXPECT_EQ(d(Form::omega(n, 1, 2)), e2);
}

TEST(Forms, CartanFormulas) {
  std::mt19937_64 rng(34);
  int n = 2;
  for (int t = 0; t < 10; ++t) {
    Form a = random_form(rng, n, 0, 1 + t % 2, 1);
    for (int i = 0; i < gdim(n); ++i) {
      GGen z = GGen::from_index(n, i);
      EXPECT_EQ(d(lie_derivative(a, z)), lie_derivative(d(a), z));
      EXPECT_TRUE(contract(contract(a, z), z).is_zero());
    }
  }
}

TEST(Forms, PullbackFunctorialityAndD) {
  std::mt19937_64 rng(35);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 10; ++t) {
      Form a = random_form(rng, n, 0, 1 + t % 3, 1, true);
      auto phi = ms.map(rng, n, 12, 3), psi = ms.map(rng, n, 12, 3);
      auto x = ms.point(rng, n);
      auto y = ms.frame(rng, n);
      auto px = eval_map(psi, x);
      auto py = mat_mul(jacobian_at(psi, x), y);
      auto comp = compose(phi, psi, 12);
      if (!invertible(jacobian_at(comp, x)) || !invertible(py)) continue;
      // (phi psi)^* a versus psi^* phi^* a
      Form lhs = evaluate_form(pullback_prolonged(a, 0), gamma_bindings({{0, comp}}, x, y, 0));
      Form inner = evaluate_form(pullback_prolonged(a, 0), gamma_bindings({{0, phi}}, px, py, 0));
      Form rhs = evaluate_form(pullback_prolonged(inner, 1), gamma_bindings({{1, psi}}, x, y, 0));
      EXPECT_EQ(lhs, rhs);
      // d phi^* = phi^* d under evaluation
      auto vals = gamma_bindings({{0, phi}}, x, y, 1);
      EXPECT_EQ(evaluate_form(d(pullback_prolonged(a, 0)), vals), evaluate_form(pullback_prolonged(d(a), 0), vals));
    }
  EXPECT_THROW(pullback_prolonged(Form::scalar(1, Poly::var(gamma_var(0, 1, 1, 1, {}))), 1), std::invalid_argument);
}

TEST(Simplicial, CurvatureFlatExpansionMatchesRuleBasedD) {
  // d omega_hat computed with d(A_r) = -A_r ^ A_r
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 2; ++p) {
      FormMatrix w = simplicial_connection(n, p);
      FormMatrix dw = fm_zero(n);
      for (int r = 0; r <= p; ++r) {
        FormMatrix A = pulled_connection(n, r);
        FormMatrix sq = fm_mul(A, A);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) dw[i][j] += wedge(dt_coord(n, r, p), A[i][j]) - sq[i][j] * t_coord(r, p);
      }
      FormMatrix omega = fm_add(dw, fm_mul(w, w));
      EXPECT_EQ(omega, simplicial_curvature(n, p));
    }
}

TEST(Simplicial, GenericCurvatureAgreesUnderEvaluation) {
  std::mt19937_64 rng(36);
  MapSampler ms;
  for (int n = 1; n <= 2; ++n)
    for (int p = 1; p <= 2; ++p) {
      FormMatrix flat = simplicial_curvature(n, p);
      FormMatrix gen = curvature_of(simplicial_connection(n, p));
      for (int t = 0; t < 3; ++t) {
        std::map<int, TruncatedMap> slots;
        for (int r = 0; r <= p; ++r) slots[r] = ms.map(rng, n, 4, 3);
        auto x = ms.point(rng, n);
        bool ok = true;
        for (auto& [r, f] : slots) ok = ok && invertible(jacobian_at(f, x));
        if (!ok) continue;
        auto vals = gamma_bindings(slots, x, ms.frame(rng, n), 1);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) EXPECT_EQ(evaluate_form(flat[i][j], vals), evaluate_form(gen[i][j], vals));
      }
    }
}

TEST(Simplicial, BianchiForGenericCurvature) {
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 2; ++p) {
      FormMatrix w = simplicial_connection(n, p);
      FormMatrix W = curvature_of(w);
      FormMatrix rhs = fm_add(fm_mul(W, w), fm_scale(fm_mul(w, W), Poly(-1)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) EXPECT_EQ(d(W[i][j]), rhs[i][j]);
    }
}

TEST(Simplicial, ChernOfDiagonal) {
  // c_1 = -lambda tr, c_2 = lambda^2 det for a 2x2 matrix of 2-forms
  int n = 2;
  FormMatrix a = fm_zero(n);
  Form f = Form::letter(n, letter_theta(1) | letter_theta(2));
  Form g = Form::letter(n, letter_omega(1, 1) | letter_omega(2, 2));
  a[0][0] = f;
  a[1][1] = g;
  EXPECT_EQ(chern(1, a), (f + g) * Poly(-Scalar::lambda(1)));
  EXPECT_EQ(chern(2, a), wedge(f, g) * Poly(Scalar::lambda(2)));
  EXPECT_TRUE(chern(3, a).is_zero());
}

TEST(Simplicial, FiberIntegralMonomials) {
  // int_{Delta^2} t1 t2 = 1/24, int_{Delta^1} t1^2 = 1/3
  int n = 1;
  Form a = Form::letter(n, letter_dt(1) | letter_dt(2), Poly::var(Var::sim(1)) * Poly::var(Var::sim(2)));
  EXPECT_EQ(fiber_integrate(a, 2).coeff(0), Poly(Scalar::frac(1, 24)));
  Form b = Form::letter(n, letter_dt(1), Poly::var(Var::sim(1)).pow(2));
  EXPECT_EQ(fiber_integrate(b, 1).coeff(0), Poly(Scalar::frac(1, 3)));
}

TEST(Simplicial, StokesOnRandomForms) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + t % 2, p = 1 + t % 3;
    int deg = p - 1 + (t / 2) % 3;
    Form a = random_form(rng, n, p, deg, p + 1);
    Form lhs = fiber_integrate(d(a), p) - (d(fiber_integrate(a, p)) * Poly(p % 2 ? -1 : 1));
    Form rhs(n);
    for (int i = 0; i <= p; ++i) {
      Form f = fiber_integrate(face_restrict(a, i, p), p - 1);
      rhs += i % 2 ? -f : f;
    }
    EXPECT_EQ(lhs, rhs) << a.str();
  }
}

TEST(Simplicial, TransgressionIdentities) {
  // exact symbolic d Tc_k = c_k with the generic curvature
  for (int n = 1; n <= 2; ++n)
    for (int p = 0; p <= 3; ++p) {
      FormMatrix w = simplicial_connection(n, p);
      FormMatrix W = curvature_of(w);
      for (int k = 1; k <= n; ++k) {
        Form c = chern(k, W);
        EXPECT_TRUE(d(c).is_zero()) << "n=" << n << " p=" << p << " k=" << k;
        EXPECT_EQ(d(transgress(k, w, W)), c) << "n=" << n << " p=" << p << " k=" << k;
        if (k % 2) EXPECT_EQ(d(transgress_relative(k, w, W)), c) << "relative n=" << n << " p=" << p;
      }
    }
  EXPECT_THROW(transgress_relative(2, simplicial_connection(2, 0), simplicial_curvature(2, 0)), std::invalid_argument);
}

TEST(Simplicial, TransgressionBaseCases) {
  // p = 0 at n = 1: Tc_1 = -lambda (w11 + g0 t1)
  FormMatrix w = simplicial_connection(1, 0);
  Form t = transgress(1, w, simplicial_curvature(1, 0));
  Form expect = (Form::omega(1, 1, 1) + Form::theta(1, 1) * Poly::var(gamma_var(0, 1, 1, 1, {}))) * Poly(-Scalar::lambda(1));
  EXPECT_EQ(t, expect);
  EXPECT_TRUE(transgress(1, fm_zero(1), fm_zero(1)).is_zero());
  EXPECT_TRUE(transgress(2, fm_zero(2), fm_zero(2)).is_zero());
  // the relative n = 1 case reduces to the absolute one
  EXPECT_EQ(transgress_relative(1, w, simplicial_curvature(1, 0)), t);
}

TEST(Simplicial, RelativeTransgressionIsBasic) {
  for (int p = 0; p <= 2; ++p) {
    FormMatrix w = simplicial_connection(2, p);
    FormMatrix W = simplicial_curvature(2, p);
    Form t = transgress_relative(1, w, W);
    for (int a = 1; a <= 2; ++a)
      for (int b = a + 1; b <= 2; ++b) EXPECT_EQ(contract(t, GGen::y(a, b)), contract(t, GGen::y(b, a)));
    // tr w is basic too, absolute Tc_2 is not
    EXPECT_EQ(transgress(1, w, W), t);
    Form ta = transgress(2, w, W);
    EXPECT_NE(contract(ta, GGen::y(1, 2)), contract(ta, GGen::y(2, 1)));
  }
}

TEST(Simplicial, ChernConjugationInvariant) {
  std::mt19937_64 rng(38);
  MapSampler ms;
  int n = 2;
  for (int t = 0; t < 5; ++t) {
    FormMatrix a = fm_zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = random_form(rng, n, 1, 2, 2);
    auto g = ms.frame(rng, n);
    auto gi = mat_inverse(g);
    FormMatrix G = fm_zero(n), Gi = fm_zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        G[i][j] = Form::scalar(n, Poly(g[i][j]));
        Gi[i][j] = Form::scalar(n, Poly(gi[i][j]));
      }
    FormMatrix b = fm_mul(fm_mul(G, a), Gi);
    for (int k = 1; k <= n; ++k) EXPECT_EQ(chern(k, b), chern(k, a));
  }
}

TEST(Simplicial, SplitSymSkew) {
  FormMatrix w = simplicial_connection(2, 1);
  Poly half(Scalar::frac(1, 2));
  FormMatrix s = fm_scale(fm_add(w, fm_transpose(w)), half);
  FormMatrix o = fm_scale(fm_add(w, fm_scale(fm_transpose(w), Poly(-1))), half);
  EXPECT_EQ(fm_add(s, o), w);
  EXPECT_EQ(s, fm_transpose(s));
  EXPECT_EQ(o, fm_scale(fm_transpose(o), Poly(-1)));
}
