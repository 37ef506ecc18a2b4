#include "cwhopf/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cw {

Poly t_coord(int r, int p) {
  if (r > 0) return Poly::var(Var::sim(r));
  Poly t(1);
  for (int s = 1; s <= p; ++s) t -= Poly::var(Var::sim(s));
  return t;
}

Form dt_coord(int n, int r, int p) {
  if (r > 0) return Form::dt(n, r);
  Form f(n);
  for (int s = 1; s <= p; ++s) f -= Form::dt(n, s);
  return f;
}

FormMatrix pulled_connection(int n, int slot) {
  FormMatrix a = fm_zero(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Form f = Form::omega(n, i, j);
      for (int k = 1; k <= n; ++k) f.add(letter_theta(k), Poly::var(gamma_var(slot, i, j, k, {})));
      a[i - 1][j - 1] = f;
    }
  return a;
}

FormMatrix simplicial_connection(int n, int p) {
  FormMatrix w = fm_zero(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Form f = Form::omega(n, i, j);
      for (int k = 1; k <= n; ++k) {
        Poly c;
        for (int r = 0; r <= p; ++r) c += t_coord(r, p) * Poly::var(gamma_var(r, i, j, k, {}));
        f.add(letter_theta(k), c);
      }
      w[i - 1][j - 1] = f;
    }
  return w;
}

FormMatrix simplicial_curvature(int n, int p) {
  std::vector<FormMatrix> A;
  for (int r = 0; r <= p; ++r) A.push_back(pulled_connection(n, r));
  FormMatrix out = fm_zero(n);
  for (int r = 0; r <= p; ++r) {
    Form dtr = dt_coord(n, r, p);
    FormMatrix term = fm_zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) term[i][j] = wedge(dtr, A[r][i][j]);
    out = fm_add(out, term);
    out = fm_add(out, fm_scale(fm_mul(A[r], A[r]), -t_coord(r, p)));
  }
  for (int r = 0; r <= p; ++r)
    for (int s = 0; s <= p; ++s) out = fm_add(out, fm_scale(fm_mul(A[r], A[s]), t_coord(r, p) * t_coord(s, p)));
  return out;
}

FormMatrix curvature_of(const FormMatrix& conn) {
  FormMatrix out = fm_mul(conn, conn);
  for (size_t i = 0; i < conn.size(); ++i)
    for (size_t j = 0; j < conn.size(); ++j) out[i][j] += d(conn[i][j]);
  return out;
}

namespace {

int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// sum over ordered distinct index tuples and permutations; factor(l) picks
// the matrix used at wedge position l
Form minors_sum(int n, int k, const std::function<const FormMatrix&(int)>& factor) {
  Form out(n);
  std::vector<int> idx(k);
  std::vector<int> perm(k);
  auto rec = [&](auto&& self, int pos, unsigned used) -> void {
    if (pos == k) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        Form t = Form::scalar(n, Poly(perm_sign(perm)));
        for (int l = 0; l < k && !t.is_zero(); ++l) t = wedge(t, factor(l)[idx[l]][idx[perm[l]]]);
        out += t;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used & (1u << i)) continue;
      idx[pos] = i;
      self(self, pos + 1, used | (1u << i));
    }
  };
  rec(rec, 0, 0);
  return out;
}

Poly chern_factor(int k) {
  Scalar c = Scalar::lambda(k) * Scalar::frac(k % 2 ? -1 : 1, factorial(k));
  return Poly(c);
}

Form integrate_u(const Form& f) {
  Var u = Var::par();
  return f.map_coeffs([&](const Poly& c) {
    Poly r;
    for (auto& [m, x] : c.terms()) {
      int e = m.exponent(u);
      Monomial rest;
      for (auto& ve : m.f)
        if (!(ve.first == u)) rest.f.push_back(ve);
      r.add_term(rest, x * Scalar::frac(1, e + 1));
    }
    return r;
  });
}

}  // namespace

Form chern(int k, const FormMatrix& a) {
  int n = static_cast<int>(a.size());
  if (k == 0) return Form::scalar(n, Poly(1));
  if (k > n) return Form(n);
  return minors_sum(n, k, [&](int) -> const FormMatrix& { return a; }) * chern_factor(k);
}

Form polarized(int k, const FormMatrix& b, const FormMatrix& e) {
  int n = static_cast<int>(b.size());
  if (k > n || k < 1) return Form(n);
  return minors_sum(n, k, [&](int l) -> const FormMatrix& { return l == 0 ? b : e; }) * chern_factor(k);
}

Form transgress(int k, const FormMatrix& conn, const FormMatrix& curv) {
  Poly u = Poly::var(Var::par());
  FormMatrix wu = fm_add(fm_scale(curv, u), fm_scale(fm_mul(conn, conn), u * u - u));
  return integrate_u(polarized(k, conn, wu)) * Poly(k);
}

Form transgress_relative(int k, const FormMatrix& conn, const FormMatrix& curv) {
  if (k % 2 == 0) throw std::invalid_argument("transgress_relative: k must be odd");
  Poly half(Scalar::frac(1, 2));
  FormMatrix sw = fm_scale(fm_add(conn, fm_transpose(conn)), half);
  FormMatrix sW = fm_scale(fm_add(curv, fm_transpose(curv)), half);
  FormMatrix oW = fm_scale(fm_add(curv, fm_scale(fm_transpose(curv), Poly(-1))), half);
  Poly u = Poly::var(Var::par());
  FormMatrix wu = fm_add(fm_add(fm_scale(sW, u), oW), fm_scale(fm_mul(sw, sw), u * u - Poly(1)));
  return integrate_u(polarized(k, sw, wu)) * Poly(k);
}

Form fiber_integrate(const Form& a, int p) {
  Word full = (Word{1} << p) - 1;
  Form out(a.n);
  for (auto& [w, c] : a.terms()) {
    if ((w & kDtMask) != full) continue;
    Poly r;
    for (auto& [m, x] : c.terms()) {
      int sum = 0;
      mpz_class num = 1;
      Monomial rest;
      for (auto& [v, e] : m.f) {
        if (v.kind() == VarKind::Sim) {
          if (v.idx()[0] > p) throw std::invalid_argument("fiber_integrate: simplex variable out of range");
          sum += e;
          num *= factorial(e);
        } else {
          rest.f.emplace_back(v, e);
        }
      }
      mpz_class den = 1;
      for (int i = 2; i <= p + sum; ++i) den *= i;
      r.add_term(rest, x * Scalar(mpq_class(num, den)));
    }
    out.add(w & ~kDtMask, r);
  }
  return out;
}

Form face_restrict(const Form& a, int i, int p) {
  int n = a.n;
  std::map<Var, Poly> sub;
  std::vector<Form> dimg(p + 1, Form(n));
  for (int j = 1; j <= p; ++j) {
    if (i == 0) {
      if (j == 1) {
        Poly t(1);
        Form f(n);
        for (int s = 1; s <= p - 1; ++s) {
          t -= Poly::var(Var::sim(s));
          f -= Form::dt(n, s);
        }
        sub[Var::sim(1)] = t;
        dimg[1] = f;
      } else {
        sub[Var::sim(j)] = Poly::var(Var::sim(j - 1));
        dimg[j] = Form::dt(n, j - 1);
      }
    } else if (j < i) {
      dimg[j] = Form::dt(n, j);
    } else if (j == i) {
      sub[Var::sim(j)] = Poly();
    } else {
      sub[Var::sim(j)] = Poly::var(Var::sim(j - 1));
      dimg[j] = Form::dt(n, j - 1);
    }
  }
  Form out(n);
  for (auto& [w, c] : a.terms()) {
    Form img = Form::scalar(n, c.substitute(sub));
    for (Word x = w; x && !img.is_zero(); x &= x - 1) {
      int bit = __builtin_ctzll(x);
      if (bit < 8)
        img = wedge(img, dimg[bit + 1]);
      else
        img = wedge(img, Form::letter(n, Word{1} << bit));
    }
    out += img;
  }
  return out;
}

}  // namespace cw
