#include "cwhopf/hopf.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace cw {

const HopfBasis& hopf_basis(int n) {
  static std::mutex mu;
  static std::map<int, HopfBasis> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  HopfBasis B;
  B.n = n;
  B.dim = gdim(n);
  auto unit = [&](const GGen& g) {
    std::vector<Scalar> v(B.dim);
    v[g.index(n)] = 1;
    return v;
  };
  auto push = [&](std::vector<Scalar> v, std::string name) {
    B.elem.push_back(std::move(v));
    B.names.push_back(std::move(name));
  };
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b) {
      auto v = unit(GGen::y(a, b));
      if (a != b) {
        auto w = unit(GGen::y(b, a));
        for (int i = 0; i < B.dim; ++i) v[i] += w[i];
        push(v, "S" + std::to_string(a) + std::to_string(b));
      } else {
        push(v, "Y" + std::to_string(a) + std::to_string(a));
      }
    }
  for (int k = 1; k <= n; ++k) push(unit(GGen::x(k)), "X" + std::to_string(k));
  B.first_skew = static_cast<int>(B.elem.size());
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      auto v = unit(GGen::y(a, b));
      auto w = unit(GGen::y(b, a));
      for (int i = 0; i < B.dim; ++i) v[i] -= w[i];
      push(v, "K" + std::to_string(a) + std::to_string(b));
    }
  B.coord = mat_inverse(B.elem);
  auto& sc = structure_constants(n);
  B.c.assign(B.dim, std::vector<std::vector<Scalar>>(B.dim, std::vector<Scalar>(B.dim)));
  for (int i = 0; i < B.dim; ++i)
    for (int j = 0; j < B.dim; ++j)
      for (int g = 0; g < B.dim; ++g) {
        if (B.elem[i][g].is_zero()) continue;
        for (int h = 0; h < B.dim; ++h) {
          if (B.elem[j][h].is_zero()) continue;
          Scalar f = B.elem[i][g] * B.elem[j][h];
          for (int l = 0; l < B.dim; ++l) {
            if (sc[g][h][l].is_zero()) continue;
            for (int k = 0; k < B.dim; ++k) B.c[i][j][k] += f * sc[g][h][l] * B.coord[l][k];
          }
        }
      }
  B.delta.resize(B.dim);
  for (int i = 0; i < B.dim; ++i)
    for (int g = 0; g < B.dim; ++g) B.delta[i] += B.elem[i][g] * modular_character(n, GGen::from_index(n, g));
  return cache.emplace(n, std::move(B)).first->second;
}

const std::map<PBWWord, Scalar>& pbw_normal(int n, const std::vector<int>& letters) {
  static std::recursive_mutex mu;
  static std::map<std::pair<int, std::vector<int>>, std::map<PBWWord, Scalar>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto key = std::make_pair(n, letters);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::map<PBWWord, Scalar> out;
  size_t i = 0;
  while (i + 1 < letters.size() && letters[i] <= letters[i + 1]) ++i;
  if (i + 1 >= letters.size()) {
    out.emplace(letters, Scalar(1));
  } else {
    // e_a e_b = e_b e_a + [e_a, e_b]
    const HopfBasis& B = hopf_basis(n);
    int a = letters[i], b = letters[i + 1];
    auto sw = letters;
    std::swap(sw[i], sw[i + 1]);
    auto acc = [&](const std::map<PBWWord, Scalar>& m, const Scalar& f) {
      for (auto& [w, c] : m) {
        Scalar& s = out[w];
        s += c * f;
        if (s.is_zero()) out.erase(w);
      }
    };
    acc(pbw_normal(n, sw), Scalar(1));
    for (int k = 0; k < B.dim; ++k) {
      if (B.c[a][b][k].is_zero()) continue;
      std::vector<int> sh(letters.begin(), letters.begin() + i);
      sh.push_back(k);
      sh.insert(sh.end(), letters.begin() + i + 2, letters.end());
      acc(pbw_normal(n, sh), B.c[a][b][k]);
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

std::string HopfGenerator::str() const {
  switch (kind) {
    case X: return "X" + std::to_string(i);
    case Y: return "Y" + std::to_string(i) + std::to_string(j);
    case D: {
      std::string s = "D" + std::to_string(i) + "_" + std::to_string(j) + std::to_string(k);
      for (int l : L) s += std::to_string(l);
      return s;
    }
  }
  return "?";
}

// ---- HopfTensor basics ----

void HopfTensor::add(const Key& k, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

HopfTensor HopfTensor::unit(int n, int q) {
  HopfTensor t(n, q);
  t.add(Key(q), Poly(1));
  return t;
}

HopfTensor HopfTensor::basis_element(int n, int idx) {
  HopfTensor t(n, 1);
  t.add({{idx}}, Poly(1));
  return t;
}

HopfTensor HopfTensor::function(int n, const Poly& f) {
  HopfTensor t(n, 1);
  t.add({{}}, f);
  return t;
}

HopfTensor HopfTensor::generator(int n, const HopfGenerator& g) {
  const HopfBasis& B = hopf_basis(n);
  if (g.kind == HopfGenerator::D)
    return function(n, eta_in_alpha(n, eta_var(0, g.i, g.j, g.k, g.L)));
  GGen z = g.kind == HopfGenerator::X ? GGen::x(g.i) : GGen::y(g.i, g.j);
  HopfTensor t(n, 1);
  for (int e = 0; e < B.dim; ++e)
    if (!B.coord[z.index(n)][e].is_zero()) t.add({{e}}, Poly(B.coord[z.index(n)][e]));
  return t;
}

HopfTensor& HopfTensor::operator+=(const HopfTensor& o) {
  for (auto& [k, c] : o.t_) add(k, c);
  return *this;
}

HopfTensor& HopfTensor::operator-=(const HopfTensor& o) {
  for (auto& [k, c] : o.t_) add(k, -c);
  return *this;
}

HopfTensor HopfTensor::operator-() const {
  HopfTensor r(n, q);
  for (auto& [k, c] : t_) r.t_.emplace(k, -c);
  return r;
}

HopfTensor& HopfTensor::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [k, v] : t_) v *= c;
  return *this;
}

std::string HopfTensor::str() const {
  if (t_.empty()) return "0";
  const HopfBasis& B = hopf_basis(n);
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << c.str() << "]";
    for (int r = 0; r < q; ++r) {
      os << (r ? " | " : " ");
      if (k[r].empty()) os << "1";
      for (size_t i = 0; i < k[r].size(); ++i) os << (i ? "*" : "") << B.names[k[r][i]];
    }
  }
  return os.str();
}

namespace {

// e |> G on the alpha symbols of one slot
Poly act_slot(int n, int e, const Poly& g, int slot) {
  const HopfBasis& B = hopf_basis(n);
  Poly r;
  for (int gi = 0; gi < B.dim; ++gi) {
    if (B.elem[e][gi].is_zero()) continue;
    GGen z = GGen::from_index(n, gi);
    Poly d = apply_derivation(g, [&](const Var& v) -> Poly {
      if (v.kind() != VarKind::Alpha || v.slot() != slot) return Poly();
      return g_action_alpha(n, z, v);
    });
    r += d * B.elem[e][gi];
  }
  return r;
}

// U . G = sum G_i W_i with W_i unnormalised letter lists
std::map<std::vector<int>, Poly> push_past(int n, const PBWWord& u, const Poly& g, int slot) {
  std::map<std::vector<int>, Poly> cur{{{}, g}};
  for (auto it = u.rbegin(); it != u.rend(); ++it) {
    std::map<std::vector<int>, Poly> next;
    for (auto& [w, p] : cur) {
      Poly dp = act_slot(n, *it, p, slot);
      if (!dp.is_zero()) next[w] += dp;
      std::vector<int> w2{*it};
      w2.insert(w2.end(), w.begin(), w.end());
      next[w2] += p;
    }
    for (auto i = next.begin(); i != next.end();) i = i->second.is_zero() ? next.erase(i) : std::next(i);
    cur = std::move(next);
  }
  return cur;
}

Poly retag_alpha(const Poly& p, const std::function<int(int)>& f) { return retag(p, f); }

// split F into (slot-r factor, rest) per monomial, grouped by the slot-r factor
std::map<Monomial, Poly, GrLex> split_slot(const Poly& f, int slot) {
  std::map<Monomial, Poly, GrLex> out;
  for (auto& [m, c] : f.terms()) {
    Monomial a, b;
    for (auto& [v, e] : m.f) {
      bool mine = (v.kind() == VarKind::Alpha || v.kind() == VarKind::Eta || v.kind() == VarKind::Gamma) &&
                  v.slot() == slot;
      (mine ? a : b).f.emplace_back(v, e);
    }
    out[a] += Poly::term(b, c);
  }
  for (auto i = out.begin(); i != out.end();) i = i->second.is_zero() ? out.erase(i) : std::next(i);
  return out;
}

int alpha_order(const Poly& f) {
  int o = 2;
  for (auto& v : f.variables())
    if (v.kind() == VarKind::Alpha) o = std::max(o, static_cast<int>(v.lower().size()));
  return o;
}

// alpha(slot 0) -> alpha(nu' o nu) with nu in slot 0, nu' in slot 1
const std::map<Var, Poly>& group_law(int n, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::map<Var, Poly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, order});
  if (it != cache.end()) return it->second;
  auto comp = compose(generic_n(n, order, 1), generic_n(n, order, 0), order);
  return cache.emplace(std::make_pair(n, order), alpha_coords(comp, 0, order)).first->second;
}

// alpha(slot 0) -> alpha(nu^{-1})
const std::map<Var, Poly>& group_inverse(int n, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::map<Var, Poly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, order});
  if (it != cache.end()) return it->second;
  auto inv = invert(generic_n(n, order, 0));
  return cache.emplace(std::make_pair(n, order), alpha_coords(inv, 0, order)).first->second;
}

// F(slot s) -> Delta F on slots (s, s+1); the caller has shifted slots > s
Poly coproduct_function(int n, const Poly& f, int s) {
  int order = alpha_order(f);
  auto& law = group_law(n, order);
  return f.map_vars([&](const Var& v, Poly& out) {
    if (v.kind() != VarKind::Alpha || v.slot() != s) return false;
    Var v0 = v;
    v0.b[1] = 0;
    out = retag_alpha(law.at(v0), [s](int r) { return r + s; });
    return true;
  });
}

Poly antipode_function(int n, const Poly& f) {
  int order = alpha_order(f);
  auto& inv = group_inverse(n, order);
  return f.map_vars([&](const Var& v, Poly& out) {
    if (v.kind() != VarKind::Alpha || v.slot() != 0) return false;
    out = inv.at(v);
    return true;
  });
}

Poly drop_slot(const Poly& f, int s) {
  Poly z = f.map_vars([&](const Var& v, Poly& out) {
    if (v.kind() != VarKind::Alpha || v.slot() != s) return false;
    out = Poly();
    return true;
  });
  return retag_alpha(z, [s](int r) { return r > s ? r - 1 : r; });
}

void add_words(HopfTensor& out, const Poly& f, const std::vector<std::vector<int>>& legs) {
  // cartesian product of the leg normal forms
  std::vector<std::pair<HopfTensor::Key, Scalar>> acc{{{}, Scalar(1)}};
  for (auto& l : legs) {
    auto& nf = pbw_normal(out.n, l);
    std::vector<std::pair<HopfTensor::Key, Scalar>> next;
    for (auto& [k, c] : acc)
      for (auto& [w, d] : nf) {
        auto k2 = k;
        k2.push_back(w);
        next.emplace_back(std::move(k2), c * d);
      }
    acc = std::move(next);
  }
  for (auto& [k, c] : acc) out.add(k, f * c);
}

void check_same(const HopfTensor& a, const HopfTensor& b, const char* what) {
  if (a.n != b.n || a.q != b.q) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

HopfTensor operator*(const HopfTensor& a, const HopfTensor& b) {
  check_same(a, b, "Hopf product");
  int n = a.n, q = a.q;
  HopfTensor out(n, q);
  for (auto& [ka, fa] : a.terms())
    for (auto& [kb, fb] : b.terms()) {
      std::vector<std::pair<std::vector<std::vector<int>>, Poly>> cur{{std::vector<std::vector<int>>(q), fb}};
      for (int r = 0; r < q; ++r) {
        std::vector<std::pair<std::vector<std::vector<int>>, Poly>> next;
        for (auto& [ws, g] : cur)
          for (auto& [w, g2] : push_past(n, ka[r], g, r)) {
            auto ws2 = ws;
            ws2[r] = w;
            ws2[r].insert(ws2[r].end(), kb[r].begin(), kb[r].end());
            next.emplace_back(std::move(ws2), g2);
          }
        cur = std::move(next);
      }
      for (auto& [ws, g] : cur) add_words(out, fa * g, ws);
    }
  return out;
}

HopfTensor tensor(const HopfTensor& a, const HopfTensor& b) {
  if (a.n != b.n) throw std::invalid_argument("tensor: n mismatch");
  HopfTensor out(a.n, a.q + b.q);
  for (auto& [ka, fa] : a.terms())
    for (auto& [kb, fb] : b.terms()) {
      auto k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      out.add(k, fa * retag_alpha(fb, [&](int r) { return r + a.q; }));
    }
  return out;
}

namespace {

HopfTensor coproduct_basis(int n, int e) {
  const HopfBasis& B = hopf_basis(n);
  HopfTensor t(n, 2);
  t.add({{e}, {}}, Poly(1));
  t.add({{}, {e}}, Poly(1));
  // X_k picks up sum delta^i_{jk} (x) Y(i,j)
  for (int k = 1; k <= n; ++k) {
    const Scalar& m = B.elem[e][GGen::x(k).index(n)];
    if (m.is_zero()) continue;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        Poly d = eta_in_alpha(n, eta_var(0, i, j, k, {})) * m;
        int y = GGen::y(i, j).index(n);
        for (int b = 0; b < B.dim; ++b)
          if (!B.coord[y][b].is_zero()) t.add({{}, {b}}, d * B.coord[y][b]);
      }
  }
  return t;
}

const HopfTensor& coproduct_word(int n, const PBWWord& w) {
  static std::recursive_mutex mu;
  static std::map<std::pair<int, PBWWord>, HopfTensor> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find({n, w});
  if (it != cache.end()) return it->second;
  HopfTensor r = HopfTensor::unit(n, 2);
  if (!w.empty()) {
    PBWWord head(w.begin(), w.end() - 1);
    r = coproduct_word(n, head) * coproduct_basis(n, w.back());
  }
  return cache.emplace(std::make_pair(n, w), std::move(r)).first->second;
}

}  // namespace

HopfTensor coproduct_leg(const HopfTensor& t, int leg) {
  if (leg < 0 || leg >= t.q) throw std::invalid_argument("coproduct_leg: leg out of range");
  HopfTensor out(t.n, t.q + 1);
  for (auto& [k, f] : t.terms()) {
    Poly f1 = retag_alpha(f, [leg](int r) { return r > leg ? r + 1 : r; });
    f1 = coproduct_function(t.n, f1, leg);
    for (auto& [k2, g] : coproduct_word(t.n, k[leg]).terms()) {
      HopfTensor::Key key(k.begin(), k.begin() + leg);
      key.push_back(k2[0]);
      key.push_back(k2[1]);
      key.insert(key.end(), k.begin() + leg + 1, k.end());
      out.add(key, f1 * retag_alpha(g, [leg](int r) { return r + leg; }));
    }
  }
  return out;
}

HopfTensor coproduct(const HopfTensor& h) {
  if (h.q != 1) throw std::invalid_argument("coproduct: expected a single leg");
  return coproduct_leg(h, 0);
}

HopfTensor counit_leg(const HopfTensor& t, int leg) {
  if (leg < 0 || leg >= t.q) throw std::invalid_argument("counit_leg: leg out of range");
  HopfTensor out(t.n, t.q - 1);
  for (auto& [k, f] : t.terms()) {
    if (!k[leg].empty()) continue;
    HopfTensor::Key key = k;
    key.erase(key.begin() + leg);
    out.add(key, drop_slot(f, leg));
  }
  return out;
}

Scalar counit(const HopfTensor& h) {
  if (h.q != 1) throw std::invalid_argument("counit: expected a single leg");
  auto e = counit_leg(h, 0);
  return e.is_zero() ? Scalar(0) : e.terms().begin()->second.constant_term();
}

Scalar character_delta(const HopfTensor& h) {
  if (h.q != 1) throw std::invalid_argument("character_delta: expected a single leg");
  const HopfBasis& B = hopf_basis(h.n);
  Scalar s;
  for (auto& [k, f] : h.terms()) {
    Scalar v = drop_slot(f, 0).constant_term();
    for (int e : k[0]) v *= B.delta[e];
    s += v;
  }
  return s;
}

namespace {

HopfTensor antipode_basis(int n, int e) {
  const HopfBasis& B = hopf_basis(n);
  HopfTensor t(n, 1);
  t.add({{e}}, Poly(-1));
  t.add({{}}, Poly(B.delta[e]));
  for (int k = 1; k <= n; ++k) {
    const Scalar& m = B.elem[e][GGen::x(k).index(n)];
    if (m.is_zero()) continue;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        Poly d = eta_in_alpha(n, eta_var(0, i, j, k, {})) * m;
        int y = GGen::y(i, j).index(n);
        for (int b = 0; b < B.dim; ++b)
          if (!B.coord[y][b].is_zero()) t.add({{b}}, d * B.coord[y][b]);
      }
  }
  return t;
}

}  // namespace

HopfTensor twisted_antipode(const HopfTensor& h) {
  if (h.q != 1) throw std::invalid_argument("twisted_antipode: expected a single leg");
  HopfTensor out(h.n, 1);
  for (auto& [k, f] : h.terms()) {
    HopfTensor su = HopfTensor::unit(h.n, 1);
    for (auto it = k[0].rbegin(); it != k[0].rend(); ++it) su = su * antipode_basis(h.n, *it);
    out += su * HopfTensor::function(h.n, antipode_function(h.n, f));
  }
  return out;
}

HopfTensor multiply_legs(const HopfTensor& t) {
  if (t.q != 2) throw std::invalid_argument("multiply_legs: expected two legs");
  HopfTensor out(t.n, 1);
  for (auto& [k, f] : t.terms())
    for (auto& [m0, rest] : split_slot(f, 0)) {
      HopfTensor a(t.n, 1), b(t.n, 1);
      a.add({k[0]}, Poly::term(m0, Scalar(1)));
      b.add({k[1]}, retag_alpha(rest, [](int r) { return r - 1; }));
      out += a * b;
    }
  return out;
}

HopfTensor iterated_coproduct(const HopfTensor& h, int q) {
  if (h.q != 1 || q < 1) throw std::invalid_argument("iterated_coproduct: bad arguments");
  HopfTensor t = h;
  for (int r = 1; r < q; ++r) t = coproduct_leg(t, r - 1);
  return t;
}

HopfTensor face(const HopfTensor& t, int i) {
  if (i < 0 || i > t.q + 1) throw std::invalid_argument("face: index out of range");
  if (i == 0) return tensor(HopfTensor::unit(t.n, 1), t);
  if (i == t.q + 1) return tensor(t, HopfTensor::unit(t.n, 1));
  return coproduct_leg(t, i - 1);
}

HopfTensor degeneracy(const HopfTensor& t, int i) {
  if (i < 0 || i >= t.q) throw std::invalid_argument("degeneracy: index out of range");
  return counit_leg(t, i);
}

HopfTensor cyclic_tau(const HopfTensor& t) {
  if (t.q == 0) return t;
  HopfTensor out(t.n, t.q);
  for (auto& [k, f] : t.terms())
    for (auto& [m0, rest] : split_slot(f, 0)) {
      HopfTensor h1(t.n, 1);
      h1.add({k[0]}, Poly::term(m0, Scalar(1)));
      HopfTensor left = iterated_coproduct(twisted_antipode(h1), t.q);
      HopfTensor right(t.n, t.q);
      HopfTensor::Key key(k.begin() + 1, k.end());
      key.push_back({});
      right.add(key, retag_alpha(rest, [](int r) { return r - 1; }));
      out += left * right;
    }
  return out;
}

HopfTensor hochschild_b(const HopfTensor& t) {
  HopfTensor out(t.n, t.q + 1);
  for (int i = 0; i <= t.q + 1; ++i) {
    HopfTensor f = face(t, i);
    if (i % 2)
      out -= f;
    else
      out += f;
  }
  return out;
}

HopfTensor connes_B(const HopfTensor& t) {
  if (t.q < 1) throw std::invalid_argument("connes_B: needs q >= 1");
  HopfTensor u = degeneracy(cyclic_tau(t), t.q - 1);
  HopfTensor out(t.n, t.q - 1);
  HopfTensor p = u;
  for (int k = 0; k < t.q; ++k) {
    if ((t.q - 1) * k % 2)
      out -= p;
    else
      out += p;
    p = cyclic_tau(p);
  }
  return out;
}

HopfTensor project_quotient(const HopfTensor& t) {
  const HopfBasis& B = hopf_basis(t.n);
  HopfTensor out(t.n, t.q);
  for (auto& [k, f] : t.terms()) {
    bool keep = true;
    for (auto& w : k) keep = keep && (w.empty() || w.back() < B.first_skew);
    if (keep) out.add(k, f);
  }
  return out;
}

bool is_on_invariant(const HopfTensor& t) {
  const HopfBasis& B = hopf_basis(t.n);
  HopfTensor p = project_quotient(t);
  if (t.q == 0) return true;
  for (int e = B.first_skew; e < B.dim; ++e) {
    HopfTensor z = iterated_coproduct(HopfTensor::basis_element(t.n, e), t.q) * p;
    if (!project_quotient(z).is_zero()) return false;
  }
  return true;
}

HopfTensor relative_project(const HopfTensor& t) {
  if (!is_on_invariant(t)) throw std::invalid_argument("relative_project: tensor is not O_n-invariant");
  return project_quotient(t);
}

// ---- model monomials ----

namespace {

Poly map_poly(const Series<Scalar>& s, int n) {
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

// (x, y) -> (phi(x), phi'(x) y)
std::map<Var, RationalFn> prolongation(const TruncatedMap& phi) {
  int n = phi.n;
  std::vector<Poly> comp;
  for (auto& s : phi.comp) comp.push_back(map_poly(s, n));
  std::map<Var, RationalFn> sub;
  for (int mu = 1; mu <= n; ++mu) {
    sub[Var::coord(mu)] = comp[mu - 1];
    for (int nu = 1; nu <= n; ++nu) {
      Poly v;
      for (int l = 1; l <= n; ++l) v += comp[mu - 1].derivative(Var::coord(l)) * Poly::var(Var::frame(l, nu));
      sub[Var::frame(mu, nu)] = v;
    }
  }
  return sub;
}

int poly_degree(const TruncatedMap& f) { return std::max(1, f.degree()); }

RationalFn eval_rational(const Poly& p, const std::map<Var, RationalFn>& val) {
  RationalFn out;
  for (auto& [m, c] : p.terms()) {
    RationalFn t{Poly(c)};
    for (auto& [v, e] : m.f) {
      auto it = val.find(v);
      if (it == val.end()) throw std::invalid_argument("act: unbound " + v.name());
      for (int k = 0; k < e; ++k) t *= it->second;
    }
    out += t;
  }
  return out;
}

RationalFn apply_word(int n, const PBWWord& w, RationalFn f) {
  const HopfBasis& B = hopf_basis(n);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    RationalFn r;
    for (int g = 0; g < B.dim; ++g)
      if (!B.elem[*it][g].is_zero()) r += apply_field(n, GGen::from_index(n, g), f) * RationalFn(Poly(B.elem[*it][g]));
    f = r;
  }
  return f;
}

int max_jet_L(const Poly& g) {
  int L = 0;
  for (auto& v : g.variables())
    if (v.kind() == VarKind::Gamma) L = std::max(L, static_cast<int>(v.lower().size()) - 2);
  return L;
}

}  // namespace

ModelMonomial operator*(const ModelMonomial& a, const ModelMonomial& b) {
  ModelMonomial r;
  r.f = a.f * b.f.substitute(prolongation(a.phi));
  int K = std::max({a.phi.K, b.phi.K, poly_degree(a.phi) * poly_degree(b.phi)});
  r.phi = compose(b.phi, a.phi, K);
  return r;
}

RationalFn apply_field(int n, const GGen& z, const RationalFn& f) {
  RationalFn r;
  for (int mu = 1; mu <= n; ++mu) {
    if (z.kind == GGen::X)
      r += f.derivative(Var::coord(mu)) * RationalFn(Poly::var(Var::frame(mu, z.a)));
    else
      r += f.derivative(Var::frame(mu, z.b)) * RationalFn(Poly::var(Var::frame(mu, z.a)));
  }
  return r;
}

std::map<Var, RationalFn> gamma_symbolic(const TruncatedMap& phi, int maxL, int slot) {
  int n = phi.n;
  std::vector<Poly> comp;
  for (auto& s : phi.comp) comp.push_back(map_poly(s, n));
  RMatrix J(n, std::vector<RationalFn>(n)), Y(n, std::vector<RationalFn>(n));
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      J[b][c] = comp[b].derivative(Var::coord(c + 1));
      Y[b][c] = Poly::var(Var::frame(b + 1, c + 1));
    }
  RMatrix Jinv = matrix_inverse(J), Yinv = matrix_inverse(Y);
  std::vector<RMatrix> W;
  for (int mu = 0; mu < n; ++mu) {
    RMatrix dJ(n, std::vector<RationalFn>(n));
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) dJ[b][c] = J[b][c].derivative(Var::coord(mu + 1));
    W.push_back(matmul(matmul(Yinv, matmul(Jinv, dJ)), Y));
  }
  std::map<Var, RationalFn> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        RationalFn g;
        for (int mu = 0; mu < n; ++mu) g += W[mu][i][j] * Y[mu][k];
        std::map<std::vector<int>, RationalFn> level{{{}, g}};
        for (int d = 0; d <= maxL; ++d) {
          std::map<std::vector<int>, RationalFn> next;
          for (auto& [L, f] : level) {
            out.emplace(gamma_var(slot, i + 1, j + 1, k + 1, L), f);
            if (d == maxL) continue;
            for (int l = L.empty() ? 1 : L.back(); l <= n; ++l) {
              auto L2 = L;
              L2.push_back(l);
              next.emplace(L2, apply_field(n, GGen::x(l), f));
            }
          }
          level = std::move(next);
        }
      }
  return out;
}

ModelMonomial act(const HopfTensor& h, const ModelMonomial& a) {
  if (h.q != 1) throw std::invalid_argument("act: expected a single leg");
  int n = h.n;
  ModelMonomial r{RationalFn(), a.phi};
  std::map<Var, RationalFn> gam;
  int have = -1;
  for (auto& [k, f] : h.terms()) {
    Poly g = alpha_to_gamma(n, f);
    int L = max_jet_L(g);
    if (L > have) {
      gam = gamma_symbolic(a.phi, L, 0);
      have = L;
    }
    r.f += eval_rational(g, gam) * apply_word(n, k[0], a.f);
  }
  return r;
}

Scalar act_value(const HopfTensor& t, const std::vector<ModelMonomial>& a, const std::vector<Scalar>& x,
                 const Matrix<Scalar>& y) {
  int n = t.n;
  if (static_cast<int>(a.size()) != t.q) throw std::invalid_argument("act_value: one monomial per leg");
  std::vector<std::map<Var, Scalar>> pts;
  std::vector<Scalar> xr = x;
  Matrix<Scalar> yr = y;
  int maxL = 0;
  std::map<HopfTensor::Key, Poly> gterms;
  for (auto& [k, f] : t.terms()) {
    Poly g = alpha_to_gamma(n, f);
    maxL = std::max(maxL, max_jet_L(g));
    gterms.emplace(k, std::move(g));
  }
  std::map<Var, Scalar> gam;
  for (int r = 0; r < t.q; ++r) {
    std::map<Var, Scalar> pt;
    for (int mu = 0; mu < n; ++mu) {
      pt[Var::coord(mu + 1)] = xr[mu];
      for (int nu = 0; nu < n; ++nu) pt[Var::frame(mu + 1, nu + 1)] = yr[mu][nu];
    }
    pts.push_back(pt);
    auto gr = gamma_series<Scalar>(a[r].phi, xr, yr, maxL, r);
    gam.insert(gr.begin(), gr.end());
    auto nx = eval_map(a[r].phi, xr);
    yr = mat_mul(jacobian_at(a[r].phi, xr), yr);
    xr = nx;
  }
  Scalar total;
  for (auto& [k, g] : gterms) {
    Scalar v = g.evaluate(gam);
    if (v.is_zero()) continue;
    for (int r = 0; r < t.q && !v.is_zero(); ++r) v *= apply_word(n, k[r], a[r].f).evaluate(pts[r]);
    total += v;
  }
  return total;
}

}  // namespace cw
