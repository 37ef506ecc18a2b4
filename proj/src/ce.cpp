#include "cwhopf/ce.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace cw {

bool CECochain::is_zero() const {
  for (auto& [q, f] : comp)
    if (!f.is_zero()) return false;
  return true;
}

int CECochain::max_level() const { return comp.empty() ? -1 : comp.rbegin()->first; }

std::string convention_name(const CEConvention& c) {
  return "act=" + std::to_string(c.act) + ",twist=" + std::to_string(c.twist);
}

std::vector<CEConvention> all_ce_conventions() {
  std::vector<CEConvention> out;
  for (int a : {1, -1})
    for (int t : {0, 1, -1}) out.push_back({a, t});
  return out;
}

namespace {

Word letter_of(const GGen& z) { return z.kind == GGen::X ? letter_theta(z.a) : letter_omega(z.a, z.b); }

GGen gen_of_bit(int bit) {
  if (bit >= 8 && bit < 16) return GGen::x(bit - 8 + 1);
  int q = bit - 16;
  return GGen::y(q / kMaxN + 1, q % kMaxN + 1);
}

Form ce_d_letter(int n, int bit) {
  // d alpha^k = - sum_{i<j} c^k_{ij} alpha^i ^ alpha^j
  Form r(n);
  if (bit < 8) throw std::invalid_argument("ce_d_word: dt letter in a CE word");
  int k = gen_of_bit(bit).index(n);
  auto& c = structure_constants(n);
  int dim = gdim(n);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const Scalar& v = c[i][j][k];
      if (v.is_zero()) continue;
      Form t = wedge(Form::letter(n, letter_of(GGen::from_index(n, i))), Form::letter(n, letter_of(GGen::from_index(n, j))));
      r -= t * Poly(v);
    }
  return r;
}

}  // namespace

const Form& ce_d_word(int n, Word w) {
  static std::mutex mu;
  static std::map<std::pair<int, Word>, Form> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, w});
    if (it != cache.end()) return it->second;
  }
  Form r(n);
  int pos = 0;
  for (Word x = w; x; x &= x - 1, ++pos) {
    int bit = __builtin_ctzll(x);
    Word l = Word{1} << bit;
    Form dl = ce_d_letter(n, bit);
    if (dl.is_zero()) continue;
    Form t = wedge(wedge(Form::letter(n, w & (l - 1)), dl), Form::letter(n, w & ~((l << 1) - 1)));
    r += pos % 2 ? -t : t;
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(n, w), std::move(r)).first->second;
}

Form delta_form(int n) {
  Form r(n);
  for (int a = 1; a <= n; ++a) r.add(letter_omega(a, a), Poly(1));
  return r;
}

Poly gamma_to_alpha(int n, const Poly& p) {
  return p.map_vars([&](const Var& v, Poly& out) {
    if (v.kind() != VarKind::Gamma && v.kind() != VarKind::Eta) return false;
    auto low = v.lower();
    out = eta_in_alpha(n, eta_var(v.slot(), v.upper(), low[0], low[1], std::vector<int>(low.begin() + 2, low.end())));
    return true;
  });
}

Poly alpha_to_gamma(int n, const Poly& p) {
  Poly e = p.map_vars([&](const Var& v, Poly& out) {
    if (v.kind() != VarKind::Alpha) return false;
    out = alpha_in_eta(n, v);
    return true;
  });
  return e.map_vars([&](const Var& v, Poly& out) {
    if (v.kind() != VarKind::Eta) return false;
    auto low = v.lower();
    out = Poly::var(gamma_var(v.slot(), v.upper(), low[0], low[1], std::vector<int>(low.begin() + 2, low.end())));
    return true;
  });
}

CECochain kappa_from_bott(const BottCochain& c) {
  CECochain out{c.n, {}, c.id, c.relative, c.degree};
  for (auto& [p, f] : c.comp) {
    for (auto& [w, k] : f.terms()) {
      if (w & kDtMask) throw std::invalid_argument("kappa_from_bott: simplex letter in a component");
      for (auto& v : k.variables())
        if (v.kind() != VarKind::Gamma) throw std::invalid_argument("kappa_from_bott: coefficient depends on " + v.name());
    }
    Form g = f.map_coeffs([&](const Poly& k) { return gamma_to_alpha(c.n, k); });
    if (!g.is_zero()) out.comp.emplace(p, std::move(g));
  }
  return out;
}

CECochain build_ce_cocycle(int n, const VeyPair& pair) { return kappa_from_bott(build_bott_cocycle(n, pair)); }

BottCochain theta_map(const CECochain& c) {
  BottCochain out{c.n, {}, c.id, c.relative, c.degree};
  for (auto& [q, f] : c.comp) {
    for (auto& [w, k] : f.terms())
      for (auto& v : k.variables())
        if (v.kind() != VarKind::Alpha) throw std::invalid_argument("theta_map: non-jet symbol " + v.name());
    Form g = f.map_coeffs([&](const Poly& k) { return alpha_to_gamma(c.n, k); });
    if (!g.is_zero()) out.comp.emplace(q, std::move(g));
  }
  return out;
}

Form ce_partial(const Form& f, const CEConvention& conv) {
  int n = f.n;
  Form r(n);
  int dim = gdim(n);
  Form delta = delta_form(n);
  for (auto& [w, k] : f.terms()) {
    for (int i = 0; i < dim; ++i) {
      GGen z = GGen::from_index(n, i);
      Poly zk = g_act(n, z, k);
      if (zk.is_zero()) continue;
      r += wedge(Form::letter(n, letter_of(z)), Form::letter(n, w)) * (zk * Scalar(conv.act));
    }
    const Form& dw = ce_d_word(n, w);
    if (!dw.is_zero()) r += dw * k;
    if (conv.twist) r += wedge(delta, Form::letter(n, w)) * (k * Scalar(conv.twist));
  }
  return r;
}

namespace {

BottCochain as_bott(const CECochain& c) { return {c.n, c.comp, c.id, c.relative, c.degree}; }
CECochain as_ce(const BottCochain& c) { return {c.n, c.comp, c.id, c.relative, c.degree}; }

void prune(std::map<int, Form>& m) {
  for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
}

}  // namespace

CECochain ce_b(const CECochain& c) { return as_ce(group_coboundary(as_bott(c))); }

CECochain ce_partial(const CECochain& c, const CEConvention& conv) {
  CECochain out{c.n, {}, c.id, c.relative, c.degree < 0 ? -1 : c.degree + 1};
  for (auto& [q, f] : c.comp) out.comp[q] = ce_partial(f, conv);
  prune(out.comp);
  return out;
}

CECochain ce_total(const CECochain& c, const CEConvention& conv, SignRule s) {
  CECochain out = ce_b(c);
  for (auto& [q, f] : c.comp) {
    Form df = ce_partial(f, conv);
    if (df.is_zero()) continue;
    auto [it, fresh] = out.comp.try_emplace(q, Form(c.n));
    (void)fresh;
    it->second += df * Poly(sign_of(s, q));
  }
  prune(out.comp);
  return out;
}

std::vector<CEConvention> calibrate_ce(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cf(-3, 3), ix(1, n), coin(0, 1);
  std::vector<BottCochain> samples;
  for (int p = 0; p <= 2; ++p) {
    Form f(n);
    for (int t = 0; t < 3; ++t) {
      Poly m(Scalar(cf(rng) == 0 ? 1 : cf(rng)));
      for (int r = 0; r <= p; ++r)
        if (coin(rng)) m *= Poly::var(gamma_var(r, ix(rng), ix(rng), ix(rng), {}));
      Word w = coin(rng) ? letter_theta(ix(rng)) : letter_omega(ix(rng), ix(rng));
      if (coin(rng)) w |= letter_omega(ix(rng), ix(rng));
      f.add(w, m);
    }
    samples.push_back({n, {{p, f}}, "sample"});
  }
  std::vector<CECochain> cocycles;
  for (bool rel : {false, true})
    for (auto& pr : enumerate_vey(n, rel)) cocycles.push_back(build_ce_cocycle(n, pr));
  std::vector<CEConvention> winners;
  for (auto& conv : all_ce_conventions()) {
    bool ok = true;
    for (auto& b : samples) {
      BottCochain db{n, {}, "d"};
      for (auto& [p, f] : b.comp) db.comp[p] = d(f);
      ok = ok && kappa_from_bott(db).comp == ce_partial(kappa_from_bott(b), conv).comp;
    }
    for (auto& k : cocycles) ok = ok && ce_partial(k, conv).is_zero();
    if (ok) winners.push_back(conv);
  }
  return winners;
}

namespace {

int max_alpha_order(const Form& f) {
  int o = 2;
  for (auto& [w, k] : f.terms())
    for (auto& v : k.variables())
      if (v.kind() == VarKind::Alpha) o = std::max(o, static_cast<int>(v.lower().size()));
  return o;
}

void require_n(const TruncatedMap& psi) {
  if (!psi.fixes_origin() || psi.linear() != identity_matrix<Scalar>(psi.n))
    throw std::invalid_argument("kappa_to_group: argument is not in N");
}

template <class R>
JetMap<R> lift(const TruncatedMap& f) {
  JetMap<R> r{f.n, f.K, {}};
  for (auto& s : f.comp) {
    Series<R> t(f.n);
    for (auto& [m, v] : s.c) t.add(m, Ring<R>::from(v));
    r.comp.push_back(t);
  }
  return r;
}

Form numeric_only(const Form& f) {
  for (auto& [w, k] : f.terms())
    if (!k.is_constant()) throw std::invalid_argument("kappa_to_group: unbound symbol in " + k.str());
  return f;
}

// dC of one component at psi_0..psi_q, the g-action through dual numbers
Form partial_at(const Form& f, const std::vector<TruncatedMap>& psi, const CEConvention& conv) {
  int n = f.n;
  int order = max_alpha_order(f);
  int K = std::max(order + 1, psi.empty() ? 0 : psi[0].K);
  Form r(n);
  Form base = kappa_to_group(f, psi);
  for (auto& [w, k] : base.terms()) {
    const Form& dw = ce_d_word(n, w);
    if (!dw.is_zero()) r += dw * k;
    if (conv.twist) r += wedge(delta_form(n), Form::letter(n, w)) * (k * Scalar(conv.twist));
  }
  DualScalar eps(Scalar(0), Scalar(1));
  for (int i = 0; i < gdim(n); ++i) {
    GGen z = GGen::from_index(n, i);
    std::map<Var, DualScalar> vals;
    for (size_t s = 0; s < psi.size(); ++s) {
      auto moved = compose(lift<DualScalar>(psi[s]), exp_affine<DualScalar>(n, K, z, eps), K);
      auto a = alpha_coords(normalise(moved), static_cast<int>(s), order);
      vals.insert(a.begin(), a.end());
    }
    auto look = [&](const Var& v) -> DualScalar {
      auto it = vals.find(v);
      if (it == vals.end()) throw std::invalid_argument("dC evaluation: unbound " + v.name());
      return it->second;
    };
    for (auto& [w, k] : f.terms()) {
      Scalar dz = eval_poly<DualScalar>(k, look).b;
      if (dz.is_zero()) continue;
      r += wedge(Form::letter(n, letter_of(z)), Form::letter(n, w)) * Poly(dz * Scalar(conv.act));
    }
  }
  return r;
}

}  // namespace

Form kappa_to_group(const Form& comp, const std::vector<TruncatedMap>& psi) {
  int order = max_alpha_order(comp);
  std::map<Var, Scalar> vals;
  for (size_t s = 0; s < psi.size(); ++s) {
    require_n(psi[s]);
    auto a = alpha_coords(psi[s], static_cast<int>(s), order);
    vals.insert(a.begin(), a.end());
  }
  return numeric_only(evaluate_form(comp, vals));
}

Certificate verify_ce_cocycle(const CECochain& c, int trials, uint64_t seed, int K, const CEConvention& conv,
                              SignRule s) {
  Certificate cert;
  cert.cocycle_id = c.id;
  cert.trials = trials;
  cert.seed = seed;
  cert.jet_order = K;
  std::set<int> levels;
  for (auto& [q, f] : c.comp) {
    levels.insert(q);
    levels.insert(q + 1);
    if (max_alpha_order(f) + 1 > K) throw std::invalid_argument("verify_ce_cocycle: jet order too small");
  }
  std::mt19937_64 rng(seed);
  MapSampler ms;
  ms.lo = -5;
  ms.hi = 5;
  for (int t = 0; t < trials; ++t) {
    std::vector<TruncatedMap> psi;
    for (int r = 0; r <= c.max_level() + 1; ++r) psi.push_back(ms.n_element(rng, c.n, K, 3));
    for (int P : levels) {
      Form v(c.n);
      std::vector<TruncatedMap> pre(psi.begin(), psi.begin() + P + 1);
      if (auto it = c.comp.find(P - 1); it != c.comp.end())
        for (int i = 0; i <= P; ++i) {
          std::vector<TruncatedMap> face = pre;
          face.erase(face.begin() + i);
          Form e = kappa_to_group(it->second, face);
          v += i % 2 ? -e : e;
        }
      if (auto it = c.comp.find(P); it != c.comp.end()) v += partial_at(it->second, pre, conv) * Poly(sign_of(s, P));
      if (v.is_zero()) continue;
      if (cert.failures.size() < 5) {
        Failure fl;
        for (auto& m : pre) fl.slots.push_back(map_str(m));
        auto& [w, k] = *v.terms().begin();
        fl.nonzero_term = "level " + std::to_string(P) + ": [" + k.str() + "] " + word_str(w);
        cert.failures.push_back(fl);
      }
      break;
    }
  }
  cert.pass = cert.failures.empty();
  return cert;
}

Certificate verify_theta(const CECochain& kappa, const BottCochain& bott, int trials, uint64_t seed) {
  const int K = 4;
  Certificate cert;
  cert.cocycle_id = kappa.id;
  cert.trials = trials;
  cert.seed = seed;
  cert.jet_order = K;
  BottCochain theta = theta_map(kappa);
  std::set<int> levels;
  for (auto& [q, f] : kappa.comp) levels.insert(q);
  for (auto& [p, f] : bott.comp) levels.insert(p);
  int top = levels.empty() ? -1 : *levels.rbegin();
  for (auto& [p, f] : theta.comp)
    for (auto& [w, k] : f.terms())
      for (auto& v : k.variables())
        if (v.lower().size() > 2) throw std::invalid_argument("verify_theta: jets above order 2");
  std::mt19937_64 rng(seed);
  MapSampler ms;
  for (int t = 0; t < trials; ++t) {
    std::map<int, TruncatedMap> slots;
    std::vector<Scalar> x;
    Matrix<Scalar> y;
    for (;;) {
      slots.clear();
      x = ms.point(rng, kappa.n);
      y = ms.frame(rng, kappa.n);
      bool ok = true;
      for (int r = 0; r <= top; ++r) {
        slots[r] = t % 2 ? ms.map(rng, kappa.n, K, 3) : ms.n_element(rng, kappa.n, K, 3);
        ok = ok && invertible(jacobian_at(slots[r], x));
      }
      if (ok) break;
      ++cert.resampled;
    }
    auto g = affine_map(x, y, K);
    std::vector<TruncatedMap> psi;
    std::map<Var, Scalar> vals;
    for (auto& [r, phi] : slots) {
      psi.push_back(normalise(compose(phi, g, K)));
      auto gd = gamma_direct(phi, x, y, 0, r);
      vals.insert(gd.begin(), gd.end());
    }
    for (int P : levels) {
      std::vector<TruncatedMap> pre(psi.begin(), psi.begin() + P + 1);
      Form a = kappa.comp.count(P) ? kappa_to_group(kappa.comp.at(P), pre) : Form(kappa.n);
      Form b = theta.comp.count(P) ? evaluate_form(theta.comp.at(P), vals) : Form(kappa.n);
      Form c = bott.comp.count(P) ? evaluate_form(bott.comp.at(P), vals) : Form(kappa.n);
      if (a == b && b == c) continue;
      if (cert.failures.size() < 5) {
        Failure fl;
        for (auto& [r, m] : slots) fl.slots.push_back(map_str(m));
        for (auto& v : x) fl.point.push_back(v.str());
        for (auto& row : y)
          for (auto& v : row) fl.point.push_back(v.str());
        Form diff = a == b ? b - c : a - b;
        auto& [w, k] = *diff.terms().begin();
        fl.nonzero_term = std::string(a == b ? "theta-bott" : "kappa-theta") + " level " + std::to_string(P) + ": [" +
                          k.str() + "] " + word_str(w);
        cert.failures.push_back(fl);
      }
      break;
    }
  }
  cert.pass = cert.failures.empty();
  return cert;
}

namespace {

Form sym_project(const Form& f) {
  int n = f.n;
  Form r(n);
  for (auto& [w, k] : f.terms()) {
    Form img = Form::scalar(n, k);
    for (Word x = w; x; x &= x - 1) {
      int bit = __builtin_ctzll(x);
      Form li = Form::letter(n, Word{1} << bit);
      if (bit >= 16) {
        GGen z = gen_of_bit(bit);
        if (z.a != z.b) li = (Form::omega(n, z.a, z.b) + Form::omega(n, z.b, z.a)) * Poly(Scalar::frac(1, 2));
      }
      img = wedge(img, li);
    }
    r += img;
  }
  return r;
}

}  // namespace

CECochain relative_restrict(const CECochain& c) {
  int n = c.n;
  CECochain out = c;
  for (auto& [q, f] : c.comp) {
    Form df = ce_partial(f);
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        GGen u = GGen::y(a, b), v = GGen::y(b, a);
        Form iz = contract(f, u) - contract(f, v);
        if (!iz.is_zero())
          throw std::invalid_argument("relative_restrict: contraction with the skew direction " + u.str() + "-" +
                                      v.str() + " is nonzero at level " + std::to_string(q));
        Form lz = contract(df, u) - contract(df, v);
        if (!lz.is_zero())
          throw std::invalid_argument("relative_restrict: not invariant under " + u.str() + "-" + v.str() +
                                      " at level " + std::to_string(q));
      }
    out.comp[q] = sym_project(f);
  }
  out.relative = true;
  return out;
}

AuditReport two_jet_audit(const CECochain& c) {
  AuditReport rep;
  std::set<std::string> bad;
  for (auto& [q, f] : c.comp)
    for (auto& [w, k] : f.terms())
      for (auto& v : k.variables()) {
        bool two = (v.kind() == VarKind::Alpha || v.kind() == VarKind::Eta) && v.lower().size() == 2;
        if (!two) bad.insert(v.name());
      }
  rep.offending.assign(bad.begin(), bad.end());
  rep.pass = bad.empty();
  return rep;
}

CECochain mutate(const CECochain& c, const Scalar& delta) {
  CECochain out = as_ce(mutate(as_bott(c), delta));
  return out;
}

Form antisymmetrize(const Form& f, int q) {
  std::vector<int> perm(q + 1);
  std::iota(perm.begin(), perm.end(), 0);
  Form r(f.n);
  long count = 0;
  do {
    int inv = 0;
    for (int i = 0; i <= q; ++i)
      for (int j = i + 1; j <= q; ++j) inv += perm[i] > perm[j];
    Form t = retag(f, [&](int s) { return s <= q ? perm[s] : s; });
    r += inv % 2 ? -t : t;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r * Poly(Scalar::frac(1, count));
}

}  // namespace cw
