#include "cwhopf/bott.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace cw {

bool BottCochain::is_zero() const {
  for (auto& [p, f] : comp)
    if (!f.is_zero()) return false;
  return true;
}

int BottCochain::max_level() const { return comp.empty() ? -1 : comp.rbegin()->first; }

int sign_of(SignRule r, int p) {
  switch (r) {
    case SignRule::Plus: return 1;
    case SignRule::Minus: return -1;
    case SignRule::Alt: return p % 2 ? -1 : 1;
    case SignRule::AltShift: return p % 2 ? 1 : -1;
  }
  return 1;
}

const char* sign_name(SignRule r) {
  switch (r) {
    case SignRule::Plus: return "+1";
    case SignRule::Minus: return "-1";
    case SignRule::Alt: return "(-1)^p";
    case SignRule::AltShift: return "(-1)^(p+1)";
  }
  return "?";
}

Poly retag(const Poly& p, const std::function<int(int)>& slot_map) {
  return p.map_vars([&](const Var& v, Poly& out) {
    auto k = v.kind();
    if (k != VarKind::Gamma && k != VarKind::Eta && k != VarKind::Alpha) return false;
    Var w = v;
    w.b[1] = static_cast<uint8_t>(slot_map(v.slot()));
    out = Poly::var(w);
    return true;
  });
}

Form retag(const Form& a, const std::function<int(int)>& slot_map) {
  return a.map_coeffs([&](const Poly& c) { return retag(c, slot_map); });
}

BottCochain group_coboundary(const BottCochain& c) {
  BottCochain out{c.n, {}, c.id, c.relative, c.degree < 0 ? -1 : c.degree + 1};
  for (auto& [p, f] : c.comp) {
    Form s(c.n);
    for (int i = 0; i <= p + 1; ++i) {
      Form t = retag(f, [i](int r) { return r < i ? r : r + 1; });
      if (i % 2)
        s -= t;
      else
        s += t;
    }
    if (!s.is_zero()) out.comp[p + 1] += s;
  }
  for (auto it = out.comp.begin(); it != out.comp.end();) it = it->second.is_zero() ? out.comp.erase(it) : std::next(it);
  return out;
}

BottCochain total_coboundary(const BottCochain& c, SignRule s) {
  BottCochain out = group_coboundary(c);
  for (auto& [p, f] : c.comp) {
    Form df = d(f);
    if (df.is_zero()) continue;
    auto [it, fresh] = out.comp.try_emplace(p, Form(c.n));
    (void)fresh;
    it->second += df * Poly(sign_of(s, p));
    if (it->second.is_zero()) out.comp.erase(it);
  }
  return out;
}

namespace {

Form prune_dt(const Form& f, int p) {
  Form r(f.n);
  for (auto& [w, c] : f.terms())
    if (dt_degree(w) <= p) r.add(w, c);
  return r;
}

}  // namespace

BottCochain integrate_levels(int n, const std::function<Form(int)>& alpha, int max_level, const std::string& id) {
  BottCochain out{n, {}, id};
  for (int p = 0; p <= max_level; ++p) {
    Form c = fiber_integrate(alpha(p), p) * Poly(p % 2 ? -1 : 1);
    if (!c.is_zero()) out.comp.emplace(p, std::move(c));
  }
  return out;
}

BottCochain build_bott_cocycle(int n, const VeyPair& pair) {
  if (!is_vey_pair(n, pair)) throw std::invalid_argument("build_bott_cocycle: " + pair.id() + " is not a Vey pair");
  int N = pair.degree();
  auto alpha = [&](int p) {
    FormMatrix conn = simplicial_connection(n, p);
    FormMatrix curv = simplicial_curvature(n, p);
    Form a = Form::scalar(n, Poly(1));
    for (int i : pair.I) {
      Form t = pair.relative ? transgress_relative(i, conn, curv) : transgress(i, conn, curv);
      a = prune_dt(wedge(a, t), p);
    }
    for (int j : pair.J) a = prune_dt(wedge(a, chern(j, curv)), p);
    return a;
  };
  // every dt comes with a theta, so levels above n vanish
  BottCochain out = integrate_levels(n, alpha, std::min(n, N), pair.id());
  out.relative = pair.relative;
  out.degree = N;
  return out;
}

namespace {

std::map<int, TruncatedMap> sample_slots(std::mt19937_64& rng, const MapSampler& ms, int n, int K, int levels,
                                         std::vector<Scalar>& x, Matrix<Scalar>& y, int& resampled) {
  std::map<int, TruncatedMap> slots;
  for (;;) {
    slots.clear();
    for (int r = 0; r < levels; ++r) slots[r] = ms.map(rng, n, K, 3);
    x = ms.point(rng, n);
    y = ms.frame(rng, n);
    bool ok = true;
    for (auto& [r, f] : slots) ok = ok && invertible(jacobian_at(f, x));
    if (ok) return slots;
    ++resampled;
  }
}

}  // namespace

std::vector<SignRule> calibrate_total_sign(int n, int samples, uint64_t seed) {
  // alpha = random sum of words in the entries of the simplicial connection
  // and curvature; C(alpha) then spans several group degrees
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ix(0, n - 1), cf(1, 3);
  std::vector<std::vector<std::pair<int, int>>> shapes;  // (kind, entry) per factor
  std::vector<int> coeffs;
  for (int s = 0; s < samples; ++s) {
    for (int len : {2, 2, 3}) {
      std::vector<std::pair<int, int>> w;
      for (int l = 0; l < len; ++l) w.emplace_back(l == 0 ? 0 : s % 2 == 0 && len == 2 ? 0 : 1, ix(rng) * n + ix(rng));
      shapes.push_back(w);
      coeffs.push_back(cf(rng));
    }
  }
  auto alpha = [&](int p) {
    FormMatrix conn = simplicial_connection(n, p);
    FormMatrix curv = simplicial_curvature(n, p);
    Form a(n);
    for (size_t k = 0; k < shapes.size(); ++k) {
      Form t = Form::scalar(n, Poly(coeffs[k]));
      for (auto [kind, e] : shapes[k]) t = wedge(t, (kind ? curv : conn)[e / n][e % n]);
      a += t;
    }
    return a;
  };
  int top = 3;
  BottCochain c = integrate_levels(n, alpha, top, "dupont");
  BottCochain dc = integrate_levels(n, [&](int p) { return d(alpha(p)); }, top, "dupont_d");
  std::vector<SignRule> winners;
  MapSampler ms;
  for (SignRule r : kAllSignRules) {
    BottCochain D = total_coboundary(c, r);
    bool ok = false;
    for (int sigma : {1, -1}) {
      bool all = true;
      std::mt19937_64 g(seed + 1);
      for (int t = 0; t < 3 && all; ++t) {
        std::vector<Scalar> x;
        Matrix<Scalar> y;
        int re = 0;
        auto slots = sample_slots(g, ms, n, 4, top + 2, x, y, re);
        auto vals = gamma_bindings(slots, x, y, 1);
        for (int p = 0; p <= top + 1 && all; ++p) {
          Form lhs = D.comp.count(p) ? D.comp.at(p) : Form(n);
          Form rhs = dc.comp.count(p) ? dc.comp.at(p) * Poly(sigma) : Form(n);
          all = evaluate_form(lhs - rhs, vals).is_zero();
        }
      }
      ok = ok || all;
    }
    if (ok) winners.push_back(r);
  }
  return winners;
}

std::string map_str(const TruncatedMap& f) {
  std::ostringstream os;
  for (int i = 0; i < f.n; ++i) {
    if (i) os << "; ";
    bool first = true;
    for (auto& [m, v] : f.comp[i].c) {
      if (!first) os << " + ";
      first = false;
      os << v.str();
      for (int l = 0; l < f.n; ++l)
        if (midx_get(m, l)) os << "*x" << l + 1 << "^" << midx_get(m, l);
    }
    if (first) os << "0";
  }
  return os.str();
}

namespace {

int max_jet_L(const BottCochain& c) {
  int L = 0;
  for (auto& [p, f] : c.comp)
    for (auto& [w, k] : f.terms())
      for (auto& v : k.variables())
        if (v.kind() == VarKind::Gamma) L = std::max(L, static_cast<int>(v.lower().size()) - 2);
  return L;
}

}  // namespace

Certificate verify_cocycle(const BottCochain& c, int trials, uint64_t seed, int K, SignRule s) {
  Certificate cert;
  cert.cocycle_id = c.id;
  cert.trials = trials;
  cert.seed = seed;
  cert.jet_order = K;
  BottCochain D = total_coboundary(c, s);
  int maxL = max_jet_L(D);
  if (maxL + 2 > K) throw std::invalid_argument("verify_cocycle: jet order too small");
  int levels = D.max_level() + 1;
  std::mt19937_64 rng(seed);
  MapSampler ms;
  ms.lo = -5;
  ms.hi = 5;
  for (int t = 0; t < trials; ++t) {
    std::vector<Scalar> x;
    Matrix<Scalar> y;
    auto slots = sample_slots(rng, ms, c.n, K, levels, x, y, cert.resampled);
    auto vals = gamma_bindings(slots, x, y, maxL);
    for (auto& [p, f] : D.comp) {
      Form e = evaluate_form(f, vals);
      if (e.is_zero()) continue;
      if (cert.failures.size() < 5) {
        Failure fl;
        for (auto& [r, m] : slots) fl.slots.push_back(map_str(m));
        for (auto& v : x) fl.point.push_back(v.str());
        for (auto& row : y)
          for (auto& v : row) fl.point.push_back(v.str());
        auto& [w, k] = *e.terms().begin();
        fl.nonzero_term = "level " + std::to_string(p) + ": [" + k.str() + "] " + word_str(w);
        cert.failures.push_back(fl);
      }
      break;
    }
  }
  cert.pass = cert.failures.empty();
  return cert;
}

BottCochain mutate(const BottCochain& c, const Scalar& delta) {
  BottCochain out = c;
  for (auto& [p, f] : out.comp) {
    if (f.is_zero()) continue;
    auto [w, k] = *f.terms().begin();
    auto [m, old] = k.leading();
    Poly bump;
    bump.add_term(m, Scalar(delta.q(), old.lam()));
    f.add(w, bump);
    out.id += "_mutated";
    return out;
  }
  throw std::invalid_argument("mutate: zero cochain");
}

bool is_on_basic(const Form& a) {
  for (int i = 1; i <= a.n; ++i)
    for (int j = i + 1; j <= a.n; ++j) {
      GGen u = GGen::y(i, j), v = GGen::y(j, i);
      if (contract(a, u) != contract(a, v)) return false;
      if (lie_derivative(a, u) != lie_derivative(a, v)) return false;
    }
  return true;
}

}  // namespace cw
