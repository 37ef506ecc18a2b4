#include "cwhopf/poly.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace cw {

namespace {

Var make(VarKind k, int slot, const std::vector<int>& idx) {
  if (idx.size() > 8) throw std::invalid_argument("Var: too many indices");
  Var v;
  v.b[0] = static_cast<uint8_t>(k);
  v.b[1] = static_cast<uint8_t>(slot);
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 1 || idx[i] > 250) throw std::invalid_argument("Var: index out of range");
    v.b[2 + i] = static_cast<uint8_t>(idx[i]);
  }
  return v;
}

std::string digits(const std::vector<int>& v, size_t from) {
  std::string s;
  for (size_t i = from; i < v.size(); ++i) s += std::to_string(v[i]);
  return s;
}

std::vector<int> parse_digits(const std::string& s) {
  std::vector<int> r;
  for (char c : s) r.push_back(c - '0');
  return r;
}

}  // namespace

Var Var::free(const std::string& name) {
  if (name.empty() || name.size() > 9) throw std::invalid_argument("Var: bad free name");
  Var v;
  v.b[0] = static_cast<uint8_t>(VarKind::Free);
  for (size_t i = 0; i < name.size(); ++i) v.b[1 + i] = static_cast<uint8_t>(name[i]);
  return v;
}
Var Var::sim(int r) { return make(VarKind::Sim, 0, {r}); }
Var Var::par() { return make(VarKind::Par, 0, {}); }
Var Var::eps() { return make(VarKind::Eps, 0, {}); }
Var Var::coord(int mu) { return make(VarKind::Coord, 0, {mu}); }
Var Var::frame(int mu, int nu) { return make(VarKind::Frame, 0, {mu, nu}); }
Var Var::gamma(int slot, int i, const std::vector<int>& lower) {
  std::vector<int> idx{i};
  idx.insert(idx.end(), lower.begin(), lower.end());
  return make(VarKind::Gamma, slot, idx);
}
Var Var::eta(int slot, int i, const std::vector<int>& lower) {
  std::vector<int> idx{i};
  idx.insert(idx.end(), lower.begin(), lower.end());
  return make(VarKind::Eta, slot, idx);
}
Var Var::alpha(int slot, int i, std::vector<int> beta) {
  std::sort(beta.begin(), beta.end());
  std::vector<int> idx{i};
  idx.insert(idx.end(), beta.begin(), beta.end());
  return make(VarKind::Alpha, slot, idx);
}
Var Var::ser(int l) { return make(VarKind::Ser, 0, {l}); }

std::vector<int> Var::idx() const {
  std::vector<int> r;
  for (int i = 2; i < 10 && b[i] != 0; ++i) r.push_back(b[i]);
  return r;
}

std::vector<int> Var::lower() const {
  std::vector<int> r;
  for (int i = 3; i < 10 && b[i] != 0; ++i) r.push_back(b[i]);
  return r;
}

std::string Var::name() const {
  auto ix = idx();
  switch (kind()) {
    case VarKind::Free: {
      std::string s;
      for (int i = 1; i < 10 && b[i] != 0; ++i) s += static_cast<char>(b[i]);
      return s;
    }
    case VarKind::Sim: return "t" + std::to_string(ix[0]);
    case VarKind::Par: return "u";
    case VarKind::Eps: return "eps";
    case VarKind::Coord: return "x" + std::to_string(ix[0]);
    case VarKind::Frame: return "y" + std::to_string(ix[0]) + "_" + std::to_string(ix[1]);
    case VarKind::Gamma:
      return "g" + std::to_string(slot()) + "^" + std::to_string(ix[0]) + "_" + digits(ix, 1);
    case VarKind::Eta:
      return "eta" + std::to_string(slot()) + "^" + std::to_string(ix[0]) + "_" + digits(ix, 1);
    case VarKind::Alpha:
      return "a" + std::to_string(slot()) + "^" + std::to_string(ix[0]) + "_" + digits(ix, 1);
    case VarKind::Ser: return "s" + std::to_string(ix[0]);
  }
  return "?";
}

Var Var::parse(const std::string& s) {
  static const std::regex jet(R"((g|eta|a)(\d+)\^(\d)_(\d+))");
  static const std::regex one(R"((t|x|s)(\d+))");
  static const std::regex frame(R"(y(\d+)_(\d+))");
  static const std::regex name(R"([A-Za-z][A-Za-z0-9]{0,8})");
  std::smatch m;
  if (std::regex_match(s, m, jet)) {
    int slot = std::stoi(m[2]);
    int i = std::stoi(m[3]);
    auto low = parse_digits(m[4]);
    if (m[1] == "g") return gamma(slot, i, low);
    if (m[1] == "eta") return eta(slot, i, low);
    return alpha(slot, i, low);
  }
  if (s == "u") return par();
  if (s == "eps") return eps();
  if (std::regex_match(s, m, one)) {
    int r = std::stoi(m[2]);
    if (m[1] == "t") return sim(r);
    if (m[1] == "x") return coord(r);
    return ser(r);
  }
  if (std::regex_match(s, m, frame)) return Var::frame(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(s, name)) return free(s);
  throw std::invalid_argument("Var: cannot parse '" + s + "'");
}

int Monomial::degree() const {
  int d = 0;
  for (auto& [v, e] : f) d += e;
  return d;
}

int Monomial::exponent(const Var& v) const {
  for (auto& [w, e] : f)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f.reserve(f.size() + o.f.size());
  size_t i = 0, j = 0;
  while (i < f.size() || j < o.f.size()) {
    if (j == o.f.size() || (i < f.size() && f[i].first < o.f[j].first)) {
      r.f.push_back(f[i++]);
    } else if (i == f.size() || o.f[j].first < f[i].first) {
      r.f.push_back(o.f[j++]);
    } else {
      r.f.emplace_back(f[i].first, f[i].second + o.f[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::string Monomial::str() const {
  if (f.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += "*";
    s += f[i].first.name();
    if (f[i].second != 1) s += "^" + std::to_string(f[i].second);
  }
  return s;
}

bool GrLex::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  size_t i = 0, j = 0;
  while (i < a.f.size() && j < b.f.size()) {
    const auto& [va, ea] = a.f[i];
    const auto& [vb, eb] = b.f[j];
    if (va == vb) {
      if (ea != eb) return ea < eb;
      ++i;
      ++j;
      continue;
    }
    // the first variable is the most significant one
    return vb < va;
  }
  return false;
}

Monomial mono(const Var& v, int e) {
  Monomial m;
  if (e > 0) m.f.emplace_back(v, e);
  return m;
}

namespace {
bool eps_dead(const Monomial& m) {
  for (auto& [v, e] : m.f)
    if (v.kind() == VarKind::Eps && e >= 2) return true;
  return false;
}
}  // namespace

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) t_.emplace(Monomial{}, c);
}

Poly Poly::var(const Var& v) { return term(mono(v), Scalar(1)); }

Poly Poly::term(const Monomial& m, const Scalar& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

Scalar Poly::constant_term() const { return coeff(Monomial{}); }

Scalar Poly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Scalar() : it->second;
}

int Poly::degree() const { return t_.empty() ? -1 : t_.rbegin()->first.degree(); }

int Poly::degree_in(const std::function<bool(const Var&)>& pred) const {
  int best = t_.empty() ? -1 : 0;
  for (auto& [m, c] : t_) {
    int d = 0;
    for (auto& [v, e] : m.f)
      if (pred(v)) d += e;
    best = std::max(best, d);
  }
  return best;
}

std::vector<Var> Poly::variables() const {
  std::vector<Var> r;
  for (auto& [m, c] : t_)
    for (auto& [v, e] : m.f) r.push_back(v);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::pair<Monomial, Scalar> Poly::leading() const {
  if (t_.empty()) return {Monomial{}, Scalar()};
  return *t_.rbegin();
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero() || eps_dead(m)) return;
  auto [it, fresh] = t_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.t_.empty() || b.t_.empty()) return r;
  if (a.is_constant()) return b * a.constant_term();
  if (b.is_constant()) return a * b.constant_term();
  for (auto& [ma, ca] : a.t_)
    for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [m, x] : t_) x *= c;
  return *this;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::domain_error("Poly: negative power");
  Poly r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Poly Poly::derivative(const Var& v) const {
  Poly r;
  for (auto& [m, c] : t_) {
    for (size_t i = 0; i < m.f.size(); ++i) {
      if (!(m.f[i].first == v)) continue;
      Monomial d = m;
      int e = d.f[i].second;
      if (e == 1)
        d.f.erase(d.f.begin() + static_cast<long>(i));
      else
        d.f[i].second = e - 1;
      r.add_term(d, c * Scalar(e));
    }
  }
  return r;
}

Poly Poly::map_vars(const std::function<bool(const Var&, Poly&)>& f) const {
  std::map<Var, Poly> cache;
  Poly r;
  for (auto& [m, c] : t_) {
    Poly term(c);
    Monomial keep;
    for (auto& [v, e] : m.f) {
      auto it = cache.find(v);
      if (it == cache.end()) {
        Poly img;
        bool mapped = f(v, img);
        it = cache.emplace(v, mapped ? img : Poly::var(v)).first;
      }
      term *= it->second.pow(e);
      if (term.is_zero()) break;
    }
    r += term;
  }
  return r;
}

Poly Poly::substitute(const std::map<Var, Poly>& sub) const {
  return map_vars([&](const Var& v, Poly& out) {
    auto it = sub.find(v);
    if (it == sub.end()) return false;
    out = it->second;
    return true;
  });
}

Scalar Poly::evaluate(const std::map<Var, Scalar>& val) const {
  Scalar r;
  for (auto& [m, c] : t_) {
    Scalar x = c;
    for (auto& [v, e] : m.f) {
      auto it = val.find(v);
      if (it == val.end()) throw std::invalid_argument("Poly::evaluate: unbound " + v.name());
      for (int k = 0; k < e; ++k) x *= it->second;
    }
    r += x;
  }
  return r;
}

Poly Poly::filter(const std::function<bool(const Monomial&)>& keep) const {
  Poly r;
  for (auto& [m, c] : t_)
    if (keep(m)) r.t_.emplace(m, c);
  return r;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.str() << ")";
    if (!it->first.is_one()) os << "*" << it->first.str();
  }
  return os.str();
}

Poly apply_derivation(const Poly& p, const std::function<Poly(const Var&)>& dv) {
  Poly r;
  std::map<Var, Poly> cache;
  for (auto& [m, c] : p.terms()) {
    for (size_t i = 0; i < m.f.size(); ++i) {
      const Var& v = m.f[i].first;
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, dv(v)).first;
      if (it->second.is_zero()) continue;
      Monomial rest = m;
      int e = rest.f[i].second;
      if (e == 1)
        rest.f.erase(rest.f.begin() + static_cast<long>(i));
      else
        rest.f[i].second = e - 1;
      r += Poly::term(rest, c * Scalar(e)) * it->second;
    }
  }
  return r;
}

}  // namespace cw
