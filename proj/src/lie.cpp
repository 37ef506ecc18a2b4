#include "cwhopf/lie.hpp"

#include <mutex>
#include <stdexcept>

#include "cwhopf/poly.hpp"

namespace cw {

int gdim(int n) { return n + n * n; }

GGen GGen::from_index(int n, int idx) {
  if (idx < n) return x(idx + 1);
  idx -= n;
  return y(idx / n + 1, idx % n + 1);
}

std::string GGen::str() const {
  if (kind == X) return "X" + std::to_string(a);
  return "Y" + std::to_string(a) + std::to_string(b);
}

Scalar modular_character(int, const GGen& z) {
  return (z.kind == GGen::Y && z.a == z.b) ? Scalar(1) : Scalar(0);
}

namespace {

using Field = std::map<Var, Poly>;

Field realise(int n, const GGen& g) {
  Field f;
  for (int mu = 1; mu <= n; ++mu) {
    if (g.kind == GGen::X)
      f[Var::coord(mu)] = Poly::var(Var::frame(mu, g.a));
    else
      f[Var::frame(mu, g.b)] = Poly::var(Var::frame(mu, g.a));
  }
  return f;
}

Poly apply(const Field& v, const Poly& p) {
  Poly r;
  for (auto& [u, c] : v) r += c * p.derivative(u);
  return r;
}

Field bracket(const Field& v, const Field& w) {
  Field r;
  for (auto& [u, c] : w) r[u] += apply(v, c);
  for (auto& [u, c] : v) r[u] -= apply(w, c);
  for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}

std::vector<Scalar> decompose(int n, const Field& f) {
  std::vector<Scalar> c(gdim(n));
  auto coef = [&](const Var& slot, const Var& m) {
    auto it = f.find(slot);
    return it == f.end() ? Scalar() : it->second.coeff(mono(m));
  };
  for (int k = 1; k <= n; ++k) c[GGen::x(k).index(n)] = coef(Var::coord(1), Var::frame(1, k));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) c[GGen::y(a, b).index(n)] = coef(Var::frame(1, b), Var::frame(1, a));
  Field back;
  for (int i = 0; i < gdim(n); ++i) {
    if (c[i].is_zero()) continue;
    for (auto& [u, p] : realise(n, GGen::from_index(n, i))) back[u] += p * c[i];
  }
  for (auto it = back.begin(); it != back.end();) it = it->second.is_zero() ? back.erase(it) : std::next(it);
  if (back != f) throw std::logic_error("structure constants: bracket not in the span");
  return c;
}

}  // namespace

const std::vector<std::vector<std::vector<Scalar>>>& structure_constants(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<std::vector<std::vector<Scalar>>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  int d = gdim(n);
  std::vector<std::vector<std::vector<Scalar>>> c(d, std::vector<std::vector<Scalar>>(d));
  std::vector<Field> fields;
  for (int i = 0; i < d; ++i) fields.push_back(realise(n, GGen::from_index(n, i)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c[i][j] = decompose(n, bracket(fields[i], fields[j]));
  return cache.emplace(n, std::move(c)).first->second;
}

}  // namespace cw
