#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cwhopf/ring.hpp"

namespace cw {

// Multi-index packed one byte per variable (n <= 8).
using MIdx = uint64_t;

inline int midx_get(MIdx m, int l) { return static_cast<int>((m >> (8 * l)) & 0xff); }
inline MIdx midx_unit(int l) { return MIdx{1} << (8 * l); }
inline int midx_deg(MIdx m) {
  int d = 0;
  for (int l = 0; l < 8; ++l) d += midx_get(m, l);
  return d;
}
inline MIdx midx_from(const std::vector<int>& e) {
  MIdx m = 0;
  for (size_t l = 0; l < e.size(); ++l) m |= MIdx(e[l]) << (8 * l);
  return m;
}
inline std::vector<int> midx_vec(MIdx m, int n) {
  std::vector<int> e(n);
  for (int l = 0; l < n; ++l) e[l] = midx_get(m, l);
  return e;
}
// multiset of one-based directions, e.g. s1^2 s2 -> {1,1,2}
inline std::vector<int> midx_multiset(MIdx m, int n) {
  std::vector<int> r;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < midx_get(m, l); ++k) r.push_back(l + 1);
  return r;
}
inline MIdx midx_of_multiset(const std::vector<int>& ms) {
  MIdx m = 0;
  for (int l : ms) m += midx_unit(l - 1);
  return m;
}
// beta! = prod of factorials of exponents
inline long midx_factorial(MIdx m, int n) {
  long f = 1;
  for (int l = 0; l < n; ++l)
    for (int k = 2; k <= midx_get(m, l); ++k) f *= k;
  return f;
}

// list of all multi-indices in n variables of total degree d
inline std::vector<MIdx> midx_of_degree(int n, int d) {
  std::vector<MIdx> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int l, int left) -> void {
    if (l == n - 1) {
      e[l] = left;
      out.push_back(midx_from(e));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[l] = k;
      self(self, l + 1, left - k);
    }
  };
  if (n == 0) return d == 0 ? std::vector<MIdx>{0} : out;
  rec(rec, 0, d);
  return out;
}

template <class R>
class Series {
 public:
  int n = 0;
  std::map<MIdx, R> c;

  Series() = default;
  explicit Series(int nv) : n(nv) {}
  static Series constant(int nv, const R& v) {
    Series s(nv);
    if (!Ring<R>::is_zero(v)) s.c.emplace(0, v);
    return s;
  }
  static Series variable(int nv, int l) {
    Series s(nv);
    s.c.emplace(midx_unit(l), Ring<R>::from(Scalar(1)));
    return s;
  }

  R coeff(MIdx m) const {
    auto it = c.find(m);
    return it == c.end() ? Ring<R>::from(Scalar(0)) : it->second;
  }
  R at0() const { return coeff(0); }
  void add(MIdx m, const R& v) {
    if (Ring<R>::is_zero(v)) return;
    auto [it, fresh] = c.try_emplace(m, v);
    if (!fresh) {
      it->second += v;
      if (Ring<R>::is_zero(it->second)) c.erase(it);
    }
  }
  int degree() const {
    int d = -1;
    for (auto& [m, v] : c) d = std::max(d, midx_deg(m));
    return d;
  }
  bool is_zero() const { return c.empty(); }

  Series& operator+=(const Series& o) {
    for (auto& [m, v] : o.c) add(m, v);
    return *this;
  }
  Series& operator-=(const Series& o) {
    for (auto& [m, v] : o.c) add(m, -v);
    return *this;
  }
  Series operator-() const {
    Series s(n);
    for (auto& [m, v] : c) s.c.emplace(m, -v);
    return s;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  Series scaled(const R& k) const {
    Series s(n);
    for (auto& [m, v] : c) s.add(m, v * k);
    return s;
  }
  // product truncated at total degree K (K < 0: exact)
  Series mul(const Series& o, int K) const {
    Series s(n);
    for (auto& [ma, va] : c) {
      int da = midx_deg(ma);
      if (K >= 0 && da > K) continue;
      for (auto& [mb, vb] : o.c) {
        if (K >= 0 && da + midx_deg(mb) > K) continue;
        s.add(ma + mb, va * vb);
      }
    }
    return s;
  }
  Series truncated(int K) const {
    Series s(n);
    for (auto& [m, v] : c)
      if (midx_deg(m) <= K) s.c.emplace(m, v);
    return s;
  }
  Series derivative(int l) const {
    Series s(n);
    for (auto& [m, v] : c) {
      int e = midx_get(m, l);
      if (e == 0) continue;
      s.add(m - midx_unit(l), v * Ring<R>::from(Scalar(e)));
    }
    return s;
  }
  // substitute variable l -> g[l]; result truncated at K (K < 0: exact)
  Series compose(const std::vector<Series>& g, int K) const {
    int m = static_cast<int>(g.size());
    Series out(m ? g[0].n : 0);
    std::vector<std::vector<Series>> pw(n);
    auto power = [&](int l, int e) -> const Series& {
      auto& v = pw[l];
      if (v.empty()) v.push_back(Series::constant(out.n, Ring<R>::from(Scalar(1))));
      while (static_cast<int>(v.size()) <= e) v.push_back(v.back().mul(g[l], K));
      return v[e];
    };
    for (auto& [mi, v] : c) {
      Series t = Series::constant(out.n, v);
      for (int l = 0; l < n; ++l) {
        int e = midx_get(mi, l);
        if (e) t = t.mul(power(l, e), K);
        if (t.is_zero()) break;
      }
      out += t;
    }
    return out;
  }
  bool operator==(const Series& o) const { return c == o.c; }
};

}  // namespace cw
