#include "cwhopf/vey.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

namespace cw {

int VeyPair::weight_J() const { return std::accumulate(J.begin(), J.end(), 0); }

int VeyPair::degree() const {
  int d = 2 * weight_J();
  for (int i : I) d += 2 * i - 1;
  return d;
}

std::string VeyPair::id() const {
  std::string s = relative ? "rel_I" : "abs_I";
  for (size_t k = 0; k < I.size(); ++k) s += (k ? "," : "") + std::to_string(I[k]);
  s += "_J";
  for (size_t k = 0; k < J.size(); ++k) s += (k ? "," : "") + std::to_string(J[k]);
  return s;
}

namespace {

// nondecreasing lists with entries >= lo and sum <= cap
void multisets(int lo, int cap, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  for (int j = lo; j <= cap; ++j) {
    cur.push_back(j);
    multisets(j, cap - j, cur, out);
    cur.pop_back();
  }
}

// subsets of {lo..n} (odd only if asked), increasing
void subsets(int lo, int n, bool odd, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  for (int i = lo; i <= n; ++i) {
    if (odd && i % 2 == 0) continue;
    cur.push_back(i);
    subsets(i + 1, n, odd, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<VeyPair> enumerate_vey(int n, bool relative) {
  std::vector<VeyPair> out;
  std::vector<int> cur;
  if (!relative) {
    for (int i1 = 1; i1 <= n; ++i1) {
      std::vector<std::vector<int>> tails, js;
      subsets(i1 + 1, n, false, cur, tails);
      multisets(i1, n, cur, js);
      for (auto& J : js) {
        int w = std::accumulate(J.begin(), J.end(), 0);
        if (J.empty() || i1 + w <= n) continue;
        for (auto& t : tails) {
          VeyPair p{{i1}, J, false};
          p.I.insert(p.I.end(), t.begin(), t.end());
          out.push_back(p);
        }
      }
    }
  } else {
    std::vector<std::vector<int>> js;
    multisets(1, n, cur, js);
    for (auto& J : js) {
      int w = std::accumulate(J.begin(), J.end(), 0);
      int j0 = 0;
      for (int j : J)
        if (j % 2) {
          j0 = j;
          break;
        }
      if (j0 == 0) out.push_back({{}, J, true});
      for (int i1 = 1; i1 <= n; i1 += 2) {
        if ((j0 && i1 > j0) || i1 + w <= n) continue;
        std::vector<std::vector<int>> tails;
        subsets(i1 + 1, n, true, cur, tails);
        for (auto& t : tails) {
          VeyPair p{{i1}, J, true};
          p.I.insert(p.I.end(), t.begin(), t.end());
          out.push_back(p);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const VeyPair& a, const VeyPair& b) {
    return std::tie(a.I, a.J) < std::tie(b.I, b.J);
  });
  return out;
}

bool is_vey_pair(int n, const VeyPair& p) {
  auto all = enumerate_vey(n, p.relative);
  return std::find(all.begin(), all.end(), p) != all.end();
}

}  // namespace cw
