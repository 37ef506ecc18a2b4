#pragma once

#include <string>
#include <vector>

namespace cw {

// (I, J): I strictly increasing, J nondecreasing (a multiset).
struct VeyPair {
  std::vector<int> I, J;
  bool relative = false;

  int weight_J() const;  // |J| = j_1 + ... + j_q
  // total degree sum(2i - 1) + 2|J|
  int degree() const;
  std::string id() const;  // e.g. "abs_I1_J1", "rel_I_J"
  bool operator==(const VeyPair&) const = default;
};

// The absolute set needs i_1 <= j_1 and i_1 + |J| > n, so I and J are both
// nonempty. The relative set uses i_0 = i_1 or infinity and j_0 = the least
// odd entry of J or infinity; it contains (empty, empty).
std::vector<VeyPair> enumerate_vey(int n, bool relative);

bool is_vey_pair(int n, const VeyPair& p);

}  // namespace cw
