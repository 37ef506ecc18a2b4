#pragma once

#include <map>
#include <string>
#include <vector>

#include "cwhopf/scalar.hpp"

namespace cw {

// Basis of g = R^n x| gl_n realised on the frame bundle:
//   X_k     = y^mu_k d/dx^mu
//   Y(a, b) = y^mu_a d/dy^mu_b      (dual to omega^a_b)
struct GGen {
  enum Kind : int { X = 0, Y = 1 } kind = X;
  int a = 1, b = 0;  // X_k: a = k

  static GGen x(int k) { return {X, k, 0}; }
  static GGen y(int i, int j) { return {Y, i, j}; }
  // position in the basis X_1..X_n, Y(1,1), Y(1,2), ..., Y(n,n)
  int index(int n) const { return kind == X ? a - 1 : n + (a - 1) * n + (b - 1); }
  static GGen from_index(int n, int idx);
  std::string str() const;
  auto operator<=>(const GGen&) const = default;
};

int gdim(int n);

// [e_i, e_j] = sum_k c[i][j][k] e_k, computed from the vector-field
// realisation and cached per n.
const std::vector<std::vector<std::vector<Scalar>>>& structure_constants(int n);

// trace character: delta(Y(a,a)) = 1, zero on X and off-diagonal Y
Scalar modular_character(int n, const GGen& z);

}  // namespace cw
