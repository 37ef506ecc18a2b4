#pragma once

#include "cwhopf/forms.hpp"

namespace cw {

// t_0 = 1 - sum_{r>=1} t_r
Poly t_coord(int r, int p);
// dt_0 = -sum dt_r
Form dt_coord(int n, int r, int p);

// phi_slot^* omega = omega + gamma(slot) theta, as a matrix of 1-forms
FormMatrix pulled_connection(int n, int slot);
// convex combination of the pulled connections over slots 0..p
FormMatrix simplicial_connection(int n, int p);
// expanded flat curvature: sum dt_r A_r - sum t_r A_r^2 + sum t_r t_s A_r A_s.
// Only 2-jets of the slots appear.
FormMatrix simplicial_curvature(int n, int p);
// generic curvature d(conn) + conn ^ conn with the full derivative table
FormMatrix curvature_of(const FormMatrix& conn);

// c_k(A): coefficient of t^k in det(Id - lambda t A); A with even entries
Form chern(int k, const FormMatrix& a);
// polarised c_k with one odd slot: P(B, E, ..., E)
Form polarized(int k, const FormMatrix& b, const FormMatrix& e);
// k int_0^1 P(w, W_u, ..., W_u) du with W_u = u W + (u^2 - u) w^2
Form transgress(int k, const FormMatrix& conn, const FormMatrix& curv);
// relative version, k odd: k int_0^1 P(s w, W_u, ...) du with
// W_u = u sW + oW + (u^2 - 1) sw^2 (s, o symmetric and skew parts)
Form transgress_relative(int k, const FormMatrix& conn, const FormMatrix& curv);

// int over the standard simplex of the dt_1 ^ ... ^ dt_p component
Form fiber_integrate(const Form& a, int p);
// pull back along the i-th face Delta^{p-1} -> Delta^p
Form face_restrict(const Form& a, int i, int p);

}  // namespace cw
