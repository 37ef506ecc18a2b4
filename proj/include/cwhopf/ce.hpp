#pragma once

#include <map>
#include <string>
#include <vector>

#include "cwhopf/bott.hpp"

namespace cw {

// Cochain of the antisymmetric CE bicomplex. comp[q] is a form whose words
// are read in the dual basis of g (theta^k <-> X_k, omega^a_b <-> Y(a,b))
// and whose coefficients are polynomials in alpha symbols of slots 0..q.
// A monomial touching several slots stands for the tensor f^0 (x) .. (x) f^q;
// cochains built here are antisymmetric in the slots.
struct CECochain {
  int n = 1;
  std::map<int, Form> comp;
  std::string id;
  bool relative = false;
  int degree = -1;

  bool is_zero() const;
  int max_level() const;
};

// dC = act * sum_Z alpha^Z ^ (Z |> C) + C d_CE(word) + twist * delta ^ C
struct CEConvention {
  int act = 1;
  int twist = 0;
  bool operator==(const CEConvention&) const = default;
};
std::string convention_name(const CEConvention& c);
std::vector<CEConvention> all_ce_conventions();
// frozen after calibration
constexpr CEConvention kCEConvention{1, 0};

// Lie algebra coboundary of a coframe word, from the structure constants
const Form& ce_d_word(int n, Word w);
// the modular character as a 1-form: sum_a omega^a_a
Form delta_form(int n);

// gamma(slot) -> eta(slot) -> alpha(slot)
Poly gamma_to_alpha(int n, const Poly& p);
// alpha(slot) -> eta(slot) -> gamma(slot)
Poly alpha_to_gamma(int n, const Poly& p);

CECochain kappa_from_bott(const BottCochain& c);
CECochain build_ce_cocycle(int n, const VeyPair& pair);
BottCochain theta_map(const CECochain& c);

Form ce_partial(const Form& f, const CEConvention& conv = kCEConvention);
CECochain ce_b(const CECochain& c);
CECochain ce_partial(const CECochain& c, const CEConvention& conv = kCEConvention);
// b + s(q) dC
CECochain ce_total(const CECochain& c, const CEConvention& conv = kCEConvention, SignRule s = kTotalSign);

// conventions for which kappa intertwines d with dC on random Bott cochains
// and every kappa_{I,J} of the given n is dC-closed
std::vector<CEConvention> calibrate_ce(int n, uint64_t seed);

// kappa(c)(psi_0, .., psi_q) with psi_r in N
Form kappa_to_group(const Form& comp, const std::vector<TruncatedMap>& psi);

// total coboundary at random tuples in N; Z |> by dual numbers
Certificate verify_ce_cocycle(const CECochain& c, int trials, uint64_t seed, int K = 4,
                              const CEConvention& conv = kCEConvention, SignRule s = kTotalSign);

// kappa at psi_r <| g, theta_map(kappa) with gamma from the literal formula,
// and the Bott cochain, at random tuples and frames g = (x, y)
Certificate verify_theta(const CECochain& kappa, const BottCochain& bott, int trials, uint64_t seed);

// throws std::invalid_argument unless contraction with and Lie derivative
// along every skew direction vanish; returns the image in the sym quotient
CECochain relative_restrict(const CECochain& c);

struct AuditReport {
  bool pass = true;
  std::vector<std::string> offending;
};
AuditReport two_jet_audit(const CECochain& c);

CECochain mutate(const CECochain& c, const Scalar& delta = Scalar(1));

// sum over slot permutations with sign, divided by (q+1)!
Form antisymmetrize(const Form& f, int q);

}  // namespace cw
