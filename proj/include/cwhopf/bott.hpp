#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cwhopf/simplicial.hpp"
#include "cwhopf/vey.hpp"

namespace cw {

// Homogeneous form-valued group cochain: comp[p] is a form whose
// coefficients involve slots 0..p.
struct BottCochain {
  int n = 1;
  std::map<int, Form> comp;
  std::string id;
  bool relative = false;
  int degree = -1;  // total degree, -1 if not homogeneous / unknown

  bool is_zero() const;
  int max_level() const;
};

// sign s(p) multiplying d on the group-degree p component
enum class SignRule { Plus, Minus, Alt, AltShift };  // +1, -1, (-1)^p, (-1)^(p+1)
int sign_of(SignRule r, int p);
const char* sign_name(SignRule r);
constexpr SignRule kAllSignRules[] = {SignRule::Plus, SignRule::Minus, SignRule::Alt, SignRule::AltShift};
// frozen after calibration (see verify tests)
constexpr SignRule kTotalSign = SignRule::AltShift;

// remap the slot tags of gamma / eta / alpha symbols
Poly retag(const Poly& p, const std::function<int(int)>& slot_map);
Form retag(const Form& a, const std::function<int(int)>& slot_map);

// (delta c)(r_0..r_{p+1}) = sum (-1)^i c(r_0..^r_i..r_{p+1})
BottCochain group_coboundary(const BottCochain& c);
// delta c + s(p) d c
BottCochain total_coboundary(const BottCochain& c, SignRule s = kTotalSign);

// components (-1)^p int_{Delta^p} alpha(p), p = 0..max_level
BottCochain integrate_levels(int n, const std::function<Form(int)>& alpha, int max_level, const std::string& id);

// Sign rules s for which D_s C(alpha) = +-C(d alpha) on random natural
// simplicial forms alpha (words in the entries of the simplicial connection
// and curvature) spanning group degrees 0..2.
std::vector<SignRule> calibrate_total_sign(int n, int samples, uint64_t seed);

// C_{I,J} with components (-1)^p int_{Delta^p} Tc_I ^ c_J at level p
BottCochain build_bott_cocycle(int n, const VeyPair& pair);

struct Failure {
  std::vector<std::string> slots;  // serialised maps
  std::vector<std::string> point;
  std::string nonzero_term;
};

struct Certificate {
  std::string cocycle_id;
  int trials = 0;
  uint64_t seed = 0;
  int jet_order = 4;
  bool pass = false;
  int resampled = 0;
  std::vector<Failure> failures;
};

// Evaluate the total coboundary at random tuples of polynomial maps of
// degree <= 3 and random frames; PASS iff every coefficient is exactly 0.
Certificate verify_cocycle(const BottCochain& c, int trials, uint64_t seed, int K = 4, SignRule s = kTotalSign);

// add delta to the coefficient of the leading monomial of the first term
// of the lowest nonzero component
BottCochain mutate(const BottCochain& c, const Scalar& delta = Scalar(1));

// contraction with and Lie derivative along every skew direction vanish
bool is_on_basic(const Form& a);

std::string map_str(const TruncatedMap& f);

}  // namespace cw
