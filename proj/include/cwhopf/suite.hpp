#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cw {

// Outcome of one family of exact checks. Every check is an exact
// comparison; pass iff failures == 0 and checks > 0.
struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}
  std::string name;
  long checks = 0;
  long failures = 0;
  std::string detail;  // first failure
  bool pass() const { return checks > 0 && failures == 0; }
  void expect(bool ok, const std::string& what);
};

// jet group, n = 1..2
CheckResult check_matched_pair(uint64_t seed, int trials);
CheckResult check_kac(uint64_t seed, int trials);
CheckResult check_gamma_cocycle(uint64_t seed, int trials);
CheckResult check_fing(uint64_t seed, int trials);
// gamma^i_{jlk} - gamma^i_{jkl} = gamma^s_{jk} gamma^i_{sl} - gamma^s_{jl} gamma^i_{sk}
CheckResult check_bianchi_functions(uint64_t seed, int trials);
// the same identity in H_n: normal forms and action on random monomials
CheckResult check_bianchi_hopf(uint64_t seed, int trials);

// simplicial / Chern-Weil
CheckResult check_transgression(int nmax, int kmax, int pmax);
CheckResult check_stokes(uint64_t seed, int samples, int pmax);

// cocycles for every (I, J) of n, absolute and relative
CheckResult check_bott_closed(int n, int trials, uint64_t seed);
CheckResult check_theta(int n, int trials, uint64_t seed);
CheckResult check_two_jet(int n);
CheckResult check_ce_closed(int n, int trials, uint64_t seed);
// a single-coefficient mutation must fail: which = "bott" | "theta" | "ce"
CheckResult check_mutation(const std::string& which, int n, int trials, uint64_t seed);

// Hopf algebra H_n
CheckResult check_hopf_coassociativity(int n);
CheckResult check_hopf_compatibility(int n, int pairs, uint64_t seed);
CheckResult check_hopf_convolution(int n);
CheckResult check_hopf_involution(int n);
CheckResult check_hopf_cyclicity(int qmax, uint64_t seed);
CheckResult check_hopf_cocycle_d111();
CheckResult check_hopf_mixed(uint64_t seed);

struct Section {
  std::string name;
  std::vector<CheckResult> results;
  bool pass() const;
};
// fixed-seed selftest; names: jet-group, bianchi, transgression, stokes,
// cocycle, theta, two-jet, ce, hopf, mutation
std::vector<std::string> selftest_sections();
Section run_section(const std::string& name, uint64_t seed);

}  // namespace cw
