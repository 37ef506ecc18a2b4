#include "cwhopf/suite.hpp"

#include <functional>
#include <random>
#include <stdexcept>

#include "cwhopf/ce.hpp"
#include "cwhopf/hopf.hpp"
#include "cwhopf/simplicial.hpp"

namespace cw {

void CheckResult::expect(bool ok, const std::string& what) {
  ++checks;
  if (!ok) {
    if (failures == 0) detail = what;
    ++failures;
  }
}

bool Section::pass() const {
  for (auto& r : results)
    if (!r.pass()) return false;
  return !results.empty();
}

namespace {

Scalar gamma_at(const std::map<Var, Scalar>& g, int i, int j, int k, std::vector<int> L = {}) {
  return g.at(gamma_var(0, i, j, k, std::move(L)));
}

// run fn over n = 1, 2 until `trials` usable samples per n are done
void per_n(int trials, const std::function<bool(int)>& fn) {
  for (int n = 1; n <= 2; ++n) {
    int done = 0;
    for (int guard = 0; done < trials && guard < 20 * trials; ++guard) done += fn(n);
  }
}

std::string pair_label(int n, const VeyPair& p) { return "n=" + std::to_string(n) + " " + p.id(); }

std::vector<VeyPair> all_pairs(int n) {
  auto a = enumerate_vey(n, false), r = enumerate_vey(n, true);
  a.insert(a.end(), r.begin(), r.end());
  return a;
}

// ---- Hopf helpers ----

HopfTensor gen(int n, const HopfGenerator& g) { return HopfTensor::generator(n, g); }

std::vector<HopfTensor> hopf_generators(int n, bool higher) {
  std::vector<HopfTensor> out;
  for (int k = 1; k <= n; ++k) out.push_back(gen(n, HopfGenerator::x(k)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) out.push_back(gen(n, HopfGenerator::y(i, j)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        out.push_back(gen(n, HopfGenerator::d(i, j, k)));
        if (higher)
          for (int l = 1; l <= n; ++l) out.push_back(gen(n, HopfGenerator::d(i, j, k, {l})));
      }
  return out;
}

std::vector<HopfTensor> hopf_corpus(int n) {
  auto out = hopf_generators(n, true);
  auto g = hopf_generators(n, false);
  for (auto& a : g)
    for (auto& b : g) out.push_back(a * b);
  return out;
}

std::vector<std::pair<HopfTensor, HopfTensor>> split_legs(const HopfTensor& t) {
  std::vector<std::pair<HopfTensor, HopfTensor>> out;
  for (auto& [k, f] : t.terms())
    for (auto& [m, c] : f.terms()) {
      Monomial a, b;
      for (auto& [v, e] : m.f) (v.slot() == 0 ? a : b).f.emplace_back(v, e);
      HopfTensor l(t.n, 1), r(t.n, 1);
      l.add({k[0]}, Poly::term(a, c));
      r.add({k[1]}, retag(Poly::term(b, Scalar(1)), [](int s) { return s - 1; }));
      out.emplace_back(l, r);
    }
  return out;
}

RationalFn random_rational(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> cf(-3, 3), coin(0, 2);
  std::vector<Var> vars;
  for (int mu = 1; mu <= n; ++mu) {
    vars.push_back(Var::coord(mu));
    for (int nu = 1; nu <= n; ++nu) vars.push_back(Var::frame(mu, nu));
  }
  std::uniform_int_distribution<size_t> pick(0, vars.size() - 1);
  Poly p(Scalar(cf(rng)));
  for (int t = 0; t < 3; ++t) {
    Poly m(Scalar(cf(rng)));
    int d = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < d; ++i) m *= Poly::var(vars[pick(rng)]);
    p += m;
  }
  if (coin(rng) == 0) {
    Poly det = n == 1 ? Poly::var(Var::frame(1, 1))
                      : Poly::var(Var::frame(1, 1)) * Poly::var(Var::frame(2, 2)) -
                            Poly::var(Var::frame(1, 2)) * Poly::var(Var::frame(2, 1));
    return RationalFn(p, det);
  }
  return p;
}

ModelMonomial random_model_monomial(std::mt19937_64& rng, int n) {
  MapSampler ms{-2, 2};
  return {random_rational(rng, n), ms.map(rng, n, 6, 2)};
}

}  // namespace

// ---- jet group ----

CheckResult check_matched_pair(uint64_t seed, int trials) {
  CheckResult r{"matched pair psi o phi = (psi |> phi) o (psi <| phi)"};
  std::mt19937_64 rng(seed);
  MapSampler ms;
  per_n(trials, [&](int n) {
    auto psi = ms.n_element(rng, n, 4, 3);
    auto phi = ms.affine(rng, n, 4);
    if (!invertible(jacobian_at(psi, phi.value0()))) return false;
    auto [lhs, rhs] = act_right(psi, phi);
    r.expect(compose(psi, phi) == compose(lhs, rhs), "product " + map_str(psi));
    r.expect(lhs.degree() <= 1, "left factor not affine");
    r.expect(rhs.fixes_origin() && rhs.linear() == identity_matrix<Scalar>(n), "right factor not in N");
    return true;
  });
  return r;
}

CheckResult check_kac(uint64_t seed, int trials) {
  CheckResult r{"Kac decomposition round trip"};
  std::mt19937_64 rng(seed);
  MapSampler ms;
  per_n(trials, [&](int n) {
    auto f = ms.map(rng, n, 4, 3);
    auto [aff, psi] = kac(f);
    r.expect(compose(aff, psi) == f, "round trip " + map_str(f));
    r.expect(psi.fixes_origin() && psi.linear() == identity_matrix<Scalar>(n), "N-part");
    r.expect(aff.degree() <= 1, "affine part");
    return true;
  });
  return r;
}

CheckResult check_gamma_cocycle(uint64_t seed, int trials) {
  CheckResult r{"gamma(phi o psi) = gamma(psi) + psi~^* gamma(phi)"};
  std::mt19937_64 rng(seed);
  MapSampler ms;
  per_n(trials, [&](int n) {
    auto phi = ms.map(rng, n, 12, 3), psi = ms.map(rng, n, 12, 3);
    auto comp = compose(phi, psi, 12);
    auto x = ms.point(rng, n);
    auto y = ms.frame(rng, n);
    auto px = eval_map(psi, x);
    auto py = mat_mul(jacobian_at(psi, x), y);
    if (!invertible(jacobian_at(comp, x)) || !invertible(py)) return false;
    auto lhs = gamma_series<Scalar>(comp, x, y, 0, 0);
    auto a = gamma_series<Scalar>(psi, x, y, 0, 0);
    auto b = gamma_series<Scalar>(phi, px, py, 0, 0);
    for (auto& [v, val] : lhs) r.expect(val == a.at(v) + b.at(v), v.name());
    return true;
  });
  return r;
}

CheckResult check_fing(uint64_t seed, int trials) {
  CheckResult r{"gamma(psi)(phi(e)) = eta(psi <| phi), affine invariance"};
  std::mt19937_64 rng(seed);
  MapSampler ms;
  per_n(trials, [&](int n) {
    auto psi = ms.n_element(rng, n, 4, 3);
    auto phi = ms.affine(rng, n, 4);
    if (!invertible(jacobian_at(psi, phi.value0()))) return false;
    auto right = act_right(psi, phi).second;
    r.expect(gamma_direct(psi, phi.value0(), phi.linear(), 2, 0) == eta_values(right, 2, 0), "step " + map_str(psi));
    auto rho = ms.affine(rng, n, 4);
    auto x = ms.point(rng, n);
    auto y = ms.frame(rng, n);
    if (invertible(jacobian_at(psi, x)))
      r.expect(gamma_series<Scalar>(compose(rho, psi), x, y, 2, 0) == gamma_series<Scalar>(psi, x, y, 2, 0),
               "left affine invariance");
    return true;
  });
  return r;
}

CheckResult check_bianchi_functions(uint64_t seed, int trials) {
  CheckResult r{"structure identities on gamma"};
  std::mt19937_64 rng(seed);
  MapSampler ms;
  per_n(trials, [&](int n) {
    auto phi = ms.map(rng, n, 4, 3);
    auto x = ms.point(rng, n);
    if (!invertible(jacobian_at(phi, x))) return false;
    auto g = gamma_series<Scalar>(phi, x, ms.frame(rng, n), 1, 0);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            Scalar lhs = gamma_at(g, i, j, l, {k}) - gamma_at(g, i, j, k, {l});
            Scalar rhs;
            for (int s = 1; s <= n; ++s)
              rhs += gamma_at(g, s, j, k) * gamma_at(g, i, s, l) - gamma_at(g, s, j, l) * gamma_at(g, i, s, k);
            r.expect(lhs == rhs, "i j k l = " + std::to_string(i) + std::to_string(j) + std::to_string(k) +
                                     std::to_string(l));
          }
    return true;
  });
  return r;
}

CheckResult check_bianchi_hopf(uint64_t seed, int trials) {
  CheckResult r{"structure identities in H_n (normal form and action)"};
  std::mt19937_64 rng(seed);
  for (int n = 1; n <= 2; ++n) {
    auto D = [&](int a, int b, int c, std::vector<int> L = {}) {
      return gen(n, HopfGenerator::d(a, std::min(b, c), std::max(b, c), std::move(L)));
    };
    std::vector<std::pair<HopfTensor, HopfTensor>> sides;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            auto lhs = D(i, j, l, {k}) - D(i, j, k, {l});
            HopfTensor rhs(n, 1);
            for (int s = 1; s <= n; ++s) rhs += D(s, j, k) * D(i, s, l) - D(s, j, l) * D(i, s, k);
            r.expect(lhs == rhs, "normal form " + lhs.str());
            sides.emplace_back(lhs, rhs);
          }
    MapSampler ms{-4, 4};
    for (int t = 0; t < trials; ++t) {
      auto m = random_model_monomial(rng, n);
      auto x = ms.point(rng, n);
      auto y = ms.frame(rng, n);
      if (!invertible(y) || !invertible(jacobian_at(m.phi, x))) continue;
      auto& [lhs, rhs] = sides[rng() % sides.size()];
      r.expect(act_value(lhs, {m}, x, y) == act_value(rhs, {m}, x, y), "action");
    }
  }
  return r;
}

// ---- simplicial ----

CheckResult check_transgression(int nmax, int kmax, int pmax) {
  CheckResult r{"d Tc_k = c_k, relative variant for odd k"};
  for (int n = 1; n <= nmax; ++n)
    for (int p = 0; p <= pmax; ++p) {
      FormMatrix w = simplicial_connection(n, p);
      FormMatrix W = curvature_of(w);
      for (int k = 1; k <= std::min(n, kmax); ++k) {
        std::string at = "n=" + std::to_string(n) + " p=" + std::to_string(p) + " k=" + std::to_string(k);
        Form c = chern(k, W);
        r.expect(d(transgress(k, w, W)) == c, "absolute " + at);
        if (k % 2) r.expect(d(transgress_relative(k, w, W)) == c, "relative " + at);
      }
    }
  return r;
}

CheckResult check_stokes(uint64_t seed, int samples, int pmax) {
  CheckResult r{"int d - (-1)^p d int = sum (-1)^i int over faces"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cf(-3, 3), pick(0, 3);
  for (int t = 0; t < samples; ++t) {
    int n = 1 + t % 2, p = 1 + t % pmax;
    int deg = p - 1 + (t / 2) % 3;
    std::vector<Word> ls;
    for (int s = 1; s <= p; ++s) ls.push_back(letter_dt(s));
    for (int k = 1; k <= n; ++k) ls.push_back(letter_theta(k));
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) ls.push_back(letter_omega(a, b));
    std::uniform_int_distribution<size_t> lp(0, ls.size() - 1);
    std::uniform_int_distribution<int> ix(1, n), sl(0, p);
    Form a(n);
    for (int term = 0; term < 3; ++term) {
      Word w = 0;
      for (int guard = 0; word_degree(w) < deg && guard < 100; ++guard) w |= ls[lp(rng)];
      if (word_degree(w) != deg) continue;
      Poly c(Scalar(cf(rng)));
      for (int f = 0; f < 2; ++f) {
        Poly m(Scalar(cf(rng)));
        int kind = pick(rng);
        if (kind == 0) m *= Poly::var(Var::sim(std::uniform_int_distribution<int>(1, p)(rng)));
        if (kind == 1) m *= Poly::var(gamma_var(sl(rng), ix(rng), ix(rng), ix(rng), {}));
        if (kind == 2) m *= Poly::var(gamma_var(sl(rng), ix(rng), ix(rng), ix(rng), {ix(rng)}));
        c += m;
      }
      a.add(w, c);
    }
    Form lhs = fiber_integrate(d(a), p) - (d(fiber_integrate(a, p)) * Poly(p % 2 ? -1 : 1));
    Form rhs(n);
    for (int i = 0; i <= p; ++i) {
      Form f = fiber_integrate(face_restrict(a, i, p), p - 1);
      rhs += i % 2 ? -f : f;
    }
    r.expect(lhs == rhs, a.str());
  }
  return r;
}

// ---- cocycles ----

CheckResult check_bott_closed(int n, int trials, uint64_t seed) {
  CheckResult r{"Bott cocycles closed, n=" + std::to_string(n)};
  for (auto& pr : all_pairs(n)) {
    auto cert = verify_cocycle(build_bott_cocycle(n, pr), trials, seed);
    r.expect(cert.pass && cert.trials >= trials,
             pair_label(n, pr) + (cert.failures.empty() ? "" : ": " + cert.failures[0].nonzero_term));
  }
  return r;
}

CheckResult check_theta(int n, int trials, uint64_t seed) {
  CheckResult r{"Theta(kappa) = C, n=" + std::to_string(n)};
  for (auto& pr : all_pairs(n)) {
    auto b = build_bott_cocycle(n, pr);
    auto cert = verify_theta(kappa_from_bott(b), b, trials, seed);
    r.expect(cert.pass && cert.trials >= trials,
             pair_label(n, pr) + (cert.failures.empty() ? "" : ": " + cert.failures[0].nonzero_term));
  }
  return r;
}

CheckResult check_two_jet(int n) {
  CheckResult r{"kappa uses 2-jets only, n=" + std::to_string(n)};
  for (auto& pr : all_pairs(n)) {
    auto rep = two_jet_audit(build_ce_cocycle(n, pr));
    r.expect(rep.pass, pair_label(n, pr) + (rep.offending.empty() ? "" : ": " + rep.offending[0]));
  }
  return r;
}

CheckResult check_ce_closed(int n, int trials, uint64_t seed) {
  CheckResult r{"CE cocycles closed, n=" + std::to_string(n)};
  for (auto& pr : all_pairs(n)) {
    auto k = build_ce_cocycle(n, pr);
    auto cert = verify_ce_cocycle(k, trials, seed);
    r.expect(cert.pass && cert.trials >= trials,
             pair_label(n, pr) + (cert.failures.empty() ? "" : ": " + cert.failures[0].nonzero_term));
  }
  return r;
}

CheckResult check_mutation(const std::string& which, int n, int trials, uint64_t seed) {
  CheckResult r{"mutation detected (" + which + "), n=" + std::to_string(n)};
  for (auto& pr : all_pairs(n)) {
    // the constant cocycle stays closed under rescaling; only Theta sees it
    if (pr.I.empty() && pr.J.empty() && which != "theta") continue;
    auto b = build_bott_cocycle(n, pr);
    bool caught;
    if (which == "bott")
      caught = !verify_cocycle(mutate(b), trials, seed).pass;
    else if (which == "theta")
      caught = !verify_theta(mutate(kappa_from_bott(b)), b, trials, seed).pass;
    else if (which == "ce")
      caught = !verify_ce_cocycle(mutate(build_ce_cocycle(n, pr)), trials, seed).pass;
    else
      throw std::invalid_argument("check_mutation: unknown target " + which);
    r.expect(caught, pair_label(n, pr) + " mutant passed");
  }
  return r;
}

// ---- Hopf ----

CheckResult check_hopf_coassociativity(int n) {
  CheckResult r{"(Delta (x) Id) Delta = (Id (x) Delta) Delta, n=" + std::to_string(n)};
  for (auto& h : hopf_corpus(n)) {
    auto c = coproduct(h);
    r.expect(coproduct_leg(c, 0) == coproduct_leg(c, 1), h.str());
    r.expect(counit_leg(c, 0) == h && counit_leg(c, 1) == h, "counit " + h.str());
  }
  return r;
}

CheckResult check_hopf_compatibility(int n, int pairs, uint64_t seed) {
  CheckResult r{"h(ab) = h(1)(a) h(2)(b), n=" + std::to_string(n)};
  std::mt19937_64 rng(seed);
  MapSampler ms{-4, 4};
  auto g = hopf_generators(n, true);
  int done = 0;
  for (int guard = 0; done < pairs && guard < 10 * pairs; ++guard) {
    auto a = random_model_monomial(rng, n), b = random_model_monomial(rng, n);
    auto x = ms.point(rng, n);
    auto y = ms.frame(rng, n);
    if (!invertible(y) || !invertible(jacobian_at(a.phi, x)) || !invertible(jacobian_at(b.phi, eval_map(a.phi, x))))
      continue;
    ++done;
    for (auto& h : g) r.expect(act_value(h, {a * b}, x, y) == act_value(coproduct(h), {a, b}, x, y), h.str());
  }
  if (done < pairs) r.expect(false, "not enough usable samples");
  return r;
}

CheckResult check_hopf_convolution(int n) {
  CheckResult r{"S_delta(h(1)) h(2) = delta(h) 1, n=" + std::to_string(n)};
  for (auto& h : hopf_corpus(n)) {
    HopfTensor out(n, 1);
    for (auto& [a, b] : split_legs(coproduct(h))) out += twisted_antipode(a) * b;
    r.expect(out == HopfTensor::unit(n, 1) * character_delta(h), h.str());
  }
  return r;
}

CheckResult check_hopf_involution(int n) {
  CheckResult r{"S_delta^2 = Id, n=" + std::to_string(n)};
  for (auto& h : hopf_corpus(n)) r.expect(twisted_antipode(twisted_antipode(h)) == h, h.str());
  return r;
}

CheckResult check_hopf_cyclicity(int qmax, uint64_t seed) {
  CheckResult r{"tau_q^{q+1} = Id, n=1"};
  auto g = hopf_generators(1, true);
  std::mt19937_64 rng(seed);
  for (auto& h : g) r.expect(cyclic_tau(cyclic_tau(h)) == h && cyclic_tau(h) == twisted_antipode(h), h.str());
  for (int q = 2; q <= qmax; ++q)
    for (int t = 0; t < 8; ++t) {
      HopfTensor x = g[rng() % g.size()];
      for (int s = 1; s < q; ++s) x = tensor(x, g[rng() % g.size()]);
      HopfTensor y = x;
      for (int s = 0; s <= q; ++s) y = cyclic_tau(y);
      r.expect(y == x, x.str());
    }
  return r;
}

CheckResult check_hopf_cocycle_d111() {
  CheckResult r{"b(D^1_11) = B(D^1_11) = 0, n=1"};
  auto D = gen(1, HopfGenerator::d(1, 1, 1));
  r.expect(hochschild_b(D).is_zero(), "b");
  r.expect(connes_B(D).is_zero(), "B");
  // control: X_1 is not a b-cocycle
  r.expect(!hochschild_b(gen(1, HopfGenerator::x(1))).is_zero(), "control");
  return r;
}

CheckResult check_hopf_mixed(uint64_t seed) {
  CheckResult r{"b^2 = 0, B^2 = 0, bB + Bb = 0, n=1"};
  auto g = hopf_generators(1, true);
  std::mt19937_64 rng(seed);
  for (int q = 1; q <= 3; ++q)
    for (int t = 0; t < 4; ++t) {
      HopfTensor x = g[rng() % g.size()];
      for (int s = 1; s < q; ++s) x = tensor(x, g[rng() % g.size()]);
      r.expect(hochschild_b(hochschild_b(x)).is_zero(), "b^2 " + x.str());
      r.expect((connes_B(hochschild_b(x)) + hochschild_b(connes_B(x))).is_zero(), "bB+Bb " + x.str());
      if (q >= 2) r.expect(connes_B(connes_B(x)).is_zero(), "B^2 " + x.str());
    }
  return r;
}

// ---- selftest ----

std::vector<std::string> selftest_sections() {
  return {"jet-group", "bianchi", "transgression", "stokes", "cocycle", "theta", "two-jet", "ce", "hopf", "mutation"};
}

Section run_section(const std::string& name, uint64_t seed) {
  Section s{name, {}};
  auto& v = s.results;
  if (name == "jet-group") {
    v.push_back(check_matched_pair(seed, 100));
    v.push_back(check_kac(seed + 1, 100));
    v.push_back(check_gamma_cocycle(seed + 2, 100));
    v.push_back(check_fing(seed + 3, 100));
  } else if (name == "bianchi") {
    v.push_back(check_bianchi_functions(seed, 100));
    v.push_back(check_bianchi_hopf(seed + 1, 20));
  } else if (name == "transgression") {
    v.push_back(check_transgression(2, 2, 3));
  } else if (name == "stokes") {
    v.push_back(check_stokes(seed, 50, 3));
  } else if (name == "cocycle") {
    v.push_back(check_bott_closed(1, 20, seed));
    v.push_back(check_bott_closed(2, 20, seed));
  } else if (name == "theta") {
    v.push_back(check_theta(1, 20, seed));
    v.push_back(check_theta(2, 20, seed));
  } else if (name == "two-jet") {
    v.push_back(check_two_jet(1));
    v.push_back(check_two_jet(2));
  } else if (name == "ce") {
    v.push_back(check_ce_closed(1, 20, seed));
  } else if (name == "hopf") {
    for (int n : {1, 2}) {
      v.push_back(check_hopf_coassociativity(n));
      v.push_back(check_hopf_compatibility(n, 100, seed + n));
      v.push_back(check_hopf_convolution(n));
      v.push_back(check_hopf_involution(n));
    }
    v.push_back(check_hopf_cyclicity(3, seed));
    v.push_back(check_hopf_cocycle_d111());
    v.push_back(check_hopf_mixed(seed));
  } else if (name == "mutation") {
    for (const char* w : {"bott", "theta"}) {
      v.push_back(check_mutation(w, 1, 20, seed));
      v.push_back(check_mutation(w, 2, 20, seed));
    }
    v.push_back(check_mutation("ce", 1, 20, seed));
  } else {
    throw std::invalid_argument("unknown section " + name);
  }
  return s;
}

}  // namespace cw
