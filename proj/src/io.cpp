#include "cwhopf/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cw {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("schema: " + what); }

const json& field(const json& j, const char* k) {
  if (!j.is_object() || !j.contains(k)) bad(std::string("missing field '") + k + "'");
  return j.at(k);
}

void check_version(const json& j) {
  if (field(j, "version") != kSchemaVersion) bad("unsupported version");
}

template <class T>
T get(const json& j, const char* k) {
  try {
    return field(j, k).get<T>();
  } catch (const json::exception& e) {
    bad(std::string("field '") + k + "': " + e.what());
  }
}

// split a monomial into its per-slot jet factors; non-jet variables go to slot 0
std::vector<Monomial> slot_factors(const Monomial& m, int slots) {
  std::vector<Monomial> out(slots);
  for (auto& [v, e] : m.f) {
    bool jet = v.kind() == VarKind::Gamma || v.kind() == VarKind::Eta || v.kind() == VarKind::Alpha;
    int s = jet ? v.slot() : 0;
    if (s >= slots) out.resize(s + 1);
    out[s].f.emplace_back(v, e);
  }
  return out;
}

std::string digits(const std::vector<int>& v, size_t from = 0) {
  std::string s;
  for (size_t i = from; i < v.size(); ++i) s += std::to_string(v[i]);
  return s;
}

std::string latex_scalar(const Scalar& c, bool leading) {
  const mpq_class& q = c.q();
  std::string s;
  bool neg = sgn(q) < 0;
  if (neg)
    s = "-";
  else if (!leading)
    s = "+";
  mpq_class a = abs(q);
  if (a.get_den() == 1)
    s += a.get_num().get_str();
  else
    s += "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
  if (c.lam() != 0) s += "\\lambda^{" + std::to_string(c.lam()) + "}";
  return s;
}

std::string latex_monomial(const Monomial& m) {
  std::string s;
  for (auto& [v, e] : m.f) {
    s += latex(v);
    if (e > 1) s += "^{" + std::to_string(e) + "}";
  }
  return s;
}

std::string latex_word(Word w) {
  if (!w) return "";
  std::string s;
  bool first = true;
  for (Word x = w; x; x &= x - 1) {
    int bit = __builtin_ctzll(x);
    if (!first) s += "\\wedge ";
    first = false;
    if (bit < 8) {
      s += "dt_{" + std::to_string(bit + 1) + "}";
    } else if (bit < 16) {
      s += "\\theta^{" + std::to_string(bit - 7) + "}";
    } else {
      int k = bit - 16;
      s += "\\omega^{" + std::to_string(k / kMaxN + 1) + "}_{" + std::to_string(k % kMaxN + 1) + "}";
    }
  }
  return s;
}

json letter_json(const std::string& name) {
  // Y11, S12, K12, X1
  std::string tag(1, name[0]);
  json l = json::array({tag});
  for (size_t i = 1; i < name.size(); ++i) l.push_back(name[i] - '0');
  return l;
}

std::string letter_name(const json& l) {
  if (!l.is_array() || l.empty() || !l[0].is_string()) bad("word letter");
  std::string s = l[0].get<std::string>();
  for (size_t i = 1; i < l.size(); ++i) s += std::to_string(l[i].get<int>());
  return s;
}

std::string latex_letter(const std::string& name) {
  char t = name[0];
  std::string a = name.substr(1, 1), b = name.size() > 2 ? name.substr(2, 1) : "";
  if (t == 'X') return "X_{" + a + "}";
  if (t == 'Y') return "Y_{" + a + "}^{" + b + "}";
  std::string op = t == 'S' ? "+" : "-";
  return "(Y_{" + a + "}^{" + b + "}" + op + "Y_{" + b + "}^{" + a + "})";
}

}  // namespace

json to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const json& j) {
  if (!j.is_string()) bad("scalar must be a string");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    bad(std::string("scalar: ") + e.what());
  }
}

json to_json(const Poly& p) {
  json a = json::array();
  for (auto& [m, c] : p.terms()) {
    json mono = json::array();
    for (auto& [v, e] : m.f) mono.push_back(json::array({v.name(), e}));
    a.push_back({{"c", to_json(c)}, {"m", mono}});
  }
  return a;
}

Poly poly_from_json(const json& j) {
  if (!j.is_array()) bad("polynomial must be an array");
  Poly p;
  for (auto& t : j) {
    Poly m(scalar_from_json(field(t, "c")));
    for (auto& f : field(t, "m")) {
      if (!f.is_array() || f.size() != 2) bad("monomial factor");
      Var v;
      try {
        v = Var::parse(f[0].get<std::string>());
      } catch (const std::exception& e) {
        bad(std::string("variable: ") + e.what());
      }
      m *= Poly::var(v).pow(f[1].get<int>());
    }
    p += m;
  }
  return p;
}

json to_json(const TruncatedMap& f) {
  json comp = json::array();
  for (auto& s : f.comp) {
    json terms = json::array();
    for (auto& [m, v] : s.c) terms.push_back({{"e", midx_vec(m, f.n)}, {"c", to_json(v)}});
    comp.push_back(terms);
  }
  return {{"n", f.n}, {"K", f.K}, {"comp", comp}};
}

TruncatedMap map_from_json(const json& j) {
  TruncatedMap f;
  f.n = get<int>(j, "n");
  f.K = get<int>(j, "K");
  for (auto& c : field(j, "comp")) {
    Series<Scalar> s(f.n);
    for (auto& t : c) s.add(midx_from(get<std::vector<int>>(t, "e")), scalar_from_json(field(t, "c")));
    f.comp.push_back(s);
  }
  if (static_cast<int>(f.comp.size()) != f.n) bad("map component count");
  return f;
}

json to_json(const Form& f) {
  json a = json::array();
  for (auto& [w, c] : f.terms()) a.push_back({{"word", word_letters(w)}, {"coeff", to_json(c)}});
  return a;
}

Form form_from_json(int n, const json& j) {
  if (!j.is_array()) bad("form must be an array");
  Form f(n);
  for (auto& t : j) {
    Word w;
    try {
      w = word_from_letters(get<std::vector<std::string>>(t, "word"));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      bad(std::string("word: ") + e.what());
    }
    f.add(w, poly_from_json(field(t, "coeff")));
  }
  return f;
}

json to_json(const VeyPair& p) {
  return {{"I", p.I}, {"J", p.J}, {"relative", p.relative}, {"degree", p.degree()}, {"id", p.id()}};
}

json to_json(const BottCochain& c) {
  json comps = json::array();
  for (auto& [p, f] : c.comp) comps.push_back({{"p", p}, {"form", to_json(f)}});
  return {{"version", kSchemaVersion}, {"model", "bott"}, {"n", c.n},           {"id", c.id},
          {"relative", c.relative},    {"degree", c.degree}, {"components", comps}};
}

BottCochain bott_from_json(const json& j) {
  check_version(j);
  if (model_of(j) != "bott") bad("model is not bott");
  BottCochain c;
  c.n = get<int>(j, "n");
  c.id = get<std::string>(j, "id");
  c.relative = get<bool>(j, "relative");
  c.degree = get<int>(j, "degree");
  for (auto& t : field(j, "components")) c.comp[get<int>(t, "p")] = form_from_json(c.n, field(t, "form"));
  return c;
}

json to_json(const CECochain& c) {
  json comps = json::array();
  for (auto& [q, f] : c.comp) {
    json terms = json::array();
    for (auto& [w, p] : f.terms())
      for (auto& [m, k] : p.terms()) {
        auto fac = slot_factors(m, q + 1);
        json wedge = json::array();
        for (size_t r = 0; r < fac.size(); ++r) wedge.push_back(to_json(Poly::term(fac[r], r ? Scalar(1) : k)));
        terms.push_back({{"word", word_letters(w)}, {"f_wedge", wedge}});
      }
    comps.push_back({{"q", q}, {"terms", terms}});
  }
  return {{"version", kSchemaVersion}, {"model", "ce"},        {"n", c.n},           {"id", c.id},
          {"relative", c.relative},    {"degree", c.degree}, {"components", comps}};
}

CECochain ce_from_json(const json& j) {
  check_version(j);
  if (model_of(j) != "ce") bad("model is not ce");
  CECochain c;
  c.n = get<int>(j, "n");
  c.id = get<std::string>(j, "id");
  c.relative = get<bool>(j, "relative");
  c.degree = get<int>(j, "degree");
  for (auto& comp : field(j, "components")) {
    Form f(c.n);
    for (auto& t : field(comp, "terms")) {
      Poly p(1);
      for (auto& fac : field(t, "f_wedge")) p *= poly_from_json(fac);
      f.add(word_from_letters(get<std::vector<std::string>>(t, "word")), p);
    }
    c.comp[get<int>(comp, "q")] = f;
  }
  return c;
}

json to_json(const Certificate& c) {
  json fails = json::array();
  for (auto& f : c.failures) fails.push_back({{"slots", f.slots}, {"point", f.point}, {"nonzero_term", f.nonzero_term}});
  return {{"version", kSchemaVersion},
          {"cocycle_id", c.cocycle_id},
          {"trials", c.trials},
          {"seed", c.seed},
          {"jet_order", c.jet_order},
          {"pass", c.pass},
          {"resampled", c.resampled},
          {"failures", fails}};
}

Certificate certificate_from_json(const json& j) {
  check_version(j);
  Certificate c;
  c.cocycle_id = get<std::string>(j, "cocycle_id");
  c.trials = get<int>(j, "trials");
  c.seed = get<uint64_t>(j, "seed");
  c.jet_order = get<int>(j, "jet_order");
  c.pass = get<bool>(j, "pass");
  c.resampled = get<int>(j, "resampled");
  for (auto& f : field(j, "failures"))
    c.failures.push_back({get<std::vector<std::string>>(f, "slots"), get<std::vector<std::string>>(f, "point"),
                          get<std::string>(f, "nonzero_term")});
  return c;
}

json to_json(const HopfTensor& t) {
  const HopfBasis& B = hopf_basis(t.n);
  json terms = json::array();
  for (auto& [k, f] : t.terms()) {
    json word = json::array();
    for (auto& leg : k) {
      json l = json::array();
      for (int e : leg) l.push_back(letter_json(B.names[e]));
      word.push_back(l);
    }
    terms.push_back({{"coeff", to_json(f)}, {"word", word}});
  }
  return {{"version", kSchemaVersion}, {"n", t.n}, {"q", t.q}, {"terms", terms}};
}

HopfTensor hopf_from_json(const json& j) {
  check_version(j);
  HopfTensor t(get<int>(j, "n"), get<int>(j, "q"));
  const HopfBasis& B = hopf_basis(t.n);
  for (auto& term : field(j, "terms")) {
    HopfTensor::Key key;
    for (auto& leg : field(term, "word")) {
      std::vector<int> letters;
      for (auto& l : leg) {
        auto it = std::find(B.names.begin(), B.names.end(), letter_name(l));
        if (it == B.names.end()) bad("unknown letter " + letter_name(l));
        letters.push_back(static_cast<int>(it - B.names.begin()));
      }
      key.push_back(letters);
    }
    if (static_cast<int>(key.size()) != t.q) bad("leg count");
    Poly f = poly_from_json(field(term, "coeff"));
    // letters may arrive unsorted
    HopfTensor one(t.n, t.q);
    one.add(HopfTensor::Key(t.q), f);
    HopfTensor w = HopfTensor::unit(t.n, t.q);
    for (int r = 0; r < t.q; ++r) {
      HopfTensor leg = HopfTensor::unit(t.n, 1);
      for (int e : key[r]) leg = leg * HopfTensor::basis_element(t.n, e);
      HopfTensor left = HopfTensor::unit(t.n, r), right = HopfTensor::unit(t.n, t.q - r - 1);
      w = w * tensor(tensor(left, leg), right);
    }
    t += one * w;
  }
  return t;
}

std::string model_of(const json& j) { return get<std::string>(j, "model"); }

std::string latex(const Var& v) {
  auto ix = v.idx();
  switch (v.kind()) {
    case VarKind::Coord: return "x^{" + std::to_string(ix[0]) + "}";
    case VarKind::Frame: return "y^{" + std::to_string(ix[0]) + "}_{" + std::to_string(ix[1]) + "}";
    case VarKind::Sim: return "t_{" + std::to_string(ix[0]) + "}";
    case VarKind::Gamma:
      return "\\gamma^{" + std::to_string(v.upper()) + "}_{" + digits(v.lower()) + "}(\\phi_{" +
             std::to_string(v.slot()) + "})";
    case VarKind::Eta:
      return "\\eta^{" + std::to_string(v.upper()) + "}_{" + digits(v.lower()) + "}(\\psi_{" +
             std::to_string(v.slot()) + "})";
    case VarKind::Alpha:
      return "\\alpha^{" + std::to_string(v.upper()) + "}_{" + digits(v.lower()) + "}(\\psi_{" +
             std::to_string(v.slot()) + "})";
    default: return v.name();
  }
}

std::string latex(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : p.terms()) {
    std::string mono = latex_monomial(m);
    if (mono.empty())
      s += latex_scalar(c, first);
    else if (c.is_one() && first)
      s += mono;
    else if (c == Scalar(-1))
      s += "-" + mono;
    else if (c.is_one())
      s += "+" + mono;
    else
      s += latex_scalar(c, first) + "\\," + mono;
    first = false;
  }
  return s;
}

std::string latex(const Form& f) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& [w, c] : f.terms()) {
    if (!first) s += " + ";
    first = false;
    std::string lw = latex_word(w);
    s += "\\left(" + latex(c) + "\\right)" + (lw.empty() ? "" : "\\," + lw);
  }
  return s;
}

std::string latex(const HopfTensor& t) {
  if (t.is_zero()) return "0";
  const HopfBasis& B = hopf_basis(t.n);
  std::string s;
  bool first = true;
  for (auto& [k, f] : t.terms()) {
    // alpha -> delta^i_{jk...} leg by leg
    Poly d = f.map_vars([&](const Var& v, Poly& out) {
      if (v.kind() != VarKind::Alpha) return false;
      int r = v.slot();
      Var v0 = v;
      v0.b[1] = 0;
      out = retag(alpha_in_eta(t.n, v0), [r](int) { return r; });
      return true;
    });
    for (auto& [m, c] : d.terms()) {
      auto fac = slot_factors(m, t.q);
      std::string term;
      if (abs(c.q()) == 1 && c.lam() == 0)
        term = sgn(c.q()) < 0 ? "-" : (first ? "" : "+");
      else
        term = latex_scalar(c, first) + "\\,";
      first = false;
      for (int r = 0; r < t.q; ++r) {
        if (r) term += "\\otimes ";
        std::string leg;
        for (auto& [v, e] : fac[r].f) {
          leg += "\\delta^{" + std::to_string(v.upper()) + "}_{" + digits(v.lower()) + "}";
          if (e > 1) leg += "^{" + std::to_string(e) + "}";
        }
        for (int e : k[r]) leg += latex_letter(B.names[e]);
        term += leg.empty() ? "1" : leg;
      }
      s += term;
    }
  }
  return s;
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("rename failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cw
