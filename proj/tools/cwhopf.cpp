#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <regex>
#include <sstream>

#include "cwhopf/io.hpp"
#include "cwhopf/suite.hpp"

using namespace cw;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  if (s.empty() || s == "-") return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad index list '" + s + "'");
    }
  }
  return out;
}

std::string list_str(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "{" + s + "}";
}

// "X1", "Y12", "D1_12", "D1_12_2" (upper, lower pair, L)
HopfGenerator parse_generator(const std::string& s, int n) {
  static const std::regex x(R"(X(\d))"), y(R"(Y(\d)(\d))"), dd(R"(D(\d)_(\d)(\d)(?:_(\d+))?)");
  std::smatch m;
  auto rng = [&](int v) {
    if (v < 1 || v > n) throw UsageError("index out of range in " + s);
    return v;
  };
  if (std::regex_match(s, m, x)) return HopfGenerator::x(rng(std::stoi(m[1])));
  if (std::regex_match(s, m, y)) return HopfGenerator::y(rng(std::stoi(m[1])), rng(std::stoi(m[2])));
  if (std::regex_match(s, m, dd)) {
    int j = rng(std::stoi(m[2])), k = rng(std::stoi(m[3]));
    std::vector<int> L;
    if (m[4].matched)
      for (char c : m[4].str()) L.push_back(rng(c - '0'));
    return HopfGenerator::d(rng(std::stoi(m[1])), std::min(j, k), std::max(j, k), L);
  }
  throw UsageError("bad generator '" + s + "' (X1, Y12, D1_12, D1_12_2)");
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_atomic(out, text);
}

struct Job {
  int n = 1;
  bool relative = false;
  bool all = false;
  std::string I, J;
  std::string model = "bott";
  int trials = 20;
  uint64_t seed = 1;
  int K = 4;
  std::string in, out, cert;
  bool tex = false;
  bool as_json = false;
};

void validate(const Job& j) {
  if (j.n < 1 || j.n > kMaxN) throw UsageError("n must be in 1.." + std::to_string(kMaxN));
  if (j.K < 4) throw UsageError("jet order K must be >= 4");
  if (j.trials < 1) throw UsageError("trials must be >= 1");
  if (j.model != "bott" && j.model != "ce") throw UsageError("model must be bott or ce");
}

int cmd_enumerate(const Job& j) {
  validate(j);
  auto pairs = enumerate_vey(j.n, j.relative);
  if (j.as_json) {
    json a = json::array();
    for (auto& p : pairs) a.push_back(to_json(p));
    emit(j.out, json({{"version", kSchemaVersion}, {"n", j.n}, {"relative", j.relative}, {"pairs", a}}).dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (auto& p : pairs) os << "I=" << list_str(p.I) << " J=" << list_str(p.J) << " degree=" << p.degree() << "\n";
    os << pairs.size() << " " << (j.relative ? "relative" : "absolute") << " pairs for n=" << j.n << "\n";
    emit(j.out, os.str());
  }
  return kExitPass;
}

int cmd_build(const Job& j) {
  validate(j);
  if (j.n > 2) std::cerr << "warning: n > 2 builds can take a long time\n";
  std::vector<VeyPair> pairs;
  if (j.all) {
    pairs = enumerate_vey(j.n, j.relative);
  } else {
    VeyPair p{parse_list(j.I), parse_list(j.J), j.relative};
    if (!is_vey_pair(j.n, p)) throw UsageError("(I, J) = (" + list_str(p.I) + ", " + list_str(p.J) + ") is not a pair for n=" +
                                                std::to_string(j.n));
    pairs.push_back(p);
  }
  if (j.all && (j.out.empty() || j.out == "-")) throw UsageError("--all needs --out DIR");
  for (auto& p : pairs) {
    json doc;
    std::string tex;
    if (j.model == "bott") {
      auto c = build_bott_cocycle(j.n, p);
      doc = to_json(c);
      for (auto& [lev, f] : c.comp) tex += "C^{(" + std::to_string(lev) + ")} = " + latex(f) + "\n";
    } else {
      auto c = build_ce_cocycle(j.n, p);
      doc = to_json(c);
      for (auto& [lev, f] : c.comp) tex += "\\kappa^{(" + std::to_string(lev) + ")} = " + latex(f) + "\n";
    }
    std::string text = doc.dump(2) + "\n";
    std::string path = j.out;
    if (j.all) {
      std::filesystem::create_directories(j.out);
      path = (std::filesystem::path(j.out) / (p.id() + "." + j.model + ".json")).string();
    }
    emit(path, text);
    if (j.tex) {
      if (path.empty() || path == "-")
        std::cout << tex;
      else
        write_atomic(path + ".tex", tex);
    }
  }
  return kExitPass;
}

json load(const std::string& path) {
  if (path.empty()) throw UsageError("--in FILE is required");
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("not JSON: ") + e.what());
  }
}

int cmd_verify(const Job& j) {
  validate(j);
  json doc = load(j.in);
  Certificate cert;
  std::string model;
  try {
    model = model_of(doc);
    if (model == "bott")
      cert = verify_cocycle(bott_from_json(doc), j.trials, j.seed, j.K);
    else if (model == "ce")
      cert = verify_ce_cocycle(ce_from_json(doc), j.trials, j.seed, j.K);
    else
      throw UsageError("unknown model '" + model + "'");
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << (cert.pass ? "PASS" : "FAIL") << " " << cert.cocycle_id << " model=" << model << " trials=" << cert.trials
            << " seed=" << cert.seed << " K=" << cert.jet_order << "\n";
  if (!cert.pass && !cert.failures.empty()) std::cout << "  nonzero: " << cert.failures[0].nonzero_term << "\n";
  if (!j.cert.empty()) emit(j.cert, to_json(cert).dump(2) + "\n");
  return cert.pass ? kExitPass : kExitFail;
}

int cmd_mutate(const Job& j) {
  json doc = load(j.in);
  try {
    if (model_of(doc) == "bott")
      emit(j.out, to_json(mutate(bott_from_json(doc))).dump(2) + "\n");
    else
      emit(j.out, to_json(mutate(ce_from_json(doc))).dump(2) + "\n");
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kExitPass;
}

int cmd_hopf(const std::string& op, int n, const std::vector<std::string>& gens, const std::string& in, bool tex,
             const std::string& out) {
  if (n < 1 || n > kMaxN) throw UsageError("n must be in 1.." + std::to_string(kMaxN));
  HopfTensor t;
  if (!in.empty()) {
    try {
      t = hopf_from_json(load(in));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    if (gens.empty()) throw UsageError("give --gen (repeat for tensor legs) or --in FILE");
    t = HopfTensor::unit(n, 0);
    for (auto& g : gens) {
      // a leg may be a product "X1*Y11"
      HopfTensor leg = HopfTensor::unit(n, 1);
      std::stringstream ss(g);
      std::string f;
      while (std::getline(ss, f, '*')) leg = leg * HopfTensor::generator(n, parse_generator(f, n));
      t = tensor(t, leg);
    }
  }
  auto single = [&](const char* what) {
    if (t.q != 1) throw UsageError(std::string(what) + " needs a single leg");
  };
  HopfTensor r;
  std::string scalar;
  if (op == "show") {
    r = t;
  } else if (op == "coproduct") {
    single("coproduct");
    r = coproduct(t);
  } else if (op == "antipode") {
    single("antipode");
    r = twisted_antipode(t);
  } else if (op == "tau") {
    r = cyclic_tau(t);
  } else if (op == "b") {
    r = hochschild_b(t);
  } else if (op == "B") {
    if (t.q < 1) throw UsageError("B needs q >= 1");
    r = connes_B(t);
  } else if (op == "project") {
    r = project_quotient(t);
  } else if (op == "counit") {
    single("counit");
    scalar = counit(t).str();
  } else if (op == "delta") {
    single("delta");
    scalar = character_delta(t).str();
  } else {
    throw UsageError("unknown hopf operation '" + op + "'");
  }
  if (!scalar.empty()) {
    emit(out, scalar + "\n");
    return kExitPass;
  }
  emit(out, tex ? latex(r) + "\n" : to_json(r).dump(2) + "\n");
  return kExitPass;
}

int cmd_selftest(const std::string& section, uint64_t seed) {
  std::vector<std::string> names = selftest_sections();
  if (!section.empty()) {
    if (std::find(names.begin(), names.end(), section) == names.end()) throw UsageError("unknown section '" + section + "'");
    names = {section};
  }
  bool all = true;
  std::cout << "selftest seed=" << seed << "\n";
  for (auto& name : names) {
    Section s = run_section(name, seed);
    all = all && s.pass();
    std::cout << "[" << (s.pass() ? "PASS" : "FAIL") << "] " << name << "\n";
    for (auto& r : s.results) {
      std::cout << "  " << (r.pass() ? "ok  " : "FAIL") << " " << r.name << " (" << r.checks << " checks";
      if (r.failures) std::cout << ", " << r.failures << " failed: " << r.detail;
      std::cout << ")\n";
    }
  }
  std::cout << (all ? "ALL PASS" : "FAILURES") << "\n";
  return all ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gelfand-Fuks cocycles, their Hopf-cyclic counterparts, and exact verification"};
  app.require_subcommand(1);
  Job job;

  auto* vey = app.add_subcommand("vey", "Vey basis");
  auto* en = vey->add_subcommand("enumerate", "list the (I, J) pairs");
  en->add_option("--n", job.n, "dimension")->required();
  en->add_flag("--relative", job.relative, "relative pairs");
  en->add_flag("--json", job.as_json, "JSON output");
  en->add_option("--out", job.out, "output file (default stdout)");
  vey->require_subcommand(1);

  auto* coc = app.add_subcommand("cocycle", "build and verify cocycles");
  coc->require_subcommand(1);
  auto* build = coc->add_subcommand("build", "build C_{I,J} (bott) or kappa_{I,J} (ce)");
  build->add_option("--n", job.n, "dimension")->required();
  build->add_option("--I", job.I, "comma list, e.g. 1,2");
  build->add_option("--J", job.J, "comma list, e.g. 1,1");
  build->add_flag("--all", job.all, "every pair of n");
  build->add_flag("--relative", job.relative, "relative pairs");
  build->add_option("--model", job.model, "bott | ce");
  build->add_option("--out", job.out, "output file, or directory with --all");
  build->add_flag("--latex", job.tex, "also write LaTeX");
  auto* ver = coc->add_subcommand("verify", "exact random-evaluation check");
  ver->add_option("--in", job.in, "cocycle JSON")->required();
  ver->add_option("--trials", job.trials, "random trials");
  ver->add_option("--seed", job.seed, "seed");
  ver->add_option("--K", job.K, "jet order");
  ver->add_option("--cert", job.cert, "certificate output");
  auto* mut = coc->add_subcommand("mutate", "perturb one coefficient");
  mut->add_option("--in", job.in, "cocycle JSON")->required();
  mut->add_option("--out", job.out, "output file");

  auto* hopf = app.add_subcommand("hopf", "operations in H_n");
  std::string op = "show", hin;
  std::vector<std::string> gens;
  hopf->add_option("op", op, "show | coproduct | antipode | tau | b | B | project | counit | delta");
  hopf->add_option("--n", job.n, "dimension");
  hopf->add_option("--gen", gens, "tensor leg, e.g. X1 or X1*D1_11; repeat for more legs");
  hopf->add_option("--in", hin, "tensor JSON");
  hopf->add_flag("--latex", job.tex, "LaTeX output");
  hopf->add_option("--out", job.out, "output file");

  auto* st = app.add_subcommand("selftest", "fixed-seed invariant suite");
  std::string section;
  st->add_option("--section", section, "run one section");
  st->add_option("--seed", job.seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }
  try {
    if (en->parsed()) return cmd_enumerate(job);
    if (build->parsed()) return cmd_build(job);
    if (ver->parsed()) return cmd_verify(job);
    if (mut->parsed()) return cmd_mutate(job);
    if (hopf->parsed()) return cmd_hopf(op, job.n, gens, hin, job.tex, job.out);
    if (st->parsed()) return cmd_selftest(section, job.seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
