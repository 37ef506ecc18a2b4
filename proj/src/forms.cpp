#include "cwhopf/forms.hpp"

#include <mutex>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace cw {

int wedge_sign(Word a, Word b) {
  if (a & b) return 0;
  int inv = 0;
  for (Word bb = b; bb; bb &= bb - 1) {
    int y = __builtin_ctzll(bb);
    Word above = (y >= 63) ? 0 : (a & ~((Word{2} << y) - 1));
    inv += __builtin_popcountll(above);
  }
  return (inv & 1) ? -1 : 1;
}

std::vector<std::string> word_letters(Word w) {
  std::vector<std::string> out;
  for (Word x = w; x; x &= x - 1) {
    int bit = __builtin_ctzll(x);
    if (bit < 8) {
      out.push_back("dt" + std::to_string(bit + 1));
    } else if (bit < 16) {
      out.push_back("t" + std::to_string(bit - 8 + 1));
    } else {
      int k = bit - 16;
      out.push_back("w" + std::to_string(k / kMaxN + 1) + std::to_string(k % kMaxN + 1));
    }
  }
  return out;
}

Word word_from_letters(const std::vector<std::string>& letters) {
  static const std::regex dt(R"(dt(\d))"), th(R"(t(\d))"), om(R"(w(\d)(\d))");
  Word w = 0;
  std::smatch m;
  for (auto& l : letters) {
    Word b;
    if (std::regex_match(l, m, dt))
      b = letter_dt(std::stoi(m[1]));
    else if (std::regex_match(l, m, th))
      b = letter_theta(std::stoi(m[1]));
    else if (std::regex_match(l, m, om))
      b = letter_omega(std::stoi(m[1]), std::stoi(m[2]));
    else
      throw std::invalid_argument("bad coframe letter '" + l + "'");
    if (w & b) throw std::invalid_argument("repeated coframe letter '" + l + "'");
    w |= b;
  }
  return w;
}

std::string word_str(Word w) {
  auto ls = word_letters(w);
  if (ls.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < ls.size(); ++i) s += (i ? "^" : "") + ls[i];
  return s;
}

Form Form::scalar(int n, const Poly& c) {
  Form f(n);
  f.add(0, c);
  return f;
}

Form Form::letter(int n, Word w, const Poly& c) {
  Form f(n);
  f.add(w, c);
  return f;
}

void Form::add(Word w, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Poly Form::coeff(Word w) const {
  auto it = t_.find(w);
  return it == t_.end() ? Poly() : it->second;
}

int Form::max_degree() const {
  int d = -1;
  for (auto& [w, c] : t_) d = std::max(d, word_degree(w));
  return d;
}

Form& Form::operator+=(const Form& o) {
  if (n == 0) n = o.n;
  for (auto& [w, c] : o.t_) add(w, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (n == 0) n = o.n;
  for (auto& [w, c] : o.t_) add(w, -c);
  return *this;
}

Form Form::operator-() const {
  Form r(n);
  for (auto& [w, c] : t_) r.t_.emplace(w, -c);
  return r;
}

Form& Form::operator*=(const Poly& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto it = t_.begin(); it != t_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? t_.erase(it) : std::next(it);
  }
  return *this;
}

Form Form::dt_part(int deg) const {
  Form r(n);
  for (auto& [w, c] : t_)
    if (dt_degree(w) == deg) r.t_.emplace(w, c);
  return r;
}

Form Form::map_coeffs(const std::function<Poly(const Poly&)>& f) const {
  Form r(n);
  for (auto& [w, c] : t_) r.add(w, f(c));
  return r;
}

std::string Form::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << c.str() << "] " << word_str(w);
  }
  return os.str();
}

Form wedge(const Form& a, const Form& b) {
  Form r(a.n ? a.n : b.n);
  for (auto& [wa, ca] : a.terms())
    for (auto& [wb, cb] : b.terms()) {
      int s = wedge_sign(wa, wb);
      if (!s) continue;
      Poly c = ca * cb;
      if (s < 0) c = -c;
      r.add(wa | wb, c);
    }
  return r;
}

namespace {

Poly gamma_poly(int slot, int i, const std::vector<int>& low) {
  return Poly::var(gamma_var(slot, i, low[0], low[1], std::vector<int>(low.begin() + 2, low.end())));
}

}  // namespace

Poly derive_x(int, int l, const Poly& f) {
  return apply_derivation(f, [&](const Var& v) -> Poly {
    switch (v.kind()) {
      case VarKind::Gamma: {
        auto low = v.lower();
        low.push_back(l);
        return gamma_poly(v.slot(), v.upper(), low);
      }
      case VarKind::Coord: return Poly::var(Var::frame(v.idx()[0], l));
      default: return Poly();
    }
  });
}

Poly derive_y(int, int a, int b, const Poly& f) {
  return apply_derivation(f, [&](const Var& v) -> Poly {
    switch (v.kind()) {
      case VarKind::Gamma: {
        int i = v.upper();
        auto low = v.lower();
        Poly r;
        if (i == a) r -= gamma_poly(v.slot(), b, low);
        for (size_t s = 0; s < low.size(); ++s)
          if (low[s] == b) {
            auto lw = low;
            lw[s] = a;
            r += gamma_poly(v.slot(), i, lw);
          }
        return r;
      }
      case VarKind::Frame: {
        auto ix = v.idx();
        return ix[1] == b ? Poly::var(Var::frame(ix[0], a)) : Poly();
      }
      default: return Poly();
    }
  });
}

namespace {

Form d_letter(int n, int bit) {
  Form r(n);
  if (bit < 8) return r;
  if (bit < 16) {
    int k = bit - 8 + 1;
    for (int mu = 1; mu <= n; ++mu) r -= wedge(Form::omega(n, k, mu), Form::theta(n, mu));
    return r;
  }
  int q = bit - 16;
  int i = q / kMaxN + 1, j = q % kMaxN + 1;
  for (int k = 1; k <= n; ++k) r -= wedge(Form::omega(n, i, k), Form::omega(n, k, j));
  return r;
}

const Form& d_word(int n, Word w) {
  static std::mutex mu;
  static std::map<std::pair<int, Word>, Form> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, w});
    if (it != cache.end()) return it->second;
  }
  Form r(n);
  int pos = 0;
  for (Word x = w; x; x &= x - 1, ++pos) {
    int bit = __builtin_ctzll(x);
    Word l = Word{1} << bit;
    Word before = w & (l - 1);
    Word after = w & ~((l << 1) - 1);
    Form dl = d_letter(n, bit);
    if (dl.is_zero()) continue;
    Form t = wedge(wedge(Form::letter(n, before), dl), Form::letter(n, after));
    if (pos % 2) t = -t;
    r += t;
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(n, w), std::move(r)).first->second;
}

Form d_function(int n, const Poly& f) {
  Form r(n);
  if (f.is_constant()) return r;
  for (auto& v : f.variables()) {
    if (v.kind() != VarKind::Sim) continue;
    r.add(letter_dt(v.idx()[0]), f.derivative(v));
  }
  for (int l = 1; l <= n; ++l) r.add(letter_theta(l), derive_x(n, l, f));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) r.add(letter_omega(a, b), derive_y(n, a, b, f));
  return r;
}

}  // namespace

Form d(const Form& a) {
  int n = a.n;
  Form r(n);
  for (auto& [w, c] : a.terms()) {
    Form df = d_function(n, c);
    if (!df.is_zero()) r += wedge(df, Form::letter(n, w));
    const Form& dw = d_word(n, w);
    if (!dw.is_zero()) r += dw * c;
  }
  return r;
}

Form contract(const Form& a, const GGen& z) {
  Word l = z.kind == GGen::X ? letter_theta(z.a) : letter_omega(z.a, z.b);
  Form r(a.n);
  for (auto& [w, c] : a.terms()) {
    if (!(w & l)) continue;
    int before = __builtin_popcountll(w & (l - 1));
    r.add(w & ~l, before % 2 ? -c : c);
  }
  return r;
}

Form lie_derivative(const Form& a, const GGen& z) { return contract(d(a), z) + d(contract(a, z)); }

Form pullback_prolonged(const Form& a, int slot) {
  int n = a.n;
  Form r(n);
  for (auto& [w, c] : a.terms()) {
    for (auto& v : c.variables())
      if (v.kind() == VarKind::Gamma || v.kind() == VarKind::Coord || v.kind() == VarKind::Frame)
        throw std::invalid_argument("pullback_prolonged: coefficient depends on the point");
    Form img = Form::scalar(n, c);
    for (Word x = w; x; x &= x - 1) {
      int bit = __builtin_ctzll(x);
      Form li = Form::letter(n, Word{1} << bit);
      if (bit >= 16) {
        int q = bit - 16;
        int i = q / kMaxN + 1, j = q % kMaxN + 1;
        for (int k = 1; k <= n; ++k) li.add(letter_theta(k), Poly::var(gamma_var(slot, i, j, k, {})));
      }
      img = wedge(img, li);
    }
    r += img;
  }
  return r;
}

std::map<Var, Scalar> gamma_bindings(const std::map<int, TruncatedMap>& slots, const std::vector<Scalar>& x,
                                     const Matrix<Scalar>& y, int maxL) {
  std::map<Var, Scalar> out;
  for (auto& [s, phi] : slots) {
    auto g = gamma_series<Scalar>(phi, x, y, maxL, s);
    out.insert(g.begin(), g.end());
  }
  return out;
}

Form evaluate_form(const Form& a, const std::map<Var, Scalar>& values) {
  return a.map_coeffs([&](const Poly& c) {
    return c.map_vars([&](const Var& v, Poly& out) {
      auto it = values.find(v);
      if (it == values.end()) return false;
      out = Poly(it->second);
      return true;
    });
  });
}

FormMatrix fm_zero(int n) { return FormMatrix(n, std::vector<Form>(n, Form(n))); }

FormMatrix fm_mul(const FormMatrix& a, const FormMatrix& b) {
  int n = static_cast<int>(a.size());
  FormMatrix r = fm_zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) r[i][j] += wedge(a[i][k], b[k][j]);
    }
  return r;
}

FormMatrix fm_add(const FormMatrix& a, const FormMatrix& b) {
  FormMatrix r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) r[i][j] += b[i][j];
  return r;
}

FormMatrix fm_scale(const FormMatrix& a, const Poly& c) {
  FormMatrix r = a;
  for (auto& row : r)
    for (auto& f : row) f *= c;
  return r;
}

FormMatrix fm_transpose(const FormMatrix& a) {
  FormMatrix r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) r[i][j] = a[j][i];
  return r;
}

}  // namespace cw
