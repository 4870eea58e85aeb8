#include "pvforge/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pvforge {

PolyRing::PolyRing(Field k, std::vector<std::string> v, std::vector<int> b)
    : K(std::move(k)), vars(std::move(v)), blocks(std::move(b)) {
  if (vars.size() > static_cast<size_t>(kMaxVars)) throw Error(Error::Kind::Bound, "too many variables");
  if (blocks.empty()) blocks.push_back(static_cast<int>(vars.size()));
  int s = 0;
  for (int x : blocks) s += x;
  if (s != static_cast<int>(vars.size())) throw Error(Error::Kind::Domain, "block sizes do not match variables");
}

int PolyRing::index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

PolyRing PolyRing::with_lex() const {
  return PolyRing(K, vars, std::vector<int>(vars.size(), 1));
}

int mono_cmp(const PolyRing& R, const Mono& a, const Mono& b) {
  int start = 0;
  for (int bs : R.blocks) {
    int da = 0, db = 0;
    for (int i = start; i < start + bs; ++i) {
      da += a.e[i];
      db += b.e[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (int i = start + bs - 1; i >= start; --i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    start += bs;
  }
  return 0;
}

bool mono_divides(int n, const Mono& a, const Mono& b) {
  for (int i = 0; i < n; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Mono mono_mul(int n, const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < n; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  return r;
}

Mono mono_div(int n, const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < n; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
  return r;
}

Mono mono_lcm(int n, const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < n; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

int MPoly::total_degree(int n) const {
  int d = 0;
  for (auto& t : terms) d = std::max(d, t.m.deg(n));
  return d;
}

int MPoly::degree_in(int var) const {
  int d = 0;
  for (auto& t : terms) d = std::max(d, static_cast<int>(t.m.e[var]));
  return d;
}

MPoly mp_const(const PolyRing& R, const Elem& c) {
  MPoly p;
  if (!R.K.is_zero(c)) p.terms.push_back({Mono{}, c});
  return p;
}

MPoly mp_var(const PolyRing& R, int i) {
  MPoly p;
  Mono m;
  m.e[i] = 1;
  p.terms.push_back({m, R.K.one()});
  return p;
}

MPoly mp_from_terms(const PolyRing& R, std::vector<Term> t) {
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return mono_cmp(R, a.m, b.m) > 0; });
  MPoly p;
  for (auto& x : t) {
    if (!p.terms.empty() && p.terms.back().m == x.m) {
      p.terms.back().c = R.K.add(p.terms.back().c, x.c);
      if (R.K.is_zero(p.terms.back().c)) p.terms.pop_back();
    } else if (!R.K.is_zero(x.c)) {
      p.terms.push_back(std::move(x));
    }
  }
  return p;
}

MPoly mp_add(const PolyRing& R, const MPoly& a, const MPoly& b) {
  MPoly r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size()) { r.terms.push_back(a.terms[i++]); continue; }
    if (i == a.terms.size()) { r.terms.push_back(b.terms[j++]); continue; }
    int c = mono_cmp(R, a.terms[i].m, b.terms[j].m);
    if (c > 0) r.terms.push_back(a.terms[i++]);
    else if (c < 0) r.terms.push_back(b.terms[j++]);
    else {
      Elem s = R.K.add(a.terms[i].c, b.terms[j].c);
      if (!R.K.is_zero(s)) r.terms.push_back({a.terms[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

MPoly mp_neg(const PolyRing& R, const MPoly& a) {
  MPoly r = a;
  for (auto& t : r.terms) t.c = R.K.neg(t.c);
  return r;
}

MPoly mp_sub(const PolyRing& R, const MPoly& a, const MPoly& b) { return mp_add(R, a, mp_neg(R, b)); }

MPoly mp_mul_term(const PolyRing& R, const MPoly& a, const Mono& m, const Elem& c) {
  MPoly r;
  if (R.K.is_zero(c)) return r;
  r.terms.reserve(a.terms.size());
  bool one = R.K.is_one(c);
  for (auto& t : a.terms) r.terms.push_back({mono_mul(R.n(), t.m, m), one ? t.c : R.K.mul(t.c, c)});
  return r;
}

MPoly mp_mul(const PolyRing& R, const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms.size() < b.terms.size()) return mp_mul(R, b, a);
  std::vector<Term> all;
  all.reserve(a.terms.size() * b.terms.size());
  for (auto& x : b.terms)
    for (auto& y : a.terms) all.push_back({mono_mul(R.n(), x.m, y.m), R.K.mul(x.c, y.c)});
  return mp_from_terms(R, std::move(all));
}

MPoly mp_scale(const PolyRing& R, const MPoly& a, const Elem& c) { return mp_mul_term(R, a, Mono{}, c); }

MPoly mp_pow(const PolyRing& R, const MPoly& a, int e) {
  MPoly r = mp_const(R, R.K.one());
  MPoly b = a;
  while (e > 0) {
    if (e & 1) r = mp_mul(R, r, b);
    e >>= 1;
    if (e) b = mp_mul(R, b, b);
  }
  return r;
}

MPoly mp_monic(const PolyRing& R, const MPoly& a) {
  if (a.is_zero() || R.K.is_one(a.lead().c)) return a;
  return mp_scale(R, a, R.K.inv(a.lead().c));
}

bool mp_eq(const PolyRing& R, const MPoly& a, const MPoly& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (!(a.terms[i].m == b.terms[i].m) || !R.K.eq(a.terms[i].c, b.terms[i].c)) return false;
  return true;
}

MPoly mp_diff(const PolyRing& R, const MPoly& a, int var) {
  std::vector<Term> out;
  for (auto& t : a.terms) {
    if (t.m.e[var] == 0) continue;
    Term x = t;
    x.c = R.K.mul(t.c, R.K.from_int(t.m.e[var]));
    x.m.e[var]--;
    out.push_back(std::move(x));
  }
  return mp_from_terms(R, std::move(out));
}

MPoly mp_derive_coeffs(const PolyRing& R, const MPoly& a) {
  MPoly r;
  for (auto& t : a.terms) {
    Elem d = R.K.derive(t.c);
    if (!R.K.is_zero(d)) r.terms.push_back({t.m, std::move(d)});
  }
  return r;
}

MPoly mp_substitute(const PolyRing& R, const MPoly& a, const PolyRing& S, const std::vector<MPoly>& polys) {
  std::vector<std::vector<MPoly>> powers(R.n());
  auto pw = [&](int v, int e) -> const MPoly& {
    auto& ps = powers[v];
    if (ps.empty()) ps.push_back(mp_const(S, S.K.one()));
    while (static_cast<int>(ps.size()) <= e) ps.push_back(mp_mul(S, ps.back(), polys[v]));
    return ps[e];
  };
  MPoly r;
  for (auto& t : a.terms) {
    Elem c = S.K.same(R.K) ? t.c : S.K.embed_from(R.K.L, t.c);
    MPoly x = mp_const(S, c);
    for (int v = 0; v < R.n(); ++v)
      if (t.m.e[v]) x = mp_mul(S, x, pw(v, t.m.e[v]));
    r = mp_add(S, r, x);
  }
  return r;
}

Elem mp_eval(const PolyRing& R, const MPoly& a, const std::vector<Elem>& point) {
  Elem r = R.K.zero();
  for (auto& t : a.terms) {
    Elem x = t.c;
    for (int v = 0; v < R.n(); ++v)
      if (t.m.e[v]) x = R.K.mul(x, R.K.pow(point[v], t.m.e[v]));
    r = R.K.add(r, x);
  }
  return r;
}

MPoly mp_rename(const PolyRing& R, const MPoly& a, const PolyRing& S) {
  std::vector<int> map(R.n());
  for (int i = 0; i < R.n(); ++i) map[i] = S.index(R.vars[i]);
  std::vector<Term> out;
  for (auto& t : a.terms) {
    Term x;
    x.c = S.K.same(R.K) ? t.c : S.K.embed_from(R.K.L, t.c);
    for (int i = 0; i < R.n(); ++i) {
      if (!t.m.e[i]) continue;
      if (map[i] < 0) throw Error(Error::Kind::Domain, "variable " + R.vars[i] + " missing in target ring");
      x.m.e[map[i]] = t.m.e[i];
    }
    out.push_back(std::move(x));
  }
  return mp_from_terms(S, std::move(out));
}

MPoly mp_map_coeffs(const PolyRing& R, const MPoly& a, const PolyRing& S, const TowerMap& f) {
  std::vector<Term> out;
  for (auto& t : a.terms) out.push_back({t.m, f(t.c)});
  (void)R;
  return mp_from_terms(S, std::move(out));
}

MPoly mp_embed_coeffs(const PolyRing& R, const MPoly& a, const PolyRing& S) {
  std::vector<Term> out;
  for (auto& t : a.terms) out.push_back({t.m, S.K.embed_from(R.K.L, t.c)});
  return mp_from_terms(S, std::move(out));
}

MPoly mp_reorder(const PolyRing& R, const MPoly& a) { return mp_from_terms(R, a.terms); }

namespace {

bool compound(const std::string& s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (depth == 0 && i > 0 && (c == '+' || c == '-' || c == '/')) return true;
  }
  return false;
}

}  // namespace

std::string mp_str(const PolyRing& R, const MPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : a.terms) {
    std::string mono;
    for (int i = 0; i < R.n(); ++i) {
      if (!t.m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += R.vars[i];
      if (t.m.e[i] > 1) mono += "^" + std::to_string(t.m.e[i]);
    }
    std::string c = R.K.str(t.c);
    bool neg = false;
    std::string term;
    if (mono.empty()) {
      if (compound(c)) term = "(" + c + ")";
      else {
        term = c;
        if (term[0] == '-') { neg = true; term = term.substr(1); }
      }
    } else if (c == "1") {
      term = mono;
    } else if (c == "-1") {
      term = mono;
      neg = true;
    } else if (compound(c)) {
      term = "(" + c + ")*" + mono;
    } else {
      term = c + "*" + mono;
      if (term[0] == '-') { neg = true; term = term.substr(1); }
    }
    if (first) os << (neg ? "-" : "") << term;
    else os << (neg ? " - " : " + ") << term;
    first = false;
  }
  return os.str();
}

namespace {

struct Parser {
  const PolyRing& R;
  const std::string& s;
  size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Error::Kind::Parse, msg + " at position " + std::to_string(i) + " in '" + s + "'");
  }
  void ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }

  MPoly expr() {
    ws();
    MPoly r;
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    r = term();
    if (neg) r = mp_neg(R, r);
    while (true) {
      if (eat('+')) r = mp_add(R, r, term());
      else if (eat('-')) r = mp_sub(R, r, term());
      else break;
    }
    return r;
  }
  MPoly term() {
    MPoly r = factor();
    while (true) {
      if (eat('*')) r = mp_mul(R, r, factor());
      else if (eat('/')) {
        MPoly d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
        r = mp_scale(R, r, R.K.inv(d.lead().c));
      } else break;
    }
    return r;
  }
  MPoly factor() {
    MPoly b = atom();
    if (eat('^')) {
      ws();
      bool neg = false;
      if (eat('-')) neg = true;
      ws();
      size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (st == i) fail("expected exponent");
      long e = std::stol(s.substr(st, i - st));
      if (neg) {
        if (!b.is_constant() || b.is_zero()) fail("negative power of a non-constant");
        return mp_const(R, R.K.pow(b.lead().c, -e));
      }
      return mp_pow(R, b, static_cast<int>(e));
    }
    return b;
  }
  MPoly atom() {
    ws();
    if (i >= s.size()) fail("unexpected end");
    char c = s[i];
    if (c == '(') {
      ++i;
      MPoly r = expr();
      if (!eat(')')) fail("expected )");
      return r;
    }
    if (c == '-') {
      ++i;
      return mp_neg(R, factor());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      return mp_const(R, R.K.from_rat(mpq_class(mpz_class(s.substr(st, i - st)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t st = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string name = s.substr(st, i - st);
      int v = R.index(name);
      if (v >= 0) return mp_var(R, v);
      for (int L = 1; L <= R.K.L; ++L)
        if (R.K.T->level(L).name == name) return mp_const(R, R.K.gen(L));
      fail("unknown identifier '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

MPoly parse_mpoly(const PolyRing& R, const std::string& s) {
  Parser p{R, s};
  MPoly r = p.expr();
  p.ws();
  if (p.i != s.size()) p.fail("trailing input");
  return r;
}

Elem parse_elem(const Field& K, const std::string& s) {
  PolyRing R(K, {});
  MPoly p = parse_mpoly(R, s);
  return p.is_zero() ? K.zero() : p.lead().c;
}

}  // namespace pvforge
