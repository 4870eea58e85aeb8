#include "pvforge/tower.hpp"

#include <algorithm>
#include <sstream>

namespace pvforge {

namespace {

bool needs_parens(const std::string& s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (depth == 0 && (c == '+' || c == '-') && i > 0) return true;
  }
  return false;
}

bool is_atom(const std::string& s) {
  for (char c : s)
    if (c == '+' || c == '-' || c == '*' || c == '/') return false;
  return true;
}

}  // namespace

TowerPtr Tower::rationals() {
  static TowerPtr q = [] {
    auto t = std::make_shared<Tower>();
    Level l;
    l.kind = LevelKind::Rational;
    l.name = "Q";
    t->levels_.push_back(l);
    return TowerPtr(t);
  }();
  return q;
}

TowerPtr Tower::rational_functions(const std::string& var) {
  static TowerPtr qt = rationals()->adjoin_transcendental(0, "t");
  if (var == "t") return qt;
  return rationals()->adjoin_transcendental(0, var);
}

TowerPtr Tower::adjoin_transcendental(int upto, const std::string& name) const {
  if (trans_level() >= 0 && trans_level() <= upto)
    throw Error(Error::Kind::Domain, "tower already has a transcendental level");
  auto t = std::make_shared<Tower>();
  t->levels_.assign(levels_.begin(), levels_.begin() + upto + 1);
  Level l;
  l.kind = LevelKind::Transcendental;
  l.name = name;
  t->levels_.push_back(l);
  t->finish_top();
  return t;
}

TowerPtr Tower::adjoin_algebraic(int upto, const std::string& name, const EPoly& minpoly) const {
  if (minpoly.size() < 3) throw Error(Error::Kind::Domain, "minimal polynomial must have degree >= 2");
  if (!is_one(upto, minpoly.back())) throw Error(Error::Kind::Domain, "minimal polynomial must be monic");
  auto t = std::make_shared<Tower>();
  t->levels_.assign(levels_.begin(), levels_.begin() + upto + 1);
  Level l;
  l.kind = LevelKind::Algebraic;
  l.name = name;
  l.minpoly = minpoly;
  t->levels_.push_back(l);
  t->finish_top();
  return t;
}

void Tower::finish_top() {
  int L = top();
  Level& l = levels_[L];
  if (l.kind == LevelKind::Transcendental) {
    l.constant = false;
    l.dgen = one(L);
    return;
  }
  l.constant = levels_[L - 1].constant;
  if (l.constant) {
    l.dgen = zero(L);
    return;
  }
  EPoly pd = pderive_coeffs(L - 1, l.minpoly);
  EPoly pz = pdiff(L - 1, l.minpoly);
  EPoly pde, pze;
  for (auto& c : pd) pde.push_back(embed(L - 1, L, c));
  for (auto& c : pz) pze.push_back(embed(L - 1, L, c));
  Elem z = gen(L);
  Elem num = peval(L, pde, z);
  l.dgen = zero(L);  // placeholder while evaluating
  Elem den = peval(L, pze, z);
  l.dgen = neg(L, div(L, num, den));
}

int Tower::trans_level() const {
  for (int i = 0; i <= top(); ++i)
    if (levels_[i].kind == LevelKind::Transcendental) return i;
  return -1;
}

int Tower::degree(int L) const {
  if (levels_[L].kind == LevelKind::Algebraic) return static_cast<int>(levels_[L].minpoly.size()) - 1;
  return 0;
}

Elem Tower::zero(int L) const {
  Elem e;
  if (L > 0 && levels_[L].kind == LevelKind::Transcendental) e.den.push_back(one(L - 1));
  return e;
}

Elem Tower::one(int L) const { return from_rat(L, mpq_class(1)); }

Elem Tower::from_rat(int L, const mpq_class& q) const {
  if (L == 0) {
    Elem e;
    e.q = q;
    return e;
  }
  Elem e;
  if (q != 0) e.num.push_back(from_rat(L - 1, q));
  if (levels_[L].kind == LevelKind::Transcendental) e.den.push_back(one(L - 1));
  return e;
}

Elem Tower::gen(int L) const {
  if (L == 0) return one(0);
  Elem e = zero(L);
  EPoly x{zero(L - 1), one(L - 1)};
  if (levels_[L].kind == LevelKind::Algebraic) x = prem(L - 1, x, levels_[L].minpoly);
  e.num = x;
  return e;
}

Elem Tower::embed(int from, int to, const Elem& a) const {
  Elem cur = a;
  for (int L = from + 1; L <= to; ++L) {
    Elem e = zero(L);
    if (!is_zero(L - 1, cur)) e.num.push_back(std::move(cur));
    cur = std::move(e);
  }
  return cur;
}

bool Tower::lower(int from, int to, const Elem& a, Elem& out) const {
  Elem cur = a;
  for (int L = from; L > to; --L) {
    if (cur.num.size() > 1) return false;
    if (levels_[L].kind == LevelKind::Transcendental && !(cur.den.size() == 1)) return false;
    Elem nxt = cur.num.empty() ? zero(L - 1) : cur.num[0];
    cur = std::move(nxt);
  }
  out = std::move(cur);
  return true;
}

bool Tower::is_zero(int L, const Elem& a) const {
  if (L == 0) return sgn(a.q) == 0;
  return a.num.empty();
}

bool Tower::is_one(int L, const Elem& a) const {
  if (L == 0) return a.q == 1;
  if (a.num.size() != 1) return false;
  if (levels_[L].kind == LevelKind::Transcendental && a.den.size() != 1) return false;
  return is_one(L - 1, a.num[0]);
}

bool Tower::peq(int L, const EPoly& a, const EPoly& b) const {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!eq(L, a[i], b[i])) return false;
  return true;
}

bool Tower::eq(int L, const Elem& a, const Elem& b) const {
  if (L == 0) return a.q == b.q;
  if (!peq(L - 1, a.num, b.num)) return false;
  if (levels_[L].kind == LevelKind::Transcendental) return peq(L - 1, a.den, b.den);
  return true;
}

int Tower::cmp(int L, const Elem& a, const Elem& b) const {
  if (L == 0) { int c = mpq_cmp(a.q.get_mpq_t(), b.q.get_mpq_t()); return c < 0 ? -1 : (c > 0 ? 1 : 0); }
  auto pc = [&](const EPoly& x, const EPoly& y) {
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (size_t i = x.size(); i-- > 0;) {
      int c = cmp(L - 1, x[i], y[i]);
      if (c) return c;
    }
    return 0;
  };
  int c = pc(a.num, b.num);
  if (c || levels_[L].kind != LevelKind::Transcendental) return c;
  return pc(a.den, b.den);
}

bool Tower::is_rational(int L, const Elem& a, mpq_class* out) const {
  Elem e;
  if (!lower(L, 0, a, e)) return false;
  if (out) *out = e.q;
  return true;
}

Elem Tower::canon_trans(int L, EPoly n, EPoly d) const {
  ptrim(L - 1, n);
  ptrim(L - 1, d);
  if (d.empty()) throw Error(Error::Kind::Domain, "division by zero");
  Elem e;
  if (n.empty()) {
    e.den.push_back(one(L - 1));
    return e;
  }
  if (d.size() > 1 && n.size() > 1) {
    EPoly g = pgcd(L - 1, n, d);
    if (g.size() > 1) {
      n = pquo(L - 1, n, g);
      d = pquo(L - 1, d, g);
    }
  }
  if (!is_one(L - 1, d.back())) {
    Elem c = inv(L - 1, d.back());
    n = pscale(L - 1, n, c);
    d = pscale(L - 1, d, c);
  }
  e.num = std::move(n);
  e.den = std::move(d);
  return e;
}

Elem Tower::add(int L, const Elem& a, const Elem& b) const {
  if (L == 0) {
    Elem e;
    e.q = a.q + b.q;
    return e;
  }
  if (levels_[L].kind == LevelKind::Algebraic) {
    Elem e;
    e.num = padd(L - 1, a.num, b.num);
    return e;
  }
  if (is_zero(L, a)) return b;
  if (is_zero(L, b)) return a;
  if (peq(L - 1, a.den, b.den)) return canon_trans(L, padd(L - 1, a.num, b.num), a.den);
  return canon_trans(L, padd(L - 1, pmul(L - 1, a.num, b.den), pmul(L - 1, b.num, a.den)),
                     pmul(L - 1, a.den, b.den));
}

Elem Tower::neg(int L, const Elem& a) const {
  if (L == 0) {
    Elem e;
    e.q = -a.q;
    return e;
  }
  Elem e = a;
  for (auto& c : e.num) c = neg(L - 1, c);
  return e;
}

Elem Tower::sub(int L, const Elem& a, const Elem& b) const { return add(L, a, neg(L, b)); }

Elem Tower::mul(int L, const Elem& a, const Elem& b) const {
  if (L == 0) {
    Elem e;
    e.q = a.q * b.q;
    return e;
  }
  if (levels_[L].kind == LevelKind::Algebraic) {
    Elem e;
    e.num = prem(L - 1, pmul(L - 1, a.num, b.num), levels_[L].minpoly);
    return e;
  }
  if (is_zero(L, a) || is_zero(L, b)) return zero(L);
  if (a.den.size() == 1 && b.den.size() == 1) {
    Elem e;
    e.num = pmul(L - 1, a.num, b.num);
    e.den = a.den;
    return e;
  }
  // cross-cancel before multiplying
  EPoly an = a.num, ad = a.den, bn = b.num, bd = b.den;
  if (an.size() > 1 && bd.size() > 1) {
    EPoly g = pgcd(L - 1, an, bd);
    if (g.size() > 1) { an = pquo(L - 1, an, g); bd = pquo(L - 1, bd, g); }
  }
  if (bn.size() > 1 && ad.size() > 1) {
    EPoly g = pgcd(L - 1, bn, ad);
    if (g.size() > 1) { bn = pquo(L - 1, bn, g); ad = pquo(L - 1, ad, g); }
  }
  EPoly n = pmul(L - 1, an, bn), d = pmul(L - 1, ad, bd);
  if (!is_one(L - 1, d.back())) {
    Elem c = inv(L - 1, d.back());
    n = pscale(L - 1, n, c);
    d = pscale(L - 1, d, c);
  }
  Elem e;
  e.num = std::move(n);
  e.den = std::move(d);
  return e;
}

Elem Tower::inv(int L, const Elem& a) const {
  if (is_zero(L, a)) throw Error(Error::Kind::Domain, "division by zero");
  if (L == 0) {
    Elem e;
    e.q = 1 / a.q;
    return e;
  }
  if (levels_[L].kind == LevelKind::Transcendental) return canon_trans(L, a.den, a.num);
  EPoly s, t;
  EPoly g = pxgcd(L - 1, a.num, levels_[L].minpoly, s, t);
  if (g.size() != 1) throw Error(Error::Kind::Domain, "zero divisor in algebraic level " + levels_[L].name);
  Elem e;
  e.num = s;
  return e;
}

Elem Tower::pow(int L, const Elem& a, long e) const {
  if (e < 0) return pow(L, inv(L, a), -e);
  Elem r = one(L), b = a;
  while (e) {
    if (e & 1) r = mul(L, r, b);
    e >>= 1;
    if (e) b = mul(L, b, b);
  }
  return r;
}

Elem Tower::derive(int L, const Elem& a) const {
  if (levels_[L].constant || is_zero(L, a)) return zero(L);
  if (levels_[L].kind == LevelKind::Transcendental) {
    // levels below t are constant
    EPoly dn = pdiff(L - 1, a.num), dd = pdiff(L - 1, a.den);
    return canon_trans(L, psub(L - 1, pmul(L - 1, dn, a.den), pmul(L - 1, a.num, dd)),
                       pmul(L - 1, a.den, a.den));
  }
  Elem e;
  e.num = pderive_coeffs(L - 1, a.num);
  Elem r = e;
  if (a.num.size() > 1) {
    Elem d;
    d.num = pdiff(L - 1, a.num);
    r = add(L, r, mul(L, d, levels_[L].dgen));
  }
  return r;
}

std::string Tower::str(int L, const Elem& a) const {
  if (L == 0) return a.q.get_str();
  const Level& l = levels_[L];
  if (l.kind == LevelKind::Algebraic) return pstr(L - 1, a.num, l.name);
  if (a.den.size() == 1) return pstr(L - 1, a.num, l.name);
  EPoly n = a.num, d = a.den;
  if (L - 1 == 0) {
    mpz_class lcm = 1, g = 0;
    for (auto* p : {&n, &d})
      for (auto& c : *p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.q.get_den_mpz_t());
    for (auto* p : {&n, &d})
      for (auto& c : *p) {
        c.q *= lcm;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.q.get_num_mpz_t());
      }
    for (auto* p : {&n, &d})
      for (auto& c : *p) c.q /= g;
  }
  std::string ns = pstr(L - 1, n, l.name), ds = pstr(L - 1, d, l.name);
  if (needs_parens(ns)) ns = "(" + ns + ")";
  if (!is_atom(ds) || ds.find('^') != std::string::npos) ds = "(" + ds + ")";
  return ns + "/" + ds;
}

void Tower::ptrim(int L, EPoly& p) const {
  while (!p.empty() && is_zero(L, p.back())) p.pop_back();
}

EPoly Tower::padd(int L, const EPoly& a, const EPoly& b) const {
  EPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size()) r[i] = add(L, a[i], b[i]);
    else r[i] = i < a.size() ? a[i] : b[i];
  }
  ptrim(L, r);
  return r;
}

EPoly Tower::psub(int L, const EPoly& a, const EPoly& b) const {
  EPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size()) r[i] = sub(L, a[i], b[i]);
    else r[i] = i < a.size() ? a[i] : neg(L, b[i]);
  }
  ptrim(L, r);
  return r;
}

EPoly Tower::pmul(int L, const EPoly& a, const EPoly& b) const {
  if (a.empty() || b.empty()) return {};
  EPoly r(a.size() + b.size() - 1, zero(L));
  for (size_t i = 0; i < a.size(); ++i) {
    if (is_zero(L, a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = add(L, r[i + j], mul(L, a[i], b[j]));
  }
  ptrim(L, r);
  return r;
}

EPoly Tower::pscale(int L, const EPoly& a, const Elem& c) const {
  if (is_zero(L, c)) return {};
  EPoly r;
  r.reserve(a.size());
  for (auto& x : a) r.push_back(mul(L, x, c));
  return r;
}

void Tower::pdivrem(int L, const EPoly& a, const EPoly& b, EPoly& q, EPoly& r) const {
  if (b.empty()) throw Error(Error::Kind::Domain, "polynomial division by zero");
  r = a;
  ptrim(L, r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, zero(L));
  bool monic = is_one(L, b.back());
  Elem ilc = monic ? one(L) : inv(L, b.back());
  for (size_t k = r.size(); k-- >= b.size();) {
    if (is_zero(L, r[k])) {
      if (k == 0) break;
      continue;
    }
    Elem c = monic ? r[k] : mul(L, r[k], ilc);
    size_t s = k - (b.size() - 1);
    q[s] = c;
    for (size_t j = 0; j < b.size(); ++j) r[s + j] = sub(L, r[s + j], mul(L, c, b[j]));
    if (k == 0) break;
  }
  ptrim(L, q);
  ptrim(L, r);
}

EPoly Tower::prem(int L, const EPoly& a, const EPoly& b) const {
  if (a.size() < b.size()) return a;
  EPoly q, r;
  pdivrem(L, a, b, q, r);
  return r;
}

EPoly Tower::pquo(int L, const EPoly& a, const EPoly& b) const {
  EPoly q, r;
  pdivrem(L, a, b, q, r);
  return q;
}

EPoly Tower::pmonic(int L, const EPoly& a) const {
  if (a.empty() || is_one(L, a.back())) return a;
  return pscale(L, a, inv(L, a.back()));
}

EPoly Tower::pgcd(int L, const EPoly& a, const EPoly& b) const {
  EPoly x = a, y = b;
  ptrim(L, x);
  ptrim(L, y);
  while (!y.empty()) {
    EPoly r = prem(L, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return pmonic(L, x);
}

EPoly Tower::pxgcd(int L, const EPoly& a, const EPoly& b, EPoly& s, EPoly& t) const {
  EPoly r0 = a, r1 = b, s0{one(L)}, s1, t0, t1{one(L)};
  ptrim(L, r0);
  ptrim(L, r1);
  while (!r1.empty()) {
    EPoly q, r;
    pdivrem(L, r0, r1, q, r);
    EPoly s2 = psub(L, s0, pmul(L, q, s1));
    EPoly t2 = psub(L, t0, pmul(L, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s.clear();
    t.clear();
    return r0;
  }
  Elem c = inv(L, r0.back());
  s = pscale(L, s0, c);
  t = pscale(L, t0, c);
  return pscale(L, r0, c);
}

EPoly Tower::pdiff(int L, const EPoly& a) const {
  EPoly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(mul(L, a[i], from_rat(L, mpq_class(static_cast<long>(i)))));
  ptrim(L, r);
  return r;
}

EPoly Tower::pderive_coeffs(int L, const EPoly& a) const {
  EPoly r;
  for (auto& c : a) r.push_back(derive(L, c));
  ptrim(L, r);
  return r;
}

Elem Tower::peval(int L, const EPoly& a, const Elem& x) const {
  Elem r = zero(L);
  for (size_t i = a.size(); i-- > 0;) r = add(L, mul(L, r, x), a[i]);
  return r;
}

EPoly Tower::pcompose(int L, const EPoly& a, const EPoly& b) const {
  EPoly r;
  for (size_t i = a.size(); i-- > 0;) r = padd(L, pmul(L, r, b), EPoly{a[i]});
  ptrim(L, r);
  return r;
}

std::string Tower::pstr(int L, const EPoly& a, const std::string& var) const {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = a.size(); i-- > 0;) {
    if (is_zero(L, a[i])) continue;
    std::string c = str(L, a[i]);
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    bool compound = needs_parens(c);
    std::string term;
    bool negative = false;
    if (mono.empty()) {
      term = compound ? "(" + c + ")" : c;
      if (!compound && term[0] == '-') { negative = true; term = term.substr(1); }
    } else if (c == "1") {
      term = mono;
    } else if (c == "-1") {
      term = mono;
      negative = true;
    } else if (compound) {
      term = "(" + c + ")*" + mono;
    } else {
      term = c + "*" + mono;
      if (term[0] == '-') { negative = true; term = term.substr(1); }
    }
    if (first) os << (negative ? "-" : "") << term;
    else os << (negative ? "-" : "+") << term;
    first = false;
  }
  return os.str();
}

Elem Field::t() const {
  int tl = T->trans_level();
  if (tl < 0 || tl > L) throw Error(Error::Kind::Domain, "field has no variable t");
  return T->embed(tl, L, T->gen(tl));
}

TowerMap::TowerMap(Field src, Field dst, std::vector<Elem> images)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != src_.L + 1)
    throw Error(Error::Kind::Domain, "tower map needs one image per level");
}

Elem TowerMap::apply(int level, const Elem& a) const {
  if (level == 0) return dst_.from_rat(a.q);
  const Level& l = src_.T->level(level);
  const Elem& img = images_[level];
  auto ev = [&](const EPoly& p) {
    Elem r = dst_.zero();
    for (size_t i = p.size(); i-- > 0;) r = dst_.add(dst_.mul(r, img), apply(level - 1, p[i]));
    return r;
  };
  Elem n = ev(a.num);
  if (l.kind == LevelKind::Transcendental) return dst_.div(n, ev(a.den));
  return n;
}

Field constant_field(const Field& K) {
  int tl = K.T->trans_level();
  if (tl < 0 || tl > K.L) return K;
  return Field(K.T, tl - 1);
}

int relative_degree(const Field& K, int sub) {
  int d = 1;
  for (int l = sub + 1; l <= K.L; ++l) {
    if (K.T->level(l).kind != LevelKind::Algebraic) throw Error(Error::Kind::Domain, "components: non-algebraic level");
    d *= K.T->degree(l);
  }
  return d;
}

std::vector<Elem> components(const Field& K, int sub, const Elem& a) {
  if (K.L == sub) return {a};
  if (K.T->level(K.L).kind != LevelKind::Algebraic) throw Error(Error::Kind::Domain, "components: non-algebraic level");
  Field B = K.base();
  int deg = K.T->degree(K.L);
  int inner = relative_degree(B, sub);
  std::vector<Elem> out(static_cast<size_t>(inner) * deg, K.T->zero(sub));
  for (int j = 0; j < deg && j < static_cast<int>(a.num.size()); ++j) {
    std::vector<Elem> c = components(B, sub, a.num[j]);
    for (int i = 0; i < inner; ++i) out[static_cast<size_t>(j) * inner + i] = c[i];
  }
  return out;
}

Elem from_components(const Field& K, int sub, const std::vector<Elem>& c) {
  if (K.L == sub) return c.at(0);
  Field B = K.base();
  int deg = K.T->degree(K.L);
  int inner = relative_degree(B, sub);
  Elem out = K.zero();
  Elem z = K.gen(K.L), zp = K.one();
  for (int j = 0; j < deg; ++j) {
    std::vector<Elem> part(c.begin() + static_cast<long>(j) * inner, c.begin() + static_cast<long>(j + 1) * inner);
    out = K.add(out, K.mul(zp, K.embed_from(B.L, from_components(B, sub, part))));
    zp = K.mul(zp, z);
  }
  return out;
}

std::vector<mpq_class> rational_coordinates(const Field& C, const Elem& a) {
  std::vector<Elem> c = components(C, 0, a);
  std::vector<mpq_class> out;
  out.reserve(c.size());
  for (auto& e : c) out.push_back(e.q);
  return out;
}

}  // namespace pvforge
