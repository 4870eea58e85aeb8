// Exact arithmetic on towers Q ⊂ … ⊂ Q(t) ⊂ … of algebraic and transcendental levels.
#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvforge {

struct Elem;
using EPoly = std::vector<Elem>;  // coefficients, lowest degree first, no trailing zeros

// An element of one tower level. Level 0 uses q; a transcendental level holds num/den
// over the level below; an algebraic level holds the residue class num mod minpoly.
struct Elem {
  mpq_class q;
  EPoly num;
  EPoly den;
};

class Error : public std::runtime_error {
 public:
  enum class Kind { Parse, Bound, Unsupported, Verify, Domain };
  Error(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

enum class LevelKind { Rational, Transcendental, Algebraic };

struct Level {
  LevelKind kind = LevelKind::Rational;
  std::string name;
  EPoly minpoly;        // monic, over the level below (algebraic only)
  bool constant = true; // derivation vanishes on this level
  Elem dgen;            // derivative of the generator, at this level
};

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

class Tower {
 public:
  Tower() = default;
  static TowerPtr rationals();
  static TowerPtr rational_functions(const std::string& var = "t");

  // Appends a level on top of `upto`; levels above `upto` are dropped.
  TowerPtr adjoin_transcendental(int upto, const std::string& name) const;
  TowerPtr adjoin_algebraic(int upto, const std::string& name, const EPoly& minpoly) const;

  int top() const { return static_cast<int>(levels_.size()) - 1; }
  const Level& level(int L) const { return levels_.at(L); }
  int trans_level() const;  // -1 if none
  int degree(int L) const;  // [level L : level L-1]

  Elem zero(int L) const;
  Elem one(int L) const;
  Elem from_rat(int L, const mpq_class& q) const;
  Elem gen(int L) const;  // generator of level L
  Elem embed(int from, int to, const Elem& a) const;
  // Inverse of embed: returns false if a does not lie in the lower level.
  bool lower(int from, int to, const Elem& a, Elem& out) const;

  bool is_zero(int L, const Elem& a) const;
  bool is_one(int L, const Elem& a) const;
  bool eq(int L, const Elem& a, const Elem& b) const;
  int cmp(int L, const Elem& a, const Elem& b) const;
  bool is_rational(int L, const Elem& a, mpq_class* out = nullptr) const;

  Elem add(int L, const Elem& a, const Elem& b) const;
  Elem sub(int L, const Elem& a, const Elem& b) const;
  Elem neg(int L, const Elem& a) const;
  Elem mul(int L, const Elem& a, const Elem& b) const;
  Elem inv(int L, const Elem& a) const;
  Elem div(int L, const Elem& a, const Elem& b) const { return mul(L, a, inv(L, b)); }
  Elem pow(int L, const Elem& a, long e) const;
  Elem derive(int L, const Elem& a) const;
  // n/d at a transcendental level, canonicalized.
  Elem frac(int L, EPoly n, EPoly d) const { return canon_trans(L, std::move(n), std::move(d)); }

  std::string str(int L, const Elem& a) const;

  // Univariate polynomials over level L.
  void ptrim(int L, EPoly& p) const;
  EPoly padd(int L, const EPoly& a, const EPoly& b) const;
  EPoly psub(int L, const EPoly& a, const EPoly& b) const;
  EPoly pmul(int L, const EPoly& a, const EPoly& b) const;
  EPoly pscale(int L, const EPoly& a, const Elem& c) const;
  void pdivrem(int L, const EPoly& a, const EPoly& b, EPoly& q, EPoly& r) const;
  EPoly prem(int L, const EPoly& a, const EPoly& b) const;
  EPoly pquo(int L, const EPoly& a, const EPoly& b) const;
  EPoly pmonic(int L, const EPoly& a) const;
  EPoly pgcd(int L, const EPoly& a, const EPoly& b) const;
  // g = s*a + t*b, g monic
  EPoly pxgcd(int L, const EPoly& a, const EPoly& b, EPoly& s, EPoly& t) const;
  EPoly pdiff(int L, const EPoly& a) const;          // formal d/dx
  EPoly pderive_coeffs(int L, const EPoly& a) const;  // δ applied to coefficients
  Elem peval(int L, const EPoly& a, const Elem& x) const;
  EPoly pcompose(int L, const EPoly& a, const EPoly& b) const;  // a(b(x))
  bool peq(int L, const EPoly& a, const EPoly& b) const;
  std::string pstr(int L, const EPoly& a, const std::string& var) const;

 private:
  std::vector<Level> levels_;
  void finish_top();
  Elem canon_trans(int L, EPoly n, EPoly d) const;
};

// A field: a tower together with a chosen top level.
struct Field {
  TowerPtr T;
  int L = 0;

  Field() = default;
  Field(TowerPtr t, int l) : T(std::move(t)), L(l) {}
  static Field Q() { return Field(Tower::rationals(), 0); }
  static Field Qt() { auto T = Tower::rational_functions(); return Field(T, 1); }

  Elem zero() const { return T->zero(L); }
  Elem one() const { return T->one(L); }
  Elem from_int(long v) const { return T->from_rat(L, mpq_class(v)); }
  Elem from_rat(const mpq_class& q) const { return T->from_rat(L, q); }
  Elem gen(int level) const { return T->embed(level, L, T->gen(level)); }
  Elem t() const;
  bool has_t() const { int tl = T->trans_level(); return tl >= 0 && tl <= L; }
  Elem add(const Elem& a, const Elem& b) const { return T->add(L, a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return T->sub(L, a, b); }
  Elem neg(const Elem& a) const { return T->neg(L, a); }
  Elem mul(const Elem& a, const Elem& b) const { return T->mul(L, a, b); }
  Elem inv(const Elem& a) const { return T->inv(L, a); }
  Elem div(const Elem& a, const Elem& b) const { return T->div(L, a, b); }
  Elem pow(const Elem& a, long e) const { return T->pow(L, a, e); }
  Elem derive(const Elem& a) const { return T->derive(L, a); }
  bool is_zero(const Elem& a) const { return T->is_zero(L, a); }
  bool is_one(const Elem& a) const { return T->is_one(L, a); }
  bool eq(const Elem& a, const Elem& b) const { return T->eq(L, a, b); }
  int cmp(const Elem& a, const Elem& b) const { return T->cmp(L, a, b); }
  Elem embed_from(int from, const Elem& a) const { return T->embed(from, L, a); }
  std::string str(const Elem& a) const { return T->str(L, a); }
  bool same(const Field& o) const { return T.get() == o.T.get() && L == o.L; }
  Field base() const { return Field(T, L - 1); }
  const Level& top() const { return T->level(L); }
};

// Ring homomorphism between towers given the images of the generators of `src`
// levels 1..src.L inside `dst` (Q maps identically).
class TowerMap {
 public:
  TowerMap(Field src, Field dst, std::vector<Elem> images);
  Elem operator()(const Elem& a) const { return apply(src_.L, a); }
  const Field& src() const { return src_; }
  const Field& dst() const { return dst_; }
  const std::vector<Elem>& images() const { return images_; }

 private:
  Elem apply(int level, const Elem& a) const;
  Field src_, dst_;
  std::vector<Elem> images_;  // index = source level
};

// The constant subfield: levels strictly below the transcendental level.
Field constant_field(const Field& K);

// Power-basis coordinates over level `sub`; levels sub+1..K.L must be algebraic.
// Index i = Σ e_j * stride_j with the lowest level varying fastest.
int relative_degree(const Field& K, int sub);
std::vector<Elem> components(const Field& K, int sub, const Elem& a);
Elem from_components(const Field& K, int sub, const std::vector<Elem>& c);
// Rational coordinates of an element of a constant field (no transcendental level).
std::vector<mpq_class> rational_coordinates(const Field& C, const Elem& a);

}  // namespace pvforge
