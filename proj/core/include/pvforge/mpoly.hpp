// Sparse multivariate polynomials over a tower field.
#pragma once

#include "pvforge/tower.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pvforge {

constexpr int kMaxVars = 28;

struct Mono {
  std::array<std::uint16_t, kMaxVars> e{};
  int deg(int n) const {
    int d = 0;
    for (int i = 0; i < n; ++i) d += e[i];
    return d;
  }
  bool operator==(const Mono& o) const { return e == o.e; }
};

struct Term {
  Mono m;
  Elem c;
};

// Variables are ordered by blocks; each block uses graded reverse lexicographic
// order and blocks compare lexicographically (an elimination order for earlier blocks).
struct PolyRing {
  Field K;
  std::vector<std::string> vars;
  std::vector<int> blocks;

  PolyRing() = default;
  PolyRing(Field k, std::vector<std::string> v, std::vector<int> b = {});
  int n() const { return static_cast<int>(vars.size()); }
  int index(const std::string& name) const;  // -1 if absent
  bool same(const PolyRing& o) const { return K.same(o.K) && vars == o.vars && blocks == o.blocks; }
  PolyRing with_field(const Field& k) const { return PolyRing(k, vars, blocks); }
  PolyRing with_lex() const;
};

int mono_cmp(const PolyRing& R, const Mono& a, const Mono& b);
bool mono_divides(int n, const Mono& a, const Mono& b);  // a | b
Mono mono_mul(int n, const Mono& a, const Mono& b);
Mono mono_div(int n, const Mono& a, const Mono& b);  // a / b
Mono mono_lcm(int n, const Mono& a, const Mono& b);

class MPoly {
 public:
  std::vector<Term> terms;  // strictly decreasing in the ring order

  bool is_zero() const { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
  int total_degree(int n) const;
  int degree_in(int var) const;
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms[0].m == Mono{}); }
};

MPoly mp_const(const PolyRing& R, const Elem& c);
MPoly mp_var(const PolyRing& R, int i);
MPoly mp_from_terms(const PolyRing& R, std::vector<Term> terms);  // sorts and merges
MPoly mp_add(const PolyRing& R, const MPoly& a, const MPoly& b);
MPoly mp_sub(const PolyRing& R, const MPoly& a, const MPoly& b);
MPoly mp_neg(const PolyRing& R, const MPoly& a);
MPoly mp_mul(const PolyRing& R, const MPoly& a, const MPoly& b);
MPoly mp_scale(const PolyRing& R, const MPoly& a, const Elem& c);
MPoly mp_mul_term(const PolyRing& R, const MPoly& a, const Mono& m, const Elem& c);
MPoly mp_pow(const PolyRing& R, const MPoly& a, int e);
MPoly mp_monic(const PolyRing& R, const MPoly& a);
bool mp_eq(const PolyRing& R, const MPoly& a, const MPoly& b);
MPoly mp_diff(const PolyRing& R, const MPoly& a, int var);
MPoly mp_derive_coeffs(const PolyRing& R, const MPoly& a);
// Substitutes polys[i] (in ring S) for variable i of R; coefficients mapped by `coef`.
MPoly mp_substitute(const PolyRing& R, const MPoly& a, const PolyRing& S, const std::vector<MPoly>& polys);
Elem mp_eval(const PolyRing& R, const MPoly& a, const std::vector<Elem>& point);
// Moves a polynomial between rings by variable name (missing variables must not occur).
MPoly mp_rename(const PolyRing& R, const MPoly& a, const PolyRing& S);
// Maps coefficients with a tower map into S (same variable list).
MPoly mp_map_coeffs(const PolyRing& R, const MPoly& a, const PolyRing& S, const TowerMap& f);
MPoly mp_embed_coeffs(const PolyRing& R, const MPoly& a, const PolyRing& S);  // level embedding
std::string mp_str(const PolyRing& R, const MPoly& a);
// Re-sorts after a change of term order.
MPoly mp_reorder(const PolyRing& R, const MPoly& a);

// Expression parsing: integers, ring variables, tower generators, + - * / ^ and
// parentheses. Division is only allowed by constants.
MPoly parse_mpoly(const PolyRing& R, const std::string& s);
Elem parse_elem(const Field& K, const std::string& s);

}  // namespace pvforge
