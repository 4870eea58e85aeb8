// Small constructors shared by the unit tests.
#pragma once

#include "pvforge/factor.hpp"
#include "pvforge/pipeline.hpp"
#include "pvforge/series.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace pvforge::test {

inline Elem el(const Field& K, const std::string& s) { return parse_elem(K, s); }

// Coefficients lowest degree first.
inline EPoly upoly(const Field& K, std::initializer_list<const char*> cs) {
  EPoly p;
  for (const char* c : cs) p.push_back(parse_elem(K, c));
  K.T->ptrim(K.L, p);
  return p;
}

inline PolyList polys(const PolyRing& R, std::initializer_list<const char*> gs) {
  PolyList out;
  for (const char* g : gs) out.push_back(parse_mpoly(R, g));
  return out;
}

inline Mat matrix(const Field& K, std::initializer_list<std::initializer_list<const char*>> rows) {
  Mat M;
  for (auto& r : rows) {
    Vec v;
    for (const char* e : r) v.push_back(parse_elem(K, e));
    M.push_back(v);
  }
  return M;
}

// Q(t)(z), z^2 = t, and Q(t)(z), z^3 = t.
inline Field radical_field(int D) {
  Field K = Field::Qt();
  EPoly m(D + 1, K.zero());
  m[0] = K.neg(K.t());
  m[D] = K.one();
  return adjoin_root(K, "z", m);
}

inline System system_of(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<std::string>> r;
  for (auto& row : rows) r.emplace_back(row.begin(), row.end());
  return parse_system(r);
}

inline DiffIdeal ideal_of(const System& S, std::initializer_list<const char*> gs, bool with_d = true) {
  DiffRing D = diff_ring(S.K, S.A, with_d);
  return make_ideal(D, polys(D.R, gs));
}

inline bool same_ideal(const PolyRing& R, const PolyList& a, std::initializer_list<const char*> b) {
  return ideal_equal(R, a, polys(R, b));
}

}  // namespace pvforge::test
