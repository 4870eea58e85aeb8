// Galois descent of δ-ideals from a radical extension of Q(t) down to Q(t).
#pragma once

#include "pvforge/ideal.hpp"

#include <vector>

namespace pvforge {

struct GaloisClosure {
  Field K;                      // top of the closure tower
  std::vector<Elem> embed;      // images of the source levels (TowerMap images)
  Field source;
  int t_level = 1;
  int root_level = -1;          // level of the primitive root of unity, -1 if absent
  int L = 1;                    // its order
  std::vector<std::vector<Elem>> automorphisms;  // images per closure level; identity first
  std::vector<bool> fixes_constants;

  TowerMap embedding() const { return TowerMap(source, K, embed); }
  TowerMap automorphism(size_t i) const { return TowerMap(K, K, automorphisms[i]); }
};

// Levels above t must be radicals y^D - g or quadratics with coefficients in Q(t).
GaloisClosure galois_closure(const Field& K);

// Distinct images of S under the automorphisms (optionally only those fixing the constants).
std::vector<DiffIdeal> orbit(const DiffIdeal& S, const GaloisClosure& G, bool fix_constants = true);

struct DescentResult {
  DiffIdeal m;             // over Q(t)
  DiffIdeal intersection;  // over the closure
  int orbit_size = 0;
};

DescentResult descend(const DiffIdeal& S, const GaloisClosure& G, bool fix_constants = true);

// Coefficients that lie in Q(t) moved into the standard tower; throws if some do not.
DiffIdeal lower_to_qt(const DiffIdeal& I);
EPoly cyclotomic(int L);

}  // namespace pvforge
