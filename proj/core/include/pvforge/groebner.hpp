// Buchberger's algorithm and the ideal operations built on it.
#pragma once

#include "pvforge/mpoly.hpp"

#include <cstddef>
#include <vector>

namespace pvforge {

using PolyList = std::vector<MPoly>;

struct GBOptions {
  std::size_t max_pairs = 200000;
};

// Reduced Gröbner basis: monic, sorted by leading monomial (ascending).
PolyList groebner(const PolyRing& R, const PolyList& gens, const GBOptions& opt = {});
MPoly normal_form(const PolyRing& R, const MPoly& f, const PolyList& G);
// Cofactors h with f - NF(f) = Σ h_i G_i.
MPoly normal_form_cofactors(const PolyRing& R, const MPoly& f, const PolyList& G, PolyList& h);
bool is_groebner(const PolyRing& R, const PolyList& G);
bool contains(const PolyRing& R, const PolyList& gb, const PolyList& f);
bool ideal_equal(const PolyRing& R, const PolyList& a, const PolyList& b);
bool is_unit_ideal(const PolyRing& R, const PolyList& gb);

// Elements of gb free of the first k variables, renamed into S (the remaining variables).
PolyList elimination_part(const PolyRing& R, const PolyList& gb, int k, const PolyRing& S);
// I ∩ J, I : f^∞, each as a reduced basis in R.
PolyList intersect(const PolyRing& R, const PolyList& I, const PolyList& J);
PolyList saturate(const PolyRing& R, const PolyList& I, const MPoly& f);
PolyList quotient_element(const PolyRing& R, const PolyList& I, const MPoly& f);  // I : f

// Krull dimension via maximal independent sets of the leading-term ideal.
int krull_dimension(const PolyRing& R, const PolyList& gb);
// Standard monomials of degree <= d (degree-compatible order assumed), ascending.
std::vector<Mono> standard_monomials(const PolyRing& R, const PolyList& gb, int d);
std::vector<Mono> monomials_up_to(int n, int d);  // graded, grlex descending within a degree

// Polynomial gcd in R through intersection of principal ideals.
MPoly poly_gcd(const PolyRing& R, const MPoly& a, const MPoly& b);
bool poly_divide(const PolyRing& R, const MPoly& a, const MPoly& b, MPoly& q);

}  // namespace pvforge
