// Ideals of K[X, 1/det X] with the derivation δX = AX, and algebraic subgroups of GL_n.
#pragma once

#include "pvforge/groebner.hpp"
#include "pvforge/linalg.hpp"

#include <string>
#include <vector>

namespace pvforge {

// ---------- rings ----------

// X11..Xnn in row-major order ("x" when n = 1), then the inverse determinant "d".
std::vector<std::string> matrix_vars(int n, bool with_d, const std::string& x = "X", const std::string& d = "d");
int xindex(int n, int i, int j);

struct DiffRing {
  PolyRing R;
  int n = 0;
  bool has_d = true;
  Mat A;  // over R.K; empty when no derivation is attached
};

DiffRing diff_ring(const Field& K, const Mat& A, bool with_d = true);
DiffRing plain_ring(const Field& K, int n, bool with_d);
// Same ring over a higher level of an extension tower of D's field.
DiffRing ring_over(const DiffRing& D, const Field& K2);
// Coefficients carried along a tower map.
DiffRing ring_mapped(const DiffRing& D, const TowerMap& f);
DiffRing without_d(const DiffRing& D);

MPoly det_x(const PolyRing& R, int n);
MPoly det_relation(const DiffRing& D);  // d*det(X) - 1
MPoly delta(const DiffRing& D, const MPoly& P);
// P(M X, detinv*d), or P(X M, detinv*d) when `right` is set.
MPoly substitute_matrix(const DiffRing& D, const MPoly& P, const Mat& M, const Elem& detinv, bool right = false);

// ---------- δ-ideals ----------

struct DiffIdeal {
  DiffRing D;
  PolyList gens;
  PolyList gb;
  bool radical = false;
  bool prime = false;
  bool delta_ok = false;
};

DiffIdeal make_ideal(const DiffRing& D, const PolyList& gens);
DiffIdeal ideal_over(const DiffIdeal& I, const Field& K2);
DiffIdeal ideal_mapped(const DiffIdeal& I, const TowerMap& f);

struct DeltaCertificate {
  bool ok = false;
  std::vector<PolyList> cofactors;  // δ(gb_i) = Σ_j cofactors[i][j] gb_j
};
DeltaCertificate delta_certificate(const DiffIdeal& I);
bool is_delta_ideal(DiffIdeal& I);

// I ∩ K[X] as a reduced basis of the ring without d.
PolyList contract_to_x(const DiffIdeal& I);
int dimension(const DiffIdeal& I);
bool ideal_equal(const DiffIdeal& a, const DiffIdeal& b);
bool ideal_contains(const DiffIdeal& big, const DiffIdeal& small);
DiffIdeal intersect(const DiffIdeal& a, const DiffIdeal& b);
// Generators of I ∩ K_sub[X] where K_sub is level `sub` (levels above algebraic), via power-basis components.
DiffIdeal contract(const DiffIdeal& I, const Field& sub);

// Variables occurring in P.
std::vector<int> support_vars(const PolyRing& R, const MPoly& P);
// Elements of the ideal free of the given variables (reduced basis in R).
PolyList eliminate(const PolyRing& R, const PolyList& I, const std::vector<int>& vars);

// ---------- algebraic groups ----------

struct GroupIdeal {
  PolyRing G;  // g11..gnn, dg over a constant field
  int n = 0;
  PolyList gb;
};

GroupIdeal group_ideal(const Field& C, int n, const PolyList& gens);
GroupIdeal parse_group(const Field& C, int n, const std::vector<std::string>& gens);
// {g : P(Xg) ∈ I for all P}. R holds the n^2 matrix entries and optionally d; I is a Gröbner basis.
GroupIdeal stabilizer(const PolyRing& R, int n, const PolyList& I);
GroupIdeal stabilizer(const DiffIdeal& I);
bool group_contains_point(const GroupIdeal& H, const Mat& g);
bool group_subset(const GroupIdeal& a, const GroupIdeal& b);  // V(a) ⊆ V(b)
bool group_equal(const GroupIdeal& a, const GroupIdeal& b);
int group_dimension(const GroupIdeal& H);

struct LieAlgebra {
  int n = 0;
  Mat basis;  // rows: elements of gl_n, row-major
  int derived_dim = 0;
  int dim() const { return static_cast<int>(basis.size()); }
  bool perfect() const { return derived_dim == dim(); }
};
LieAlgebra lie_algebra(const GroupIdeal& H);

// ---------- radicals and primes ----------

struct RadicalResult {
  PolyList gb;
  std::string shape;  // "zero", "linear", "principal", "zero-dimensional", "unit"
};
RadicalResult radical(const PolyRing& R, const PolyList& I);
// Radical of a δ-ideal; the inverse determinant is eliminated first. Throws Unsupported.
DiffIdeal radical(const DiffIdeal& I, std::string* shape = nullptr);

std::vector<PolyList> minimal_primes(const PolyRing& R, const PolyList& I);
// Component of H through the identity.
GroupIdeal identity_component(const GroupIdeal& H, int* components = nullptr);

// V(I) = alpha·H: primes of I transported from the components of H. q1 receives the index of
// the component through alpha.
std::vector<DiffIdeal> prime_decompose_torsor(const DiffIdeal& I, const Mat& alpha, const GroupIdeal& H, int* q1);

std::string ideal_str(const PolyRing& R, const PolyList& gb, const std::string& indent = "  ");

}  // namespace pvforge
