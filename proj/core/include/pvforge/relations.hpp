// Algebraic relations of degree at most ν among the entries of a fundamental matrix.
#pragma once

#include "pvforge/ideal.hpp"

#include <optional>
#include <vector>

namespace pvforge {

struct RelationConfig {
  int degree = 2;                  // ν
  std::optional<mpq_class> point;  // expansion point t0
  int order = 0;                   // truncation order N; 0 selects 2*unknowns + 8
  int coeff_degree = 2;            // degree of the coefficient ansatz in t - t0
  int max_primes = 40;
  int max_escalations = 4;
};

struct LevelReport {
  int nu = 0;
  int standard = 0;
  int unknowns = 0;
  int N = 0;
  int primes = 0;
  int kernel = 0;  // K-dimension of the truncated kernel
  int found = 0;   // K-dimension after stabilization
  bool certified = false;
};

struct RelationResult {
  DiffRing D;  // entries of X only
  mpq_class t0;
  PolyList gb;     // reduced basis of the ideal generated by the relations
  PolyList basis;  // K-basis of the degree-ν relations: μ - NF(μ) for non-standard μ
  std::vector<LevelReport> levels;
  bool certified = false;
};

mpq_class default_point(const Field& K, const Mat& A);
bool value_at(const Elem& a, const mpq_class& t0, mpq_class& out);  // a ∈ Q(t); false at a pole

// δ(m) = Σ B[m][m'] m' on the monomials of degree ≤ ν (graded order, returned in monos).
Mat prolong(const DiffRing& D, int nu, std::vector<Mono>& monos);
// ∇c = δc + Bᵗc
Vec nabla(const Field& K, const Vec& c, const Mat& B);
// Largest ∇-stable K-subspace of the row space.
Mat stability_refine(const Field& K, const Mat& rows, const Mat& B);
// ∇b_i = Σ μ_ij b_j with μ regular at t0 and b_i(t0)·m(I) = 0.
bool stability_certificate(const Field& K, const Mat& rows, const Mat& B, const mpq_class& t0,
                           const std::vector<mpq_class>& at_identity);
// δg = Σ h_j g_j with h regular at t0 and g(I) = 0 at t0, for every basis element.
bool ideal_certificate(const DiffRing& D, const PolyList& gb, const mpq_class& t0);

RelationResult relation_space(const Field& K, const Mat& A, const RelationConfig& cfg);

}  // namespace pvforge
