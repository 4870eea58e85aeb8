// Exact and modular linear algebra.
#pragma once

#include "pvforge/tower.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace pvforge {

using u64 = std::uint64_t;

// ---------- word-size primes ----------

struct ModP {
  u64 p;
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 neg(u64 a) const { return a ? p - a : 0; }
  u64 pw(u64 a, u64 e) const;
  u64 inv(u64 a) const { return pw(a, p - 2); }
  // Reduction of a rational; returns false when p divides the denominator.
  bool reduce(const mpq_class& q, u64& out) const;
};

// Decreasing primes below 2^62.
u64 nth_prime62(int i);

using MatP = std::vector<std::vector<u64>>;

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref_modp(const ModP& F, MatP& M);
// Right kernel basis in canonical form: vector j has 1 at free column free[j], 0 at other free columns.
MatP kernel_modp(const ModP& F, MatP M, std::vector<int>* free_cols = nullptr);

// n/d with |n|, d <= sqrt(m/2) and n ≡ a d (mod m).
bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpq_class& out);

// ---------- exact matrices over a tower field ----------

using Vec = std::vector<Elem>;
using Mat = std::vector<Vec>;

Mat mat_zero(const Field& K, int r, int c);
Mat mat_identity(const Field& K, int n);
Mat mat_mul(const Field& K, const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
Vec mat_vec(const Field& K, const Mat& a, const Vec& v);
bool mat_eq(const Field& K, const Mat& a, const Mat& b);

std::vector<int> rref(const Field& K, Mat& M);
int rank(const Field& K, Mat M);
// Right kernel basis in the same canonical form as kernel_modp.
Mat kernel(const Field& K, const Mat& M);
// Left kernel: rows y with y M = 0.
Mat left_kernel(const Field& K, const Mat& M);
bool inverse(const Field& K, const Mat& M, Mat& out);
Elem determinant(const Field& K, Mat M);
// Solves M x = b; false if inconsistent.
bool solve(const Field& K, const Mat& M, const Vec& b, Vec& x);

// ---------- integer lattices ----------

using ZMat = std::vector<std::vector<mpz_class>>;

// Row-style Hermite normal form (upper triangular, positive pivots, reduced above).
ZMat hermite_normal_form(ZMat M);
// Z-basis of {x in Z^c : M x = 0}, in Hermite normal form.
ZMat integer_kernel(const ZMat& M, int cols);

}  // namespace pvforge
