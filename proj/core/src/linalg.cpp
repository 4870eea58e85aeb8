#include "pvforge/linalg.hpp"

#include <algorithm>
#include <mutex>

namespace pvforge {

u64 ModP::pw(u64 a, u64 e) const {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

namespace {

u64 mpz_mod_u64(const mpz_class& z, u64 p) {
  mpz_class r;
  mpz_class pp;
  mpz_import(pp.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t());
  u64 out = 0;
  if (r != 0) mpz_export(&out, nullptr, -1, sizeof(u64), 0, 0, r.get_mpz_t());
  return out;
}

}  // namespace

bool ModP::reduce(const mpq_class& q, u64& out) const {
  u64 d = mpz_mod_u64(q.get_den(), p);
  if (d == 0) return false;
  out = mul(mpz_mod_u64(q.get_num(), p), inv(d));
  return true;
}

u64 nth_prime62(int i) {
  static std::mutex mu;
  static std::vector<u64> cache;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= i) {
    u64 c = cache.empty() ? (u64(1) << 62) - 1 : cache.back() - 2;
    for (;; c -= 2) {
      mpz_class z;
      mpz_import(z.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &c);
      if (mpz_probab_prime_p(z.get_mpz_t(), 30)) break;
    }
    cache.push_back(c);
  }
  return cache[i];
}

std::vector<int> rref_modp(const ModP& F, MatP& M) {
  std::vector<int> piv;
  if (M.empty()) return piv;
  int rows = static_cast<int>(M.size()), cols = static_cast<int>(M[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (M[i][c]) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(M[r], M[sel]);
    u64 iv = F.inv(M[r][c]);
    for (int j = c; j < cols; ++j) M[r][j] = F.mul(M[r][j], iv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || !M[i][c]) continue;
      u64 f = M[i][c];
      for (int j = c; j < cols; ++j)
        if (M[r][j]) M[i][j] = F.sub(M[i][j], F.mul(f, M[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  M.resize(r);
  return piv;
}

MatP kernel_modp(const ModP& F, MatP M, std::vector<int>* free_cols) {
  int cols = M.empty() ? 0 : static_cast<int>(M[0].size());
  std::vector<int> piv = rref_modp(F, M);
  std::vector<char> is_piv(cols, 0);
  for (int c : piv) is_piv[c] = 1;
  MatP K;
  std::vector<int> fr;
  for (int c = 0; c < cols; ++c) {
    if (is_piv[c]) continue;
    fr.push_back(c);
    std::vector<u64> v(cols, 0);
    v[c] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(M[i][c]);
    K.push_back(std::move(v));
  }
  if (free_cols) *free_cols = fr;
  return K;
}

bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpq_class& out) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  mpz_class s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class s2 = s0 - q * s1;
    r0 = r1; r1 = r2; s0 = s1; s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, s1);
  out.canonicalize();
  return true;
}

// ---------- exact matrices ----------

Mat mat_zero(const Field& K, int r, int c) { return Mat(r, Vec(c, K.zero())); }

Mat mat_identity(const Field& K, int n) {
  Mat I = mat_zero(K, n, n);
  for (int i = 0; i < n; ++i) I[i][i] = K.one();
  return I;
}

Mat mat_mul(const Field& K, const Mat& a, const Mat& b) {
  int r = static_cast<int>(a.size()), m = static_cast<int>(b.size());
  int c = m ? static_cast<int>(b[0].size()) : 0;
  Mat out = mat_zero(K, r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < m; ++k) {
      if (K.is_zero(a[i][k])) continue;
      for (int j = 0; j < c; ++j)
        if (!K.is_zero(b[k][j])) out[i][j] = K.add(out[i][j], K.mul(a[i][k], b[k][j]));
    }
  return out;
}

Mat mat_transpose(const Mat& a) {
  if (a.empty()) return a;
  Mat t(a[0].size(), Vec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Vec mat_vec(const Field& K, const Mat& a, const Vec& v) {
  Vec out(a.size(), K.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!K.is_zero(a[i][j]) && !K.is_zero(v[j])) out[i] = K.add(out[i], K.mul(a[i][j], v[j]));
  return out;
}

bool mat_eq(const Field& K, const Mat& a, const Mat& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (!K.eq(a[i][j], b[i][j])) return false;
  }
  return true;
}

std::vector<int> rref(const Field& K, Mat& M) {
  std::vector<int> piv;
  if (M.empty()) return piv;
  int rows = static_cast<int>(M.size()), cols = static_cast<int>(M[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (!K.is_zero(M[i][c])) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(M[r], M[sel]);
    Elem iv = K.inv(M[r][c]);
    for (int j = c; j < cols; ++j)
      if (!K.is_zero(M[r][j])) M[r][j] = K.mul(M[r][j], iv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || K.is_zero(M[i][c])) continue;
      Elem f = M[i][c];
      for (int j = c; j < cols; ++j)
        if (!K.is_zero(M[r][j])) M[i][j] = K.sub(M[i][j], K.mul(f, M[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  M.resize(r);
  return piv;
}

int rank(const Field& K, Mat M) { return static_cast<int>(rref(K, M).size()); }

Mat kernel(const Field& K, const Mat& M0) {
  Mat M = M0;
  int cols = M.empty() ? 0 : static_cast<int>(M[0].size());
  std::vector<int> piv = rref(K, M);
  std::vector<char> is_piv(cols, 0);
  for (int c : piv) is_piv[c] = 1;
  Mat out;
  for (int c = 0; c < cols; ++c) {
    if (is_piv[c]) continue;
    Vec v(cols, K.zero());
    v[c] = K.one();
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = K.neg(M[i][c]);
    out.push_back(std::move(v));
  }
  return out;
}

Mat left_kernel(const Field& K, const Mat& M) { return kernel(K, mat_transpose(M)); }

bool inverse(const Field& K, const Mat& M, Mat& out) {
  int n = static_cast<int>(M.size());
  Mat A = M;
  for (int i = 0; i < n; ++i) {
    A[i].resize(2 * n, K.zero());
    A[i][n + i] = K.one();
  }
  std::vector<int> piv = rref(K, A);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return false;
  out.assign(n, Vec());
  for (int i = 0; i < n; ++i) out[i].assign(A[i].begin() + n, A[i].end());
  return true;
}

Elem determinant(const Field& K, Mat M) {
  int n = static_cast<int>(M.size());
  Elem det = K.one();
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (!K.is_zero(M[i][c])) { sel = i; break; }
    if (sel < 0) return K.zero();
    if (sel != c) {
      std::swap(M[c], M[sel]);
      det = K.neg(det);
    }
    det = K.mul(det, M[c][c]);
    Elem iv = K.inv(M[c][c]);
    for (int i = c + 1; i < n; ++i) {
      if (K.is_zero(M[i][c])) continue;
      Elem f = K.mul(M[i][c], iv);
      for (int j = c; j < n; ++j) M[i][j] = K.sub(M[i][j], K.mul(f, M[c][j]));
    }
  }
  return det;
}

bool solve(const Field& K, const Mat& M, const Vec& b, Vec& x) {
  int rows = static_cast<int>(M.size());
  int cols = rows ? static_cast<int>(M[0].size()) : 0;
  Mat A = M;
  for (int i = 0; i < rows; ++i) A[i].push_back(b[i]);
  std::vector<int> piv = rref(K, A);
  if (!piv.empty() && piv.back() == cols) return false;
  x.assign(cols, K.zero());
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = A[i][cols];
  return true;
}

// ---------- integer lattices ----------

ZMat hermite_normal_form(ZMat M) {
  if (M.empty()) return M;
  int rows = static_cast<int>(M.size()), cols = static_cast<int>(M[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    for (int i = r + 1; i < rows; ++i) {
      while (M[i][c] != 0) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), M[r][c].get_mpz_t(), M[i][c].get_mpz_t());
        for (int j = c; j < cols; ++j) M[r][j] -= q * M[i][j];
        std::swap(M[r], M[i]);
      }
    }
    if (M[r][c] == 0) continue;
    if (M[r][c] < 0)
      for (int j = c; j < cols; ++j) M[r][j] = -M[r][j];
    for (int i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), M[i][c].get_mpz_t(), M[r][c].get_mpz_t());
      if (q != 0)
        for (int j = c; j < cols; ++j) M[i][j] -= q * M[r][j];
    }
    ++r;
  }
  M.resize(r);
  return M;
}

ZMat integer_kernel(const ZMat& M, int cols) {
  // Unimodular row reduction of [M^t | I]: rows whose left part vanishes span the kernel.
  int m = static_cast<int>(M.size());
  ZMat A(cols, std::vector<mpz_class>(m + cols, 0));
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < m; ++i) A[j][i] = M[i][j];
    A[j][m + j] = 1;
  }
  int r = 0;
  for (int c = 0; c < m && r < cols; ++c) {
    for (int i = r + 1; i < cols; ++i) {
      while (A[i][c] != 0) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A[r][c].get_mpz_t(), A[i][c].get_mpz_t());
        for (int j = 0; j < m + cols; ++j) A[r][j] -= q * A[i][j];
        std::swap(A[r], A[i]);
      }
    }
    if (A[r][c] != 0) ++r;
  }
  ZMat K;
  for (int i = r; i < cols; ++i) {
    bool zero = true;
    for (int c = 0; c < m; ++c)
      if (A[i][c] != 0) { zero = false; break; }
    if (zero) K.emplace_back(A[i].begin() + m, A[i].end());
  }
  return hermite_normal_form(K);
}

}  // namespace pvforge
