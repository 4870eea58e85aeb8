// Truncated power series at an ordinary point and the formal fundamental matrix.
#pragma once

#include "pvforge/linalg.hpp"
#include "pvforge/mpoly.hpp"

#include <string>
#include <vector>

namespace pvforge {

// Coefficients of Σ c_j s^j, s = t - t0, j < N.
struct Series {
  std::vector<Elem> c;
};

class SeriesRing {
 public:
  SeriesRing(Field C, int N) : C_(std::move(C)), N_(N) {}
  const Field& field() const { return C_; }
  int order() const { return N_; }

  Series zero() const;
  Series constant(const Elem& a) const;
  Series var() const;  // s
  Series add(const Series& a, const Series& b) const;
  Series sub(const Series& a, const Series& b) const;
  Series neg(const Series& a) const;
  Series mul(const Series& a, const Series& b) const;
  Series scale(const Series& a, const Elem& k) const;
  Series inv(const Series& a) const;  // needs an invertible constant term
  Series deriv(const Series& a) const;  // d/ds; the top coefficient is lost
  Series poly_at(const EPoly& p, const Elem& t0) const;  // p(t0 + s)
  bool is_zero(const Series& a) const;
  int valuation(const Series& a) const;  // N if zero

 private:
  Field C_;
  int N_;
};

// Embeds a function field K (constants, t, algebraic levels above t) into C[[t - t0]].
// Each algebraic generator takes the first simple root in C of its minimal polynomial at t0.
class SeriesEmbedding {
 public:
  SeriesEmbedding(Field K, Elem t0, int N);
  const Field& field() const { return K_; }
  const SeriesRing& ring() const { return S_; }
  const Elem& point() const { return t0_; }
  Series operator()(const Elem& a) const { return eval(K_.L, a); }
  Elem value(const Elem& a) const;  // value at t0
  bool regular(const Elem& a) const;  // no pole at t0

 private:
  Series eval(int level, const Elem& a) const;
  Field K_;
  Field C_;
  Elem t0_;
  SeriesRing S_;
  int tl_;
  std::vector<Series> gens_;  // index = level
};

struct SeriesMatrix {
  Elem t0;
  int n = 0;
  int N = 0;
  std::vector<std::vector<Series>> F;
};

// F with F(t0) = I and δF = A F to order N-1. Throws Domain if t0 is a pole of A.
SeriesMatrix fundamental_series(const SeriesEmbedding& E, const Mat& A);
// Multiplies on the right by a constant matrix.
SeriesMatrix series_times_constant(const SeriesRing& S, const SeriesMatrix& F, const Mat& g);

// P(F); the inverse determinant variable, if present in R, maps to 1/det F.
// Coefficients of P must lie in E.field() and be regular at t0; the result is exact to order N.
Series eval_poly_on_series(const PolyRing& R, const MPoly& P, const SeriesMatrix& F, const SeriesEmbedding& E);

std::string series_str(const Field& C, const Series& a, const std::string& var);
std::string dump_series(const Field& C, const SeriesMatrix& F);

// ---------- modular series over Q(t) ----------

using SeriesP = std::vector<u64>;

// Series of a ∈ Q(t) at the rational point t0 modulo p; false if p is bad or t0 is a pole.
bool series_modp(const Field& K, const Elem& a, const mpq_class& t0, int N, const ModP& F, SeriesP& out);
bool fundamental_series_modp(const Field& K, const Mat& A, const mpq_class& t0, int N, const ModP& F,
                             std::vector<std::vector<SeriesP>>& out);
SeriesP series_mul_modp(const ModP& F, const SeriesP& a, const SeriesP& b, int N);

}  // namespace pvforge
