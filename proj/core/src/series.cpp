#include "pvforge/series.hpp"

#include "pvforge/factor.hpp"

#include <functional>
#include <sstream>

namespace pvforge {

// ---------- series arithmetic ----------

Series SeriesRing::zero() const { return Series{std::vector<Elem>(N_, C_.zero())}; }

Series SeriesRing::constant(const Elem& a) const {
  Series s = zero();
  if (N_ > 0) s.c[0] = a;
  return s;
}

Series SeriesRing::var() const {
  Series s = zero();
  if (N_ > 1) s.c[1] = C_.one();
  return s;
}

Series SeriesRing::add(const Series& a, const Series& b) const {
  Series r = zero();
  for (int j = 0; j < N_; ++j) r.c[j] = C_.add(a.c[j], b.c[j]);
  return r;
}

Series SeriesRing::sub(const Series& a, const Series& b) const {
  Series r = zero();
  for (int j = 0; j < N_; ++j) r.c[j] = C_.sub(a.c[j], b.c[j]);
  return r;
}

Series SeriesRing::neg(const Series& a) const {
  Series r = zero();
  for (int j = 0; j < N_; ++j) r.c[j] = C_.neg(a.c[j]);
  return r;
}

Series SeriesRing::mul(const Series& a, const Series& b) const {
  Series r = zero();
  for (int i = 0; i < N_; ++i) {
    if (C_.is_zero(a.c[i])) continue;
    for (int j = 0; i + j < N_; ++j)
      if (!C_.is_zero(b.c[j])) r.c[i + j] = C_.add(r.c[i + j], C_.mul(a.c[i], b.c[j]));
  }
  return r;
}

Series SeriesRing::scale(const Series& a, const Elem& k) const {
  Series r = zero();
  for (int j = 0; j < N_; ++j) r.c[j] = C_.mul(a.c[j], k);
  return r;
}

Series SeriesRing::inv(const Series& a) const {
  if (N_ == 0) return zero();
  if (C_.is_zero(a.c[0])) throw Error(Error::Kind::Domain, "series inverse: zero constant term");
  Series r = zero();
  Elem i0 = C_.inv(a.c[0]);
  r.c[0] = i0;
  for (int j = 1; j < N_; ++j) {
    Elem s = C_.zero();
    for (int i = 1; i <= j; ++i)
      if (!C_.is_zero(a.c[i])) s = C_.add(s, C_.mul(a.c[i], r.c[j - i]));
    r.c[j] = C_.neg(C_.mul(s, i0));
  }
  return r;
}

Series SeriesRing::deriv(const Series& a) const {
  Series r = zero();
  for (int j = 0; j + 1 < N_; ++j) r.c[j] = C_.mul(a.c[j + 1], C_.from_int(j + 1));
  return r;
}

Series SeriesRing::poly_at(const EPoly& p, const Elem& t0) const {
  // Horner in t = t0 + s.
  Series r = zero();
  Series t = add(constant(t0), var());
  for (size_t i = p.size(); i-- > 0;) r = add(mul(r, t), constant(p[i]));
  return r;
}

bool SeriesRing::is_zero(const Series& a) const {
  for (const Elem& e : a.c)
    if (!C_.is_zero(e)) return false;
  return true;
}

int SeriesRing::valuation(const Series& a) const {
  for (int j = 0; j < N_; ++j)
    if (!C_.is_zero(a.c[j])) return j;
  return N_;
}

// ---------- embedding of a function field ----------

SeriesEmbedding::SeriesEmbedding(Field K, Elem t0, int N)
    : K_(std::move(K)), C_(constant_field(K_)), t0_(std::move(t0)), S_(C_, N), tl_(K_.T->trans_level()) {
  if (tl_ < 0 || tl_ > K_.L) throw Error(Error::Kind::Domain, "series embedding needs the variable t");
  gens_.resize(K_.L + 1);
  gens_[tl_] = S_.add(S_.constant(t0_), S_.var());
  for (int l = tl_ + 1; l <= K_.L; ++l) {
    const Level& lev = K_.T->level(l);
    if (lev.kind != LevelKind::Algebraic) throw Error(Error::Kind::Unsupported, "series embedding: second transcendental level");
    std::vector<Series> P;
    for (const Elem& c : lev.minpoly) P.push_back(eval(l - 1, c));
    EPoly p0;
    for (const Series& s : P) p0.push_back(s.c.empty() ? C_.zero() : s.c[0]);
    C_.T->ptrim(C_.L, p0);
    EPoly dp0 = C_.T->pdiff(C_.L, p0);
    Elem z0;
    bool found = false;
    for (const Elem& r : roots(C_, p0))
      if (!C_.is_zero(C_.T->peval(C_.L, dp0, r))) {
        z0 = r;
        found = true;
        break;
      }
    if (!found)
      throw Error(Error::Kind::Unsupported, "no simple constant branch of " + lev.name + " at the base point");
    // Newton iteration, doubling the number of correct terms.
    auto evalp = [&](const Series& z, bool deriv) {
      Series r = S_.zero();
      int top = static_cast<int>(P.size()) - 1;
      for (int i = top; i >= (deriv ? 1 : 0); --i) {
        Series term = deriv ? S_.scale(P[i], C_.from_int(i)) : P[i];
        r = S_.add(S_.mul(r, z), term);
      }
      return r;
    };
    Series z = S_.constant(z0);
    for (int prec = 1; prec < N; prec *= 2) z = S_.sub(z, S_.mul(evalp(z, false), S_.inv(evalp(z, true))));
    z = S_.sub(z, S_.mul(evalp(z, false), S_.inv(evalp(z, true))));
    gens_[l] = z;
  }
}

Series SeriesEmbedding::eval(int level, const Elem& a) const {
  if (level < tl_) return S_.constant(K_.T->embed(level, C_.L, a));
  if (level == tl_) {
    Series n = S_.poly_at(a.num, t0_);
    if (a.den.size() == 1) return S_.scale(n, C_.inv(a.den[0]));
    Series d = S_.poly_at(a.den, t0_);
    if (C_.is_zero(d.c[0])) throw Error(Error::Kind::Domain, "pole at the base point");
    return S_.mul(n, S_.inv(d));
  }
  Series r = S_.zero();
  for (size_t i = a.num.size(); i-- > 0;) r = S_.add(S_.mul(r, gens_[level]), eval(level - 1, a.num[i]));
  return r;
}

Elem SeriesEmbedding::value(const Elem& a) const {
  SeriesEmbedding one(K_, t0_, 1);
  return one(a).c[0];
}

bool SeriesEmbedding::regular(const Elem& a) const {
  try {
    value(a);
    return true;
  } catch (const Error&) {
    return false;
  }
}

SeriesMatrix fundamental_series(const SeriesEmbedding& E, const Mat& A) {
  const SeriesRing& S = E.ring();
  const Field& C = S.field();
  int n = static_cast<int>(A.size()), N = S.order();
  std::vector<std::vector<Series>> a(n, std::vector<Series>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = E(A[i][j]);
  SeriesMatrix M;
  M.t0 = E.point();
  M.n = n;
  M.N = N;
  M.F.assign(n, std::vector<Series>(n, S.zero()));
  for (int i = 0; i < n && N > 0; ++i) M.F[i][i].c[0] = C.one();
  // (j+1) F_{j+1} = Σ_i A_i F_{j-i}
  for (int j = 0; j + 1 < N; ++j) {
    Elem inv = C.inv(C.from_int(j + 1));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        Elem s = C.zero();
        for (int k = 0; k < n; ++k)
          for (int i = 0; i <= j; ++i) {
            const Elem& x = a[r][k].c[i];
            const Elem& y = M.F[k][c].c[j - i];
            if (!C.is_zero(x) && !C.is_zero(y)) s = C.add(s, C.mul(x, y));
          }
        M.F[r][c].c[j + 1] = C.mul(s, inv);
      }
  }
  return M;
}

SeriesMatrix series_times_constant(const SeriesRing& S, const SeriesMatrix& F, const Mat& g) {
  SeriesMatrix out = F;
  for (int i = 0; i < F.n; ++i)
    for (int j = 0; j < F.n; ++j) {
      Series s = S.zero();
      for (int k = 0; k < F.n; ++k) s = S.add(s, S.scale(F.F[i][k], g[k][j]));
      out.F[i][j] = s;
    }
  return out;
}

Series eval_poly_on_series(const PolyRing& R, const MPoly& P, const SeriesMatrix& F, const SeriesEmbedding& E) {
  const SeriesRing& S = E.ring();
  int n = F.n;
  int nv = R.n();
  std::vector<Series> vals(nv);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vals[i * n + j] = F.F[i][j];
  if (nv == n * n + 1) {
    // 1/det F by cofactor expansion on series.
    std::function<Series(std::vector<int>, int)> det = [&](std::vector<int> cols, int row) -> Series {
      if (cols.empty()) return S.constant(S.field().one());
      Series acc = S.zero();
      for (size_t k = 0; k < cols.size(); ++k) {
        std::vector<int> rest = cols;
        rest.erase(rest.begin() + static_cast<long>(k));
        Series term = S.mul(F.F[row][cols[k]], det(rest, row + 1));
        acc = (k % 2) ? S.sub(acc, term) : S.add(acc, term);
      }
      return acc;
    };
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = j;
    vals[n * n] = S.inv(det(cols, 0));
  } else if (nv != n * n) {
    throw Error(Error::Kind::Domain, "ring does not match the matrix size");
  }
  std::vector<std::vector<Series>> pw(nv);
  auto power = [&](int v, int e) -> const Series& {
    auto& cache = pw[v];
    if (cache.empty()) cache.push_back(S.constant(S.field().one()));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(S.mul(cache.back(), vals[v]));
    return cache[e];
  };
  Series out = S.zero();
  for (const Term& t : P.terms) {
    Series m = E(t.c);
    for (int v = 0; v < nv; ++v)
      if (t.m.e[v]) m = S.mul(m, power(v, t.m.e[v]));
    out = S.add(out, m);
  }
  return out;
}

std::string series_str(const Field& C, const Series& a, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < a.c.size(); ++j) {
    if (C.is_zero(a.c[j])) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << C.str(a.c[j]) << ")";
    if (j) os << "*" << var << "^" << j;
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << a.c.size() << ")";
  return os.str();
}

std::string dump_series(const Field& C, const SeriesMatrix& F) {
  std::ostringstream os;
  os << "series t0=" << C.str(F.t0) << " order=" << F.N << "\n";
  for (int j = 0; j < F.N; ++j) {
    os << "F_" << j << " =";
    for (int r = 0; r < F.n; ++r) {
      os << (r ? "; " : " [");
      for (int c = 0; c < F.n; ++c) os << (c ? ", " : "") << C.str(F.F[r][c].c[j]);
    }
    os << "]\n";
  }
  return os.str();
}

// ---------- modular series ----------

namespace {

bool poly_modp(const EPoly& p, const ModP& F, std::vector<u64>& out) {
  out.assign(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i)
    if (!F.reduce(p[i].q, out[i])) return false;
  return true;
}

SeriesP shift_modp(const std::vector<u64>& p, u64 t0, int N, const ModP& F) {
  // p(t0 + s) truncated to N terms, via repeated synthetic division.
  std::vector<u64> a = p;
  SeriesP out(N, 0);
  for (int j = 0; j < N && !a.empty(); ++j) {
    u64 r = 0;
    std::vector<u64> q(a.size() > 1 ? a.size() - 1 : 0, 0);
    for (size_t i = a.size(); i-- > 0;) {
      u64 nr = F.add(F.mul(r, t0), a[i]);
      if (i > 0) q[i - 1] = nr;
      r = nr;
    }
    out[j] = r;
    a = q;
  }
  return out;
}

SeriesP inv_modp(const ModP& F, const SeriesP& a, int N) {
  SeriesP r(N, 0);
  u64 i0 = F.inv(a[0]);
  r[0] = i0;
  for (int j = 1; j < N; ++j) {
    u64 s = 0;
    for (int i = 1; i <= j && i < static_cast<int>(a.size()); ++i) s = F.add(s, F.mul(a[i], r[j - i]));
    r[j] = F.neg(F.mul(s, i0));
  }
  return r;
}

}  // namespace

SeriesP series_mul_modp(const ModP& F, const SeriesP& a, const SeriesP& b, int N) {
  SeriesP r(N, 0);
  int na = std::min<int>(N, static_cast<int>(a.size()));
  for (int i = 0; i < na; ++i) {
    if (!a[i]) continue;
    u64 ai = a[i];
    int nb = std::min<int>(N - i, static_cast<int>(b.size()));
    for (int j = 0; j < nb; ++j)
      if (b[j]) r[i + j] = F.add(r[i + j], F.mul(ai, b[j]));
  }
  return r;
}

bool series_modp(const Field& K, const Elem& a, const mpq_class& t0, int N, const ModP& F, SeriesP& out) {
  if (K.L != 1 || K.top().kind != LevelKind::Transcendental) throw Error(Error::Kind::Unsupported, "modular series need Q(t)");
  u64 tp;
  if (!F.reduce(t0, tp)) return false;
  std::vector<u64> n, d;
  if (!poly_modp(a.num, F, n) || !poly_modp(a.den, F, d)) return false;
  SeriesP ns = shift_modp(n, tp, N, F), ds = shift_modp(d, tp, N, F);
  if (N > 0 && ds[0] == 0) return false;
  out = series_mul_modp(F, ns, inv_modp(F, ds, N), N);
  return true;
}

bool fundamental_series_modp(const Field& K, const Mat& A, const mpq_class& t0, int N, const ModP& F,
                             std::vector<std::vector<SeriesP>>& out) {
  int n = static_cast<int>(A.size());
  std::vector<std::vector<SeriesP>> a(n, std::vector<SeriesP>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!series_modp(K, A[i][j], t0, N, F, a[i][j])) return false;
  out.assign(n, std::vector<SeriesP>(n, SeriesP(N, 0)));
  for (int i = 0; i < n && N > 0; ++i) out[i][i][0] = 1;
  for (int j = 0; j + 1 < N; ++j) {
    u64 iv = F.inv(static_cast<u64>(j + 1) % F.p);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        u64 s = 0;
        for (int k = 0; k < n; ++k)
          for (int i = 0; i <= j; ++i) {
            u64 x = a[r][k][i];
            if (x) s = F.add(s, F.mul(x, out[k][c][j - i]));
          }
        out[r][c][j + 1] = F.mul(s, iv);
      }
  }
  return true;
}

}  // namespace pvforge
