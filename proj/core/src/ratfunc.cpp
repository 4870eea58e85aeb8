#include "pvforge/ratfunc.hpp"

#include "pvforge/factor.hpp"

#include <algorithm>
#include <sstream>

namespace pvforge {

namespace {

void require_top_t(const Field& K) {
  if (K.L == 0 || K.top().kind != LevelKind::Transcendental)
    throw Error(Error::Kind::Domain, "expected a rational function field");
}

EPoly one_poly(const Field& C) { return EPoly{C.one()}; }

bool poly_less(const Field& C, const EPoly& a, const EPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;) {
    int c = C.cmp(a[i], b[i]);
    if (c) return c < 0;
  }
  return false;
}

}  // namespace

PartialFractions partial_fractions(const Field& K, const Elem& r) {
  require_top_t(K);
  Field C = K.base();
  const Tower& T = *K.T;
  PartialFractions pf;
  EPoly rem;
  T.pdivrem(C.L, r.num, r.den, pf.poly, rem);
  if (rem.empty()) return pf;
  for (const Factor& fa : factor(C, r.den)) {
    EPoly qe = one_poly(C);
    for (int i = 0; i < fa.mult; ++i) qe = T.pmul(C.L, qe, fa.f);
    EPoly rest = T.pquo(C.L, r.den, qe);
    EPoly s, tt;
    T.pxgcd(C.L, rest, qe, s, tt);
    EPoly nq = T.prem(C.L, T.pmul(C.L, rem, s), qe);
    PoleTerm p;
    p.q = fa.f;
    p.ladder.assign(fa.mult, EPoly{});
    for (int j = 0; j < fa.mult; ++j) {
      EPoly quo, b;
      T.pdivrem(C.L, nq, fa.f, quo, b);
      p.ladder[fa.mult - j - 1] = b;
      nq = quo;
    }
    while (!p.ladder.empty() && p.ladder.back().empty()) p.ladder.pop_back();
    if (!p.ladder.empty()) pf.poles.push_back(std::move(p));
  }
  return pf;
}

Elem recombine(const Field& K, const PartialFractions& pf) {
  Field C = K.base();
  const Tower& T = *K.T;
  Elem out = T.frac(K.L, pf.poly, one_poly(C));
  for (const PoleTerm& p : pf.poles) {
    EPoly qk = one_poly(C);
    for (int k = 1; k <= p.order(); ++k) {
      qk = T.pmul(C.L, qk, p.q);
      out = K.add(out, T.frac(K.L, p.ladder[k - 1], qk));
    }
  }
  return out;
}

EPoly residue_ratio(const Field& K, const PoleTerm& p) {
  Field C = K.base();
  const Tower& T = *K.T;
  if (p.ladder.empty()) return {};
  EPoly dq = T.pdiff(C.L, p.q), s, tt;
  T.pxgcd(C.L, dq, p.q, s, tt);
  return T.prem(C.L, T.pmul(C.L, p.ladder[0], s), p.q);
}

std::optional<LogDerivWitness> is_log_derivative(const Field& K, const Elem& r) {
  PartialFractions pf = partial_fractions(K, r);
  if (!pf.poly.empty()) return std::nullopt;
  Field C = K.base();
  LogDerivWitness w;
  w.infinity = 0;
  for (const PoleTerm& p : pf.poles) {
    if (p.order() > 1) return std::nullopt;
    EPoly e = residue_ratio(K, p);
    if (e.size() > 1) return std::nullopt;
    std::vector<mpq_class> q = rational_coordinates(C, e.empty() ? C.zero() : e[0]);
    for (size_t i = 1; i < q.size(); ++i)
      if (q[i] != 0) return std::nullopt;
    if (q[0] == 0) continue;
    w.q.push_back(p.q);
    w.e.push_back(q[0]);
    w.infinity -= q[0] * static_cast<long>(p.q.size() - 1);
  }
  return w;
}

Elem log_derivative(const Field& K, const LogDerivWitness& w) {
  Field C = K.base();
  const Tower& T = *K.T;
  Elem out = K.zero();
  for (size_t i = 0; i < w.q.size(); ++i) {
    EPoly n = T.pscale(C.L, T.pdiff(C.L, w.q[i]), C.from_rat(w.e[i]));
    out = K.add(out, T.frac(K.L, n, w.q[i]));
  }
  return out;
}

std::string witness_str(const Field& K, const LogDerivWitness& w) {
  if (w.q.empty()) return "1";
  Field C = K.base();
  std::string var = K.top().name;
  std::ostringstream os;
  for (size_t i = 0; i < w.q.size(); ++i) {
    if (i) os << "*";
    os << "(" << K.T->pstr(C.L, w.q[i], var) << ")";
    if (w.e[i] != 1) os << "^(" << w.e[i].get_str() << ")";
  }
  return os.str();
}

std::vector<EPoly> pole_support(const Field& K, const std::vector<Elem>& rs) {
  Field C = K.base();
  std::vector<EPoly> out;
  for (const Elem& r : rs)
    for (const Factor& fa : factor(C, r.den)) {
      bool seen = false;
      for (const EPoly& q : out)
        if (K.T->peq(C.L, q, fa.f)) { seen = true; break; }
      if (!seen) out.push_back(fa.f);
    }
  std::sort(out.begin(), out.end(), [&](const EPoly& a, const EPoly& b) { return poly_less(C, a, b); });
  return out;
}

}  // namespace pvforge
