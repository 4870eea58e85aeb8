#include "pvforge/descent.hpp"

#include <numeric>

namespace pvforge {

namespace {

struct Radical {
  int D = 2;
  Elem g;            // in the standard Q(t)
  bool quadratic = false;
  Elem b;            // root = (-b + z) / 2 for a quadratic y^2 + b y + c
};

// Moves an element of level tl of K (coefficients rational) into the standard Q(t).
bool to_standard_qt(const Field& K, int tl, const Elem& a, Elem& out) {
  const Tower& T = *K.T;
  Field Qt = Field::Qt();
  auto low = [&](const EPoly& p, EPoly& q) {
    q.clear();
    for (auto& c : p) {
      Elem r;
      if (!T.lower(tl - 1, 0, c, r)) return false;
      q.push_back(Qt.T->from_rat(0, r.q));
    }
    return true;
  };
  EPoly n, d;
  if (!low(a.num, n) || !low(a.den, d)) return false;
  out = Qt.T->frac(1, n, d);
  return true;
}

Elem from_standard_qt(const Field& Kc, int tl, const Elem& a) {
  const Tower& T = *Kc.T;
  EPoly n, d;
  for (auto& c : a.num) n.push_back(T.from_rat(tl - 1, c.q));
  for (auto& c : a.den) d.push_back(T.from_rat(tl - 1, c.q));
  return Kc.embed_from(tl, T.frac(tl, n, d));
}

}  // namespace

EPoly cyclotomic(int L) {
  const Tower& T = *Tower::rationals();
  EPoly p(L + 1, T.zero(0));
  p[0] = T.from_rat(0, -1);
  p[L] = T.one(0);
  for (int d = 1; d < L; ++d)
    if (L % d == 0) p = T.pquo(0, p, cyclotomic(d));
  return p;
}

GaloisClosure galois_closure(const Field& K) {
  const Tower& T = *K.T;
  int tl = T.trans_level();
  if (tl != 1) throw Error(Error::Kind::Unsupported, "descent needs Q(t) as the base field");
  GaloisClosure G;
  G.source = K;
  std::vector<Radical> rads;
  for (int l = tl + 1; l <= K.L; ++l) {
    const Level& lev = T.level(l);
    const EPoly& mp = lev.minpoly;
    int D = static_cast<int>(mp.size()) - 1;
    Radical r;
    r.D = D;
    bool radical = true;
    for (int i = 1; i < D; ++i)
      if (!T.is_zero(l - 1, mp[i])) radical = false;
    Elem c0, c1;
    if (radical) {
      if (!T.lower(l - 1, tl, T.neg(l - 1, mp[0]), c0) || !to_standard_qt(K, tl, c0, r.g))
        throw Error(Error::Kind::Unsupported, "radical level " + lev.name + " is not over Q(t)");
    } else if (D == 2) {
      Elem b, c;
      if (!T.lower(l - 1, tl, mp[1], c1) || !T.lower(l - 1, tl, mp[0], c0) || !to_standard_qt(K, tl, c1, b) ||
          !to_standard_qt(K, tl, c0, c))
        throw Error(Error::Kind::Unsupported, "quadratic level " + lev.name + " is not over Q(t)");
      Field Qt = Field::Qt();
      r.quadratic = true;
      r.b = b;
      r.g = Qt.sub(Qt.mul(b, b), Qt.mul(Qt.from_int(4), c));
    } else {
      throw Error(Error::Kind::Unsupported, "level " + lev.name + " is neither a radical nor a quadratic");
    }
    rads.push_back(r);
  }
  int L = 1;
  for (auto& r : rads) L = std::lcm(L, r.D);
  G.L = L;

  TowerPtr C = Tower::rationals();
  if (L > 2) {
    C = C->adjoin_algebraic(0, "w", cyclotomic(L));
    G.root_level = 1;
  }
  int cl = C->top();
  TowerPtr Tc = C->adjoin_transcendental(cl, T.level(tl).name);
  G.t_level = cl + 1;
  std::vector<std::string> names;
  for (size_t i = 0; i < rads.size(); ++i) {
    int top = Tc->top();
    EPoly mp(rads[i].D + 1, Tc->zero(top));
    Field cur(Tc, top);
    mp[0] = cur.neg(from_standard_qt(cur, G.t_level, rads[i].g));
    mp[rads[i].D] = Tc->one(top);
    std::string name = "z" + std::to_string(i + 1);
    Tc = Tc->adjoin_algebraic(top, name, mp);
  }
  G.K = Field(Tc, Tc->top());
  const Field& Kc = G.K;
  Elem zeta = L > 2 ? Kc.gen(1) : Kc.from_int(L == 2 ? -1 : 1);

  // source images
  G.embed.assign(K.L + 1, Kc.zero());
  G.embed[tl] = Kc.gen(G.t_level);
  for (size_t i = 0; i < rads.size(); ++i) {
    Elem z = Kc.gen(G.t_level + 1 + static_cast<int>(i));
    if (rads[i].quadratic) {
      Elem b = from_standard_qt(Kc, G.t_level, rads[i].b);
      z = Kc.div(Kc.sub(z, b), Kc.from_int(2));
    }
    G.embed[tl + 1 + i] = z;
  }

  std::vector<int> units;
  for (int u = 1; u <= std::max(1, L - 1); ++u)
    if (std::gcd(u, L) == 1) units.push_back(u);
  if (L <= 2) units = {1};
  std::vector<int> j(rads.size(), 0);
  for (int u : units) {
    std::fill(j.begin(), j.end(), 0);
    for (;;) {
      std::vector<Elem> img(Kc.L + 1, Kc.zero());
      if (G.root_level > 0) img[G.root_level] = Kc.pow(zeta, u);
      img[G.t_level] = Kc.gen(G.t_level);
      for (size_t i = 0; i < rads.size(); ++i) {
        int lev = G.t_level + 1 + static_cast<int>(i);
        Elem factor = Kc.pow(zeta, static_cast<long>(j[i]) * (L / rads[i].D));
        img[lev] = Kc.mul(factor, Kc.gen(lev));
      }
      G.automorphisms.push_back(img);
      G.fixes_constants.push_back(u == 1);
      size_t k = 0;
      while (k < rads.size() && ++j[k] == rads[k].D) j[k++] = 0;
      if (k == rads.size()) break;
    }
  }
  return G;
}

std::vector<DiffIdeal> orbit(const DiffIdeal& S, const GaloisClosure& G, bool fix_constants) {
  DiffIdeal Sc = ideal_mapped(S, G.embedding());
  std::vector<DiffIdeal> out;
  for (size_t i = 0; i < G.automorphisms.size(); ++i) {
    if (fix_constants && !G.fixes_constants[i]) continue;
    DiffIdeal img = ideal_mapped(Sc, G.automorphism(i));
    bool seen = false;
    for (auto& o : out)
      if (ideal_equal(o, img)) seen = true;
    if (!seen) out.push_back(img);
  }
  return out;
}

DiffIdeal lower_to_qt(const DiffIdeal& I) {
  const Field& K = I.D.R.K;
  int tl = K.T->trans_level();
  if (K.L != tl) throw Error(Error::Kind::Domain, "ideal is not over a rational function field");
  Field Qt = Field::Qt();
  DiffRing D = I.D;
  D.R = I.D.R.with_field(Qt);
  for (auto& row : D.A)
    for (auto& a : row)
      if (!to_standard_qt(K, tl, Elem(a), a)) throw Error(Error::Kind::Unsupported, "system matrix is not over Q(t)");
  PolyList gens;
  for (auto& g : I.gb) {
    std::vector<Term> ts;
    for (auto& t : g.terms) {
      Elem c;
      if (!to_standard_qt(K, tl, t.c, c)) throw Error(Error::Kind::Unsupported, "descended ideal is not defined over Q(t)");
      ts.push_back(Term{t.m, c});
    }
    gens.push_back(mp_from_terms(D.R, ts));
  }
  DiffIdeal J;
  J.D = D;
  J.gens = gens;
  J.gb = groebner(D.R, gens);
  J.radical = I.radical;
  J.prime = I.prime;
  J.delta_ok = I.delta_ok;
  return J;
}

DescentResult descend(const DiffIdeal& S, const GaloisClosure& G, bool fix_constants) {
  DescentResult res;
  std::vector<DiffIdeal> orb = orbit(S, G, fix_constants);
  res.orbit_size = static_cast<int>(orb.size());
  DiffIdeal I = orb.front();
  for (size_t i = 1; i < orb.size(); ++i) I = intersect(I, orb[i]);
  I.radical = true;
  res.intersection = I;
  DiffIdeal c = contract(I, Field(G.K.T, G.t_level));
  res.m = lower_to_qt(c);
  if (!is_delta_ideal(res.m)) throw Error(Error::Kind::Verify, "descended ideal is not a δ-ideal");
  res.m.radical = true;
  res.m.prime = true;
  return res;
}

}  // namespace pvforge
