#include "pvforge/groebner.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace pvforge {

namespace {

const MPoly* find_reducer(const PolyRing& R, const PolyList& G, const Mono& m, size_t* idx = nullptr) {
  for (size_t i = 0; i < G.size(); ++i)
    if (!G[i].is_zero() && mono_divides(R.n(), G[i].lead().m, m)) {
      if (idx) *idx = i;
      return &G[i];
    }
  return nullptr;
}

MPoly spoly(const PolyRing& R, const MPoly& a, const MPoly& b) {
  int n = R.n();
  Mono l = mono_lcm(n, a.lead().m, b.lead().m);
  MPoly x = mp_mul_term(R, a, mono_div(n, l, a.lead().m), R.K.inv(a.lead().c));
  MPoly y = mp_mul_term(R, b, mono_div(n, l, b.lead().m), R.K.inv(b.lead().c));
  return mp_sub(R, x, y);
}

bool coprime(int n, const Mono& a, const Mono& b) {
  for (int i = 0; i < n; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

void sort_basis(const PolyRing& R, PolyList& G) {
  std::sort(G.begin(), G.end(), [&](const MPoly& a, const MPoly& b) { return mono_cmp(R, a.lead().m, b.lead().m) < 0; });
}

PolyRing prepend_var(const PolyRing& R, const std::string& name) {
  std::vector<std::string> v{name};
  v.insert(v.end(), R.vars.begin(), R.vars.end());
  std::vector<int> b{1};
  b.insert(b.end(), R.blocks.begin(), R.blocks.end());
  return PolyRing(R.K, v, b);
}

}  // namespace

MPoly normal_form(const PolyRing& R, const MPoly& f, const PolyList& G) {
  MPoly p = f, r;
  while (!p.is_zero()) {
    const Term& lt = p.lead();
    const MPoly* g = find_reducer(R, G, lt.m);
    if (g) {
      Elem c = R.K.is_one(g->lead().c) ? lt.c : R.K.div(lt.c, g->lead().c);
      p = mp_sub(R, p, mp_mul_term(R, *g, mono_div(R.n(), lt.m, g->lead().m), c));
    } else {
      r.terms.push_back(lt);
      p.terms.erase(p.terms.begin());
    }
  }
  return r;
}

MPoly normal_form_cofactors(const PolyRing& R, const MPoly& f, const PolyList& G, PolyList& h) {
  h.assign(G.size(), MPoly{});
  MPoly p = f, r;
  while (!p.is_zero()) {
    const Term& lt = p.lead();
    size_t idx = 0;
    const MPoly* g = find_reducer(R, G, lt.m, &idx);
    if (g) {
      Elem c = R.K.div(lt.c, g->lead().c);
      Mono q = mono_div(R.n(), lt.m, g->lead().m);
      MPoly t;
      t.terms.push_back({q, c});
      h[idx] = mp_add(R, h[idx], t);
      p = mp_sub(R, p, mp_mul_term(R, *g, q, c));
    } else {
      r.terms.push_back(lt);
      p.terms.erase(p.terms.begin());
    }
  }
  return r;
}

PolyList groebner(const PolyRing& R, const PolyList& gens, const GBOptions& opt) {
  int n = R.n();
  PolyList G;
  std::vector<bool> live;
  struct Pair {
    size_t i, j;
    Mono lcm;
    int deg;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<size_t, size_t>> pending;
  auto add = [&](MPoly p) {
    p = mp_monic(R, p);
    if (p.is_constant()) {
      G.assign(1, p);
      live.assign(1, true);
      pairs.clear();
      pending.clear();
      return true;
    }
    size_t k = G.size();
    G.push_back(p);
    live.push_back(true);
    for (size_t i = 0; i < k; ++i) {
      Mono l = mono_lcm(n, G[i].lead().m, p.lead().m);
      pairs.push_back({i, k, l, l.deg(n)});
      pending.insert({i, k});
    }
    for (size_t i = 0; i < k; ++i)
      if (live[i] && mono_divides(n, p.lead().m, G[i].lead().m)) live[i] = false;
    return false;
  };
  for (auto& g : gens) {
    MPoly r = normal_form(R, g, G);
    if (r.is_zero()) continue;
    if (add(r)) return G;
  }
  std::size_t processed = 0;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.deg != b.deg) return a.deg < b.deg;
      return mono_cmp(R, a.lcm, b.lcm) < 0;
    });
    Pair pr = *best;
    pairs.erase(best);
    pending.erase({pr.i, pr.j});
    if (++processed > opt.max_pairs) throw Error(Error::Kind::Bound, "Gröbner basis pair budget exhausted");
    const MPoly& a = G[pr.i];
    const MPoly& b = G[pr.j];
    if (coprime(n, a.lead().m, b.lead().m)) continue;
    bool chain = false;
    for (size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!mono_divides(n, G[k].lead().m, pr.lcm)) continue;
      auto key = [](size_t x, size_t y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
      if (!pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k)) && k < std::max(pr.i, pr.j)) chain = true;
    }
    if (chain) continue;
    MPoly s = spoly(R, a, b);
    PolyList active;
    for (size_t k = 0; k < G.size(); ++k)
      if (live[k]) active.push_back(G[k]);
    MPoly r = normal_form(R, s, active);
    if (r.is_zero()) continue;
    if (add(r)) return G;
  }
  // minimalize and reduce
  PolyList M;
  for (size_t i = 0; i < G.size(); ++i) {
    bool red = false;
    for (size_t j = 0; j < G.size() && !red; ++j) {
      if (i == j) continue;
      if (mono_divides(n, G[j].lead().m, G[i].lead().m) && (!(G[j].lead().m == G[i].lead().m) || j < i)) red = true;
    }
    if (!red) M.push_back(G[i]);
  }
  sort_basis(R, M);
  PolyList out;
  for (size_t i = 0; i < M.size(); ++i) {
    PolyList others;
    for (size_t j = 0; j < M.size(); ++j)
      if (j != i) others.push_back(M[j]);
    MPoly tail;
    tail.terms.assign(M[i].terms.begin() + 1, M[i].terms.end());
    MPoly r = normal_form(R, tail, others);
    MPoly g;
    g.terms.push_back(M[i].lead());
    g = mp_add(R, g, r);
    out.push_back(mp_monic(R, g));
  }
  sort_basis(R, out);
  return out;
}

bool is_groebner(const PolyRing& R, const PolyList& G) {
  for (size_t i = 0; i < G.size(); ++i)
    for (size_t j = i + 1; j < G.size(); ++j)
      if (!normal_form(R, spoly(R, G[i], G[j]), G).is_zero()) return false;
  return true;
}

bool contains(const PolyRing& R, const PolyList& gb, const PolyList& f) {
  for (auto& p : f)
    if (!normal_form(R, p, gb).is_zero()) return false;
  return true;
}

bool ideal_equal(const PolyRing& R, const PolyList& a, const PolyList& b) {
  PolyList ga = groebner(R, a), gb = groebner(R, b);
  if (ga.size() != gb.size()) return false;
  for (size_t i = 0; i < ga.size(); ++i)
    if (!mp_eq(R, ga[i], gb[i])) return false;
  return true;
}

bool is_unit_ideal(const PolyRing& R, const PolyList& gb) {
  (void)R;
  return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
}

PolyList elimination_part(const PolyRing& R, const PolyList& gb, int k, const PolyRing& S) {
  PolyList out;
  for (auto& g : gb) {
    bool free = true;
    for (auto& t : g.terms) {
      for (int i = 0; i < k && free; ++i)
        if (t.m.e[i]) free = false;
      if (!free) break;
    }
    if (free) out.push_back(mp_rename(R, g, S));
  }
  sort_basis(S, out);
  return out;
}

PolyList intersect(const PolyRing& R, const PolyList& I, const PolyList& J) {
  PolyRing E = prepend_var(R, "_y");
  MPoly y = mp_var(E, 0);
  MPoly omy = mp_sub(E, mp_const(E, E.K.one()), y);
  PolyList gens;
  for (auto& f : I) gens.push_back(mp_mul(E, y, mp_rename(R, f, E)));
  for (auto& f : J) gens.push_back(mp_mul(E, omy, mp_rename(R, f, E)));
  PolyList gb = groebner(E, gens);
  return groebner(R, elimination_part(E, gb, 1, R));
}

PolyList saturate(const PolyRing& R, const PolyList& I, const MPoly& f) {
  PolyRing E = prepend_var(R, "_y");
  PolyList gens;
  for (auto& g : I) gens.push_back(mp_rename(R, g, E));
  MPoly fe = mp_rename(R, f, E);
  gens.push_back(mp_sub(E, mp_const(E, E.K.one()), mp_mul(E, mp_var(E, 0), fe)));
  PolyList gb = groebner(E, gens);
  return groebner(R, elimination_part(E, gb, 1, R));
}

PolyList quotient_element(const PolyRing& R, const PolyList& I, const MPoly& f) {
  PolyList J = intersect(R, I, {f});
  PolyList out;
  for (auto& g : J) {
    MPoly q;
    if (!poly_divide(R, g, f, q)) throw Error(Error::Kind::Domain, "ideal quotient: inexact division");
    out.push_back(q);
  }
  return groebner(R, out);
}

int krull_dimension(const PolyRing& R, const PolyList& gb) {
  if (is_unit_ideal(R, gb)) return -1;
  int n = R.n();
  std::vector<Mono> lms;
  for (auto& g : gb) lms.push_back(g.lead().m);
  int best = 0;
  std::vector<bool> inU(n, false);
  std::function<void(int, int)> rec = [&](int v, int size) {
    if (size + (n - v) <= best) return;
    if (v == n) {
      best = std::max(best, size);
      return;
    }
    inU[v] = true;
    bool ok = true;
    for (auto& m : lms) {
      bool inside = true;
      for (int i = 0; i < n && inside; ++i)
        if (m.e[i] && !inU[i]) inside = false;
      if (inside) { ok = false; break; }
    }
    if (ok) rec(v + 1, size + 1);
    inU[v] = false;
    rec(v + 1, size);
  };
  rec(0, 0);
  return best;
}

std::vector<Mono> monomials_up_to(int n, int d) {
  std::vector<Mono> out;
  for (int deg = 0; deg <= d; ++deg) {
    Mono m;
    std::function<void(int, int)> rec = [&](int v, int left) {
      if (v == n - 1 || n == 0) {
        if (n == 0) {
          if (left == 0) out.push_back(m);
          return;
        }
        m.e[v] = static_cast<std::uint16_t>(left);
        out.push_back(m);
        m.e[v] = 0;
        return;
      }
      for (int k = left; k >= 0; --k) {
        m.e[v] = static_cast<std::uint16_t>(k);
        rec(v + 1, left - k);
      }
      m.e[v] = 0;
    };
    rec(0, deg);
  }
  return out;
}

std::vector<Mono> standard_monomials(const PolyRing& R, const PolyList& gb, int d) {
  std::vector<Mono> out;
  if (is_unit_ideal(R, gb)) return out;
  for (auto& m : monomials_up_to(R.n(), d)) {
    bool std_m = true;
    for (auto& g : gb)
      if (mono_divides(R.n(), g.lead().m, m)) { std_m = false; break; }
    if (std_m) out.push_back(m);
  }
  std::stable_sort(out.begin(), out.end(), [&](const Mono& a, const Mono& b) {
    int da = a.deg(R.n()), db = b.deg(R.n());
    if (da != db) return da < db;
    return mono_cmp(R, a, b) > 0;
  });
  return out;
}

bool poly_divide(const PolyRing& R, const MPoly& a, const MPoly& b, MPoly& q) {
  q = MPoly{};
  MPoly r = a;
  while (!r.is_zero()) {
    if (!mono_divides(R.n(), b.lead().m, r.lead().m)) return false;
    Mono m = mono_div(R.n(), r.lead().m, b.lead().m);
    Elem c = R.K.div(r.lead().c, b.lead().c);
    MPoly t;
    t.terms.push_back({m, c});
    q = mp_add(R, q, t);
    r = mp_sub(R, r, mp_mul_term(R, b, m, c));
  }
  return true;
}

MPoly poly_gcd(const PolyRing& R, const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return mp_monic(R, b);
  if (b.is_zero()) return mp_monic(R, a);
  if (a.is_constant() || b.is_constant()) return mp_const(R, R.K.one());
  PolyList l = intersect(R, {a}, {b});
  if (l.size() != 1) throw Error(Error::Kind::Domain, "lcm is not principal");
  MPoly ab = mp_mul(R, a, b), g;
  if (!poly_divide(R, ab, l[0], g)) throw Error(Error::Kind::Domain, "gcd: inexact division");
  return mp_monic(R, g);
}

}  // namespace pvforge
