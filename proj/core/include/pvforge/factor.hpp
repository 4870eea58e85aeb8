// Univariate factorization over tower fields.
#pragma once

#include "pvforge/tower.hpp"

#include <string>
#include <vector>

namespace pvforge {

struct Factor {
  EPoly f;  // monic
  int mult = 1;
};

using ZPoly = std::vector<mpz_class>;

std::vector<Factor> squarefree_decomposition(const Field& K, const EPoly& f);
EPoly squarefree_part(const Field& K, const EPoly& f);

// Monic irreducible factors with multiplicities, in a deterministic order.
std::vector<Factor> factor(const Field& K, const EPoly& f);
bool is_irreducible(const Field& K, const EPoly& f);
std::vector<Elem> roots(const Field& K, const EPoly& f);

// Irreducible factors of a primitive squarefree integer polynomial.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f);

// Adjoins a root of an irreducible monic polynomial; throws if it is reducible.
Field adjoin_root(const Field& K, const std::string& name, const EPoly& minpoly);

// Norm of g(x) ∈ K[x] down to the level below K (K algebraic).
EPoly norm_down(const Field& K, const EPoly& g);

}  // namespace pvforge
