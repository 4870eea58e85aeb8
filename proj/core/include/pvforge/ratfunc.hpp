// Partial fractions and logarithmic derivatives in C(t).
#pragma once

#include "pvforge/tower.hpp"

#include <optional>
#include <vector>

namespace pvforge {

struct PoleTerm {
  EPoly q;                    // monic irreducible over the constant field
  std::vector<EPoly> ladder;  // ladder[k-1]: numerator over q^k, degree < deg q
  int order() const { return static_cast<int>(ladder.size()); }
};

struct PartialFractions {
  EPoly poly;
  std::vector<PoleTerm> poles;
};

// K must have the transcendental level on top.
PartialFractions partial_fractions(const Field& K, const Elem& r);
Elem recombine(const Field& K, const PartialFractions& pf);

// f = Π q^e formally; `infinity` is the exponent at the point at infinity.
struct LogDerivWitness {
  std::vector<EPoly> q;
  std::vector<mpq_class> e;
  mpq_class infinity;
};

std::optional<LogDerivWitness> is_log_derivative(const Field& K, const Elem& r);
Elem log_derivative(const Field& K, const LogDerivWitness& w);
std::string witness_str(const Field& K, const LogDerivWitness& w);

// Irreducible monic factors of the denominators, merged and deterministically ordered.
std::vector<EPoly> pole_support(const Field& K, const std::vector<Elem>& rs);
// Numerator N with r = poly + N / q (q-part of order 1) reduced by q'^{-1} mod q.
EPoly residue_ratio(const Field& K, const PoleTerm& p);

}  // namespace pvforge
