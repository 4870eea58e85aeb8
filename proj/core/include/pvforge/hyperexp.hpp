// Passage from a toric ideal to a maximal δ-ideal over an algebraic extension.
#pragma once

#include "pvforge/ideal.hpp"
#include "pvforge/ratfunc.hpp"

#include <string>
#include <vector>

namespace pvforge {

struct AlphaPoint {
  Field K;
  Mat alpha;
  std::vector<std::string> adjoined;  // names of the levels created for α
};

// A point of V(I) with entries in a finite tower over the field of I.
AlphaPoint find_alpha(const DiffIdeal& I, int tower_budget = 16);

struct QuotientBasis {
  DiffRing D;                // entries of X only, over the field of Q1
  PolyList gb;               // Q1 ∩ K[X]
  std::vector<Mono> monos;   // standard monomials of degree ≤ κ'
  Mat B;                     // δ(P) = B P
  int kappa = 0;
};

QuotientBasis quotient_connection(const DiffIdeal& Q1, int kappa);

struct ExpSolution {
  Vec c;
  Elem rho;  // y = e^{∫rho} c solves δy = M y
};

struct HyperexpConfig {
  int degree = 4;  // numerator degree allowance when M does not decay at infinity
};

// Hyperexponential solutions of δy = M y over C(t), one family per candidate exponential part.
std::vector<ExpSolution> hyperexp_solutions(const Field& K, const Mat& M, const HyperexpConfig& cfg = {});

struct Character {
  MPoly h;  // in QuotientBasis::D.R
  Elem r;   // δh = r h modulo Q1
  int degree = 0;
};

std::vector<Character> normalize_characters(const std::vector<ExpSolution>& sols, const QuotientBasis& Q,
                                            const DiffIdeal& Q1, const Mat& alpha);
bool character_certificate(const QuotientBasis& Q, const DiffIdeal& Q1, const Character& ch);

struct CharacterLattice {
  ZMat gens;  // rows, Hermite normal form
  std::vector<LogDerivWitness> witnesses;
};

CharacterLattice lattice_Z(const Field& K, const std::vector<Elem>& rs);

struct Materialized {
  Field K;
  std::vector<Elem> f;  // one per lattice generator, in K
  std::vector<std::string> adjoined;
};

// Realizes each witness Π q^e as an element of a finite extension of K.
Materialized materialize(const Field& K, const std::vector<LogDerivWitness>& ws);

// c_i = Π_j h_j(F̄)^{m_ij} / f_i, checked constant on the series of F̄ = F·α(t0).
std::vector<Elem> lattice_constants(const CharacterLattice& Z, const std::vector<Character>& chars,
                                    const DiffRing& X, const Mat& alpha, const Materialized& mat,
                                    const mpq_class& t0, int order = 12);

DiffIdeal assemble_J(const DiffIdeal& Q1, const std::vector<Character>& chars, const CharacterLattice& Z,
                     const Materialized& mat, const std::vector<Elem>& constants, const DiffRing& X);

}  // namespace pvforge
