// The three-stage construction of the Picard-Vessiot ring and its Galois group.
#pragma once

#include "pvforge/descent.hpp"
#include "pvforge/hyperexp.hpp"
#include "pvforge/relations.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pvforge {

// ---------- bounds ----------

mpz_class dn_bound(int n);  // d(1) = 2 by convention

struct KappaBound {
  int n = 0;
  mpz_class base;                 // 2n
  mpz_class exponent;             // 3 * 8^(n^2)
  std::optional<mpz_class> leading;  // base^exponent when small enough to print
  std::string symbolic;
};
KappaBound kappa_bound(int n);

// ---------- configuration ----------

struct PipelineConfig {
  std::optional<int> degree;       // ν for the toric stage; d(n) by default
  std::optional<mpq_class> point;  // t0
  int order = 0;                   // truncation order; 0 selects the default
  std::optional<int> char_degree;  // κ'; d(n) by default
  int tower_budget = 16;
  int hyper_degree = 4;
};

struct System {
  Field K;
  Mat A;
  int n() const { return static_cast<int>(A.size()); }
};

System parse_system(const std::vector<std::vector<std::string>>& rows);

// ---------- stages ----------

struct ToricResult {
  RelationResult relations;
  DiffIdeal I;  // radical, with the inverse determinant
  GroupIdeal H;
  std::string radical_shape;
  int nu = 0;
};

ToricResult toric_ideal(const System& S, const PipelineConfig& cfg);

struct KbarResult {
  AlphaPoint alpha;
  GroupIdeal H0;
  int components = 1;
  DiffIdeal Q1;
  LieAlgebra lie;
  bool lie_shortcut = false;
  int kappa = 0;
  QuotientBasis Q;  // empty under the shortcut
  std::vector<Character> chars;
  CharacterLattice Z;
  Materialized mat;
  std::vector<Elem> constants;
  DiffIdeal J;
};

KbarResult kbar_ideal(const ToricResult& T, const PipelineConfig& cfg);

struct PVResult {
  System system;
  mpq_class t0;
  ToricResult toric;
  KbarResult kbar;
  DescentResult descent;
  Mat gauge;          // m(X) = descended(X * gauge)
  bool gauged = false;
  DiffIdeal m;        // over Q(t), vanishing on F with F(t0) = I
  GroupIdeal group;   // stab(m) over Q
  int group_dim = 0;
  std::vector<std::string> log;
};

PVResult pv_ring(const System& S, const PipelineConfig& cfg);

// Point g of V(m) at t = t0 with g rational (the identity when possible); m(X g) vanishes on F.
bool rational_gauge(const DiffIdeal& m, const mpq_class& t0, Mat& g);
DiffIdeal apply_gauge(const DiffIdeal& m, const Mat& g);

// ---------- verification ----------

struct CheckItem {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckItem> items;
  bool ok() const;
  std::string str() const;
};

struct VerifyInput {
  System system;
  mpq_class t0;
  DiffIdeal m;
  std::optional<DiffIdeal> toric;
  int order = 16;
};

VerifyReport verify(const VerifyInput& in);
VerifyReport verify(const PVResult& r, int order = 16);

// ---------- ideal files ----------

// Blocks: "system" (n, t0, matrix rows), "tower" (levels), "ideal <name>" and "group <name>"
// (one generator per line), each ended by "end".
struct IdealFile {
  std::optional<System> system;
  std::optional<mpq_class> t0;
  Field K;
  std::vector<std::pair<std::string, PolyList>> ideals;  // generators over K in matrix_vars(n, true)
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;  // "group <name>" blocks, kept as text
  int n = 0;
  const PolyList* find(const std::string& name) const;
};

std::string tower_header(const Field& K);
std::string write_ideal_file(const System* S, const mpq_class* t0, const Field& K, int n,
                             const std::vector<std::pair<std::string, const DiffIdeal*>>& ideals);
IdealFile parse_ideal_file(const std::string& text);
DiffIdeal file_ideal(const IdealFile& f, const std::string& name, const Mat* A);

// ---------- reports ----------

std::string matrix_str(const Field& K, const Mat& M);
std::string group_str(const GroupIdeal& H);
std::string group_block(const std::string& name, const GroupIdeal& H);
std::string pv_report(const PVResult& r);

}  // namespace pvforge
