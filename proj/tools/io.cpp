#include "io.hpp"

#include <fstream>
#include <sstream>

namespace pvforge::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::Parse, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::string entry_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(Error::Kind::Parse, "matrix entries must be strings or integers");
}

mpq_class rational(const json& v) {
  try {
    mpq_class q(entry_string(v));
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(Error::Kind::Parse, "bad rational " + v.dump());
  }
}

json poly_lines(const PolyRing& R, const PolyList& gb) {
  json a = json::array();
  for (auto& g : gb) a.push_back(mp_str(R, g));
  return a;
}

json matrix_json(const Field& K, const Mat& M) {
  json a = json::array();
  for (auto& row : M) {
    json r = json::array();
    for (auto& e : row) r.push_back(K.str(e));
    a.push_back(r);
  }
  return a;
}

json tower_json(const Field& K) {
  json a = json::array();
  for (int l = 1; l <= K.L; ++l) {
    const Level& lev = K.T->level(l);
    if (lev.kind == LevelKind::Transcendental) a.push_back(json{{"name", lev.name}, {"kind", "transcendental"}});
    else
      a.push_back(json{{"name", lev.name}, {"kind", "algebraic"}, {"minpoly", K.T->pstr(l - 1, lev.minpoly, lev.name)}});
  }
  return a;
}

}  // namespace

SystemFile read_system(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Error::Kind::Parse, std::string("json: ") + e.what());
  }
  SystemFile f;
  f.name = j.value("name", "");
  if (!j.contains("A")) throw Error(Error::Kind::Parse, "system needs a matrix A");
  const json& A = j["A"];
  std::vector<std::vector<std::string>> rows;
  if (!A.is_array() || A.empty()) throw Error(Error::Kind::Parse, "A must be a non-empty array");
  if (A[0].is_array()) {
    for (auto& r : A) {
      std::vector<std::string> row;
      for (auto& e : r) row.push_back(entry_string(e));
      rows.push_back(row);
    }
  } else {
    int n = j.value("n", 0);
    if (n <= 0 || static_cast<int>(A.size()) != n * n) throw Error(Error::Kind::Parse, "flat A needs n*n entries");
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> row;
      for (int k = 0; k < n; ++k) row.push_back(entry_string(A[i * n + k]));
      rows.push_back(row);
    }
  }
  if (j.contains("n") && j["n"].get<int>() != static_cast<int>(rows.size()))
    throw Error(Error::Kind::Parse, "n does not match the matrix");
  f.system = parse_system(rows);
  if (j.contains("config")) {
    const json& c = j["config"];
    if (c.contains("degree")) f.config.degree = c["degree"].get<int>();
    if (c.contains("point")) f.config.point = rational(c["point"]);
    if (c.contains("order")) f.config.order = c["order"].get<int>();
    if (c.contains("char_degree")) f.config.char_degree = c["char_degree"].get<int>();
    if (c.contains("tower_budget")) f.config.tower_budget = c["tower_budget"].get<int>();
    if (c.contains("hyper_degree")) f.config.hyper_degree = c["hyper_degree"].get<int>();
  }
  return f;
}

json ideal_json(const PolyRing& R, const PolyList& gb) {
  return json{{"field", tower_json(R.K)}, {"generators", poly_lines(R, gb)}};
}

json group_json(const GroupIdeal& H) {
  return json{{"n", H.n}, {"dimension", group_dimension(H)}, {"equations", poly_lines(H.G, H.gb)}};
}

json relations_json(const RelationResult& r) {
  json levels = json::array();
  for (auto& l : r.levels)
    levels.push_back(json{{"nu", l.nu},
                          {"standard", l.standard},
                          {"unknowns", l.unknowns},
                          {"order", l.N},
                          {"primes", l.primes},
                          {"kernel", l.kernel},
                          {"found", l.found},
                          {"certified", l.certified}});
  return json{{"t0", r.t0.get_str()},
              {"certified", r.certified},
              {"levels", levels},
              {"basis_size", r.basis.size()},
              {"groebner", poly_lines(r.D.R, r.gb)}};
}

json toric_json(const ToricResult& T) {
  return json{{"nu", T.nu},
              {"radical_shape", T.radical_shape},
              {"dimension", dimension(T.I)},
              {"ideal", poly_lines(T.I.D.R, T.I.gb)},
              {"stabilizer", group_json(T.H)},
              {"relations", relations_json(T.relations)}};
}

json kbar_json(const KbarResult& k) {
  json chars = json::array();
  const Field& K = k.Q1.D.R.K;
  for (auto& c : k.chars)
    chars.push_back(json{{"h", mp_str(k.Q.D.R, c.h)},
                         {"certificate", K.str(c.r)},
                         {"degree", c.degree},
                         {"certified", character_certificate(k.Q, k.Q1, c)}});
  json lattice = json::array();
  Field Kt(K.T, K.T->trans_level());
  for (size_t i = 0; i < k.Z.gens.size(); ++i) {
    json m = json::array();
    for (auto& e : k.Z.gens[i]) m.push_back(e.get_str());
    json g{{"m", m}, {"witness", witness_str(Kt, k.Z.witnesses[i])}, {"f", k.mat.K.str(k.mat.f[i])}};
    if (i < k.constants.size()) g["constant"] = k.mat.K.str(k.constants[i]);
    lattice.push_back(g);
  }
  return json{{"alpha", matrix_json(k.alpha.K, k.alpha.alpha)},
              {"alpha_field", tower_json(k.alpha.K)},
              {"identity_component", group_json(k.H0)},
              {"components", k.components},
              {"lie_dimension", k.lie.dim()},
              {"derived_dimension", k.lie.derived_dim},
              {"character_search", k.lie_shortcut ? "skipped: perfect Lie algebra" : "run"},
              {"kappa", k.kappa},
              {"Q1", ideal_json(k.Q1.D.R, k.Q1.gb)},
              {"characters", chars},
              {"lattice", lattice},
              {"J", ideal_json(k.J.D.R, k.J.gb)}};
}

json pv_json(const PVResult& r) {
  json gauge = nullptr;
  if (r.gauged) gauge = matrix_json(Field::Q(), r.gauge);
  return json{{"n", r.system.n()},
              {"A", matrix_json(r.system.K, r.system.A)},
              {"t0", r.t0.get_str()},
              {"toric", toric_json(r.toric)},
              {"kbar", kbar_json(r.kbar)},
              {"orbit_size", r.descent.orbit_size},
              {"gauge", gauge},
              {"m", ideal_json(r.m.D.R, r.m.gb)},
              {"galois_group", group_json(r.group)},
              {"log", r.log}};
}

json verify_json(const VerifyReport& rep) {
  json items = json::array();
  for (auto& i : rep.items) items.push_back(json{{"check", i.name}, {"ok", i.ok}, {"detail", i.detail}});
  return json{{"ok", rep.ok()}, {"checks", items}};
}

}  // namespace pvforge::cli
