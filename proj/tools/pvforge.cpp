#include "io.hpp"

#include "pvforge/series.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace pvforge;
using cli::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kVerify = 2, kBound = 3, kParse = 4 };

struct Options {
  std::string input;
  std::optional<int> degree, order, char_degree, tower_budget;
  std::optional<std::string> point;
  bool dump_series = false;
  bool as_json = false;
  std::vector<int> sizes;
};

cli::SystemFile load(const Options& o) {
  cli::SystemFile f = cli::read_system(cli::read_file(o.input));
  if (o.degree) f.config.degree = o.degree;
  if (o.order) f.config.order = *o.order;
  if (o.char_degree) f.config.char_degree = o.char_degree;
  if (o.tower_budget) f.config.tower_budget = *o.tower_budget;
  if (o.point) {
    try {
      mpq_class q(*o.point);
      q.canonicalize();
      f.config.point = q;
    } catch (const std::invalid_argument&) {
      throw Error(Error::Kind::Parse, "bad --point " + *o.point);
    }
  }
  return f;
}

void print_series(const System& S, const mpq_class& t0, int order) {
  SeriesEmbedding E(S.K, Field::Q().from_rat(t0), order);
  SeriesMatrix F = fundamental_series(E, S.A);
  std::cout << "# series of F at t0 = " << t0 << "\n" << dump_series(Field::Q(), F);
}

int cmd_relations(const Options& o) {
  cli::SystemFile f = load(o);
  RelationConfig rc;
  rc.degree = f.config.degree.value_or(static_cast<int>(dn_bound(f.system.n()).get_si()));
  rc.point = f.config.point;
  rc.order = f.config.order;
  RelationResult r = relation_space(f.system.K, f.system.A, rc);
  if (o.as_json) {
    std::cout << cli::relations_json(r).dump(2) << "\n";
  } else {
    std::cout << "t0 " << r.t0 << "\n";
    for (auto& l : r.levels)
      std::cout << "nu " << l.nu << ": standard " << l.standard << ", unknowns " << l.unknowns << ", order " << l.N
                << ", primes " << l.primes << ", kernel " << l.kernel << ", found " << l.found
                << (l.certified ? ", certified" : ", not certified") << "\n";
    std::cout << "relations of degree <= " << rc.degree << ": " << r.basis.size() << "\n";
    std::cout << "groebner basis\n" << ideal_str(r.D.R, r.gb);
  }
  if (o.dump_series) print_series(f.system, r.t0, 2 * rc.degree + 4);
  return r.certified ? kOk : kVerify;
}

int cmd_toric(const Options& o) {
  cli::SystemFile f = load(o);
  ToricResult T = toric_ideal(f.system, f.config);
  if (o.as_json) {
    std::cout << cli::toric_json(T).dump(2) << "\n";
  } else {
    std::cout << "# toric ideal, nu = " << T.nu << ", radical: " << T.radical_shape << "\n";
    std::cout << write_ideal_file(&f.system, &T.relations.t0, T.I.D.R.K, f.system.n(), {{"toric", &T.I}});
    std::cout << group_block("stabilizer", T.H);
  }
  if (o.dump_series) print_series(f.system, T.relations.t0, 16);
  return kOk;
}

int cmd_kbar(const Options& o) {
  cli::SystemFile f = load(o);
  ToricResult T = toric_ideal(f.system, f.config);
  KbarResult k = kbar_ideal(T, f.config);
  if (o.as_json) {
    std::cout << cli::kbar_json(k).dump(2) << "\n";
    return kOk;
  }
  json j = cli::kbar_json(k);
  std::cout << "Q1\n" << ideal_str(k.Q1.D.R, k.Q1.gb);
  std::cout << "alpha\n" << matrix_str(k.alpha.K, k.alpha.alpha) << tower_header(k.alpha.K);
  std::cout << "identity component (" << k.components << " components)\n" << group_str(k.H0);
  if (k.lie_shortcut) {
    std::cout << "characters: skipped, Lie algebra of dimension " << k.lie.dim() << " is perfect\n";
  } else {
    std::cout << "characters (kappa' = " << k.kappa << ")\n";
    for (auto& c : j["characters"])
      std::cout << "  " << c["h"].get<std::string>() << "  r = " << c["certificate"].get<std::string>()
                << (c["certified"].get<bool>() ? "  certified" : "  NOT certified") << "\n";
    std::cout << "lattice\n";
    for (auto& g : j["lattice"]) {
      std::cout << "  m = " << g["m"].dump() << "  witness " << g["witness"].get<std::string>() << "  f = "
                << g["f"].get<std::string>();
      if (g.contains("constant")) std::cout << "  c = " << g["constant"].get<std::string>();
      std::cout << "\n";
    }
  }
  std::cout << "J\n" << ideal_str(k.J.D.R, k.J.gb) << tower_header(k.J.D.R.K);
  return kOk;
}

Mat system_over(const IdealFile& f) {
  if (!f.system) throw Error(Error::Kind::Parse, "the file has no system matrix");
  int tl = f.K.T->trans_level();
  Mat A = f.system->A;
  for (auto& row : A)
    for (auto& a : row) a = f.K.embed_from(tl, a);
  return A;
}

int cmd_descend(const Options& o) {
  IdealFile f = parse_ideal_file(cli::read_file(o.input));
  if (f.ideals.empty()) throw Error(Error::Kind::Parse, "no ideal block");
  Mat A = system_over(f);
  const std::string& name = f.find("S") ? std::string("S") : f.ideals.front().first;
  DiffIdeal S = file_ideal(f, name, &A);
  GaloisClosure G = galois_closure(f.K);
  DescentResult d = descend(S, G);
  GroupIdeal H = stabilizer(d.m);
  if (o.as_json) {
    std::cout << json{{"orbit_size", d.orbit_size},
                      {"m", cli::ideal_json(d.m.D.R, d.m.gb)},
                      {"group", cli::group_json(H)}}
                     .dump(2)
              << "\n";
    return kOk;
  }
  std::cout << "# orbit of " << d.orbit_size << " ideals\n";
  std::cout << write_ideal_file(&*f.system, f.t0 ? &*f.t0 : nullptr, d.m.D.R.K, f.n, {{"m", &d.m}});
  std::cout << group_block("galois", H);
  return kOk;
}

int cmd_pv(const Options& o) {
  cli::SystemFile f = load(o);
  PVResult r = pv_ring(f.system, f.config);
  if (o.as_json) {
    std::cout << cli::pv_json(r).dump(2) << "\n";
  } else {
    for (auto& l : r.log) std::cout << "# " << l << "\n";
    std::cout << write_ideal_file(&r.system, &r.t0, r.m.D.R.K, r.system.n(), {{"m", &r.m}, {"toric", &r.toric.I}});
    std::cout << group_block("galois", r.group);
  }
  if (o.dump_series) print_series(f.system, r.t0, o.order.value_or(16));
  return kOk;
}

int cmd_verify(const Options& o) {
  std::string text = cli::read_file(o.input);
  VerifyReport rep;
  int order = o.order.value_or(16);
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    cli::SystemFile f = load(o);
    rep = verify(pv_ring(f.system, f.config), order);
  } else {
    IdealFile f = parse_ideal_file(text);
    Mat A = system_over(f);
    VerifyInput in;
    in.system = *f.system;
    if (!f.t0) throw Error(Error::Kind::Parse, "the system block needs t0");
    in.t0 = *f.t0;
    in.m = file_ideal(f, "m", &A);
    if (f.find("toric")) in.toric = file_ideal(f, "toric", &A);
    in.order = order;
    rep = verify(in);
  }
  if (o.as_json) std::cout << cli::verify_json(rep).dump(2) << "\n";
  else std::cout << rep.str() << (rep.ok() ? "verified\n" : "verification failed\n");
  return rep.ok() ? kOk : kVerify;
}

int cmd_bounds(const Options& o) {
  std::vector<int> ns = o.sizes;
  if (ns.empty()) ns = {1, 2, 3, 4};
  json out = json::array();
  for (int n : ns) {
    KappaBound k = kappa_bound(n);
    mpz_class d = dn_bound(n);
    json e{{"n", n}, {"d", d.get_str()}, {"kappa_leading", k.base.get_str() + "^" + k.exponent.get_str()}};
    if (k.leading && k.leading->get_str().size() <= 40) e["kappa_leading_value"] = k.leading->get_str();
    e["kappa"] = k.symbolic;
    out.push_back(e);
    if (!o.as_json) {
      std::cout << "n = " << n << "\n  d(n) = " << d.get_str() << "\n  kappa leading factor = " << k.base.get_str() << "^"
                << k.exponent.get_str();
      if (k.leading && k.leading->get_str().size() <= 40) std::cout << " = " << k.leading->get_str();
      std::cout << "\n  kappa = " << k.symbolic << "\n";
    }
  }
  if (o.as_json) std::cout << out.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Picard-Vessiot rings and differential Galois groups of dY = AY over Q(t)"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s, bool with_input) {
    if (with_input) s->add_option("input", o.input, "system (JSON) or ideal file")->required();
    s->add_option("--degree", o.degree, "relation degree nu");
    s->add_option("--order", o.order, "series truncation order");
    s->add_option("--point", o.point, "expansion point t0");
    s->add_option("--char-degree", o.char_degree, "character degree kappa'");
    s->add_option("--tower-budget", o.tower_budget, "maximal degree of adjoined tower levels");
    s->add_flag("--dump-series", o.dump_series, "print the series of the fundamental matrix");
    s->add_flag("--json", o.as_json, "JSON output");
  };
  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Sub subs[] = {
      {"relations", "algebraic relations of degree <= nu among the entries of F", cmd_relations},
      {"toric", "toric maximal delta-ideal and its stabilizer", cmd_toric},
      {"kbar", "maximal delta-ideal over an algebraic extension", cmd_kbar},
      {"descend", "descend an ideal file to Q(t)", cmd_descend},
      {"pv", "Picard-Vessiot ideal and Galois group", cmd_pv},
      {"verify", "re-check the certificates of a result", cmd_verify},
  };
  int (*chosen)(const Options&) = nullptr;
  for (auto& s : subs) {
    CLI::App* c = app.add_subcommand(s.name, s.help);
    common(c, true);
    c->callback([&chosen, run = s.run] { chosen = run; });
  }
  CLI::App* b = app.add_subcommand("bounds", "the degree bounds d(n) and kappa");
  b->add_option("n", o.sizes, "matrix sizes");
  common(b, false);
  b->callback([&chosen] { chosen = cmd_bounds; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }
  try {
    return chosen(o);
  } catch (const Error& e) {
    std::cerr << "pvforge: " << e.what() << "\n";
    switch (e.kind) {
      case Error::Kind::Parse: return kParse;
      case Error::Kind::Bound: return kBound;
      case Error::Kind::Verify: return kVerify;
      default: return kFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "pvforge: " << e.what() << "\n";
    return kFailure;
  }
}
