// lie: command-line front end
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lie/acceptance.hpp"
#include "lie/adjgroup.hpp"
#include "lie/chevalley.hpp"
#include "lie/embed.hpp"
#include "lie/psl2.hpp"
#include "lie/rootdata.hpp"
#include "lie/triform.hpp"
#include "lie/words.hpp"

using namespace lie;
using nlohmann::json;

namespace {

constexpr int kSchema = 1;
constexpr size_t kInlineLimit = 64 * 1024;

// configuration problems, reported with exit status 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string report;
};

FieldPtr make_field(std::uint32_t p, unsigned r) {
  if (p < 2) throw ConfigError("p must be a prime");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw ConfigError(std::to_string(p) + " is not prime");
  return r == 1 ? Field::prime(p) : Field::extension(p, r);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

std::string matrix_text(const Mat& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

// large matrices go to sidecar files next to the report
json matrix_ref(const Mat& m, const std::string& report, const std::string& tag) {
  std::string text = matrix_text(m);
  if (text.size() <= kInlineLimit || report.empty()) return {{"inline", text}};
  std::string path = report + "." + tag + ".mat";
  std::ofstream(path) << text;
  return {{"file", std::filesystem::path(path).filename().string()}};
}

void emit(const json& j, const std::string& report) {
  std::cout << j.dump(2) << "\n";
  if (!report.empty()) {
    std::ofstream out(report);
    if (!out) throw ConfigError("cannot write " + report);
    out << j.dump(2) << "\n";
  }
}

RootDatum datum(const std::string& type) {
  try {
    return roots_from_dynkin(type);
  } catch (const UnsupportedType& e) {
    throw ConfigError(e.what());
  }
}

int cmd_rootdata(const std::string& type, bool classes, const Globals& g) {
  auto rd = datum(type);
  json j;
  j["schema_version"] = kSchema;
  j["type"] = rd.type;
  j["rank"] = rd.rank;
  j["cartan"] = rd.cartan;
  j["positive_roots"] = rd.npos;
  j["roots"] = rd.roots;
  j["highest_root"] = rd.roots[rd.highest()];
  if (classes) {
    WeylGroup W(rd);
    j["weyl_order"] = W.order();
    json fp = json::array();
    for (auto& c : W.fingerprints())
      fp.push_back({{"order", c.order},
                    {"cycle_type", c.cycle_type},
                    {"trace", c.trace},
                    {"count", c.count},
                    {"fixed_dim", c.fixed_dim},
                    {"word", c.word}});
    j["fingerprints"] = fp;
  }
  emit(j, g.report);
  return 0;
}

int cmd_liealg(const std::string& type, std::uint32_t p, unsigned r, const Globals& g) {
  auto rd = datum(type);
  auto L = build_lie_algebra(rd, make_field(p, r));
  int d = L->dim();
  std::vector<std::array<int, 3>> triples;
  bool exhaustive = std::uint64_t(d) * d * d <= 200000;
  std::mt19937_64 rng(g.seed ? g.seed : 1);
  if (exhaustive) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) triples.push_back({a, b, c});
  } else {
    for (int i = 0; i < 10000; ++i) triples.push_back({int(rng() % d), int(rng() % d), int(rng() % d)});
  }
  long long viol = jacobi_violations(*L, triples);
  json consts = json::array();
  long long chain_bad = 0;
  for (int a = 0; a < rd.nroots(); ++a)
    for (int b = 0; b < rd.nroots(); ++b) {
      if (rd.sum(a, b) < 0) continue;
      int n = L->N(a, b);
      chain_bad += std::abs(n) != chain_p(rd, a, b) + 1;
      consts.push_back({a, b, n});
    }
  json j;
  j["schema_version"] = kSchema;
  j["type"] = rd.type;
  j["field"] = L->field()->name();
  j["dim"] = d;
  j["jacobi"] = {{"triples", triples.size()}, {"exhaustive", exhaustive}, {"violations", viol}};
  j["chain_rule_violations"] = chain_bad;
  j["structure_constants"] = consts;
  j["ok"] = viol == 0 && chain_bad == 0;
  emit(j, g.report);
  return j["ok"] ? 0 : 1;
}

int cmd_group(const std::string& type, std::uint32_t p, unsigned r, bool verify, const std::string& export_dir,
              const Globals& g) {
  auto rd = datum(type);
  AdjointGroup G(build_lie_algebra(rd, make_field(p, r)));
  Elt lambda = G.field()->prim();
  auto gens = ghn(G, lambda);
  json j;
  j["schema_version"] = kSchema;
  j["type"] = rd.type;
  j["field"] = G.field()->name();
  j["dim"] = G.dim();
  j["generators"] = gens.xplus.size() + gens.xminus.size() + gens.h.size() + gens.n.size();
  bool ok = true;
  if (verify) {
    auto rep = verify_ghn(G, gens);
    j["verify"] = {{"h_commute", rep.h_commute},
                   {"n_normalise", rep.n_normalise},
                   {"x_fix", rep.x_fix},
                   {"members", rep.members}};
    ok = rep.ok();
  }
  if (!export_dir.empty()) {
    std::filesystem::create_directories(export_dir);
    auto dump = [&](const std::vector<Mat>& ms, const std::string& stem) {
      for (size_t i = 0; i < ms.size(); ++i)
        std::ofstream(export_dir + "/" + stem + std::to_string(i + 1) + ".mat") << matrix_text(ms[i]);
    };
    dump(gens.xplus, "xplus");
    dump(gens.xminus, "xminus");
    dump(gens.h, "h");
    dump(gens.n, "n");
    j["exported_to"] = export_dir;
  }
  j["ok"] = ok;
  emit(j, g.report);
  return ok ? 0 : 1;
}

int cmd_psl2(int q, const std::string& u, const std::string& s, const std::string& t, bool scalars,
             const Globals& g) {
  auto in_u = open_in(u), in_s = open_in(s), in_t = open_in(t);
  Mat mu = read_matrix(in_u);
  Mat ms = read_matrix(in_s, mu.field());
  Mat mt = read_matrix(in_t, mu.field());
  PresentationReport rep;
  try {
    rep = verify_presentation(q, mu, ms, mt, scalars);
  } catch (const UnsupportedQ& e) {
    throw ConfigError(e.what());
  }
  json rel = json::object();
  for (auto& c : rep.checks) rel[c.name] = {{"relation", c.text}, {"pass", c.pass}};
  json j{{"schema_version", kSchema},
         {"q", q},
         {"modulo_scalars", scalars},
         {"relations", rel},
         {"u_nontrivial", rep.u_nontrivial},
         {"ok", rep.ok()}};
  emit(j, g.report);
  return rep.ok() ? 0 : 1;
}

int cmd_embed(int q, bool verbose, const Globals& g) {
  DriverOptions o;
  o.seed = g.seed;
  o.threads = g.threads;
  o.verbose = verbose;
  CaseReport rep;
  try {
    rep = solve_case(q, o);
  } catch (const UnsupportedQ& e) {
    throw ConfigError(e.what());
  }
  json j = json::parse(rep.json(false));
  j["schema_version"] = kSchema;
  std::cout << j.dump(2) << "\n";
  if (!g.report.empty()) {
    json m;
    m["u"] = matrix_ref(rep.u, g.report, "u");
    m["s"] = matrix_ref(rep.s, g.report, "s");
    m["e"] = matrix_ref(rep.e, g.report, "e");
    for (size_t i = 0; i < rep.solutions.size(); ++i)
      j["solution_details"][i]["t"] = matrix_ref(rep.solutions[i].t, g.report, "t" + std::to_string(i + 1));
    j["matrices"] = m;
    std::ofstream out(g.report);
    if (!out) throw ConfigError("cannot write " + g.report);
    out << j.dump(2) << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_alt6(const std::string& reps, const Globals& g) {
  std::string path = reps.empty() ? default_rep_data_path() : reps;
  if (!std::ifstream(path)) throw ConfigError("cannot open " + path);
  Alt6Result r;
  try {
    r = build_alt6_f4(read_rep_data_file(path));
  } catch (const BadRepData& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  json words = json::array();
  for (auto& w : r.words) words.push_back(w.to_string());
  json j{{"schema_version", kSchema}, {"data", path},   {"checks", r.checks},
         {"traces", r.traces},       {"words", words}, {"ok", r.ok()}};
  if (!g.report.empty()) {
    j["g1"] = matrix_ref(r.g1, g.report, "g1");
    j["g2"] = matrix_ref(r.g2, g.report, "g2");
  }
  emit(j, g.report);
  return r.ok() ? 0 : 1;
}

void write_out(const std::string& path, const std::function<void(std::ostream&)>& f) {
  if (path.empty()) {
    f(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  f(out);
}

std::vector<Vec> read_rows(const std::string& path, const FieldPtr& F) {
  auto in = open_in(path);
  Mat m = read_matrix(in, F);
  std::vector<Vec> rows;
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row_vec(i));
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Chevalley groups over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed (0 = shipped default)");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--report", g.report, "write the JSON report here");

  std::string type;
  std::uint32_t p = 0;
  unsigned r = 1;

  auto* rootdata = app.add_subcommand("rootdata", "roots and Weyl class fingerprints as JSON");
  rootdata->add_option("type", type, "Dynkin type, e.g. F4")->required();
  bool no_classes = false;
  rootdata->add_flag("--no-classes", no_classes, "skip the Weyl group enumeration");

  auto* liealg = app.add_subcommand("liealg", "structure constants and Jacobi check");
  liealg->add_option("type", type)->required();
  liealg->add_option("p", p)->required();
  liealg->add_option("r", r);

  auto* group = app.add_subcommand("group", "adjoint group generators");
  group->add_option("type", type)->required();
  group->add_option("p", p)->required();
  group->add_option("r", r);
  bool verify = false;
  std::string export_dir;
  group->add_flag("--verify", verify, "run the generator relation battery");
  group->add_option("--export", export_dir, "write generators as matrix files into this directory");

  auto* psl2 = app.add_subcommand("psl2", "presentation checks");
  auto* psl2v = psl2->add_subcommand("verify", "check the relations on u, s, t");
  psl2->require_subcommand(1);
  int q = 0;
  std::string fu, fs, ft;
  bool scalars = false;
  psl2v->add_option("q", q)->required();
  psl2v->add_option("u", fu)->required()->check(CLI::ExistingFile);
  psl2v->add_option("s", fs)->required()->check(CLI::ExistingFile);
  psl2v->add_option("t", ft)->required()->check(CLI::ExistingFile);
  psl2v->add_flag("--modulo-scalars", scalars, "accept scalar values for the relators");

  auto* embed = app.add_subcommand("embed", "construct PSL2(q) inside F4 or E7");
  embed->add_option("q", q)->required();
  bool verbose = false;
  embed->add_flag("-v,--verbose", verbose);

  auto* alt6 = app.add_subcommand("alt6-f4", "3.Alt6 images in F4(19) via LDU words");
  std::string reps;
  alt6->add_option("--reps", reps, "representation data file");

  auto* tri = app.add_subcommand("triform", "trilinear forms");
  tri->require_subcommand(1);
  std::string out, rep_file, form_file, sub_file;
  std::uint32_t tp = 11;
  auto* tri_d = tri->add_subcommand("dickson", "the 27-dimensional Dickson form");
  tri_d->add_option("--p", tp, "characteristic");
  tri_d->add_option("--out", out);
  auto* tri_i = tri->add_subcommand("invariant", "invariant symmetric trilinear forms of a module");
  tri_i->add_option("--rep", rep_file)->required()->check(CLI::ExistingFile);
  tri_i->add_option("--out", out, "write the first form here");
  auto* tri_t = tri->add_subcommand("theta", "Theta of a subspace");
  tri_t->add_option("--form", form_file)->required()->check(CLI::ExistingFile);
  tri_t->add_option("--subspace", sub_file, "rows span the subspace")->required()->check(CLI::ExistingFile);
  bool want_delta = false;
  tri_t->add_flag("--delta", want_delta, "compute Delta instead");
  auto* tri_s = tri->add_subcommand("sp8", "Sp8(p) acting on Lambda^2 modulo the form (27-dim module)");
  tri_s->add_option("--p", tp);
  tri_s->add_option("--out", out);

  auto* acc = app.add_subcommand("acceptance", "run the acceptance matrix");
  AcceptanceOptions ao;
  std::vector<int> only;
  std::string fault;
  bool as_json = false;
  acc->add_flag("--skip-data", ao.skip_data, "report data-dependent criteria as skipped");
  acc->add_option("--only", only, "criterion numbers")->delimiter(',')->check(CLI::Range(1, 12));
  acc->add_option("--reps", ao.rep_data, "representation data file");
  acc->add_option("--inject-fault", fault, "corrupt a component")->check(CLI::IsMember({"jacobi"}));
  acc->add_flag("--json", as_json, "print JSON instead of the table");
  acc->add_flag("-v,--verbose", ao.verbose);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*rootdata) return cmd_rootdata(type, !no_classes, g);
    if (*liealg) return cmd_liealg(type, p, r, g);
    if (*group) return cmd_group(type, p, r, verify, export_dir, g);
    if (*psl2v) return cmd_psl2(q, fu, fs, ft, scalars, g);
    if (*embed) return cmd_embed(q, verbose, g);
    if (*alt6) return cmd_alt6(reps, g);
    if (*tri_d) {
      auto f = dickson_form(make_field(tp, 1));
      write_out(out, [&](std::ostream& os) { write_triform(os, f); });
      return 0;
    }
    if (*tri_s) {
      auto V = wedge2_mod_form(symplectic_group(make_field(tp, 1), 4));
      write_out(out, [&](std::ostream& os) { write_module(os, V); });
      return 0;
    }
    if (*tri_i) {
      auto in = open_in(rep_file);
      auto rep = read_module(in);
      auto sol = invariant_triforms(rep, g.seed ? g.seed : 1);
      json j{{"schema_version", kSchema},
             {"dim", rep.dim},
             {"generators", rep.gens.size()},
             {"sym3_fixed_dim", sym_power_fixed_dim(rep, 3)},
             {"candidates", sol.candidates},
             {"rounds", sol.rounds},
             {"forms", sol.forms.size()},
             {"held_out_words", sol.held_out_words},
             {"held_out_ok", sol.held_out_ok}};
      if (!sol.forms.empty()) {
        j["monomials"] = sol.forms[0].monomials();
        if (!out.empty()) {
          std::ofstream o(out);
          write_triform(o, sol.forms[0]);
        }
      }
      emit(j, g.report);
      return sol.held_out_ok ? 0 : 1;
    }
    if (*tri_t) {
      auto in = open_in(form_file);
      auto f = read_triform(in);
      auto U = read_rows(sub_file, f.field());
      auto B = want_delta ? delta(U, f) : theta(U, f);
      Mat m(f.field(), int(B.size()), f.dim());
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < f.dim(); ++j) m(i, j) = B[i][j];
      write_matrix(std::cout, m);
      return 0;
    }
    if (*acc) {
      ao.threads = app.count("--threads") ? g.threads : int(std::max(1u, std::thread::hardware_concurrency()));
      ao.only.insert(only.begin(), only.end());
      ao.tamper_jacobi = fault == "jacobi";
      auto res = run_acceptance(ao, as_json ? nullptr : &std::cout);
      if (as_json) std::cout << acceptance_json(res) << "\n";
      if (!g.report.empty()) std::ofstream(g.report) << acceptance_json(res) << "\n";
      return acceptance_exit_code(res);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LieError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
