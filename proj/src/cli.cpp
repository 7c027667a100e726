#include "qvla/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <set>

#include "qvla/enveloping.hpp"
#include "qvla/examples.hpp"
#include "qvla/phi_modules.hpp"

namespace qvla::cli {

namespace {

struct Options {
  std::string example, spec;
  int zeta = 0, window = 4, depth = 4, order = 4;
  int epsilon = 1, ell = 2, N = 1, bound = 2;
  bool json = false;
};

QVLA load(const Options& o) {
  if (!o.spec.empty() && !o.example.empty()) throw InputError("give either --example or --spec");
  if (!o.spec.empty()) return parse_spec_file(o.spec);
  const std::string& e = o.example;
  if (e == "affine") return twisted_affine(sl2_chevalley(), o.epsilon, o.bound);
  if (e == "qtorus") return quantum_torus(QuantumTorusData::generic(o.ell, o.N), o.epsilon, o.bound);
  if (e == "qheis") return q_heisenberg();
  if (e == "vlike") return virasoro_like(o.bound);
  if (e == "klein") return klein_bottle(o.bound);
  if (e.empty()) throw InputError("need --example NAME or --spec FILE");
  throw InputError("unknown example '" + e + "'");
}

// twists used for printing: identity and group generators
std::vector<GroupElem> print_alphas(const QVLA& q) {
  std::vector<GroupElem> out{q.one()};
  if (q.spec.T > 1) out.push_back(GroupElem::zeta(q.spec));
  for (int i = 0; i < q.spec.k; ++i) out.push_back(GroupElem::param(q.spec, i));
  return out;
}

Report structure_report(const QVLA& q) {
  Report r{"structure entries", "window generators", {}};
  auto gens = q.window_generators();
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (const auto& e : q.entries(a, b))
        r.add("[" + a.str() + ", " + b.str() + "] alpha=" + e.alpha.str() + " beta=" + e.beta.str() +
                  " i=" + std::to_string(e.i) + " j=" + std::to_string(e.j) + " : " + e.value.str([](const GeneratorIndex& g) { return g.str(); }),
              true);
  return r;
}

Report bracket_report(const QVLA& q) {
  Report r{"current brackets", "window generators, alpha=1, beta in {1, group generators}", {}};
  auto gens = q.window_generators();
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (const auto& beta : print_alphas(q)) {
        auto terms = current_bracket(q, a, q.one(), b, beta);
        std::string key = "[" + a.str() + "(z), " + b.str() + "^" + beta.str() + "(w)]";
        if (terms.empty()) continue;
        std::string body;
        for (const auto& t : terms) body += (body.empty() ? "" : " + ") + t.str();
        r.add(key + " = " + body, true);
      }
  return r;
}

// nonzero brackets of generator modes with |m| <= half the window
Report mode_table(const QVLA& q, int zeta, int window, bool gamma) {
  Report r{gamma ? "gamma brackets" : "zeta brackets",
           "alpha in {1, group generators}, |m|<=" + std::to_string(window / 2) + (gamma ? "" : ", zeta=" + std::to_string(zeta)), {}};
  const int M = window / 2, tw = gamma ? q.epsilon : zeta;
  std::vector<Mode> modes;
  for (const auto& a : q.window_generators())
    for (const auto& al : print_alphas(q))
      for (int m = -M; m <= M; ++m) modes.push_back(Mode{a, al, m, tw});
  for (const auto& x : modes)
    for (const auto& y : modes) {
      if (!(x < y)) continue;
      LieElement v = gamma ? gamma_bracket(q, x, y) : zeta_mode_bracket(q, zeta, x, y);
      if (v.is_zero()) continue;
      r.add("[" + x.str() + ", " + y.str() + "] = " + str(v), true);
    }
  return r;
}

std::vector<Report> module_reports(const QVLA& q, const Options& o) {
  RestrictedModule mod = o.example == "qheis"    ? fock_module()
                         : o.example == "affine" ? affine_induced_module(sl2_chevalley(), o.epsilon)
                                                 : [&] {
                                                     std::map<std::string, Scalar> c;
                                                     for (const auto& f : q.families)
                                                       if (f.central) c[f.name] = Scalar(1);
                                                     return induced_module(q, c, q.name + " induced");
                                                   }();
  QuasiModule W(std::move(mod));
  ModuleSamples s;
  s.modes = o.window;
  s.zorder = o.order;
  std::vector<Report> out{check_module_bracket(W, s), check_equivariance(W, s), check_equi_commutator(W, s)};
  auto gens = W.module().g.window_generators();
  std::vector<GeneratorIndex> pick;
  for (const auto& a : gens)
    if (!W.module().g.is_central(a) && pick.size() < 2) pick.push_back(a);
  for (const auto& a : pick)
    for (const auto& b : pick) {
      auto gen = [&](const GeneratorIndex& g) { return PBWMonomial{{Mode{g, q.one(), -1, 0}}}; };
      out.push_back(check_phi_associativity(W, gen(a), gen(b), std::nullopt, s));
    }
  return out;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["window"] = r.window;
  j["ok"] = r.ok();
  auto& lines = j["lines"] = nlohmann::ordered_json::array();
  for (const auto& l : r.lines) {
    nlohmann::ordered_json x;
    x["key"] = l.key;
    x["pass"] = l.pass;
    if (!l.pass) x["witness"] = l.witness;
    lines.push_back(x);
  }
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qvla: exact checks for quasi vertex Lie algebras"};
  app.require_subcommand(1);
  Options o;
  static const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "skew symmetry, Jacobi and maximality on the window"},
      {"bracket", "structure entries and delta decompositions of generator brackets"},
      {"zeta", "mode brackets of g^zeta and the sampled Lie axioms"},
      {"gamma", "mode brackets of g^eps[Gamma] and the reconstruction check"},
      {"envelope", "vertex and gamma-eps axioms of the enveloping algebra"},
      {"module-check", "restricted module checks (qheis: Fock, affine: induced)"},
      {"iso-check", "isomorphism check for a named example"}};
  std::map<std::string, CLI::App*> sub;
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--example", o.example, "affine|qtorus|qheis|vlike|klein");
    s->add_option("--spec", o.spec, "qvla-spec v1 file");
    s->add_option("--zeta", o.zeta, "zeta for g^zeta")->capture_default_str();
    s->add_option("--window", o.window, "mode window |m|")->capture_default_str();
    s->add_option("--depth", o.depth, "PBW degree for envelope samples")->capture_default_str();
    s->add_option("--order", o.order, "z0-order for associativity")->capture_default_str();
    s->add_option("--epsilon", o.epsilon, "epsilon for affine and qtorus")->capture_default_str();
    s->add_option("--ell", o.ell, "qtorus ell")->capture_default_str();
    s->add_option("--N", o.N, "qtorus N")->capture_default_str();
    s->add_option("--bound", o.bound, "family parameter window")->capture_default_str();
    s->add_flag("--json", o.json, "machine-readable output");
    sub[name] = s;
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // subcommand help
      for (const auto& [name, s] : sub)
        if (s->parsed()) out << s->help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string cmd;
  for (const auto& [name, s] : sub)
    if (s->parsed()) cmd = name;

  std::vector<Report> reports;
  try {
    if (cmd == "iso-check") {
      static const std::set<std::string> names{"affine", "qtorus", "qheis", "vlike", "klein"};
      if (!names.count(o.example)) throw InputError("iso-check needs --example affine|qtorus|qheis|vlike|klein");
      IsoOptions io;
      io.modes = o.window;
      io.bound = o.bound;
      io.epsilon = o.epsilon;
      io.ell = o.ell;
      io.N = o.N;
      reports.push_back(check_example_isomorphism(o.example, o.zeta, io));
    } else {
      QVLA q = load(o);
      CheckWindow w{o.window, {}};
      if (cmd == "validate") {
        reports = {check_skew_symmetry(q, w), check_jacobi(q, w), check_maximality(q, w)};
      } else if (cmd == "bracket") {
        reports = {structure_report(q), bracket_report(q)};
      } else if (cmd == "zeta") {
        ZetaSamples zs;
        zs.modes = o.window;
        reports = {mode_table(q, o.zeta, o.window, false), check_zeta_bracket(q, o.zeta, zs)};
      } else if (cmd == "gamma") {
        reports = {mode_table(q, o.zeta, o.window, true), check_reconstruction(q, w)};
      } else if (cmd == "envelope") {
        Enveloping V(q);
        VertexSamples vs;
        vs.max_degree = o.depth;
        vs.modes = std::min(o.window, 3);
        reports = {check_vertex_axioms(V, vs), check_gamma_epsilon_axiom(V, associated_group(q), vs)};
      } else if (cmd == "module-check") {
        reports = module_reports(q, o);
      }
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    err << "contract error: " << e.what() << "\n";
    return 2;
  }

  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok();
  if (o.json) {
    nlohmann::ordered_json j;
    j["command"] = cmd;
    j["ok"] = ok;
    auto& arr = j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports) out << r.text();
    out << (ok ? "ALL PASS" : "FAILURES") << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace qvla::cli
