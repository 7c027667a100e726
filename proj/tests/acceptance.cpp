// one line per acceptance criterion; exit status 0 iff all pass
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "qvla/cli.hpp"
#include "qvla/currents.hpp"
#include "qvla/enveloping.hpp"
#include "qvla/examples.hpp"
#include "qvla/phi_modules.hpp"

using namespace qvla;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Tally {
  bool ok = true;
  std::string note;
  void need(bool pass, const std::string& what) {
    if (!pass && ok) note = what;
    ok = ok && pass;
  }
  void need(const Report& r, const std::string& what) {
    std::string first;
    for (const auto& l : r.lines)
      if (!l.pass && first.empty()) first = l.key + ": " + l.witness;
    need(r.ok(), what + " [" + r.check + "] " + first);
  }
};

struct Sample {
  std::string name;
  std::function<QVLA()> make;
};

// the quantum torus at (ell, N) = (2, 1) and (1, 2); torus2 bounds the second one
std::vector<Sample> families(int bound, int torus2 = -1) {
  if (torus2 < 0) torus2 = bound;
  return {{"affine", [] { return twisted_affine(sl2_chevalley(), 1); }},
          {"qtorus(2,1)", [=] { return quantum_torus(QuantumTorusData::generic(2, 1), 1, bound); }},
          {"qtorus(1,2)", [=] { return quantum_torus(QuantumTorusData::generic(1, 2), 1, torus2); }},
          {"qheis", [] { return q_heisenberg(); }},
          {"vlike", [=] { return virasoro_like(bound); }},
          {"klein", [=] { return klein_bottle(bound); }}};
}

Tally axiom_suite() {
  Tally t;
  double worst = 0;
  std::string worst_name;
  for (const auto& f : families(3)) {
    auto t0 = Clock::now();
    QVLA q = f.make();
    CheckWindow w{4, {}};
    t.need(check_skew_symmetry(q, w), f.name);
    t.need(check_jacobi(q, w), f.name);
    double s = seconds_since(t0);
    t.need(s < 60, f.name + " took " + std::to_string(s) + " s");
    if (s > worst) worst = s, worst_name = f.name;
  }
  if (t.ok) {
    std::ostringstream o;
    o.precision(2);
    o << std::fixed << "slowest " << worst_name << " " << worst << " s";
    t.note = o.str();
  }
  return t;
}

Tally zeta_oracle() {
  Tally t;
  for (const auto& f : families(3))
    for (int zeta : {0, 1, 2}) {
      ZetaSamples s;  // 200 triples, 100 pairs
      t.need(check_zeta_bracket(f.make(), zeta, s), f.name + " zeta=" + std::to_string(zeta));
    }
  if (t.ok) t.note = "6 families x 3 zetas, 200 triples and 100 oracle pairs each";
  return t;
}

Tally reconstruction() {
  Tally t;
  CheckWindow w{4, {}};
  // qtorus(1,2) at |m| <= 2 alone takes three minutes
  for (const auto& f : families(2, 1)) {
    QVLA q = f.make();
    t.need(check_reconstruction(q, w), f.name);
    t.need(check_maximality(q, w), f.name);
  }
  std::vector<std::pair<std::string, QVLA>> mutants{
      {"affine - scale", twisted_affine(sl2_chevalley(), 1).without_relation("scale")},
      {"affine - k-deriv", twisted_affine(sl2_chevalley(), 1).without_relation("k-deriv")},
      {"qheis - central", q_heisenberg().without_relation("central")},
      {"vlike - central", virasoro_like(2).without_relation("central")},
      {"klein - sign", klein_bottle(2).without_relation("sign")},
      {"qtorus - central", quantum_torus(QuantumTorusData::generic(1, 1), 1, 1).without_relation("central")}};
  for (const auto& [name, q] : mutants) t.need(!check_maximality(q, w).ok(), "mutation passed: " + name);
  if (t.ok) t.note = "6 families pass, " + std::to_string(mutants.size()) + " mutations fail";
  return t;
}

Tally isomorphisms() {
  Tally t;
  IsoOptions o;
  o.modes = 3;
  o.bound = 2;
  for (int z : {0, 1}) t.need(check_example_isomorphism("affine", z, o), "affine");
  t.need(check_example_isomorphism("qheis", 0, o), "qheis");
  t.need(check_example_isomorphism("vlike", 0, o), "vlike");
  for (int z : {0, 1}) t.need(check_example_isomorphism("klein", z, o), "klein");
  for (int ell : {1, 2})
    for (int N : {1, 2}) {
      IsoOptions qo;
      qo.ell = ell;
      qo.N = N;
      qo.bound = 2;
      qo.modes = ell * N == 4 ? 1 : 2;  // (2,2) at mode window 2 is 20M brackets
      t.need(check_example_isomorphism("qtorus", 0, qo),
             "qtorus ell=" + std::to_string(ell) + " N=" + std::to_string(N));
    }
  if (t.ok) t.note = "affine z=0,1; qheis z=0; vlike z=0; klein z=0,1; qtorus ell,N<=2 |m|<=2";
  return t;
}

Tally enveloping() {
  Tally t;
  VertexSamples s;
  s.max_degree = 4;
  s.modes = 3;
  for (const QVLA& q : {q_heisenberg(), twisted_affine(sl2_chevalley(), 1)}) {
    Enveloping V(q);
    t.need(check_vertex_axioms(V, s), q.name);
    t.need(check_gamma_epsilon_axiom(V, associated_group(q), s), q.name);
  }
  if (t.ok) t.note = "qheis and twisted sl2, degree<=4, |n|<=3";
  return t;
}

PBWMonomial gen(const std::string& a, const GroupElem& alpha, int m = -1) {
  return PBWMonomial{{Mode{GeneratorIndex{a, {}}, alpha, m, 0}}};
}

Tally modules() {
  Tally t;
  {
    QuasiModule W(fock_module());
    const QVLA& q = W.module().g;
    GroupElem g = GroupElem::param(q.spec, 0);
    ModuleSamples s;
    s.modes = 4;
    s.zorder = 4;
    t.need(check_equivariance(W, s), "fock");
    t.need(check_equi_commutator(W, s), "fock");
    // (x - q)(x - q^-1) clears Y(a, z1) Y(a, z2); twisted and derivative pairs take the derived q_poly
    t.need(check_phi_associativity(W, gen("a", q.one()), gen("a", q.one()), QPoly{{g, g.inv()}}, s), "fock");
    for (const auto& [u, v] : std::vector<std::pair<PBWMonomial, PBWMonomial>>{
             {gen("a", q.one()), gen("a", g)}, {gen("a", q.one(), -2), gen("a", g)}})
      t.need(check_phi_associativity(W, u, v, std::nullopt, s), "fock");
  }
  {
    QuasiModule W(affine_induced_module(sl2_chevalley(), 1, Scalar(1)));
    const QVLA& q = W.module().g;
    ModuleSamples s;
    s.modes = 4;
    s.zorder = 3;
    t.need(check_equivariance(W, s), "affine induced");
    t.need(check_equi_commutator(W, s), "affine induced");
    for (const char* a : {"x0", "x1", "x2"})
      for (const char* b : {"x0", "x1", "x2"})
        t.need(check_phi_associativity(W, gen(a, q.one()), gen(b, q.one()), std::nullopt, s), "affine induced");
  }
  if (t.ok) t.note = "fock q_poly=(x-q)(x-q^-1) z0-order 4; induced level 1 z0-order 3";
  return t;
}

// independent expansion of the base series sum_n lambda^n w^n z^{-n+zeta-1}, differentiated by hand
ScalarWindow hand_delta(int i, int zeta, const GroupElem& lambda, const Box2& box) {
  ScalarWindow w = make_window(box);
  for (int n = -40; n <= 40; ++n) {
    Scalar c = embed_power(lambda, n);
    long e = n;
    for (int r = 0; r < i; ++r) {
      c *= Scalar(e);
      e += zeta - 1;
    }
    c /= Scalar(factorial(i));
    w.add({-n + zeta - 1, int(e)}, c);
  }
  return w;
}

Tally delta_calculus() {
  Tally t;
  const Box2 box{-6, 6, -6, 6};
  FieldSpec f{3, 1};
  std::vector<GroupElem> gens = {GroupElem::identity(f), GroupElem::zeta(f), GroupElem::param(f, 0),
                                 GroupElem::param(f, 0, -1)};
  size_t n = 0;
  for (int zeta : {-1, 0, 1, 2})
    for (int i = 0; i <= 3; ++i)
      for (const auto& a : gens) {
        t.need(delta_expand(i, zeta, a, box).agrees_with(hand_delta(i, zeta, a, box)), "expansion");
        for (const auto& b : gens) {
          RawDelta w{i, zeta, a, b, false, false}, s{i, zeta, a, b, false, true};
          t.need(delta_expand_raw(w, box).agrees_with(delta_expand_raw(s, box)), "w/z substitution");
          for (bool zd : {false, true}) {
            RawDelta r{i, zeta, a, b, zd, false};
            NormalizedDelta nd = delta_normalize(r);
            ScalarWindow rhs = delta_expand(nd.order, zeta, nd.scale, box);
            for (auto& [k, v] : rhs.cells) v *= nd.factor;
            t.need(delta_expand_raw(r, box).agrees_with(rhs), "normalization");
            ++n;
          }
        }
      }
  std::mt19937 rng(11);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const Box2 big{-10, 10, -10, 10};
  FieldSpec fq{1, 1};
  for (int it = 0; it < 100; ++it) {
    int zeta = pick(-1, 2);
    std::vector<ScalarDeltaTerm> terms;
    for (int k = pick(1, 5); k > 0; --k) {
      ScalarDeltaTerm d;
      d.order = pick(0, 2);
      d.scale = GroupElem::param(fq, 0, pick(-1, 1));
      d.twist = zeta;
      d.coeff[pick(-1, 1)] = Scalar(long(pick(-2, 2)));
      terms.push_back(d);
      if (pick(0, 2) == 0) {
        d.coeff.begin()->second = -d.coeff.begin()->second;
        terms.push_back(d);
      }
    }
    auto m = collect_scalar_delta(terms);
    std::vector<ScalarDeltaTerm> back;
    for (const auto& [k, c] : m) back.push_back(ScalarDeltaTerm{c, k.order, k.scale, zeta});
    ScalarWindow e1 = expand_scalar_delta(terms, big), e2 = expand_scalar_delta(back, big);
    t.need(e1.agrees_with(e2), "round trip");
    t.need(m.empty() == e1.cells.empty(), "canonical zero");
  }
  if (t.ok) t.note = std::to_string(n) + " normalization windows, 100 round trips";
  return t;
}

Tally phi() {
  Tally t;
  auto s0 = phi_series(0, 8), s1 = phi_series(1, 8), s2 = phi_series(2, 8);
  mpq_class fact = 1;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) fact *= k;
    t.need(s0[k] == (k <= 1 ? 1 : 0), "z + z0");
    t.need(s1[k] == 1 / fact, "z e^{z0}");
    t.need(s2[k] == 1, "z/(1 - z0 z)");
  }
  for (int eps = -1; eps <= 3; ++eps) t.need(check_phi_flow(eps, 6), "flow eps=" + std::to_string(eps));
  if (t.ok) t.note = "closed forms to order 8, flow to order 6 for eps -1..3";
  return t;
}

// the whole command surface, small windows
std::string cli_suite(int& status) {
  static const std::vector<std::vector<std::string>> runs{
      {"validate", "--example", "affine"}, {"validate", "--example", "qtorus", "--bound", "1"},
      {"validate", "--example", "qheis"},  {"validate", "--example", "vlike"},
      {"validate", "--example", "klein"},  {"bracket", "--example", "vlike"},
      {"zeta", "--example", "qheis", "--zeta", "2"},
      {"zeta", "--example", "klein", "--zeta", "0", "--json"},
      {"gamma", "--example", "affine"},    {"envelope", "--example", "qheis", "--depth", "3"},
      {"module-check", "--example", "qheis", "--window", "3", "--order", "3"},
      {"iso-check", "--example", "klein", "--zeta", "1", "--window", "2"},
      {"validate", "--spec", SPEC_DIR "/qheis.qvla"}};
  std::ostringstream out, err;
  status = 0;
  for (const auto& args : runs) {
    out << "$ qvla";
    for (const auto& a : args) out << " " << a;
    out << "\n";
    status = std::max(status, cli::run(args, out, err));
  }
  return out.str() + err.str();
}

Tally determinism() {
  Tally t;
  int s1 = 0, s2 = 0;
  std::string a = cli_suite(s1), b = cli_suite(s2);
  t.need(s1 == 0 && s2 == 0, "a command failed");
  t.need(a == b, "outputs differ");
  if (t.ok) t.note = std::to_string(a.size()) + " bytes identical over 13 commands";
  return t;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Tally()>>> criteria{
      {"axiom suite", axiom_suite},   {"zeta Lie axioms and oracle", zeta_oracle},
      {"reconstruction and maximality", reconstruction}, {"isomorphisms", isomorphisms},
      {"enveloping vertex algebra", enveloping},          {"module correspondence", modules},
      {"delta calculus", delta_calculus},                 {"phi series", phi},
      {"determinism", determinism}};
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = Clock::now();
    Tally t;
    try {
      t = criteria[i].second();
    } catch (const std::exception& e) {
      t.need(false, std::string("exception: ") + e.what());
    }
    all = all && t.ok;
    std::cout << (t.ok ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << t.note << " ("
              << int(seconds_since(t0)) << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
