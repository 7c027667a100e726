#include <doctest.h>

#include "qvla/enveloping.hpp"
#include "qvla/examples.hpp"

using namespace qvla;

namespace {

void require_ok(const Report& r) {
  INFO(r.text());
  CHECK(r.ok());
}

Mode md(const std::string& f, const GroupElem& al, int m) { return Mode{GeneratorIndex{f, {}}, al, m, 0}; }

PBWVector mono(std::vector<Mode> ms, const Scalar& c = Scalar(1)) {
  PBWVector v;
  v.add(PBWMonomial{std::move(ms)}, c);
  return v;
}

// partitions of d into parts, each part size e available in dim(e) colours
long coloured_partitions(int d, const std::vector<long>& dim) {
  std::vector<long> w(d + 1, 0);
  w[0] = 1;
  for (int e = 1; e <= d; ++e)
    for (long k = 0; k < dim[e]; ++k)
      for (int s = e; s <= d; ++s) w[s] += w[s - e];
  return w[d];
}

QVLA free_boson(int weight) {
  QVLA q;
  q.name = "free";
  q.epsilon = 1;
  q.spec = FieldSpec{1, 0};
  q.families = {Family{"h", 0, false, weight, {}}};
  q.structure = [](const GeneratorIndex&, const GeneratorIndex&) { return std::vector<StructureEntry>{}; };
  q.in_g_basis = [](const GMode&) { return true; };
  return q;
}

}  // namespace

TEST_CASE("rho on modes") {
  QVLA q = q_heisenberg();
  GroupElem one = q.one();
  GeneratorIndex a{"a", {}};
  LieElement r = rho_mode(2, a, one, -1);
  LieElement want;
  want.add(md("a", one, -3), Scalar(2));
  CHECK(r == want);
  CHECK(rho_mode(0, a, one, 5) == LieElement(md("a", one, 5)));
  CHECK(rho_mode(2, a, one, 1).is_zero());
  // (-1)^n n! C(m,n) with m = -2, n = 3: -6 * (-4) = 24
  LieElement w3;
  w3.add(md("a", one, -5), Scalar(24));
  CHECK(rho_mode(3, a, one, -2) == w3);
}

TEST_CASE("q-heisenberg normal ordering") {
  QVLA q = q_heisenberg();
  Enveloping V(q);
  GroupElem one = q.one(), g = GroupElem::param(q.spec, 0);
  Mode a1 = md("a", one, 1), am1 = md("a", one, -1), am2 = md("a", one, -2);
  CHECK(V.normal_order({a1}).is_zero());
  CHECK(V.normal_order({am2, am1}) == mono({am2, am1}));
  CHECK(V.normal_order({am1, am2}) == mono({am2, am1}));
  // untwisted a(m) commute; c(0) kills the vacuum
  CHECK(V.normal_order({a1, am1}).is_zero());
  // a^{q}(1) a(-1) 1 = [a^{q}(1), a(-1)] 1 is central, hence zero
  CHECK(V.normal_order({md("a", g, 1), am1}).is_zero());
  // a^{q}(-1) is a separate creation mode
  PBWVector t = V.normal_order({md("a", g, -1), am1});
  CHECK(t.size() == 1);
  CHECK(V.degree(am2) == 2);
  CHECK(V.degree(mono({am2, am1})) == 3);
  CHECK(V.generator(GeneratorIndex{"a", {}}, one) == mono({am1}));
}

TEST_CASE("vertex coefficients") {
  QVLA q = free_boson(1);
  Enveloping V(q);
  GroupElem one = q.one();
  Mode h1 = md("h", one, -1), h2 = md("h", one, -2);
  PBWVector h = mono({h1});
  CHECK(V.vertex_coefficient(h, -1, V.vacuum()) == h);
  CHECK(V.vertex_coefficient(h, -1, h) == mono({h1, h1}));
  CHECK(V.vertex_coefficient(h, 0, h).is_zero());
  CHECK(V.translation(h) == mono({h2}));
  // D(h h) = 2 h(-2) h(-1)
  CHECK(V.translation(mono({h1, h1})) == mono({h2, h1}, Scalar(2)));
  // (h h)_{-1} 1 = h h
  CHECK(V.vertex_coefficient(mono({h1, h1}), -1, V.vacuum()) == mono({h1, h1}));
}

TEST_CASE("r-action scales by degree") {
  QVLA q = q_heisenberg();
  Enveloping V(q);
  GroupElem g = GroupElem::param(q.spec, 0);
  Mode am2 = md("a", q.one(), -2);
  PBWVector r = V.r_action(g, mono({am2}));
  // lambda^{(m+1)(eps-1)} = 1 at eps = 1; twist moves to alpha lambda^-1
  CHECK(r == V.normal_order({md("a", g.inv(), -2)}));
  QVLA t = twisted_affine(sl2_chevalley(), 0);
  Enveloping W(t);
  GroupElem z = GroupElem::zeta(t.spec);
  Mode x = Mode{GeneratorIndex{"x1", {}}, t.one(), -2, 0};
  PBWVector rx = W.r_action(z, mono({x}));
  Scalar want = embed_power(z, 1);  // lambda^{-(eps-1)} with eps = 0
  CHECK(rx == want * W.normal_order({Mode{GeneratorIndex{"x1", {}}, z.inv(), -2, 0}}));
}

TEST_CASE("graded dimension") {
  QVLA b = free_boson(1);
  std::vector<long> dim(9, 1);
  dim[0] = 0;
  for (int d = 0; d <= 8; ++d) CHECK(graded_dimension(b, d) == coloured_partitions(d, dim));
  CHECK(graded_dimension(b, 3) == 3);
  CHECK(graded_dimension(b, 0) == 1);
  // weight 2: parts of size >= 2
  QVLA w2 = free_boson(2);
  std::vector<long> d2(9, 1);
  d2[0] = d2[1] = 0;
  for (int d = 0; d <= 8; ++d) CHECK(graded_dimension(w2, d) == coloured_partitions(d, d2));
  CHECK_FALSE(graded_dimension(virasoro_like(), 2).has_value());
  CHECK_FALSE(graded_dimension(twisted_affine(sl2_untwisted(), 1), 2).has_value());
}

TEST_CASE("vertex algebra axioms") {
  VertexSamples s;
  s.max_degree = 4;
  s.count = 200;
  for (const QVLA& q : {q_heisenberg(), twisted_affine(sl2_chevalley(), 1), twisted_affine(sl2_chevalley(), 0)}) {
    Enveloping V(q);
    Report a = check_vertex_axioms(V, s);
    require_ok(a);
    Report g = check_gamma_epsilon_axiom(V, associated_group(q), s);
    require_ok(g);
    CHECK(a.text() == check_vertex_axioms(Enveloping(q), s, Exec::Serial).text());
  }
}

TEST_CASE("vertex checks see a wrong bracket") {
  QVLA q = q_heisenberg();
  auto base = q.structure;
  // drop the q^-1 entry: the bracket is no longer skew, so Borcherds fails somewhere
  q.structure = [base](const GeneratorIndex& a, const GeneratorIndex& b) {
    auto e = base(a, b);
    e.pop_back();
    return e;
  };
  VertexSamples s;
  s.count = 200;
  s.modes = 2;
  Enveloping V(q);
  CHECK_FALSE(check_vertex_axioms(V, s).ok());
}
