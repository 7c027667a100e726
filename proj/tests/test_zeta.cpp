#include <doctest.h>

#include "qvla/examples.hpp"

using namespace qvla;

namespace {

void require_ok(const Report& r) {
  INFO(r.text());
  CHECK(r.ok());
}

std::vector<QVLA> families() {
  return {twisted_affine(sl2_chevalley(), 1), quantum_torus(QuantumTorusData::generic(2, 1), 1), q_heisenberg(),
          virasoro_like(), klein_bottle()};
}

}  // namespace

TEST_CASE("virasoro-like zeta=2 bracket against the expansion") {
  QVLA q = virasoro_like();
  const GroupElem one = q.one();
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) {
      Mode x{{"L", {1}}, one, m, 2}, y{{"L", {-2}}, one, n, 2};
      CHECK(zeta_mode_bracket(q, 2, x, y) == zeta_bracket_oracle(q, 2, x, y));
    }
}

TEST_CASE("zeta brackets are Lie brackets for every family") {
  for (const QVLA& q : families())
    for (int z : {0, 1, 2}) require_ok(check_zeta_bracket(q, z, ZetaSamples{}));
}

TEST_CASE("a one-sided structure breaks antisymmetry") {
  QVLA q = q_heisenberg();
  auto base = q.structure;
  q.structure = [base](const GeneratorIndex& a, const GeneratorIndex& b) {
    auto e = base(a, b);
    if (!e.empty()) e.pop_back();
    return e;
  };
  Report r = check_zeta_bracket(q, 1, ZetaSamples{});
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.lines[0].pass);
}

TEST_CASE("zeta sampling is deterministic") {
  QVLA q = klein_bottle();
  ZetaSamples s;
  s.triples = 40;
  s.pairs = 20;
  CHECK(check_zeta_bracket(q, 1, s, Exec::Serial).text() == check_zeta_bracket(q, 1, s, Exec::Parallel).text());
  ZetaSamples t = s;
  t.seed = 7;
  CHECK(check_zeta_bracket(q, 1, s).window != check_zeta_bracket(q, 1, t).window);
}
