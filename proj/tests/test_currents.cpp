#include <random>

#include "doctest.h"
#include "qvla/currents.hpp"

using namespace qvla;

namespace {

const FieldSpec kQ{1, 1};
const Box2 kBox{-6, 6, -6, 6};

GroupElem q1(int p = 1) { return GroupElem::param(kQ, 0, p); }
GroupElem one() { return GroupElem::identity(kQ); }

// oracle: differentiate the base series sum_n lambda^n w^n z^{-n+zeta-1} by hand
ScalarWindow oracle_delta(int i, int zeta, const GroupElem& lambda, const Box2& box) {
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

}  // namespace

TEST_CASE("delta_expand examples") {
  FieldSpec f{1, 0};
  GroupElem id = GroupElem::identity(f);
  ScalarWindow d0 = delta_expand(0, 0, id, kBox);
  for (int n = -5; n <= 5; ++n) CHECK(d0.at({-n - 1, n}) == Scalar(1));
  ScalarWindow d1 = delta_expand(1, 0, id, kBox);
  for (int n = -5; n <= 5; ++n) CHECK(d1.at({-n - 1, n - 1}) == Scalar(long(n)));
  CHECK(d1.agrees_with(oracle_delta(1, 0, id, kBox)));
  ScalarWindow d2 = delta_expand(0, 1, q1(), kBox);
  for (int n = -5; n <= 5; ++n) CHECK(d2.at({-n, n}) == Scalar::param(kQ, 0).pow(n));
  for (int zeta : {-1, 0, 1, 2, 3})
    for (int i = 0; i <= 3; ++i) CHECK(delta_expand(i, zeta, q1(-1), kBox).agrees_with(oracle_delta(i, zeta, q1(-1), kBox)));
}

TEST_CASE("delta_normalize examples") {
  RawDelta r{0, 0, one(), one(), false, false};
  NormalizedDelta n = delta_normalize(r);
  CHECK(n.factor.is_one());
  CHECK(n.scale.is_identity());

  GroupElem a = q1(2), b = q1(-1);
  NormalizedDelta m = delta_normalize(RawDelta{0, 0, a, b, false, false});
  CHECK(m.factor == Scalar::param(kQ, 0).pow(-2));
  CHECK(m.scale == q1(-3));

  for (int zeta : {-1, 0, 1, 2}) {
    RawDelta z{2, zeta, a, b, true, false};
    NormalizedDelta nz = delta_normalize(z);
    ScalarWindow lhs = delta_expand_raw(z, kBox);
    ScalarWindow rhs = delta_expand(nz.order, zeta, nz.scale, kBox);
    for (auto& [k, v] : rhs.cells) v *= nz.factor;
    CHECK(lhs.agrees_with(rhs));
    CHECK(!lhs.cells.empty());
  }
}

TEST_CASE("apply_zeta_derivative examples") {
  ScalarWindow w;
  w.vars = {"w"};
  w.ranges = {{-3, 3}};
  Scalar c = Scalar::param(kQ, 0);
  w.add({2}, c);
  CHECK(apply_zeta_derivative(w, 0, 0, 0).agrees_with(w));
  ScalarWindow d = apply_zeta_derivative(w, 0, 0, 1);
  CHECK(d.at({1}) == Scalar(2) * c);
  CHECK(d.cells.size() == 1);
  ScalarWindow u;
  u.vars = {"w"};
  u.ranges = {{-3, 3}};
  u.add({-1}, c);
  ScalarWindow e = apply_zeta_derivative(u, 0, 2, 1);
  CHECK(e.at({0}) == -c);

  CurrentExpr x = CurrentExpr::single(1, CurrentKind::Scaled, {"a", {}}, one());
  CHECK(apply_zeta_derivative(x, 1, 2).terms.begin()->first.n == 2);
  CHECK_THROWS_AS(apply_zeta_derivative(x, 0, 1), ContractError);
}

TEST_CASE("collect_delta_coefficients") {
  CurrentExpr c = CurrentExpr::single(1, CurrentKind::Scaled, {"c", {}}, one());
  CHECK(collect_delta_coefficients({DeltaTerm{c, 0, one(), 1}, DeltaTerm{Scalar(-1) * c, 0, one(), 1}}).empty());
  CHECK(collect_delta_coefficients({DeltaTerm{c, 0, q1(), 1}, DeltaTerm{c, 0, q1(-1), 1}}).size() == 2);
  // both sides of the variable-swap identity, after normalization, cancel
  for (int zeta : {-1, 0, 1, 2})
    for (int i = 0; i <= 3; ++i) {
      RawDelta w{i, zeta, q1(), q1(2), false, false};
      RawDelta z{i, zeta, q1(), q1(2), true, false};
      Scalar k = embed_power(q1() * q1(-2), long(i) * (zeta - 1));
      if (i % 2) k = -k;
      DeltaTerm lhs = delta_normalize(c, w);
      DeltaTerm rhs = delta_normalize(Scalar(-1) * k * c, z);
      CHECK(collect_delta_coefficients({lhs, rhs}).empty());
    }
}

TEST_CASE("property: delta substitution and normalization on windows") {
  FieldSpec f{3, 1};
  std::vector<GroupElem> gens = {GroupElem::identity(f), GroupElem::zeta(f), GroupElem::param(f, 0),
                                 GroupElem::param(f, 0, -1)};
  for (int zeta : {-1, 0, 1, 2})
    for (int i = 0; i <= 3; ++i)
      for (const auto& a : gens)
        for (const auto& b : gens) {
          RawDelta w{i, zeta, a, b, false, false};
          RawDelta s{i, zeta, a, b, false, true};
          CHECK(delta_expand_raw(w, kBox).agrees_with(delta_expand_raw(s, kBox)));
          for (bool zd : {false, true}) {
            RawDelta r{i, zeta, a, b, zd, false};
            NormalizedDelta n = delta_normalize(r);
            ScalarWindow rhs = delta_expand(n.order, zeta, n.scale, kBox);
            for (auto& [k, v] : rhs.cells) v *= n.factor;
            CHECK(delta_expand_raw(r, kBox).agrees_with(rhs));
          }
        }
}

TEST_CASE("property: collect and expand round trip") {
  std::mt19937 rng(7);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const Box2 big{-10, 10, -10, 10};
  for (int it = 0; it < 60; ++it) {
    int zeta = pick(-1, 2);
    std::vector<ScalarDeltaTerm> terms;
    int nt = pick(1, 5);
    for (int t = 0; t < nt; ++t) {
      ScalarDeltaTerm d;
      d.order = pick(0, 2);
      d.scale = q1(pick(-1, 1));
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
    CHECK(e1.agrees_with(e2));
    CHECK(m.empty() == e1.cells.empty());
  }
}
