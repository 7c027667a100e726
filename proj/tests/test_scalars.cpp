#include <random>

#include "doctest.h"
#include "qvla/scalars.hpp"

using namespace qvla;

namespace {

// independent oracle: remainder of x^n modulo a monic integer polynomial
std::vector<long> xpow_mod(int n, std::vector<long> mod) {
  std::vector<long> r(n + 1, 0);
  r[n] = 1;
  const int d = int(mod.size()) - 1;
  for (int top = n; top >= d; --top) {
    long c = r[top];
    if (!c) continue;
    for (int j = 0; j <= d; ++j) r[top - d + j] -= c * mod[j];
  }
  r.resize(d);
  return r;
}

Scalar from_int_coeffs(const std::vector<long>& c, FieldSpec spec) {
  Scalar z = Scalar::zeta(spec), s;
  for (size_t j = 0; j < c.size(); ++j) s += Scalar(c[j]) * z.pow(long(j));
  return s;
}

struct Gen {
  std::mt19937 rng;
  FieldSpec spec;
  explicit Gen(unsigned seed, FieldSpec s) : rng(seed), spec(s) {}
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  Scalar poly() {
    Scalar s;
    int terms = pick(1, 3);
    for (int t = 0; t < terms; ++t) {
      Scalar m(pick(-3, 3));
      if (spec.T > 1) m *= Scalar::zeta(spec).pow(pick(0, spec.T - 1));
      for (int i = 0; i < spec.k; ++i) m *= Scalar::param(spec, i).pow(pick(0, 2));
      s += m;
    }
    return s;
  }
  Scalar scalar() {
    Scalar d = poly();
    while (d.is_zero()) d = poly();
    return poly() / d;
  }
  GroupElem group() {
    GroupElem g = GroupElem::zeta(spec, pick(0, spec.T - 1));
    for (int i = 0; i < spec.k; ++i) g = g * GroupElem::param(spec, i, pick(-2, 2));
    return g;
  }
};

}  // namespace

TEST_CASE("cyclotomic products") {
  FieldSpec f4{4, 0}, f2{2, 0};
  CHECK(Scalar::zeta(f4) * Scalar::zeta(f4) == from_int_coeffs(xpow_mod(2, {1, 0, 1}), f4));
  CHECK(Scalar::zeta(f4) * Scalar::zeta(f4) == Scalar(-1));
  CHECK(Scalar::zeta(f2) * Scalar::zeta(f2) == Scalar(1));
  // Phi_12 = x^4 - x^2 + 1
  FieldSpec f12{12, 0};
  for (int n = 0; n < 30; ++n)
    CHECK(Scalar::zeta(f12).pow(n) == from_int_coeffs(xpow_mod(n, {1, 0, -1, 0, 1}), f12));
  CHECK(Scalar::zeta(f12).pow(12).is_one());
}

TEST_CASE("inverse of q - 1/q") {
  FieldSpec f{1, 1};
  Scalar q = Scalar::param(f, 0);
  Scalar d = q - q.inv();
  CHECK((d.inv() * d).is_one());
  CHECK((Scalar(1) / d).str() == "(q1)/(q1^2 - 1)");
  CHECK_THROWS_AS(Scalar().inv(), InputError);
}

TEST_CASE("group arithmetic and embedding") {
  FieldSpec f3{3, 1};
  GroupElem z = GroupElem::zeta(f3);
  CHECK((z * z.pow(2)).is_identity());
  CHECK(GroupElem::param(f3, 0, 2).inv() == GroupElem::param(f3, 0, -2));
  CHECK(embed_power(GroupElem::identity(f3), -7).is_one());
  CHECK(embed_power(GroupElem::param(f3, 0), 3) == Scalar::param(f3, 0).pow(3));
  FieldSpec f2{2, 0};
  CHECK(embed_power(GroupElem::zeta(f2), 5) == Scalar(-1));
  CHECK(parse_group("z^2*q1^-3", f3) == GroupElem::zeta(f3, 2) * GroupElem::param(f3, 0, -3));
}

TEST_CASE("parse and print") {
  FieldSpec f{6, 2};
  for (const char* s : {"1/(q1 - q1^-1)", "z^2 + 3*q2/7", "(q1*q2 - 1)/(q1 + z)", "-z^5", "0",
                        "(q1^2 - q2^2)/(q1 - q2)"}) {
    Scalar a = parse_scalar(s, f);
    CHECK(parse_scalar(a.str(), f) == a);
  }
  CHECK(parse_scalar("(q1^2 - q2^2)/(q1 - q2)", f) == parse_scalar("q1 + q2", f));
  CHECK_THROWS_AS(parse_scalar("q3", f), InputError);
  CHECK_THROWS_AS(parse_scalar("1/0", f), InputError);
  CHECK_THROWS_AS(parse_scalar("(1", f), InputError);
}

TEST_CASE("binomials") {
  CHECK(binom(-1, 2) == 1);
  CHECK(binom(-2, 3) == -4);
  CHECK(binom(5, 2) == 10);
  CHECK(binom(2, 5) == 0);
  CHECK(factorial(5) == 120);
}

TEST_CASE("property: field axioms") {
  for (FieldSpec spec : {FieldSpec{1, 1}, FieldSpec{3, 1}, FieldSpec{4, 2}, FieldSpec{5, 0}}) {
    Gen g(17u + unsigned(spec.T * 10 + spec.k), spec);
    for (int it = 0; it < 40; ++it) {
      Scalar a = g.scalar(), b = g.scalar(), c = g.scalar();
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == Scalar());
      if (!a.is_zero()) CHECK((a * a.inv()).is_one());
      CHECK(a.normalized() == a);
      CHECK(a.normalized().str() == a.str());
      CHECK(parse_scalar(a.str(), spec) == a);
    }
  }
}

TEST_CASE("property: embed_power is a homomorphism") {
  FieldSpec spec{6, 2};
  Gen g(5, spec);
  for (int it = 0; it < 60; ++it) {
    GroupElem x = g.group(), y = g.group();
    int m = g.pick(-4, 4), n = g.pick(-4, 4);
    CHECK(embed_power(x * y, n) == embed_power(x, n) * embed_power(y, n));
    CHECK(embed_power(x, m + n) == embed_power(x, m) * embed_power(x, n));
  }
}
