#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace qvla {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// Q(zeta_T)(q1..qk)
struct FieldSpec {
  int T = 1;
  int k = 0;
  bool operator==(const FieldSpec&) const = default;
};

class Field {
 public:
  FieldSpec spec;
  int phi = 1;                 // degree of the cyclotomic polynomial
  std::vector<mpq_class> cyclo;  // Phi_T, low degree first, monic
};

// interned, never freed; the returned pointer is stable
const Field* intern_field(FieldSpec spec);

// element of Q(zeta_T), dense in powers of zeta, trailing zeros trimmed
using Cyc = std::vector<mpq_class>;

struct Term {
  std::vector<int> e;
  Cyc c;
};
// sorted by descending grlex, no zero coefficients
using Poly = std::vector<Term>;

class Scalar {
 public:
  Scalar() = default;
  Scalar(long v);  // NOLINT: integers convert implicitly
  Scalar(const mpq_class& v);  // NOLINT

  static Scalar zeta(FieldSpec spec);
  static Scalar param(FieldSpec spec, int i);  // q_{i+1}
  static Scalar from_parts(const Field* F, Poly num, Poly den);

  bool is_zero() const { return num_.empty(); }
  bool is_one() const;
  bool is_rational() const;
  mpq_class to_rational() const;  // throws unless is_rational()

  Scalar operator-() const;
  Scalar inv() const;
  Scalar pow(long n) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  // total order on canonical forms, only for deterministic containers
  friend std::strong_ordering compare(const Scalar& a, const Scalar& b);

  const Field* field() const { return F_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  // re-run canonicalization; a no-op on values built by this class
  Scalar normalized() const;

  std::string str() const;

 private:
  const Field* F_ = nullptr;
  Poly num_;
  Poly den_;  // empty means 1
};

Scalar parse_scalar(const std::string& text, FieldSpec spec);

// element of Gamma = <zeta_T> x Z^k
struct GroupElem {
  int T = 1;
  int t = 0;
  std::vector<int> f;

  static GroupElem identity(FieldSpec spec);
  static GroupElem zeta(FieldSpec spec, int power = 1);
  static GroupElem param(FieldSpec spec, int i, int power = 1);

  bool is_identity() const;
  GroupElem inv() const;
  GroupElem pow(long n) const;
  int height() const;  // distance from the identity in the generator word metric
  friend GroupElem operator*(const GroupElem& a, const GroupElem& b);
  bool operator==(const GroupElem&) const = default;
  auto operator<=>(const GroupElem&) const = default;

  std::string str() const;
};

GroupElem parse_group(const std::string& text, FieldSpec spec);
Scalar embed_power(const GroupElem& g, long n);

// falling factorial, generalized binomial and factorial as exact scalars
mpq_class binom(long m, long i);
mpq_class factorial(long n);

}  // namespace qvla
