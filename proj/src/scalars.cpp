#include "qvla/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qvla {

namespace {

using UPoly = std::vector<mpq_class>;  // univariate over Q, low degree first

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a = q*b + r
void udivmod(UPoly a, const UPoly& b, UPoly& q, UPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const mpq_class& lb = b.back();
  while (a.size() >= b.size()) {
    size_t d = a.size() - b.size();
    mpq_class c = a.back() / lb;
    q[d] = c;
    for (size_t j = 0; j < b.size(); ++j) a[d + j] -= c * b[j];
    trim(a);
  }
  trim(q);
  r = a;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

UPoly cyclotomic(int T) {
  UPoly p(T + 1, 0);
  p[0] = -1;
  p[T] = 1;
  for (int d = 1; d < T; ++d) {
    if (T % d) continue;
    UPoly q, r;
    udivmod(p, cyclotomic(d), q, r);
    p = q;
  }
  return p;
}

// ---- Q(zeta_T) ----

void creduce(Cyc& a, const Field* F) {
  if (!F) {
    trim(a);
    return;
  }
  const int phi = F->phi;
  for (int d = int(a.size()) - 1; d >= phi; --d) {
    if (a[d] == 0) continue;
    mpq_class c = a[d];
    for (int j = 0; j <= phi; ++j) a[d - phi + j] -= c * F->cyclo[j];
  }
  if (int(a.size()) > phi) a.resize(phi);
  trim(a);
}

Cyc cadd(const Cyc& a, const Cyc& b) {
  Cyc c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  trim(c);
  return c;
}

Cyc cneg(const Cyc& a) {
  Cyc c = a;
  for (auto& x : c) x = -x;
  return c;
}

Cyc cmul(const Cyc& a, const Cyc& b, const Field* F) {
  if (a.size() == 1 && b.size() == 1) return Cyc{a[0] * b[0]};
  Cyc c = umul(a, b);
  creduce(c, F);
  return c;
}

bool cone(const Cyc& a) { return a.size() == 1 && a[0] == 1; }

Cyc cinv(const Cyc& a, const Field* F) {
  if (a.empty()) throw InputError("division by zero");
  if (a.size() == 1) return Cyc{1 / a[0]};
  UPoly r0 = F->cyclo, r1 = a, s0{}, s1{1};
  while (!r1.empty()) {
    UPoly q, r;
    udivmod(r0, r1, q, r);
    UPoly qs = umul(q, s1);
    UPoly ns(std::max(s0.size(), qs.size()), 0);
    for (size_t i = 0; i < s0.size(); ++i) ns[i] += s0[i];
    for (size_t i = 0; i < qs.size(); ++i) ns[i] -= qs[i];
    trim(ns);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = ns;
  }
  // r0 is a nonzero constant because Phi_T is irreducible
  mpq_class g = r0[0];
  for (auto& x : s0) x /= g;
  creduce(s0, F);
  return s0;
}

int ccmp(const Cyc& a, const Cyc& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c) return c < 0 ? -1 : 1;
  }
  return 0;
}

// ---- polynomials ----

int mono_cmp(const std::vector<int>& a, const std::vector<int>& b) {
  long da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

struct MonoGreater {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    return mono_cmp(a, b) > 0;
  }
};

Poly one_poly(int k) { return Poly{Term{std::vector<int>(k, 0), Cyc{1}}}; }

bool is_const(const Poly& p) {
  if (p.size() != 1) return false;
  for (int x : p[0].e)
    if (x) return false;
  return true;
}

bool pone(const Poly& p) { return is_const(p) && cone(p[0].c); }

Poly padd(const Poly& a, const Poly& b) {
  Poly c;
  c.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int s = i == a.size() ? 1 : j == b.size() ? -1 : -mono_cmp(a[i].e, b[j].e);
    if (s < 0) {
      c.push_back(a[i++]);
    } else if (s > 0) {
      c.push_back(b[j++]);
    } else {
      Cyc v = cadd(a[i].c, b[j].c);
      if (!v.empty()) c.push_back(Term{a[i].e, std::move(v)});
      ++i;
      ++j;
    }
  }
  return c;
}

Poly pneg(const Poly& a) {
  Poly c = a;
  for (auto& t : c) t.c = cneg(t.c);
  return c;
}

Poly psub(const Poly& a, const Poly& b) { return padd(a, pneg(b)); }

Poly pscale(const Poly& a, const Cyc& s, const Field* F) {
  Poly c;
  c.reserve(a.size());
  for (const auto& t : a) {
    Cyc v = cmul(t.c, s, F);
    if (!v.empty()) c.push_back(Term{t.e, std::move(v)});
  }
  return c;
}

Poly pmul(const Poly& a, const Poly& b, const Field* F) {
  if (a.empty() || b.empty()) return {};
  if (pone(a)) return b;
  if (pone(b)) return a;
  std::map<std::vector<int>, Cyc, MonoGreater> acc;
  for (const auto& x : a)
    for (const auto& y : b) {
      std::vector<int> e(x.e.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = x.e[i] + y.e[i];
      auto& slot = acc[e];
      slot = cadd(slot, cmul(x.c, y.c, F));
    }
  Poly c;
  for (auto& [e, v] : acc)
    if (!v.empty()) c.push_back(Term{e, v});
  return c;
}

Poly pmul_term(const Poly& a, const std::vector<int>& e, const Cyc& s, const Field* F) {
  Poly c;
  c.reserve(a.size());
  for (const auto& t : a) {
    Cyc v = cmul(t.c, s, F);
    if (v.empty()) continue;
    std::vector<int> ne(e.size());
    for (size_t i = 0; i < e.size(); ++i) ne[i] = t.e[i] + e[i];
    c.push_back(Term{std::move(ne), std::move(v)});
  }
  return c;
}

Poly divexact(Poly a, const Poly& b, const Field* F) {
  if (pone(b)) return a;
  Poly q;
  Cyc lbinv = cinv(b[0].c, F);
  while (!a.empty()) {
    std::vector<int> e(a[0].e.size());
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] = a[0].e[i] - b[0].e[i];
      if (e[i] < 0) throw ContractError("inexact polynomial division");
    }
    Cyc c = cmul(a[0].c, lbinv, F);
    q = padd(q, Poly{Term{e, c}});
    a = psub(a, pmul_term(b, e, c, F));
  }
  return q;
}

Poly monic(const Poly& p, const Field* F) {
  if (p.empty() || cone(p[0].c)) return p;
  return pscale(p, cinv(p[0].c, F), F);
}

int deg_in(const Poly& p, int v) {
  int d = 0;
  for (const auto& t : p) d = std::max(d, t.e[v]);
  return d;
}

Poly lc_in(const Poly& p, int v) {
  int d = deg_in(p, v);
  Poly c;
  for (const auto& t : p)
    if (t.e[v] == d) {
      Term u = t;
      u.e[v] = 0;
      c.push_back(std::move(u));
    }
  return c;
}

std::vector<Poly> coeffs_in(const Poly& p, int v) {
  std::map<int, Poly> g;
  for (const auto& t : p) {
    Term u = t;
    u.e[v] = 0;
    g[t.e[v]].push_back(std::move(u));
  }
  std::vector<Poly> out;
  for (auto& [d, c] : g) out.push_back(std::move(c));
  return out;
}

Poly gcd_rec(const Poly& A, const Poly& B, int v, const Field* F);

Poly content_in(const Poly& p, int v, const Field* F) {
  auto cs = coeffs_in(p, v);
  Poly g = monic(cs[0], F);
  for (size_t i = 1; i < cs.size() && !pone(g); ++i) g = gcd_rec(g, cs[i], v + 1, F);
  return g;
}

Poly prem(Poly R, const Poly& B, int v, const Field* F) {
  int dB = deg_in(B, v);
  Poly lcB = lc_in(B, v);
  const int k = int(B[0].e.size());
  while (!R.empty() && deg_in(R, v) >= dB) {
    int d = deg_in(R, v) - dB;
    Poly lcR = lc_in(R, v);
    std::vector<int> xe(k, 0);
    xe[v] = d;
    Poly shifted;
    for (const auto& t : lcR) {
      Term u = t;
      u.e[v] += d;
      shifted.push_back(std::move(u));
    }
    R = psub(pmul(lcB, R, F), pmul(shifted, B, F));
  }
  return R;
}

Poly gcd_rec(const Poly& A, const Poly& B, int v, const Field* F) {
  if (A.empty()) return monic(B, F);
  if (B.empty()) return monic(A, F);
  const int k = int(A[0].e.size());
  if (v >= k) return one_poly(k);
  if (deg_in(A, v) == 0 && deg_in(B, v) == 0) return gcd_rec(A, B, v + 1, F);
  Poly ca = content_in(A, v, F), cb = content_in(B, v, F);
  Poly c = gcd_rec(ca, cb, v + 1, F);
  Poly pa = monic(divexact(A, ca, F), F), pb = monic(divexact(B, cb, F), F);
  if (deg_in(pa, v) < deg_in(pb, v)) std::swap(pa, pb);
  Poly g;
  for (;;) {
    if (deg_in(pb, v) == 0) {
      g = one_poly(k);
      break;
    }
    Poly r = prem(pa, pb, v, F);
    if (r.empty()) {
      g = pb;
      break;
    }
    pa = pb;
    pb = monic(divexact(r, content_in(r, v, F), F), F);
  }
  return monic(pmul(c, g, F), F);
}

Poly mono_gcd(const Poly& a, const Poly& b) {
  std::vector<int> e = a[0].e;
  for (const auto* p : {&a, &b})
    for (const auto& t : *p)
      for (size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], t.e[i]);
  return Poly{Term{e, Cyc{1}}};
}

Poly pgcd(const Poly& a, const Poly& b, const Field* F) {
  if (is_const(a) || is_const(b)) return one_poly(int(a[0].e.size()));
  if (a.size() == 1 || b.size() == 1) return mono_gcd(a, b);
  return gcd_rec(a, b, 0, F);
}

const Field* join(const Field* a, const Field* b) {
  if (!a) return b;
  if (!b || a == b) return a;
  throw ContractError("scalars from different fields");
}

Poly lift(const Poly& p, const Field* F) {
  if (!F || p.empty()) return p;
  size_t k = F->spec.k;
  if (p[0].e.size() == k) return p;
  Poly c = p;
  for (auto& t : c) t.e.assign(k, 0);
  return c;
}

void canonicalize(const Field* F, Poly& num, Poly& den) {
  if (num.empty()) {
    den.clear();
    return;
  }
  if (den.empty()) return;
  Poly g = pgcd(num, den, F);
  if (!pone(g)) {
    num = divexact(num, g, F);
    den = divexact(den, g, F);
  }
  if (!cone(den[0].c)) {
    Cyc s = cinv(den[0].c, F);
    num = pscale(num, s, F);
    den = pscale(den, s, F);
  }
  if (pone(den)) den.clear();
}

int pcmp(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = mono_cmp(a[i].e, b[i].e);
    if (c) return c;
    c = ccmp(a[i].c, b[i].c);
    if (c) return c;
  }
  return 0;
}

}  // namespace

const Field* intern_field(FieldSpec spec) {
  if (spec.T < 1 || spec.k < 0) throw InputError("invalid field spec");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Field>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = table[{spec.T, spec.k}];
  if (!slot) {
    slot = std::make_unique<Field>();
    slot->spec = spec;
    slot->cyclo = cyclotomic(spec.T);
    slot->phi = int(slot->cyclo.size()) - 1;
  }
  return slot.get();
}

Scalar::Scalar(long v) {
  if (v) num_.push_back(Term{{}, Cyc{mpq_class(v)}});
}

Scalar::Scalar(const mpq_class& v) {
  if (v != 0) num_.push_back(Term{{}, Cyc{v}});
}

Scalar Scalar::zeta(FieldSpec spec) {
  const Field* F = intern_field(spec);
  Cyc c{0, 1};
  creduce(c, F);
  Poly num;
  if (!c.empty()) num.push_back(Term{std::vector<int>(spec.k, 0), c});
  return from_parts(F, num, {});
}

Scalar Scalar::param(FieldSpec spec, int i) {
  if (i < 0 || i >= spec.k) throw InputError("parameter index out of range");
  std::vector<int> e(spec.k, 0);
  e[i] = 1;
  return from_parts(intern_field(spec), Poly{Term{e, Cyc{1}}}, {});
}

Scalar Scalar::from_parts(const Field* F, Poly num, Poly den) {
  Scalar s;
  s.F_ = F;
  s.num_ = lift(num, F);
  s.den_ = lift(den, F);
  if (!s.den_.empty() && s.den_.size() == 1 && pone(s.den_)) s.den_.clear();
  if (!s.den_.empty() || !s.num_.empty()) {
    for (auto& t : s.num_) creduce(t.c, F);
    std::erase_if(s.num_, [](const Term& t) { return t.c.empty(); });
    for (auto& t : s.den_) creduce(t.c, F);
    std::erase_if(s.den_, [](const Term& t) { return t.c.empty(); });
    std::sort(s.num_.begin(), s.num_.end(),
              [](const Term& a, const Term& b) { return mono_cmp(a.e, b.e) > 0; });
    std::sort(s.den_.begin(), s.den_.end(),
              [](const Term& a, const Term& b) { return mono_cmp(a.e, b.e) > 0; });
  }
  if (!den.empty() && s.den_.empty() && !pone(den)) throw InputError("division by zero");
  canonicalize(F, s.num_, s.den_);
  return s;
}

bool Scalar::is_one() const { return den_.empty() && pone(num_); }

bool Scalar::is_rational() const {
  return den_.empty() && (num_.empty() || (is_const(num_) && num_[0].c.size() == 1));
}

mpq_class Scalar::to_rational() const {
  if (!is_rational()) throw ContractError("scalar is not rational: " + str());
  return num_.empty() ? mpq_class(0) : num_[0].c[0];
}

Scalar Scalar::normalized() const {
  Scalar s = *this;
  canonicalize(F_, s.num_, s.den_);
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num_ = pneg(num_);
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw InputError("division by zero");
  Scalar s;
  s.F_ = F_;
  s.num_ = den_.empty() ? one_poly(num_[0].e.size()) : den_;
  s.den_ = num_;
  if (!cone(s.den_[0].c)) {
    Cyc c = cinv(s.den_[0].c, F_);
    s.num_ = pscale(s.num_, c, F_);
    s.den_ = pscale(s.den_, c, F_);
  }
  if (pone(s.den_)) s.den_.clear();
  return s;
}

Scalar Scalar::pow(long n) const {
  if (n < 0) return inv().pow(-n);
  Scalar r(1), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Field* F = join(a.F_, b.F_);
  Poly na = lift(a.num_, F), nb = lift(b.num_, F);
  Scalar s;
  s.F_ = F;
  if (a.den_.empty() && b.den_.empty()) {
    s.num_ = padd(na, nb);
    return s;
  }
  Poly da = lift(a.den_, F), db = lift(b.den_, F);
  if (pcmp(da, db) == 0) {
    s.num_ = padd(na, nb);
    s.den_ = da;
  } else {
    Poly one = one_poly(F ? F->spec.k : 0);
    const Poly& xa = da.empty() ? one : da;
    const Poly& xb = db.empty() ? one : db;
    s.num_ = padd(pmul(na, xb, F), pmul(nb, xa, F));
    s.den_ = pmul(xa, xb, F);
  }
  canonicalize(F, s.num_, s.den_);
  return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar();
  const Field* F = join(a.F_, b.F_);
  Scalar s;
  s.F_ = F;
  Poly na = lift(a.num_, F), nb = lift(b.num_, F);
  Poly da = lift(a.den_, F), db = lift(b.den_, F);
  if (da.empty() && db.empty()) {
    if (na.size() == 1 && nb.size() == 1 && na[0].e.empty()) {
      Cyc c = cmul(na[0].c, nb[0].c, F);
      if (!c.empty()) s.num_.push_back(Term{{}, std::move(c)});
      return s;
    }
    s.num_ = pmul(na, nb, F);
    return s;
  }
  if (!db.empty()) {
    Poly g = pgcd(na, db, F);
    if (!pone(g)) {
      na = divexact(na, g, F);
      db = divexact(db, g, F);
    }
  }
  if (!da.empty()) {
    Poly g = pgcd(nb, da, F);
    if (!pone(g)) {
      nb = divexact(nb, g, F);
      da = divexact(da, g, F);
    }
  }
  s.num_ = pmul(na, nb, F);
  if (da.empty() || pone(da)) s.den_ = db;
  else if (db.empty() || pone(db)) s.den_ = da;
  else s.den_ = pmul(da, db, F);
  if (!s.den_.empty() && pone(s.den_)) s.den_.clear();
  canonicalize(F, s.num_, s.den_);
  return s;
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.num_.empty() || b.num_.empty()) return a.num_.empty() && b.num_.empty();
  const Field* F = join(a.F_, b.F_);
  return pcmp(lift(a.num_, F), lift(b.num_, F)) == 0 && pcmp(lift(a.den_, F), lift(b.den_, F)) == 0;
}

std::strong_ordering compare(const Scalar& a, const Scalar& b) {
  const Field* F = a.F_ ? a.F_ : b.F_;
  int c = pcmp(lift(a.den_, F), lift(b.den_, F));
  if (!c) c = pcmp(lift(a.num_, F), lift(b.num_, F));
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater
                                                   : std::strong_ordering::equal;
}

// ---- printing ----

namespace {

std::string mono_str(const std::vector<int>& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += "q" + std::to_string(i + 1);
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string zpow(size_t j) {
  if (j == 0) return "";
  return j == 1 ? "z" : "z^" + std::to_string(j);
}

// signed rational times a symbolic factor; returns text without leading sign
std::string coeff_factor(const mpq_class& r, const std::string& sym, bool& neg) {
  neg = r < 0;
  mpq_class a = abs(r);
  if (sym.empty()) return a.get_str();
  if (a == 1) return sym;
  return a.get_str() + "*" + sym;
}

std::string cyc_str(const Cyc& c, bool& neg) {
  int nz = 0;
  size_t last = 0;
  for (size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) ++nz, last = j;
  if (nz == 1) return coeff_factor(c[last], zpow(last), neg);
  neg = false;
  std::string s = "(";
  bool first = true;
  for (size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    bool n;
    std::string f = coeff_factor(c[j], zpow(j), n);
    if (first) s += n ? "-" + f : f;
    else s += (n ? " - " : " + ") + f;
    first = false;
  }
  return s + ")";
}

std::string poly_str(const Poly& p) {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p) {
    bool neg;
    std::string m = mono_str(t.e);
    std::string c = cyc_str(t.c, neg);
    std::string body;
    if (m.empty()) body = c;
    else if (c == "1") body = m;
    else body = c + "*" + m;
    if (first) s += neg ? "-" + body : body;
    else s += (neg ? " - " : " + ") + body;
    first = false;
  }
  return s;
}

}  // namespace

std::string Scalar::str() const {
  if (den_.empty()) return poly_str(num_);
  return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

// ---- parsing ----

namespace {

class Parser {
 public:
  Parser(const std::string& s, FieldSpec spec) : s_(s), spec_(spec) {}

  Scalar run() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  const std::string& s_;
  FieldSpec spec_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw InputError("scalar parse error at column " + std::to_string(pos_ + 1) + ": " + what +
                     " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected integer");
    return std::stol(s_.substr(st, pos_ - st));
  }
  Scalar expr() {
    Scalar v;
    if (eat('-')) v = -term();
    else {
      eat('+');
      v = term();
    }
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else return v;
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    return power();
  }
  Scalar power() {
    Scalar b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      long n = integer();
      if (neg && b.is_zero()) fail("zero to a negative power");
      b = b.pow(neg ? -n : n);
    }
    return b;
  }
  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar(mpq_class(mpz_class(s_.substr(st, pos_ - st))));
    }
    if (c == 'z') {
      ++pos_;
      return Scalar::zeta(spec_);
    }
    if (c == 'q') {
      ++pos_;
      long i = integer();
      if (i < 1 || i > spec_.k) fail("parameter q" + std::to_string(i) + " not declared");
      return Scalar::param(spec_, int(i - 1));
    }
    fail("unexpected character");
  }
};

}  // namespace

Scalar parse_scalar(const std::string& text, FieldSpec spec) {
  intern_field(spec);
  return Parser(text, spec).run();
}

// ---- group ----

GroupElem GroupElem::identity(FieldSpec spec) {
  GroupElem g;
  g.T = spec.T;
  g.f.assign(spec.k, 0);
  return g;
}

GroupElem GroupElem::zeta(FieldSpec spec, int power) {
  GroupElem g = identity(spec);
  g.t = ((power % spec.T) + spec.T) % spec.T;
  return g;
}

GroupElem GroupElem::param(FieldSpec spec, int i, int power) {
  if (i < 0 || i >= spec.k) throw InputError("parameter index out of range");
  GroupElem g = identity(spec);
  g.f[i] = power;
  return g;
}

bool GroupElem::is_identity() const {
  return t == 0 && std::all_of(f.begin(), f.end(), [](int x) { return x == 0; });
}

GroupElem GroupElem::inv() const { return pow(-1); }

GroupElem GroupElem::pow(long n) const {
  GroupElem g = *this;
  g.t = int(((long(t) * n) % T + T) % T);
  for (auto& x : g.f) x = int(x * n);
  return g;
}

int GroupElem::height() const {
  int h = std::min(t, T - t);
  for (int x : f) h += std::abs(x);
  return h;
}

GroupElem operator*(const GroupElem& a, const GroupElem& b) {
  if (a.T != b.T || a.f.size() != b.f.size()) throw ContractError("group elements from different groups");
  GroupElem g = a;
  g.t = (a.t + b.t) % a.T;
  for (size_t i = 0; i < g.f.size(); ++i) g.f[i] += b.f[i];
  return g;
}

std::string GroupElem::str() const {
  std::string s;
  auto add = [&](const std::string& sym, int e) {
    if (!e) return;
    if (!s.empty()) s += "*";
    s += sym;
    if (e != 1) s += "^" + std::to_string(e);
  };
  add("z", t);
  for (size_t i = 0; i < f.size(); ++i) add("q" + std::to_string(i + 1), f[i]);
  return s.empty() ? "1" : s;
}

GroupElem parse_group(const std::string& text, FieldSpec spec) {
  GroupElem g = GroupElem::identity(spec);
  size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw InputError("group parse error at column " + std::to_string(pos + 1) + ": " + what +
                     " in '" + text + "'");
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> long {
    skip();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
    size_t st = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (st == pos) fail("expected integer");
    long v = std::stol(text.substr(st, pos - st));
    return neg ? -v : v;
  };
  skip();
  if (text.substr(pos) == "1") return g;
  for (;;) {
    skip();
    if (pos >= text.size()) fail("unexpected end");
    GroupElem factor;
    if (text[pos] == 'z') {
      ++pos;
      factor = GroupElem::zeta(spec);
    } else if (text[pos] == 'q') {
      ++pos;
      long i = number();
      if (i < 1 || i > spec.k) fail("parameter not declared");
      factor = GroupElem::param(spec, int(i - 1));
    } else if (text[pos] == '1') {
      ++pos;
      factor = GroupElem::identity(spec);
    } else {
      fail("unexpected character");
    }
    skip();
    long e = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip();
      if (pos < text.size() && text[pos] == '(') {
        ++pos;
        e = number();
        skip();
        if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
        ++pos;
      } else {
        e = number();
      }
    }
    g = g * factor.pow(e);
    skip();
    if (pos >= text.size()) return g;
    if (text[pos] != '*') fail("expected '*'");
    ++pos;
  }
}

Scalar embed_power(const GroupElem& g, long n) {
  FieldSpec spec{g.T, int(g.f.size())};
  if (g.is_identity() || n == 0) return Scalar(1);
  const Field* F = intern_field(spec);
  long t = ((long(g.t) * n) % g.T + g.T) % g.T;
  Cyc c(t + 1, 0);
  c[t] = 1;
  creduce(c, F);
  std::vector<int> pe(spec.k, 0), ne(spec.k, 0);
  for (int i = 0; i < spec.k; ++i) {
    long e = long(g.f[i]) * n;
    if (e > 0) pe[i] = int(e);
    else ne[i] = int(-e);
  }
  Poly num{Term{pe, c}};
  Poly den{Term{ne, Cyc{1}}};
  return Scalar::from_parts(F, num, den);
}

mpq_class factorial(long n) {
  mpz_class r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return mpq_class(r);
}

mpq_class binom(long m, long i) {
  if (i < 0) return 0;
  mpz_class num = 1;
  for (long r = 0; r < i; ++r) num *= (m - r);
  mpq_class v(num, mpz_class(factorial(i).get_num()));
  v.canonicalize();
  return v;
}

}  // namespace qvla
