#include "qvla/enveloping.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "qvla/linalg.hpp"
#include "qvla/parallel.hpp"

namespace qvla {

namespace {

Scalar sign(long e) { return Scalar(e % 2 ? -1 : 1); }

PBWMonomial tail(const PBWMonomial& m) { return PBWMonomial{std::vector<Mode>(m.modes.begin() + 1, m.modes.end())}; }

}  // namespace

std::string PBWMonomial::str() const {
  if (modes.empty()) return "1";
  std::string s;
  for (const auto& m : modes) s += m.str() + " ";
  return s + "1";
}

std::string str(const PBWVector& v) {
  return v.str([](const PBWMonomial& m) { return m.str(); });
}

bool mode_precedes(const Mode& x, const Mode& y) {
  if (x.m != y.m) return x.m < y.m;
  return std::tie(x.a, x.alpha) < std::tie(y.a, y.alpha);
}

LieElement rho_mode(int n, const GeneratorIndex& a, const GroupElem& alpha, int m) {
  LieElement r;
  mpq_class c = factorial(n) * binom(m, n);
  if (n % 2) c = -c;
  if (c != 0) r.add(Mode{a, alpha, m - n, 0}, Scalar(c));
  return r;
}

Enveloping::Enveloping(const QVLA& q) : q_(q), cache_(std::make_shared<Cache>()) {}

PBWVector Enveloping::vacuum() const {
  PBWVector v;
  v.add(PBWMonomial{}, Scalar(1));
  return v;
}

PBWVector Enveloping::generator(const GeneratorIndex& a, const GroupElem& alpha) const {
  return act(Mode{a, alpha, -1, 0}, vacuum());
}

int Enveloping::degree(const Mode& x) const { return q_.family(x.a.family).weight - x.m - 1; }

int Enveloping::degree(const PBWMonomial& m) const {
  int d = 0;
  for (const auto& x : m.modes) d += degree(x);
  return d;
}

int Enveloping::degree(const PBWVector& v) const {
  int d = -1;
  for (const auto& [m, c] : v) d = std::max(d, degree(m));
  return d;
}

PBWVector Enveloping::act(const LieElement& x, const PBWVector& v) const {
  PBWVector r;
  for (const auto& [m, c] : reduce_mode(q_, 0, x))
    for (const auto& [w, k] : v) r.add(act_mono(m, w), c * k);
  return r;
}

PBWVector Enveloping::act(const Mode& x, const PBWVector& v) const { return act(LieElement(x), v); }

// x is a normal-form mode
PBWVector Enveloping::act_mono(const Mode& x, const PBWMonomial& m) const {
  if (degree(x) + degree(m) < 0) return {};
  if (m.modes.empty() || (x.m < 0 && !mode_precedes(m.modes.front(), x))) {
    if (x.m >= 0) return {};
    PBWMonomial r{{x}};
    r.modes.insert(r.modes.end(), m.modes.begin(), m.modes.end());
    PBWVector v;
    v.add(r, Scalar(1));
    return v;
  }
  auto key = std::make_pair(x, m);
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->act.find(key);
    if (it != cache_->act.end()) return it->second;
  }
  // x y rest = y (x rest) + [x, y] rest
  const Mode& y = m.modes.front();
  PBWMonomial rest = tail(m);
  PBWVector r;
  for (const auto& [w, c] : act_mono(x, rest)) r.add(act_mono(y, w), c);
  PBWVector restv;
  restv.add(rest, Scalar(1));
  r += act(zeta_mode_bracket(q_, 0, x, y), restv);
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->act.emplace(key, r);
  return r;
}

PBWVector Enveloping::normal_order(const std::vector<Mode>& word) const {
  PBWVector v = vacuum();
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = act(*it, v);
  return v;
}

PBWVector Enveloping::vertex_coefficient(const PBWVector& v, int n, const PBWVector& w) const {
  PBWVector r;
  for (const auto& [a, ca] : v)
    for (const auto& [b, cb] : w) r.add(vertex_mono(a, n, b), ca * cb);
  return r;
}

// (a_(p) u)_(n) w = sum_j (-1)^j C(p,j) [ a_(p-j) u_(n+j) w - (-1)^p u_(p+n-j) a_(j) w ]
PBWVector Enveloping::vertex_mono(const PBWMonomial& v, int n, const PBWMonomial& w) const {
  if (v.modes.empty()) {
    PBWVector r;
    if (n == -1) r.add(w, Scalar(1));
    return r;
  }
  const int dv = degree(v), dw = degree(w);
  if (dv + dw - n - 1 < 0) return {};
  auto key = std::make_tuple(v, n, w);
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->vertex.find(key);
    if (it != cache_->vertex.end()) return it->second;
  }
  const Mode& x = v.modes.front();
  const PBWMonomial u = tail(v);
  const int p = x.m, du = degree(u), wt = q_.family(x.a.family).weight;
  PBWVector wv;
  wv.add(w, Scalar(1));
  PBWVector r;
  for (int j = 0; du + dw - (n + j) - 1 >= 0; ++j) {
    PBWVector inner = vertex_mono(u, n + j, w);
    if (inner.is_zero()) continue;
    r.add(act(Mode{x.a, x.alpha, p - j, 0}, inner), sign(j) * Scalar(binom(p, j)));
  }
  for (int j = 0; wt - j - 1 + dw >= 0; ++j) {
    PBWVector aw = act(Mode{x.a, x.alpha, j, 0}, wv);
    if (aw.is_zero()) continue;
    PBWVector uv;
    uv.add(u, Scalar(1));
    r.add(vertex_coefficient(uv, p + n - j, aw), -(sign(p) * sign(j) * Scalar(binom(p, j))));
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->vertex.emplace(key, r);
  return r;
}

PBWVector Enveloping::translation(const PBWVector& v) const { return vertex_coefficient(v, -2, vacuum()); }

// R_lambda(a^{alpha,0}(m)) = lambda^{(m+1)(eps-1)} a^{alpha lambda^-1,0}(m)
PBWVector Enveloping::r_action(const GroupElem& lambda, const PBWVector& v) const {
  const int e1 = q_.epsilon - 1;
  PBWVector r;
  for (const auto& [m, c] : v) {
    Scalar k = c;
    std::vector<Mode> word;
    for (const auto& x : m.modes) {
      k *= embed_power(lambda, long(x.m + 1) * e1);
      word.push_back(Mode{x.a, x.alpha * lambda.inv(), x.m, 0});
    }
    r.add(normal_order(word), k);
  }
  return r;
}

std::vector<PBWMonomial> Enveloping::monomials(int max_degree, const std::vector<GroupElem>& alphas) const {
  std::set<Mode> basis;
  for (const auto& a : q_.window_generators())
    for (const auto& al : alphas)
      for (int m = -1; degree(Mode{a, al, m, 0}) <= max_degree; --m)
        for (const auto& [x, c] : reduce_mode(q_, 0, LieElement(Mode{a, al, m, 0}))) basis.insert(x);
  std::vector<Mode> modes(basis.begin(), basis.end());
  std::sort(modes.begin(), modes.end(), mode_precedes);
  std::vector<PBWMonomial> out;
  PBWMonomial cur;
  const size_t max_len = size_t(std::max(max_degree, 1));
  auto rec = [&](auto&& self, size_t from, int deg) -> void {
    out.push_back(cur);
    if (cur.modes.size() >= max_len) return;
    for (size_t i = from; i < modes.size(); ++i) {
      int d = deg + degree(modes[i]);
      if (d > max_degree) continue;
      cur.modes.push_back(modes[i]);
      self(self, i, d);
      cur.modes.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

// ---- graded dimension ----

std::optional<long> graded_dimension(const QVLA& q, int d) {
  if (d < 0) return 0;
  if (q.spec.k > 0) return std::nullopt;
  for (const auto& f : q.families)
    if (f.arity > 0) return std::nullopt;
  Enveloping V(q);
  std::vector<long> dim(d + 1, 0);
  for (int e = 0; e <= d; ++e) {
    Echelon<Mode> ech;
    for (const auto& f : q.families)
      for (int t = 0; t < q.spec.T; ++t) {
        int m = f.weight - e - 1;
        if (m > -1) continue;
        Mode x{{f.name, {}}, GroupElem::zeta(q.spec, t), m, 0};
        dim[e] += ech.insert(reduce_mode(q, 0, LieElement(x)));
      }
  }
  if (dim[0] > 0) return std::nullopt;
  // coefficient of t^d in prod_e (1 - t^e)^{-dim_e}
  std::vector<long> ways(d + 1, 0);
  ways[0] = 1;
  for (int e = 1; e <= d; ++e)
    for (long k = 0; k < dim[e]; ++k)
      for (int s = e; s <= d; ++s) ways[s] += ways[s - e];
  return ways[d];
}

}  // namespace qvla
