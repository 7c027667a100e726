#include "qvla/phi_modules.hpp"

#include <algorithm>

namespace qvla {

namespace {

using Series = std::vector<mpq_class>;

Series mul(const Series& a, const Series& b, int order) {
  Series r(order + 1, 0);
  for (size_t i = 0; i < a.size() && int(i) <= order; ++i)
    for (size_t j = 0; j < b.size() && int(i + j) <= order; ++j) r[i + j] += a[i] * b[j];
  return r;
}

// a[0] = 1
Series inverse(const Series& a, int order) {
  Series r(order + 1, 0);
  r[0] = 1;
  for (int n = 1; n <= order; ++n)
    for (int j = 1; j <= n && j < int(a.size()); ++j) r[n] -= a[j] * r[n - j];
  return r;
}

Series power(const Series& a, long e, int order) {
  Series base = e < 0 ? inverse(a, order) : a, r(order + 1, 0);
  r[0] = 1;
  for (long k = 0; k < std::abs(e); ++k) r = mul(r, base, order);
  return r;
}

}  // namespace

std::vector<mpq_class> phi_series(int eps, int order) {
  Series c(order + 1, 0);
  c[0] = 1;
  // (z^eps d/dz)^k z = prod_{j<k} (1 + j(eps-1)) z^{1+k(eps-1)}
  for (int k = 0; k < order; ++k) c[k + 1] = c[k] * (1 + k * (eps - 1)) / (k + 1);
  return c;
}

// in y = z0 z^{eps-1}: f(y1) f(y2 f(y1)^{eps-1}) = f(y1 + y2)
Report check_phi_flow(int eps, int order) {
  const Series f = phi_series(eps, order);
  const Series g = power(f, eps - 1, order);
  Report rep{"phi-flow eps=" + std::to_string(eps), "order<=" + std::to_string(order), {}};
  // lhs[a][b]: coefficient of y1^a y2^b
  std::vector<Series> lhs(order + 1, Series(order + 1, 0));
  Series gb(order + 1, 0);
  gb[0] = 1;
  for (int b = 0; b <= order; ++b) {
    Series t = mul(f, gb, order);  // f(y1) g(y1)^b
    for (int a = 0; a + b <= order; ++a) lhs[a][b] = f[b] * t[a];
    gb = mul(gb, g, order);
  }
  for (int n = 0; n <= order; ++n) {
    std::string bad;
    for (int a = 0; a <= n; ++a) {
      mpq_class want = f[n] * mpq_class(binom(n, a));
      if (lhs[a][n - a] != want && bad.empty())
        bad = "y1^" + std::to_string(a) + " y2^" + std::to_string(n - a) + ": " + lhs[a][n - a].get_str() + " vs " +
              want.get_str();
    }
    rep.add("total order " + std::to_string(n), bad.empty(), bad);
  }
  return rep;
}

// ---- restricted modules ----

std::string ModMonomial::str() const {
  std::string s;
  for (const auto& m : modes) s += m.str() + " ";
  return s + "w0";
}

std::string str(const ModVector& v) {
  return v.str([](const ModMonomial& m) { return m.str(); });
}

ModVector RestrictedModule::act(const GMode& x, const ModVector& w) const {
  ModVector r;
  for (const auto& [m, c] : w) r.add(action(x, m), c);
  return r;
}

std::vector<ModMonomial> RestrictedModule::basis_up_to(int d) const {
  std::vector<ModMonomial> out;
  for (int e = 0; e <= d; ++e)
    for (auto& m : basis(e)) out.push_back(std::move(m));
  return out;
}

int mode_energy(const QVLA& q, const GMode& x) { return -x.m - (q.epsilon - 1) * (q.family(x.a.family).weight - 1); }

namespace {

bool gprec(const GMode& x, const GMode& y) {
  if (x.m != y.m) return x.m < y.m;
  return x.a < y.a;
}

struct Induced {
  QVLA q;
  std::map<std::string, Scalar> central;
  std::mutex mu;
  std::map<std::pair<GMode, ModMonomial>, ModVector> cache;

  int degree(const ModMonomial& w) const {
    int d = 0;
    for (const auto& x : w.modes) d += mode_energy(q, x);
    return d;
  }

  ModVector act(const GElement& x, const ModVector& w) {
    ModVector r;
    for (const auto& [b, cb] : x)
      for (const auto& [m, cm] : w) r.add(act_mono(b, m), cb * cm);
    return r;
  }

  // x in normal form
  ModVector act_mono(const GMode& x, const ModMonomial& w) {
    ModVector r;
    if (q.is_central(x.a)) {
      auto it = central.find(x.a.family);
      if (mode_energy(q, x) == 0 && it != central.end()) r.add(w, it->second);
      return r;
    }
    const int e = mode_energy(q, x);
    if (e + degree(w) < 0) return r;
    if (e > 0 && (w.modes.empty() || !gprec(w.modes.front(), x))) {
      ModMonomial m{{x}};
      m.modes.insert(m.modes.end(), w.modes.begin(), w.modes.end());
      r.add(m, Scalar(1));
      return r;
    }
    if (w.modes.empty()) return r;
    auto key = std::make_pair(x, w);
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
    }
    const GMode y = w.modes.front();
    ModMonomial rest{std::vector<GMode>(w.modes.begin() + 1, w.modes.end())};
    for (const auto& [m, c] : act_mono(x, rest)) r.add(act_mono(y, m), c);
    r += act(g_bracket(q, x, y), ModVector(rest));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, r);
    return r;
  }

  std::vector<GMode> creation_modes(int dmax) const {
    std::vector<GMode> out;
    for (const auto& a : q.window_generators()) {
      if (q.is_central(a)) continue;
      for (int e = 1; e <= dmax; ++e) {
        GMode x{a, -e - (q.epsilon - 1) * (q.family(a.family).weight - 1)};
        if (g_normal_form(q, GElement(x)) == GElement(x)) out.push_back(x);
      }
    }
    std::sort(out.begin(), out.end(), gprec);
    return out;
  }
};

}  // namespace

RestrictedModule induced_module(const QVLA& q, const std::map<std::string, Scalar>& central, const std::string& name) {
  auto st = std::make_shared<Induced>();
  st->q = q;
  st->central = central;
  RestrictedModule m;
  m.name = name;
  m.g = q;
  m.degree = [st](const ModMonomial& w) { return st->degree(w); };
  m.action = [st](const GMode& x, const ModMonomial& w) {
    return st->act(g_normal_form(st->q, GElement(x)), ModVector(w));
  };
  m.basis = [st](int d) {
    std::vector<ModMonomial> out;
    if (d < 0) return out;
    const auto modes = st->creation_modes(d);
    ModMonomial cur;
    auto rec = [&](auto&& self, size_t from, int left) -> void {
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      for (size_t i = from; i < modes.size(); ++i) {
        int e = mode_energy(st->q, modes[i]);
        if (e > left) continue;
        cur.modes.push_back(modes[i]);
        self(self, i, left - e);
        cur.modes.pop_back();
      }
    };
    rec(rec, 0, d);
    return out;
  };
  m.restriction_bound = [st](const GeneratorIndex& a, const ModMonomial& w) {
    return st->degree(w) - (st->q.epsilon - 1) * (st->q.family(a.family).weight - 1);
  };
  return m;
}

RestrictedModule fock_module() { return induced_module(q_heisenberg(), {{"c", Scalar(1)}}, "fock q-heisenberg"); }

RestrictedModule affine_induced_module(const FiniteLieData& data, int epsilon, const Scalar& level) {
  QVLA q = twisted_affine(data, epsilon);
  return induced_module(q, {{"k", level}}, "induced " + q.name + " level " + level.str());
}

// ---- q polynomials ----

std::vector<Scalar> QPoly::coefficients(FieldSpec spec) const {
  std::vector<Scalar> c{Scalar(1)};
  (void)spec;
  for (const auto& g : roots) {
    Scalar r = embed_power(g, 1);
    std::vector<Scalar> n(c.size() + 1);
    for (size_t i = 0; i < c.size(); ++i) {
      n[i + 1] += c[i];
      n[i] -= r * c[i];
    }
    c = std::move(n);
  }
  return c;
}

std::string QPoly::str() const {
  if (roots.empty()) return "1";
  std::string s;
  for (const auto& g : roots) s += "(x - " + g.str() + ")";
  return s;
}

namespace {

std::map<GroupElem, int> pole_orders(const QVLA& q, const GeneratorIndex& a, const GroupElem& alpha,
                                     const GeneratorIndex& b, const GroupElem& beta) {
  std::map<GroupElem, int> m;
  for (const auto& t : current_bracket(q, a, alpha, b, beta))
    if (!t.coeff.is_zero()) m[t.scale] = std::max(m[t.scale], t.order + 1);
  return m;
}

QPoly from_orders(const std::map<GroupElem, int>& m) {
  QPoly p;
  for (const auto& [g, k] : m)
    for (int i = 0; i < k; ++i) p.roots.push_back(g);
  return p;
}

}  // namespace

QPoly auto_q_poly(const QVLA& q, const GeneratorIndex& a, const GroupElem& alpha, const GeneratorIndex& b,
                  const GroupElem& beta) {
  return from_orders(pole_orders(q, a, alpha, b, beta));
}

// a^{alpha,0}(-1-k) is a k-th derivative: k more orders of pole
QPoly auto_q_poly(const QVLA& q, const PBWMonomial& u, const PBWMonomial& v) {
  std::map<GroupElem, int> total;
  for (const auto& x : u.modes)
    for (const auto& y : v.modes)
      for (const auto& [g, k] : pole_orders(q, x.a, x.alpha, y.a, y.alpha)) total[g] += k - 2 - x.m - y.m;
  return from_orders(total);
}

// ---- Y_W ----

QuasiModule::QuasiModule(RestrictedModule mod) : mod_(std::move(mod)), V_(mod_.g), cache_(std::make_shared<Cache>()) {}

mpq_class QuasiModule::f_coeff(int I, int l) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& s = cache_->fpow[I];
  if (int(s.size()) <= l) s = power(phi_series(epsilon(), l + 4), I, l + 4);
  return s[l];
}

std::vector<Scalar> QuasiModule::q_of_f(const std::vector<Scalar>& q, int order) const {
  std::vector<Scalar> r(order + 1);
  for (size_t k = 0; k < q.size(); ++k) {
    if (q[k].is_zero()) continue;
    for (int n = 0; n <= order; ++n) r[n] += q[k] * Scalar(f_coeff(int(k), n));
  }
  return r;
}

int QuasiModule::lowest_power(const PBWMonomial& v, int d) const { return (epsilon() - 1) * V_.degree(v) - d; }

ModVector QuasiModule::field(const PBWVector& v, int N, const ModVector& w) const {
  ModVector r;
  for (const auto& [a, ca] : v)
    for (const auto& [b, cb] : w) r.add(field(a, N, b), ca * cb);
  return r;
}

ModVector QuasiModule::product_coefficient(const PBWMonomial& u, const PBWMonomial& v, const std::vector<Scalar>& q,
                                           int I, int J, const ModMonomial& w) const {
  ModVector r;
  for (size_t k = 0; k < q.size(); ++k) {
    if (q[k].is_zero()) continue;
    ModVector vw = field(PBWVector(v), J + int(k), ModVector(w));
    if (!vw.is_zero()) r.add(field(PBWVector(u), I - int(k), vw), q[k]);
  }
  return r;
}

// I >= lowest_power(u, deg w) carries the pole cancellation; terms below it sum to zero when q is adequate
ModVector QuasiModule::substituted(const PBWMonomial& u, const PBWMonomial& v, const std::vector<Scalar>& q, int l,
                                   int M, const ModMonomial& w) const {
  const int d = mod_.degree(w), ilo = lowest_power(u, d), jlo = lowest_power(v, d), dq = int(q.size()) - 1;
  ModVector r;
  for (int j = jlo; j <= M + dq - ilo; ++j) {
    Scalar c;
    for (int k = std::max(0, ilo - M + j); k <= dq; ++k)
      if (!q[k].is_zero()) c += q[k] * Scalar(f_coeff(M - j + k, l));
    if (c.is_zero()) continue;
    ModVector vw = field(PBWVector(v), j, ModVector(w));
    if (vw.is_zero()) continue;
    r.add(field(PBWVector(u), M - j, vw), c);
  }
  return r;
}

ModVector QuasiModule::field(const PBWMonomial& v, int N, const ModMonomial& w) const {
  ModVector r;
  const int e1 = epsilon() - 1;
  if (v.modes.empty()) {
    if (N == 0) r.add(w, Scalar(1));
    return r;
  }
  if (N < lowest_power(v, mod_.degree(w))) return r;
  const Mode& x = v.modes.front();
  if (v.modes.size() == 1 && x.m == -1) {
    // a(alpha z): coefficient of z^N is alpha^N a(eps-1-N)
    r.add(mod_.action(GMode{x.a, e1 - N}, w), embed_power(x.alpha, N));
    return r;
  }
  auto key = std::make_tuple(v, N, w);
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->field.find(key);
    if (it != cache_->field.end()) return it->second;
  }
  // x = a^{alpha,0}(-1-k): coefficient of z0^k in q(phi/z)^{-1} (q(z1/z) a(alpha z1) Y_W(rest, z))|_{z1 = phi(z, z0)}
  const int k = -1 - x.m;
  const PBWMonomial X{{Mode{x.a, x.alpha, -1, 0}}};
  const PBWMonomial rest{std::vector<Mode>(v.modes.begin() + 1, v.modes.end())};
  const std::vector<Scalar> qc = auto_q_poly(mod_.g, X, rest).coefficients(mod_.g.spec);
  int p = 0;
  std::vector<Scalar> Q = q_of_f(qc, k + 2 * int(qc.size()));
  while (Q[p].is_zero()) ++p;
  // R = (Q / y^p)^{-1}
  std::vector<Scalar> R(k + p + 1);
  const Scalar q0inv = Q[p].inv();
  for (int n = 0; n <= k + p; ++n) {
    Scalar s = n == 0 ? Scalar(1) : Scalar();
    for (int j = 1; j <= n; ++j)
      if (p + j < int(Q.size())) s -= Q[p + j] * R[n - j];
    R[n] = s * q0inv;
  }
  const int M = N - k * e1;
  for (int l = 0; l <= k + p; ++l) {
    if (R[k + p - l].is_zero()) continue;
    r.add(substituted(X, rest, qc, l, M, w), R[k + p - l]);
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->field.emplace(key, r);
  return r;
}

ModuleFieldWindow QuasiModule::module_field(const GeneratorIndex& a, const GroupElem& alpha, int zlo, int zhi,
                                            int max_degree) const {
  ModuleFieldWindow win{zlo, zhi, max_degree, {}};
  const PBWMonomial v{{Mode{a, alpha, -1, 0}}};
  for (const auto& w : mod_.basis_up_to(max_degree))
    for (int N = zlo; N <= zhi; ++N) {
      ModVector c = field(v, N, w);
      if (!c.is_zero()) win.cells.emplace(std::make_pair(N, w), c);
    }
  return win;
}

}  // namespace qvla
