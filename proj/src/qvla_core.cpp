#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "qvla/linalg.hpp"
#include "qvla/qvla.hpp"

namespace qvla {

struct NormalizerCache {
  std::mutex mu;
  std::map<GMode, GElement> g_nf;
  std::map<Mode, LieElement> z_nf;
};

namespace {

constexpr size_t kClosureBound = 4096;
constexpr int kRewriteDepth = 256;

Scalar sp(const GroupElem& g, long n) { return embed_power(g, n); }

}  // namespace

std::string GMode::str() const { return a.str() + "(" + std::to_string(m) + ")"; }

std::string Mode::str() const {
  return a.str() + "^{" + alpha.str() + "," + std::to_string(twist) + "}(" + std::to_string(m) + ")";
}

std::string str(const GElement& e) {
  return e.str([](const GMode& m) { return m.str(); });
}
std::string str(const LieElement& e) {
  return e.str([](const Mode& m) { return m.str(); });
}

QVLA::QVLA() : cache_(std::make_shared<NormalizerCache>()) {}
QVLA::QVLA(const QVLA& o)
    : name(o.name),
      epsilon(o.epsilon),
      spec(o.spec),
      families(o.families),
      structure(o.structure),
      relations(o.relations),
      in_g_basis(o.in_g_basis),
      check_generator_hook(o.check_generator_hook),
      cache_(std::make_shared<NormalizerCache>()) {}
QVLA& QVLA::operator=(const QVLA& o) {
  if (this != &o) {
    QVLA t(o);
    name = t.name;
    epsilon = t.epsilon;
    spec = t.spec;
    families = t.families;
    structure = t.structure;
    relations = t.relations;
    in_g_basis = t.in_g_basis;
    check_generator_hook = t.check_generator_hook;
    cache_ = std::make_shared<NormalizerCache>();
  }
  return *this;
}

const Family& QVLA::family(const std::string& n) const {
  for (const auto& f : families)
    if (f.name == n) return f;
  throw InputError("undeclared generator family '" + n + "'");
}

void QVLA::check_generator(const GeneratorIndex& a) const {
  const Family& f = family(a.family);
  if (int(a.params.size()) != f.arity)
    throw InputError("generator " + a.str() + " has wrong parameter count for family " + f.name);
  if (check_generator_hook) check_generator_hook(a);
}

bool QVLA::is_central(const GeneratorIndex& a) const { return family(a.family).central; }

std::vector<GeneratorIndex> QVLA::window_generators() const {
  std::vector<GeneratorIndex> out;
  for (const auto& f : families) {
    if (f.arity == 0) out.push_back({f.name, {}});
    else
      for (const auto& p : f.window) out.push_back({f.name, p});
  }
  return out;
}

std::vector<StructureEntry> QVLA::entries(const GeneratorIndex& a, const GeneratorIndex& b) const {
  check_generator(a);
  check_generator(b);
  if (!structure || is_central(a) || is_central(b)) return {};
  auto e = structure(a, b);
  std::erase_if(e, [](const StructureEntry& s) { return s.value.is_zero(); });
  return e;
}

std::vector<Rule> QVLA::rules_for(const GeneratorIndex& a) const {
  std::vector<Rule> out;
  for (const auto& r : relations) {
    auto v = r.rules(a);
    for (auto& e : v) {
      if (!(e.source.a == a) || e.expr.terms.coeff(e.source).is_zero())
        throw ContractError("relation family " + r.name + " returned a rule without source " + a.str());
      out.push_back(std::move(e));
    }
  }
  return out;
}

int QVLA::max_order() const {
  int m = 0;
  auto gens = window_generators();
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (const auto& e : entries(a, b)) m = std::max({m, e.i, e.j});
  return m;
}

QVLA QVLA::without_relation(const std::string& n) const {
  QVLA q(*this);
  auto before = q.relations.size();
  std::erase_if(q.relations, [&](const RelationFamily& r) { return r.name == n; });
  if (q.relations.size() == before) throw InputError("no relation family named '" + n + "'");
  return q;
}

// ---- current brackets ----

std::vector<DeltaTerm> current_bracket(const QVLA& q, const GeneratorIndex& a, const GroupElem& alpha,
                                       const GeneratorIndex& b, const GroupElem& beta) {
  const int e1 = q.epsilon - 1;
  std::vector<DeltaTerm> terms;
  for (const auto& s : q.entries(a, b)) {
    Scalar f = sp(alpha, e1) * sp(beta, long(s.i + s.j) * e1);
    CurrentExpr c = current_of(s.value, s.beta * beta, q.epsilon, CurrentKind::Scaled, s.j);
    terms.push_back(DeltaTerm{f * c, s.i, alpha.inv() * s.alpha * beta, q.epsilon});
  }
  return delta_terms(collect_delta_coefficients(terms), q.epsilon);
}

std::vector<DeltaTerm> zeta_current_bracket(const QVLA& q, int zeta, const GeneratorIndex& a,
                                            const GroupElem& alpha, const GeneratorIndex& b,
                                            const GroupElem& beta) {
  const int e1 = q.epsilon - 1;
  const GroupElem sigma = alpha * beta.inv();
  std::vector<DeltaTerm> terms;
  for (const auto& s : q.entries(a, b)) {
    if (!(s.alpha == sigma)) continue;
    Scalar f = sp(alpha, e1) * sp(beta, long(s.i + s.j) * e1);
    CurrentExpr c = current_of(s.value, s.beta * beta, zeta, CurrentKind::Superscript, s.j);
    terms.push_back(DeltaTerm{f * c, s.i, q.one(), zeta});
  }
  return delta_terms(collect_delta_coefficients(terms), zeta);
}

GElement mode_coefficient(const QVLA& q, const CurrentExpr& e, int p) {
  if (e.is_zero()) return {};
  if (e.kind != CurrentKind::Scaled || e.twist != q.epsilon)
    throw ContractError("mode_coefficient expects a current of g");
  const int e1 = q.epsilon - 1;
  GElement r;
  for (const auto& [k, mu] : e.terms) {
    int pp = p + k.n * e1;
    mpq_class f = zeta_falling(-pp + e1, q.epsilon, k.n);
    if (f == 0) continue;
    r.add(GMode{k.a, pp}, mu * Scalar(f) * sp(k.alpha, -pp + e1));
  }
  return g_normal_form(q, r);
}

LieElement zeta_mode_coefficient(const CurrentExpr& e, int p) {
  if (e.is_zero()) return {};
  if (e.kind != CurrentKind::Superscript) throw ContractError("zeta_mode_coefficient expects a g^zeta current");
  const int z1 = e.twist - 1;
  LieElement r;
  for (const auto& [k, mu] : e.terms) {
    int pp = p + k.n * z1;
    mpq_class f = zeta_falling(-pp + z1, e.twist, k.n);
    if (f == 0) continue;
    r.add(Mode{k.a, k.alpha, pp, e.twist}, mu * Scalar(f));
  }
  return r;
}

// ---- g-level normal form ----

namespace {

// row of one rule instance at output index P: sum mu_t alpha_t^{-p_t+eps-1} P_{n_t}(-p_t+eps-1) a_t(p_t)
GElement g_row(const QVLA& q, const CurrentExpr& rule, int P) {
  const int e1 = q.epsilon - 1;
  GElement r;
  for (const auto& [k, mu] : rule.terms) {
    int pp = P + k.n * e1;
    mpq_class f = zeta_falling(-pp + e1, q.epsilon, k.n);
    if (f == 0) continue;
    r.add(GMode{k.a, pp}, mu * Scalar(f) * sp(k.alpha, -pp + e1));
  }
  return r;
}


}  // namespace

static GElement g_nf_single(const QVLA& q, const GMode& x) {
  NormalizerCache& c = q.cache();
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.g_nf.find(x);
    if (it != c.g_nf.end()) return it->second;
  }
  const int e1 = q.epsilon - 1;
  std::set<GMode> seen{x};
  std::deque<GMode> todo{x};
  Echelon<GMode> ech;
  while (!todo.empty()) {
    GMode col = todo.front();
    todo.pop_front();
    for (const auto& rule : q.rules_for(col.a)) {
      int P = col.m - rule.source.n * e1;
      GElement row = g_row(q, rule.expr, P);
      if (row.is_zero()) continue;
      ech.insert(row);
      for (const auto& [m, v] : row)
        if (seen.insert(m).second) {
          if (seen.size() > kClosureBound)
            throw NonConfluentError("relation closure of " + x.str() + " exceeds the configured bound");
          todo.push_back(m);
        }
    }
  }
  std::map<GMode, GElement> out;
  for (const auto& m : seen) out[m] = ech.reduce(GElement(m));
  std::lock_guard<std::mutex> lock(c.mu);
  for (auto& [m, v] : out) c.g_nf.emplace(m, v);
  return out[x];
}

GElement g_normal_form(const QVLA& q, const GElement& e) {
  GElement r;
  for (const auto& [m, c] : e) r.add(g_nf_single(q, m), c);
  return r;
}

GElement g_bracket(const QVLA& q, const GMode& x, const GMode& y) {
  const int e1 = q.epsilon - 1;
  GElement r;
  for (const auto& s : q.entries(x.a, y.a)) {
    int p = x.m + y.m + (s.i + s.j) * e1;
    mpq_class f = zeta_falling(x.m, q.epsilon, s.i) / factorial(s.i) * zeta_falling(-p + e1, q.epsilon, s.j);
    if (f == 0) continue;
    Scalar k = Scalar(f) * sp(s.alpha, x.m) * sp(s.beta, -p + e1);
    for (const auto& [g, mu] : s.value) r.add(GMode{g, p}, k * mu);
  }
  return g_normal_form(q, r);
}

GElement g_bracket(const QVLA& q, const GElement& x, const GElement& y) {
  GElement r;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) r.add(g_bracket(q, a, b), ca * cb);
  return r;
}

// ---- g^zeta ----

namespace {

std::optional<LieElement> rewrite_once(const QVLA& q, const Mode& x, const Rule& rule) {
  const int e1 = q.epsilon - 1, z1 = x.twist - 1;
  const CurrentKey& src = rule.source;
  if (!(src.a == x.a)) return std::nullopt;
  GroupElem beta = x.alpha * src.alpha.inv();
  mpq_class f0 = zeta_falling(-x.m + z1, x.twist, src.n);
  if (f0 == 0) return std::nullopt;
  Scalar c0 = rule.expr.terms.coeff(src) * sp(beta, long(src.n) * e1) * Scalar(f0);
  const int h = x.alpha.height();
  for (const auto& [k, mu] : rule.expr.terms)
    if (!(k == src) && (k.alpha * beta).height() >= h) return std::nullopt;
  const int mout = x.m - src.n * z1;
  LieElement r;
  for (const auto& [k, mu] : rule.expr.terms) {
    if (k == src) continue;
    int mt = mout + k.n * z1;
    mpq_class f = zeta_falling(-mt + z1, x.twist, k.n);
    if (f == 0) continue;
    r.add(Mode{k.a, k.alpha * beta, mt, x.twist}, -(mu * sp(beta, long(k.n) * e1) * Scalar(f)) / c0);
  }
  return r;
}

LieElement reduce_single(const QVLA& q, const Mode& x, bool reverse, int depth) {
  if (depth > kRewriteDepth) throw NonConfluentError("rewriting of " + x.str() + " does not terminate");
  NormalizerCache& c = q.cache();
  if (!reverse) {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.z_nf.find(x);
    if (it != c.z_nf.end()) return it->second;
  }
  auto rules = q.rules_for(x.a);
  if (reverse) std::reverse(rules.begin(), rules.end());
  LieElement out(x);
  for (const auto& rule : rules) {
    auto r = rewrite_once(q, x, rule);
    if (!r) continue;
    out = LieElement();
    for (const auto& [m, k] : *r) out.add(reduce_single(q, m, reverse, depth + 1), k);
    break;
  }
  if (!reverse) {
    std::lock_guard<std::mutex> lock(c.mu);
    c.z_nf.emplace(x, out);
  }
  return out;
}

}  // namespace

LieElement reduce_mode(const QVLA& q, int zeta, const LieElement& e, bool reverse_rules) {
  LieElement r;
  for (const auto& [m, c] : e) {
    if (m.twist != zeta) throw ContractError("mode twist does not match");
    r.add(reduce_single(q, m, reverse_rules, 0), c);
  }
  return r;
}

LieElement reduce_mode(const QVLA& q, int zeta, const LieElement& e) { return reduce_mode(q, zeta, e, false); }

LieElement zeta_mode_bracket(const QVLA& q, int zeta, const Mode& x, const Mode& y) {
  if (x.twist != zeta || y.twist != zeta) throw ContractError("mode twist does not match the bracket");
  const int e1 = q.epsilon - 1, z1 = zeta - 1;
  const GroupElem sigma = x.alpha * y.alpha.inv();
  LieElement r;
  for (const auto& s : q.entries(x.a, y.a)) {
    if (!(s.alpha == sigma)) continue;
    int p = x.m + y.m + (s.i + s.j) * z1;
    mpq_class f = zeta_falling(x.m, zeta, s.i) / factorial(s.i) * zeta_falling(-p + z1, zeta, s.j);
    if (f == 0) continue;
    Scalar k = Scalar(f) * sp(x.alpha, e1) * sp(y.alpha, long(s.i + s.j) * e1);
    for (const auto& [g, mu] : s.value) r.add(Mode{g, s.beta * y.alpha, p, zeta}, k * mu);
  }
  return reduce_mode(q, zeta, r);
}

LieElement zeta_bracket(const QVLA& q, int zeta, const LieElement& x, const LieElement& y) {
  LieElement r;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) r.add(zeta_mode_bracket(q, zeta, a, b), ca * cb);
  return r;
}

// ---- g^eps[Gamma] ----

LieElement gamma_normal_form(const QVLA& q, const LieElement& e) {
  const int e1 = q.epsilon - 1;
  GElement g;
  for (const auto& [m, c] : e) {
    if (m.twist != q.epsilon) throw ContractError("gamma_normal_form expects twist epsilon");
    g.add(GMode{m.a, m.m}, c * sp(m.alpha, -m.m + e1));
  }
  g = g_normal_form(q, g);
  LieElement r;
  for (const auto& [m, c] : g) r.add(Mode{m.a, q.one(), m.m, q.epsilon}, c);
  return r;
}

LieElement gamma_bracket(const QVLA& q, const Mode& x, const Mode& y) {
  const int e1 = q.epsilon - 1;
  std::set<GroupElem> sigmas;
  for (const auto& s : q.entries(x.a, y.a)) sigmas.insert(s.alpha);
  LieElement r;
  for (const auto& sigma : sigmas) {
    GroupElem shifted = sigma * y.alpha;
    GroupElem lambda = x.alpha * shifted.inv();
    r.add(zeta_mode_bracket(q, q.epsilon, Mode{x.a, shifted, x.m, q.epsilon}, y), sp(lambda, -x.m + e1));
  }
  return gamma_normal_form(q, r);
}

GElement phi_gamma(const QVLA& q, const LieElement& e) {
  const int e1 = q.epsilon - 1;
  GElement g;
  for (const auto& [m, c] : e) {
    if (m.twist != q.epsilon) throw ContractError("phi_gamma expects twist epsilon");
    g.add(GMode{m.a, m.m}, c * sp(m.alpha, -m.m + e1));
  }
  return g_normal_form(q, g);
}

// ---- associated group ----

std::vector<GroupElem> associated_group(const QVLA& q) {
  const int k = q.spec.k, T = q.spec.T;
  std::vector<std::vector<long>> rows;
  auto push = [&](const GroupElem& g) {
    std::vector<long> r(k + 1);
    r[0] = g.t;
    for (int i = 0; i < k; ++i) r[i + 1] = g.f[i];
    rows.push_back(r);
  };
  auto gens = q.window_generators();
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (const auto& s : q.entries(a, b)) {
        push(s.alpha);
        push(s.beta);
      }
  {
    std::vector<long> tor(k + 1, 0);
    tor[0] = T;
    rows.push_back(tor);
  }
  // Hermite normal form by integer row reduction, columns from the last (free part) to the torsion column
  std::vector<std::vector<long>> basis;
  std::vector<int> order;
  for (int i = 1; i <= k; ++i) order.push_back(i);
  order.push_back(0);
  for (int col : order) {
    for (;;) {
      int piv = -1;
      for (size_t r = 0; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (piv < 0 || std::labs(rows[r][col]) < std::labs(rows[piv][col]))) piv = int(r);
      if (piv < 0) break;
      bool done = true;
      for (size_t r = 0; r < rows.size(); ++r) {
        if (int(r) == piv || rows[r][col] == 0) continue;
        long f = rows[r][col] / rows[piv][col];
        for (int c2 = 0; c2 <= k; ++c2) rows[r][c2] -= f * rows[piv][c2];
        if (rows[r][col] != 0) done = false;
      }
      if (done) {
        basis.push_back(rows[piv]);
        rows.erase(rows.begin() + piv);
        break;
      }
    }
  }
  std::vector<GroupElem> out;
  for (auto& r : basis) {
    GroupElem g = q.one();
    g.t = int(((r[0] % T) + T) % T);
    for (int i = 0; i < k; ++i) g.f[i] = int(r[i + 1]);
    if (!g.is_identity()) {
      if (g.t != 0 && std::all_of(g.f.begin(), g.f.end(), [](int x) { return x == 0; })) {
        // torsion generator: use the smallest positive power generating the same cyclic subgroup
        int d = std::gcd(g.t, T);
        g.t = d;
      }
      out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qvla
