#include "qvla/examples.hpp"

#include <algorithm>

namespace qvla {

namespace {

using Mat = std::vector<std::vector<Scalar>>;

CurrentExpr scaled(int eps, const GeneratorIndex& a, const GroupElem& alpha, const Scalar& mu = Scalar(1),
                   int n = 0) {
  return CurrentExpr::single(eps, CurrentKind::Scaled, a, alpha, n, mu);
}

GenComb gen(const GeneratorIndex& a, const Scalar& c = Scalar(1)) {
  GenComb g;
  g.add(a, c);
  return g;
}

// merge entries sharing (alpha, beta, i, j)
void push(std::vector<StructureEntry>& out, StructureEntry e) {
  if (e.value.is_zero()) return;
  for (auto& x : out)
    if (x.alpha == e.alpha && x.beta == e.beta && x.i == e.i && x.j == e.j) {
      x.value += e.value;
      return;
    }
  out.push_back(std::move(e));
}

std::vector<std::vector<int>> range1(int b) {
  std::vector<std::vector<int>> out;
  for (int m = -b; m <= b; ++m) out.push_back({m});
  return out;
}

Mat zeros(size_t n) { return Mat(n, std::vector<Scalar>(n, Scalar(0))); }

std::vector<Scalar> br(const FiniteLieData& d, const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  size_t n = d.symbols.size();
  std::vector<Scalar> r(n, Scalar(0));
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v) {
      if (x[u].is_zero() || y[v].is_zero()) continue;
      Scalar c = x[u] * y[v];
      for (size_t w = 0; w < n; ++w) r[w] += c * d.bracket[u][v][w];
    }
  return r;
}

Scalar fm(const FiniteLieData& d, const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  Scalar r(0);
  for (size_t u = 0; u < x.size(); ++u)
    for (size_t v = 0; v < y.size(); ++v) r += x[u] * y[v] * d.form[u][v];
  return r;
}

std::vector<Scalar> unit(size_t n, size_t u) {
  std::vector<Scalar> e(n, Scalar(0));
  e[u] = Scalar(1);
  return e;
}

std::vector<Scalar> act(const Mat& s, const std::vector<Scalar>& x) {
  std::vector<Scalar> r(x.size(), Scalar(0));
  for (size_t u = 0; u < x.size(); ++u)
    for (size_t v = 0; v < x.size(); ++v) r[v] += x[u] * s[u][v];
  return r;
}

}  // namespace

// ---- finite data ----

void FiniteLieData::validate() const {
  size_t n = symbols.size();
  auto bad = [](const std::string& m) { throw InputError("invalid Lie data: " + m); };
  if (T < 1) bad("order must be positive");
  if (bracket.size() != n || form.size() != n || sigma.size() != n) bad("dimension mismatch");
  for (size_t u = 0; u < n; ++u) {
    if (bracket[u].size() != n || form[u].size() != n || sigma[u].size() != n) bad("dimension mismatch");
    for (size_t v = 0; v < n; ++v)
      if (bracket[u][v].size() != n) bad("dimension mismatch");
  }
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v) {
      if (!(form[u][v] == form[v][u])) bad("form not symmetric");
      for (size_t w = 0; w < n; ++w)
        if (!(bracket[u][v][w] == -bracket[v][u][w])) bad("bracket not antisymmetric");
    }
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v)
      for (size_t w = 0; w < n; ++w) {
        auto x = unit(n, u), y = unit(n, v), z = unit(n, w);
        auto j1 = br(*this, br(*this, x, y), z), j2 = br(*this, br(*this, y, z), x),
             j3 = br(*this, br(*this, z, x), y);
        for (size_t t = 0; t < n; ++t)
          if (!(j1[t] + j2[t] + j3[t]).is_zero()) bad("Jacobi identity fails");
        if (!(fm(*this, br(*this, x, y), z) + fm(*this, y, br(*this, x, z))).is_zero()) bad("form not invariant");
      }
  // sigma: order T, automorphism, preserves the form
  for (size_t u = 0; u < n; ++u) {
    auto x = unit(n, u), y = x;
    for (int t = 0; t < T; ++t) y = act(sigma, y);
    if (y != x) bad("sigma^T is not the identity");
    for (size_t v = 0; v < n; ++v) {
      auto w = unit(n, v);
      if (act(sigma, br(*this, x, w)) != br(*this, act(sigma, x), act(sigma, w)))
        bad("sigma is not an automorphism");
      if (!(fm(*this, act(sigma, x), act(sigma, w)) == fm(*this, x, w))) bad("sigma does not preserve the form");
    }
  }
  grades();
}

std::vector<int> FiniteLieData::grades() const {
  std::vector<int> g;
  for (size_t u = 0; u < symbols.size(); ++u) {
    for (size_t v = 0; v < symbols.size(); ++v)
      if (v != u && !sigma[u][v].is_zero()) throw InputError("invalid Lie data: basis is not a sigma eigenbasis");
    int k = -1;
    for (int t = 0; t < T && k < 0; ++t)
      if (sigma[u][u] == embed_power(GroupElem::zeta(spec(), t), 1)) k = t;
    if (k < 0) throw InputError("invalid Lie data: sigma eigenvalue is not a power of zeta_T");
    g.push_back(k);
  }
  return g;
}

FiniteLieData sl2_chevalley() {
  FiniteLieData d;
  d.T = 2;
  d.symbols = {"x0", "x1", "x2"};
  d.bracket.assign(3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3, Scalar(0))));
  auto set = [&](int u, int v, int w, long c) {
    d.bracket[u][v][w] = Scalar(c);
    d.bracket[v][u][w] = Scalar(-c);
  };
  set(1, 0, 2, 2);
  set(1, 2, 0, 2);
  set(0, 2, 1, 2);
  d.form = zeros(3);
  d.form[0][0] = Scalar(-2);
  d.form[1][1] = Scalar(2);
  d.form[2][2] = Scalar(2);
  d.sigma = zeros(3);
  d.sigma[0][0] = Scalar(1);
  d.sigma[1][1] = Scalar(-1);
  d.sigma[2][2] = Scalar(-1);
  return d;
}

FiniteLieData sl2_untwisted() {
  FiniteLieData d;
  d.T = 1;
  d.symbols = {"e", "h", "f"};
  d.bracket.assign(3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3, Scalar(0))));
  auto set = [&](int u, int v, int w, long c) {
    d.bracket[u][v][w] = Scalar(c);
    d.bracket[v][u][w] = Scalar(-c);
  };
  set(1, 0, 0, 2);
  set(1, 2, 2, -2);
  set(0, 2, 1, 1);
  d.form = zeros(3);
  d.form[0][2] = d.form[2][0] = Scalar(1);
  d.form[1][1] = Scalar(2);
  d.sigma = zeros(3);
  for (int u = 0; u < 3; ++u) d.sigma[u][u] = Scalar(1);
  return d;
}

FiniteLieData abelian_data(int dim) {
  FiniteLieData d;
  d.T = 1;
  for (int u = 0; u < dim; ++u) d.symbols.push_back("b" + std::to_string(u));
  d.bracket.assign(dim, std::vector<std::vector<Scalar>>(dim, std::vector<Scalar>(dim, Scalar(0))));
  d.form = zeros(dim);
  for (int u = 0; u < dim; ++u) d.form[u][u] = Scalar(1);
  d.sigma = zeros(dim);
  for (int u = 0; u < dim; ++u) d.sigma[u][u] = Scalar(1);
  return d;
}

// ---- twisted affine ----

QVLA twisted_affine(const FiniteLieData& data, int epsilon, int /*bound*/) {
  data.validate();
  const auto grade = data.grades();
  const int T = data.T;
  const FieldSpec spec = data.spec();
  QVLA q;
  q.name = T == 1 ? "affine" : "twisted-affine";
  q.epsilon = epsilon;
  q.spec = spec;
  std::map<std::string, int> index;
  for (size_t u = 0; u < data.symbols.size(); ++u) {
    if (data.symbols[u] == "k") throw InputError("invalid Lie data: symbol 'k' is reserved for the center");
    index[data.symbols[u]] = int(u);
    q.families.push_back(Family{data.symbols[u], 0, false, 1, {}});
  }
  q.families.push_back(Family{"k", 0, true, 0, {}});
  const GeneratorIndex K{"k", {}};
  const Scalar zt = embed_power(GroupElem::zeta(spec), 1);

  q.structure = [=](const GeneratorIndex& a, const GeneratorIndex& b) {
    std::vector<StructureEntry> out;
    int u = index.at(a.family), v = index.at(b.family);
    GenComb ab, form;
    for (size_t w = 0; w < data.symbols.size(); ++w) ab.add({data.symbols[w], {}}, data.bracket[u][v][w]);
    form.add(K, data.form[u][v]);
    for (int s = 0; s < T; ++s) {
      Scalar c = zt.pow(-long(grade[u]) * s) / Scalar(T);
      GroupElem al = GroupElem::zeta(spec, s), one = GroupElem::identity(spec);
      push(out, {al, one, 0, 0, c * ab});
      push(out, {al, one, 1, 0, c * form});
    }
    return out;
  };

  if (T > 1) {
    q.relations.push_back({"scale", [=](const GeneratorIndex& a) {
                             std::vector<Rule> out;
                             if (a.family == "k") return out;
                             int k = grade.at(index.at(a.family));
                             std::vector<int> pw{1};
                             if (T > 2) pw.push_back(-1);
                             for (int p : pw) {
                               GroupElem g = GroupElem::zeta(spec, p);
                               CurrentExpr e = scaled(epsilon, a, g);
                               e += scaled(epsilon, a, GroupElem::identity(spec), -zt.pow(long(p) * (-k + epsilon - 1)));
                               out.push_back({CurrentKey{a, g, 0}, e});
                             }
                             return out;
                           }});
    q.relations.push_back({"k-scale", [=](const GeneratorIndex& a) {
                             std::vector<Rule> out;
                             if (a.family != "k") return out;
                             std::vector<int> pw{1};
                             if (T > 2) pw.push_back(-1);
                             for (int p : pw) {
                               GroupElem g = GroupElem::zeta(spec, p);
                               CurrentExpr e = scaled(epsilon, a, g);
                               e += scaled(epsilon, a, GroupElem::identity(spec), Scalar(-1));
                               out.push_back({CurrentKey{a, g, 0}, e});
                             }
                             return out;
                           }});
  }
  q.relations.push_back({"k-deriv", [=](const GeneratorIndex& a) {
                           std::vector<Rule> out;
                           if (a.family != "k") return out;
                           GroupElem one = GroupElem::identity(spec);
                           out.push_back({CurrentKey{a, one, 1}, scaled(epsilon, a, one, Scalar(1), 1)});
                           return out;
                         }});
  q.in_g_basis = [=](const GMode& x) {
    if (x.a.family == "k") return x.m == epsilon - 1;
    int k = grade.at(index.at(x.a.family));
    return ((x.m - k) % T + T) % T == 0;
  };
  return q;
}

// ---- quantum torus ----

QuantumTorusData QuantumTorusData::generic(int ell, int N) {
  QuantumTorusData d;
  d.ell = ell;
  d.N = N;
  d.spec = FieldSpec{1, N * (N + 1) / 2};
  for (int i = 1; i <= N; ++i)
    for (int j = 0; j < i; ++j) d.q[{i, j}] = GroupElem::param(d.spec, param_index(i, j));
  return d;
}

void QuantumTorusData::validate() const {
  if (ell < 1 || N < 1) throw InputError("invalid quantum torus data: ell and N must be positive");
  for (int i = 1; i <= N; ++i)
    for (int j = 0; j < i; ++j) {
      auto it = q.find({i, j});
      if (it == q.end()) throw InputError("invalid quantum torus data: missing q_" + std::to_string(i) + std::to_string(j));
      if (it->second.T != spec.T || int(it->second.f.size()) != spec.k)
        throw InputError("invalid quantum torus data: q entry over the wrong group");
    }
  for (const auto& [ij, g] : q)
    if (ij.first <= ij.second || ij.first > N) throw InputError("invalid quantum torus data: only q_ij with i > j are given");
}

GroupElem QuantumTorusData::entry(int i, int j) const {
  if (i == j) return GroupElem::identity(spec);
  if (i > j) return q.at({i, j});
  return q.at({j, i}).inv();
}

GroupElem QuantumTorusData::qm(const std::vector<int>& m) const {
  GroupElem g = GroupElem::identity(spec);
  for (int k = 1; k <= N; ++k) g = g * entry(k, 0).pow(m[k - 1]);
  return g;
}

GroupElem QuantumTorusData::sigma(const std::vector<int>& m, const std::vector<int>& n) const {
  GroupElem g = GroupElem::identity(spec);
  for (int k = 1; k <= N; ++k)
    for (int s = 1; s <= k; ++s) g = g * entry(k, s).pow(long(m[k - 1]) * n[s - 1]);
  return g;
}

QVLA quantum_torus(const QuantumTorusData& data, int epsilon, int bound) {
  data.validate();
  const int N = data.N, ell = data.ell;
  const FieldSpec spec = data.spec;
  QVLA q;
  q.name = "quantum-torus";
  q.epsilon = epsilon;
  q.spec = spec;
  Family E{"E", 2 + N, false, 1, {}};
  std::vector<int> m(N, -bound);
  for (;;) {
    for (int i = 1; i <= ell; ++i)
      for (int j = 1; j <= ell; ++j) {
        std::vector<int> p{i, j};
        p.insert(p.end(), m.begin(), m.end());
        E.window.push_back(p);
      }
    int t = 0;
    while (t < N && m[t] == bound) m[t++] = -bound;
    if (t == N) break;
    ++m[t];
  }
  q.families.push_back(E);
  q.families.push_back(Family{"k", 0, true, 0, {}});
  const GeneratorIndex K{"k", {}};

  q.check_generator_hook = [=](const GeneratorIndex& a) {
    if (a.family == "E" && (a.params[0] < 1 || a.params[0] > ell || a.params[1] < 1 || a.params[1] > ell))
      throw InputError("matrix index out of range in " + a.str());
  };
  q.structure = [=](const GeneratorIndex& a, const GeneratorIndex& b) {
    std::vector<StructureEntry> out;
    int i = a.params[0], j = a.params[1], i2 = b.params[0], j2 = b.params[1];
    std::vector<int> ma(a.params.begin() + 2, a.params.end()), nb(b.params.begin() + 2, b.params.end()), s(N);
    bool opposite = true;
    for (int t = 0; t < N; ++t) {
      s[t] = ma[t] + nb[t];
      opposite = opposite && s[t] == 0;
    }
    GroupElem one = GroupElem::identity(spec), qmi = data.qm(ma).inv(), qn = data.qm(nb);
    Scalar smn = embed_power(data.sigma(ma, nb), 1), snm = embed_power(data.sigma(nb, ma), 1);
    auto E = [&](int r, int c) {
      std::vector<int> p{r, c};
      p.insert(p.end(), s.begin(), s.end());
      return GeneratorIndex{"E", p};
    };
    if (j == i2) push(out, {qmi, qmi, 0, 0, gen(E(i, j2), embed_power(data.qm(ma), epsilon - 1) * smn)});
    if (j2 == i) push(out, {qn, one, 0, 0, gen(E(i2, j), -snm)});
    if (j == i2 && j2 == i && opposite) push(out, {qmi, one, 1, 0, gen(K, smn)});
    return out;
  };
  q.relations.push_back({"central", [=](const GeneratorIndex& a) {
                           std::vector<Rule> out;
                           if (a.family != "k") return out;
                           GroupElem one = GroupElem::identity(spec);
                           for (int k = 1; k <= N; ++k)
                             for (int p : {1, -1}) {
                               GroupElem g = data.entry(k, 0).pow(p);
                               if (g.is_identity()) continue;
                               CurrentExpr e = scaled(epsilon, a, g);
                               e += scaled(epsilon, a, one, Scalar(-1));
                               out.push_back({CurrentKey{a, g, 0}, e});
                             }
                           out.push_back({CurrentKey{a, one, 1}, scaled(epsilon, a, one, Scalar(1), 1)});
                           return out;
                         }});
  q.in_g_basis = [=](const GMode& x) { return x.a.family != "k" || x.m == epsilon - 1; };
  return q;
}

// ---- q-Heisenberg ----

QVLA q_heisenberg() {
  QVLA q;
  q.name = "q-heisenberg";
  q.epsilon = 1;
  q.spec = FieldSpec{1, 1};
  const FieldSpec spec = q.spec;
  q.families = {Family{"a", 0, false, 1, {}}, Family{"c", 0, true, 1, {}}};
  const GeneratorIndex C{"c", {}};
  const GroupElem g = GroupElem::param(spec, 0);
  const Scalar qs = embed_power(g, 1);
  const Scalar w = (qs - qs.inv()).inv();
  q.structure = [=](const GeneratorIndex&, const GeneratorIndex&) {
    std::vector<StructureEntry> out;
    GroupElem one = GroupElem::identity(spec);
    push(out, {g, one, 0, 0, gen(C, w)});
    push(out, {g.inv(), one, 0, 0, gen(C, -w)});
    return out;
  };
  q.relations.push_back({"central", [=](const GeneratorIndex& a) {
                           std::vector<Rule> out;
                           if (a.family != "c") return out;
                           GroupElem one = GroupElem::identity(spec);
                           for (int p : {1, -1}) {
                             CurrentExpr e = scaled(1, a, g.pow(p));
                             e += scaled(1, a, one, Scalar(-1));
                             out.push_back({CurrentKey{a, g.pow(p), 0}, e});
                           }
                           out.push_back({CurrentKey{a, one, 1}, scaled(1, a, one, Scalar(1), 1)});
                           return out;
                         }});
  q.in_g_basis = [](const GMode& x) { return x.a.family != "c" || x.m == 0; };
  return q;
}

// ---- Virasoro-like and Klein bottle ----

QVLA virasoro_like(int bound) {
  QVLA q;
  q.name = "virasoro-like";
  q.epsilon = 1;
  q.spec = FieldSpec{1, 0};
  const FieldSpec spec = q.spec;
  q.families = {Family{"L", 1, false, 2, range1(bound)}, Family{"c", 0, true, 2, {}}};
  q.structure = [=](const GeneratorIndex& a, const GeneratorIndex& b) {
    std::vector<StructureEntry> out;
    int m = a.params[0], n = b.params[0];
    GroupElem one = GroupElem::identity(spec);
    GenComb v = gen({"L", {m + n}}, Scalar(m + n));
    if (m == -n) v.add({"c", {}}, Scalar(1));
    push(out, {one, one, 1, 0, v});
    push(out, {one, one, 0, 1, gen({"L", {m + n}}, Scalar(m))});
    return out;
  };
  q.relations.push_back({"central", [=](const GeneratorIndex& a) {
                           std::vector<Rule> out;
                           if (a.family != "c") return out;
                           GroupElem one = GroupElem::identity(spec);
                           out.push_back({CurrentKey{a, one, 1}, scaled(1, a, one, Scalar(1), 1)});
                           return out;
                         }});
  q.in_g_basis = [](const GMode& x) { return x.a.family != "c" || x.m == 0; };
  return q;
}

QVLA klein_bottle(int bound) {
  QVLA q;
  q.name = "klein-bottle";
  q.epsilon = 1;
  q.spec = FieldSpec{2, 0};
  const FieldSpec spec = q.spec;
  q.families = {Family{"B", 1, false, 2, range1(bound)}, Family{"c", 0, true, 2, {}}};
  const GroupElem one = GroupElem::identity(spec), mone = GroupElem::zeta(spec, 1);
  q.structure = [=](const GeneratorIndex& a, const GeneratorIndex& b) {
    std::vector<StructureEntry> out;
    int m = a.params[0], n = b.params[0];
    GenComb v = gen({"B", {m + n}}, Scalar(m + n));
    if (m == -n) v.add({"c", {}}, Scalar(2));
    push(out, {one, one, 1, 0, v});
    push(out, {one, one, 0, 1, gen({"B", {m + n}}, Scalar(m))});
    GenComb u = gen({"B", {n - m}}, Scalar(m - n));
    if (m == n) u.add({"c", {}}, Scalar(-2));
    push(out, {mone, one, 1, 0, u});
    push(out, {mone, one, 0, 1, gen({"B", {n - m}}, Scalar(m))});
    return out;
  };
  q.relations.push_back({"sign", [=](const GeneratorIndex& a) {
                           std::vector<Rule> out;
                           if (a.family != "B") return out;
                           CurrentExpr e = scaled(1, a, mone);
                           e += scaled(1, {"B", {-a.params[0]}}, one);
                           out.push_back({CurrentKey{a, mone, 0}, e});
                           return out;
                         }});
  q.relations.push_back({"central", [=](const GeneratorIndex& a) {
                           std::vector<Rule> out;
                           if (a.family != "c") return out;
                           CurrentExpr e = scaled(1, a, mone);
                           e += scaled(1, a, one, Scalar(-1));
                           out.push_back({CurrentKey{a, mone, 0}, e});
                           out.push_back({CurrentKey{a, one, 1}, scaled(1, a, one, Scalar(1), 1)});
                           return out;
                         }});
  q.in_g_basis = [](const GMode& x) {
    if (x.a.family == "c") return x.m == 0;
    int m = x.a.params[0];
    return m > 0 || (m == 0 && (x.m % 2 != 0));
  };
  return q;
}

}  // namespace qvla
