#include "qvla/examples.hpp"
#include "qvla/linalg.hpp"
#include "qvla/parallel.hpp"

namespace qvla {

namespace {

// target algebra elements reuse Mode as a key; the twist slot is unused
Mode tkey(const std::string& f, std::vector<int> p, int m, GroupElem al = {}) {
  return Mode{GeneratorIndex{f, std::move(p)}, std::move(al), m, 0};
}

LieElement single(const Mode& x, const Scalar& c = Scalar(1)) {
  LieElement e;
  e.add(x, c);
  return e;
}

struct IsoCase {
  QVLA q;
  int zeta = 0;
  std::vector<Mode> source;
  std::vector<Mode> target;
  std::function<LieElement(const Mode&)> fwd;  // source basis mode to target element
  std::function<LieElement(const Mode&, const Mode&)> tb;
};

LieElement lin(const LieElement& e, const std::function<LieElement(const Mode&)>& f) {
  LieElement r;
  for (const auto& [m, c] : e) r.add(f(m), c);
  return r;
}

Report run(const IsoCase& c, const std::string& which) {
  Report rep{"isomorphism " + which + " zeta=" + std::to_string(c.zeta),
             "source modes=" + std::to_string(c.source.size()), {}};
  size_t not_basis = 0;
  for (const auto& x : c.source)
    if (!(reduce_mode(c.q, c.zeta, LieElement(x)) == LieElement(x))) ++not_basis;
  rep.add("source window consists of normal-form modes", not_basis == 0,
          not_basis ? std::to_string(not_basis) + " modes rewrite" : "");
  Echelon<Mode> img;
  size_t rank = 0;
  for (const auto& x : c.source) rank += img.insert(c.fwd(x));
  rep.add("map injective on the window", rank == c.source.size(),
          "rank " + std::to_string(rank) + " of " + std::to_string(c.source.size()));
  size_t missing = 0;
  for (const auto& y : c.target) missing += !img.reduce(LieElement(y)).is_zero();
  rep.add("map onto the target window", missing == 0, std::to_string(missing) + " target modes missed");
  // one row per left mode; rows merge in source order
  std::vector<size_t> row_bad(c.source.size(), 0);
  std::vector<std::string> row_wit(c.source.size());
  for_each_index(Exec::Parallel, c.source.size(), [&](size_t r) {
    const Mode& x = c.source[r];
    for (const auto& y : c.source) {
      LieElement got = lin(reduce_mode(c.q, c.zeta, zeta_mode_bracket(c.q, c.zeta, x, y)), c.fwd);
      LieElement want;
      for (const auto& [u, cu] : c.fwd(x))
        for (const auto& [v, cv] : c.fwd(y)) want.add(c.tb(u, v), cu * cv);
      if (!(got == want) && !row_bad[r]++)
        row_wit[r] = "[" + x.str() + "," + y.str() + "]: " + str(got) + " vs " + str(want);
    }
  });
  size_t bad = 0;
  std::string wit;
  for (size_t r = 0; r < row_bad.size(); ++r) {
    if (row_bad[r] && wit.empty()) wit = row_wit[r];
    bad += row_bad[r];
  }
  rep.add("brackets preserved on " + std::to_string(c.source.size() * c.source.size()) + " pairs", bad == 0, wit);
  return rep;
}

const LieElement kUnmapped = single(tkey("unmapped", {}, 0));

IsoCase affine_case(int zeta, const IsoOptions& o) {
  FiniteLieData d = sl2_chevalley();
  IsoCase c{twisted_affine(d, o.epsilon), zeta, {}, {}, {}, {}};
  const int T = d.T;
  const GroupElem one = c.q.one();
  for (const auto& s : d.symbols)
    for (int n = -o.modes; n <= o.modes; ++n) {
      c.source.push_back(Mode{{s, {}}, one, n, zeta});
      c.target.push_back(tkey(s, {}, n));
    }
  c.source.push_back(Mode{{"k", {}}, one, zeta - 1, zeta});
  c.target.push_back(tkey("k", {}, 0));
  c.fwd = [=](const Mode& x) {
    if (!x.alpha.is_identity()) return kUnmapped;
    if (x.a.family == "k") return x.m == zeta - 1 ? single(tkey("k", {}, 0), Scalar(mpq_class(1, T))) : kUnmapped;
    return single(tkey(x.a.family, {}, x.m), Scalar(mpq_class(1, T)));
  };
  // [a t^m, b t^n] = [a,b] t^{m+n} + m delta_{m+n,0} <a,b> k
  std::map<std::string, int> idx;
  for (size_t u = 0; u < d.symbols.size(); ++u) idx[d.symbols[u]] = int(u);
  c.tb = [=](const Mode& x, const Mode& y) {
    LieElement r;
    if (x.a.family == "k" || y.a.family == "k") return r;
    int u = idx.at(x.a.family), v = idx.at(y.a.family);
    for (size_t w = 0; w < d.symbols.size(); ++w) r.add(tkey(d.symbols[w], {}, x.m + y.m), d.bracket[u][v][w]);
    if (x.m + y.m == 0) r.add(tkey("k", {}, 0), Scalar(x.m) * d.form[u][v]);
    return r;
  };
  return c;
}

IsoCase qtorus_case(int zeta, const IsoOptions& o) {
  QuantumTorusData d = QuantumTorusData::generic(o.ell, o.N);
  IsoCase c{quantum_torus(d, o.epsilon, o.bound), zeta, {}, {}, {}, {}};
  const int eps = o.epsilon, N = o.N;
  std::vector<GroupElem> alphas;
  std::vector<int> r(N, -o.height);
  for (;;) {
    alphas.push_back(d.qm(r));
    int t = 0;
    while (t < N && r[t] == o.height) r[t++] = -o.height;
    if (t == N) break;
    ++r[t];
  }
  for (const auto& p : c.q.family("E").window)
    for (const auto& al : alphas)
      for (int n = -o.modes; n <= o.modes; ++n) {
        c.source.push_back(Mode{{"E", p}, al, n, zeta});
        c.target.push_back(tkey("E^", p, n, al));
      }
  c.source.push_back(Mode{{"k", {}}, c.q.one(), zeta - 1, zeta});
  c.target.push_back(tkey("k", {}, 0));
  c.fwd = [=](const Mode& x) {
    if (x.a.family == "k") return x.m == zeta - 1 && x.alpha.is_identity() ? single(tkey("k", {}, 0)) : kUnmapped;
    return single(tkey("E^", x.a.params, x.m, x.alpha), embed_power(x.alpha, eps - 1));
  };
  // E^{m,a}_{ij} E^{n,b}_{i'j'} = d_{b a^-1, q^m} d_{j,i'} sigma(m,n) E^{m+n,a}_{ij'}
  auto split = [N](const Mode& x) {
    return std::make_tuple(x.a.params[0], x.a.params[1],
                           std::vector<int>(x.a.params.begin() + 2, x.a.params.begin() + 2 + N));
  };
  auto mul = [=](const Mode& x, const Mode& y, int p) {
    LieElement r;
    auto [i, j, m] = split(x);
    auto [i2, j2, n] = split(y);
    if (!(y.alpha * x.alpha.inv() == d.qm(m)) || j != i2) return r;
    std::vector<int> s(N);
    for (int t = 0; t < N; ++t) s[t] = m[t] + n[t];
    std::vector<int> key{i, j2};
    key.insert(key.end(), s.begin(), s.end());
    r.add(tkey("E^", key, p, x.alpha), embed_power(d.sigma(m, n), 1));
    return r;
  };
  auto form = [=](const Mode& x, const Mode& y) {
    auto [i, j, m] = split(x);
    auto [i2, j2, n] = split(y);
    bool opp = true;
    for (int t = 0; t < N; ++t) opp = opp && m[t] == -n[t];
    if (!(y.alpha * x.alpha.inv() == d.qm(m)) || j != i2 || j2 != i || !opp) return Scalar(0);
    return embed_power(d.sigma(m, n), 1);
  };
  c.tb = [=](const Mode& x, const Mode& y) {
    LieElement r;
    if (x.a.family == "k" || y.a.family == "k") return r;
    int p = x.m + y.m;
    r += mul(x, y, p);
    r -= mul(y, x, p);
    if (p == 0) r.add(tkey("k", {}, 0), Scalar(x.m) * form(x, y));
    return r;
  };
  return c;
}

IsoCase qheis_case(const IsoOptions& o) {
  IsoCase c{q_heisenberg(), 0, {}, {}, {}, {}};
  const FieldSpec spec = c.q.spec;
  const GroupElem g = GroupElem::param(spec, 0);
  const Scalar qs = embed_power(g, 1);
  for (int h = -o.height; h <= o.height; ++h)
    for (int n = -o.modes; n <= o.modes; ++n) {
      c.source.push_back(Mode{{"a", {}}, g.pow(h), n, 0});
      c.target.push_back(tkey("b", {}, n, g.pow(h)));
    }
  c.source.push_back(Mode{{"c", {}}, c.q.one(), -1, 0});
  c.target.push_back(tkey("c", {}, 0));
  c.fwd = [](const Mode& x) {
    if (x.a.family == "c") return x.m == -1 && x.alpha.is_identity() ? single(tkey("c", {}, 0)) : kUnmapped;
    return single(tkey("b", {}, x.m, x.alpha));
  };
  // <b^a, b^b> = (d_{a b^-1, q} - d_{a b^-1, q^-1}) / (q - q^-1)
  c.tb = [=](const Mode& x, const Mode& y) {
    LieElement r;
    if (x.a.family == "c" || y.a.family == "c" || x.m + y.m + 1 != 0) return r;
    GroupElem ratio = x.alpha * y.alpha.inv();
    Scalar f = Scalar(long(ratio == g) - long(ratio == g.inv())) / (qs - qs.inv());
    r.add(tkey("c", {}, 0), f);
    return r;
  };
  return c;
}

// VL^zeta from its displayed bracket; zeta = 0 is VL' through L'_{m1,m2} = L_{m2}(m1+1)
LieElement vl_zeta_bracket(int zeta, const Mode& x, const Mode& y, const Scalar& cscale) {
  LieElement r;
  if (x.a.family != "L" || y.a.family != "L") return r;
  int m = x.a.params[0], n = y.a.params[0], p = x.m, s = y.m;
  r.add(tkey("L", {m + n}, p + s + zeta - 1), Scalar(long(p) * n - long(m) * s));
  if (m + n == 0 && p + s == 0) r.add(tkey("c", {}, 0), Scalar(p) * cscale);
  return r;
}

LieElement vl_prime_bracket(const Mode& x, const Mode& y) {
  LieElement r;
  if (x.a.family != "L'" || y.a.family != "L'") return r;
  int m1 = x.a.params[0], m2 = x.a.params[1], n1 = y.a.params[0], n2 = y.a.params[1];
  r.add(tkey("L'", {m1 + n1, m2 + n2}, 0), Scalar(long(m1 + 1) * n2 - long(m2) * (n1 + 1)));
  if (m2 + n2 == 0 && m1 + n1 + 2 == 0) r.add(tkey("c'", {}, 0), Scalar(m1 + 1));
  return r;
}

IsoCase vlike_case(int zeta, const IsoOptions& o) {
  IsoCase c{virasoro_like(o.bound), zeta, {}, {}, {}, {}};
  for (int m = -o.bound; m <= o.bound; ++m)
    for (int n = -o.modes; n <= o.modes; ++n) {
      c.source.push_back(Mode{{"L", {m}}, c.q.one(), n, zeta});
      c.target.push_back(zeta == 0 ? tkey("L'", {n - 1, m}, 0) : tkey("L", {m}, n));
    }
  c.source.push_back(Mode{{"c", {}}, c.q.one(), zeta - 1, zeta});
  c.target.push_back(tkey(zeta == 0 ? "c'" : "c", {}, 0));
  c.fwd = [zeta](const Mode& x) {
    if (x.a.family == "c") return x.m == zeta - 1 ? single(tkey(zeta == 0 ? "c'" : "c", {}, 0)) : kUnmapped;
    return single(zeta == 0 ? tkey("L'", {x.m - 1, x.a.params[0]}, 0) : tkey("L", x.a.params, x.m));
  };
  if (zeta == 0) c.tb = vl_prime_bracket;
  else c.tb = [zeta](const Mode& x, const Mode& y) { return vl_zeta_bracket(zeta, x, y, Scalar(1)); };
  return c;
}

IsoCase klein_case(int zeta, const IsoOptions& o) {
  IsoCase c{klein_bottle(o.bound), zeta, {}, {}, {}, {}};
  for (int m = -o.bound; m <= o.bound; ++m)
    for (int n = -o.modes; n <= o.modes; ++n) {
      c.source.push_back(Mode{{"B", {m}}, c.q.one(), n, zeta});
      c.target.push_back(tkey("L", {m}, n));
    }
  c.source.push_back(Mode{{"c", {}}, c.q.one(), zeta - 1, zeta});
  c.target.push_back(tkey("c", {}, 0));
  // inverse of c -> 2c, L -> B
  c.fwd = [zeta](const Mode& x) {
    if (!x.alpha.is_identity()) return kUnmapped;
    if (x.a.family == "c") return x.m == zeta - 1 ? single(tkey("c", {}, 0), Scalar(mpq_class(1, 2))) : kUnmapped;
    return single(tkey("L", x.a.params, x.m));
  };
  c.tb = [zeta](const Mode& x, const Mode& y) { return vl_zeta_bracket(zeta, x, y, Scalar(1)); };
  return c;
}

}  // namespace

Report check_example_isomorphism(const std::string& which, int zeta, const IsoOptions& opt) {
  if (which == "affine") return run(affine_case(zeta, opt), which);
  if (which == "qtorus") return run(qtorus_case(zeta, opt), which);
  if (which == "qheis") {
    if (zeta != 0) throw InputError("qheis isomorphism is stated for zeta = 0 only");
    return run(qheis_case(opt), which);
  }
  if (which == "vlike") return run(vlike_case(zeta, opt), which);
  if (which == "klein") return run(klein_case(zeta, opt), which);
  throw InputError("unknown example '" + which + "' (expected affine, qtorus, qheis, vlike, klein)");
}

}  // namespace qvla
