#include "qvla/currents.hpp"

namespace qvla {

std::string GeneratorIndex::str() const {
  if (params.empty()) return family;
  std::string s = family + "[";
  for (size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
  return s + "]";
}

mpq_class zeta_falling(long x, int zeta, int i) {
  mpz_class p = 1;
  for (int r = 0; r < i; ++r) p *= x + long(r) * (zeta - 1);
  return mpq_class(p);
}

CurrentExpr CurrentExpr::single(int twist, CurrentKind kind, const GeneratorIndex& a, const GroupElem& alpha,
                                int n, const Scalar& mu) {
  CurrentExpr e;
  e.twist = twist;
  e.kind = kind;
  e.terms.add(CurrentKey{a, alpha, n}, mu);
  return e;
}

CurrentExpr& CurrentExpr::operator+=(const CurrentExpr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    twist = o.twist;
    kind = o.kind;
  } else if (twist != o.twist || kind != o.kind) {
    throw ContractError("adding current expressions of different twist");
  }
  terms += o.terms;
  return *this;
}

CurrentExpr operator*(const Scalar& c, const CurrentExpr& e) {
  CurrentExpr r = e;
  r.terms = c * e.terms;
  return r;
}

std::string CurrentExpr::str(const std::string& var) const {
  return terms.str([&](const CurrentKey& k) {
    std::string cur;
    if (kind == CurrentKind::Scaled) {
      cur = k.a.str() + "(" + (k.alpha.is_identity() ? "" : k.alpha.str() + "*") + var + ")";
    } else {
      cur = k.a.str() + "^{" + k.alpha.str() + "," + std::to_string(twist) + "}(" + var + ")";
    }
    if (k.n == 0) return cur;
    std::string d = "(" + var + "^" + std::to_string(twist) + "d/d" + var + ")";
    if (k.n > 1) d += "^" + std::to_string(k.n);
    return d + cur;
  });
}

CurrentExpr current_of(const GenComb& c, const GroupElem& gamma, int twist, CurrentKind kind, int n) {
  CurrentExpr e;
  e.twist = twist;
  e.kind = kind;
  for (const auto& [g, mu] : c) e.terms.add(CurrentKey{g, gamma, n}, mu);
  return e;
}

CurrentExpr apply_zeta_derivative(const CurrentExpr& e, int zeta, int times) {
  if (times == 0 || e.is_zero()) return e;
  if (zeta != e.twist) throw ContractError("derivative twist does not match the current expression");
  CurrentExpr r;
  r.twist = e.twist;
  r.kind = e.kind;
  for (const auto& [k, mu] : e.terms) r.terms.add(CurrentKey{k.a, k.alpha, k.n + times}, mu);
  return r;
}

std::string DeltaTerm::str() const {
  return "(" + coeff.str("w") + ")*Delta^(" + std::to_string(order) + ")_{w," + std::to_string(twist) +
         "}(z," + (scale.is_identity() ? "" : scale.str() + "*") + "w)";
}

DeltaMap collect_delta_coefficients(const std::vector<DeltaTerm>& expansion) {
  DeltaMap m;
  std::optional<int> twist;
  for (const auto& t : expansion) {
    if (twist && *twist != t.twist) throw ContractError("delta terms with different twists");
    twist = t.twist;
    auto& slot = m[DeltaKey{t.order, t.scale}];
    slot += t.coeff;
  }
  std::erase_if(m, [](const auto& kv) { return kv.second.is_zero(); });
  return m;
}

std::vector<DeltaTerm> delta_terms(const DeltaMap& m, int twist) {
  std::vector<DeltaTerm> out;
  for (const auto& [k, c] : m) out.push_back(DeltaTerm{c, k.order, k.scale, twist});
  return out;
}

ScalarWindow make_window(const Box2& box) {
  ScalarWindow w;
  w.vars = {"z", "w"};
  w.ranges = {{box.zlo, box.zhi}, {box.wlo, box.whi}};
  return w;
}

ScalarWindow delta_expand(int i, int zeta, const GroupElem& lambda, const Box2& box) {
  RawDelta d;
  d.order = i;
  d.twist = zeta;
  d.alpha = GroupElem::identity(FieldSpec{lambda.T, int(lambda.f.size())});
  d.beta = lambda;
  return delta_expand_raw(d, box);
}

ScalarWindow delta_expand_raw(const RawDelta& d, const Box2& box) {
  ScalarWindow win = make_window(box);
  const int z1 = d.twist - 1;
  const mpq_class inv_fact = 1 / factorial(d.order);
  if (d.swapped) {
    if (d.z_derivative) throw ContractError("swapped raw delta takes the w-derivative");
    // (beta w)^{zeta-1} delta(alpha z / beta w) = sum alpha^n beta^{-n+zeta-1} z^n w^{-n+zeta-1}
    for (int n = box.zlo; n <= box.zhi; ++n) {
      long we = -n + z1;
      mpq_class c = zeta_falling(we, d.twist, d.order) * inv_fact;
      if (c == 0) continue;
      win.add({n, int(we + long(d.order) * z1)},
              Scalar(c) * embed_power(d.alpha, n) * embed_power(d.beta, -n + z1));
    }
    return win;
  }
  // (alpha z)^{zeta-1} delta(beta w / alpha z) = sum beta^n alpha^{-n+zeta-1} w^n z^{-n+zeta-1}
  if (d.z_derivative) {
    for (int n = box.wlo; n <= box.whi; ++n) {
      long ze = -n + z1;
      mpq_class c = zeta_falling(ze, d.twist, d.order) * inv_fact;
      if (c == 0) continue;
      win.add({int(ze + long(d.order) * z1), n},
              Scalar(c) * embed_power(d.beta, n) * embed_power(d.alpha, -n + z1));
    }
  } else {
    for (int ze = box.zlo; ze <= box.zhi; ++ze) {
      int n = -ze + z1;
      mpq_class c = zeta_falling(n, d.twist, d.order) * inv_fact;
      if (c == 0) continue;
      win.add({ze, int(n + long(d.order) * z1)},
              Scalar(c) * embed_power(d.beta, n) * embed_power(d.alpha, -n + z1));
    }
  }
  return win;
}

NormalizedDelta delta_normalize(const RawDelta& d) {
  const int z1 = d.twist - 1;
  Scalar f = embed_power(d.alpha, z1);
  if (d.z_derivative) {
    // Delta_z = (-1)^i (alpha beta^{-1})^{-i(zeta-1)} Delta_w
    Scalar s = embed_power(d.alpha * d.beta.inv(), -long(d.order) * z1);
    if (d.order % 2) s = -s;
    f *= s;
  }
  return NormalizedDelta{f, d.order, d.alpha.inv() * d.beta, d.twist};
}

DeltaTerm delta_normalize(const CurrentExpr& coeff, const RawDelta& d) {
  NormalizedDelta n = delta_normalize(d);
  return DeltaTerm{n.factor * coeff, n.order, n.scale, n.twist};
}

ScalarWindow apply_zeta_derivative(const ScalarWindow& win, size_t var, int zeta, int times) {
  ScalarWindow cur = win;
  for (int t = 0; t < times; ++t) {
    ScalarWindow next;
    next.vars = cur.vars;
    next.ranges = cur.ranges;
    next.ranges[var].first += zeta - 1;
    next.ranges[var].second += zeta - 1;
    for (const auto& [k, v] : cur.cells) {
      if (k[var] == 0) continue;
      std::vector<int> nk = k;
      nk[var] += zeta - 1;
      next.add(nk, Scalar(long(k[var])) * v);
    }
    cur = std::move(next);
  }
  return cur;
}

ScalarWindow expand_scalar_delta(const std::vector<ScalarDeltaTerm>& terms, const Box2& box) {
  ScalarWindow out = make_window(box);
  for (const auto& t : terms) {
    for (const auto& [r, c] : t.coeff) {
      Box2 b{box.zlo, box.zhi, box.wlo - r, box.whi - r};
      ScalarWindow d = delta_expand(t.order, t.twist, t.scale, b);
      for (const auto& [k, v] : d.cells) out.add({k[0], k[1] + r}, c * v);
    }
  }
  return out;
}

std::map<DeltaKey, std::map<int, Scalar>> collect_scalar_delta(const std::vector<ScalarDeltaTerm>& terms) {
  std::map<DeltaKey, std::map<int, Scalar>> m;
  for (const auto& t : terms) {
    auto& slot = m[DeltaKey{t.order, t.scale}];
    for (const auto& [r, c] : t.coeff) {
      slot[r] += c;
      if (slot[r].is_zero()) slot.erase(r);
    }
  }
  std::erase_if(m, [](const auto& kv) { return kv.second.empty(); });
  return m;
}

}  // namespace qvla
