#include <set>
#include <tuple>

#include "qvla/linalg.hpp"
#include "qvla/parallel.hpp"
#include "qvla/qvla.hpp"

namespace qvla {

namespace {

Scalar sp(const GroupElem& g, long n) { return embed_power(g, n); }

std::vector<GeneratorIndex> gens_of(const QVLA& q, const CheckWindow& w) {
  return w.gens.empty() ? q.window_generators() : w.gens;
}

std::string window_text(size_t ngens, int modes) {
  return "generators=" + std::to_string(ngens) + " modes=" + std::to_string(modes);
}

// a current of g vanishes when each of its mode coefficients in the window normalizes to zero
bool vanishes(const QVLA& q, const CurrentExpr& r, int M, std::string& witness) {
  if (r.is_zero()) return true;
  for (int P = -M; P <= M; ++P) {
    GElement g = mode_coefficient(q, r, P);
    if (!g.is_zero()) {
      witness = "mode " + std::to_string(P) + " of " + r.str() + " = " + str(g);
      return false;
    }
  }
  return true;
}

CurrentExpr zero_current(const QVLA& q) { return CurrentExpr{q.epsilon, CurrentKind::Scaled, {}}; }

std::vector<GroupElem> alpha_window(const QVLA& q) {
  std::vector<GroupElem> out{q.one()};
  for (const auto& g : associated_group(q)) {
    out.push_back(g);
    if (!(g.inv() == g)) out.push_back(g.inv());
  }
  return out;
}

}  // namespace

// ---- skew-symmetry of the structure data ----

Report check_skew_symmetry(const QVLA& q, const CheckWindow& w, Exec ex) {
  const auto gens = gens_of(q, w);
  const int e1 = q.epsilon - 1;
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t u = 0; u < gens.size(); ++u)
    for (size_t v = 0; v < gens.size(); ++v) pairs.emplace_back(u, v);
  std::vector<ReportLine> lines(pairs.size());
  for_each_index(ex, pairs.size(), [&](size_t t) {
    const auto& a = gens[pairs[t].first];
    const auto& b = gens[pairs[t].second];
    std::map<std::pair<GroupElem, int>, CurrentExpr> res;
    auto slot = [&](const GroupElem& l, int k) -> CurrentExpr& {
      return res.try_emplace({l, k}, zero_current(q)).first->second;
    };
    for (const auto& s : q.entries(a, b)) slot(s.alpha.inv(), s.i) += current_of(s.value, s.beta, q.epsilon, CurrentKind::Scaled, s.j);
    for (const auto& s : q.entries(b, a)) {
      const GroupElem& l = s.alpha;
      for (int k = 0; k <= s.i; ++k) {
        int i = s.i - k, j = s.j + i;
        Scalar c = Scalar(mpq_class(((i + k) % 2 ? 1 : -1)) / factorial(i)) * sp(l, long(1 - k) * e1) * sp(l, -long(j) * e1);
        // residual is LHS - RHS and RHS carries an overall minus sign
        slot(l, k) += (-c) * current_of(s.value, l.inv() * s.beta, q.epsilon, CurrentKind::Scaled, j);
      }
    }
    ReportLine line{"skew " + a.str() + "," + b.str(), true, {}};
    for (const auto& [key, r] : res) {
      std::string wit;
      if (!vanishes(q, r, w.modes, wit)) {
        line.pass = false;
        line.witness = "lambda=" + key.first.str() + " k=" + std::to_string(key.second) + ": " + wit;
        break;
      }
    }
    lines[t] = std::move(line);
  });
  Report rep{"skew-symmetry", window_text(gens.size(), w.modes), std::move(lines)};
  return rep;
}

// ---- Jacobi identity of the structure data ----

Report check_jacobi(const QVLA& q, const CheckWindow& w, Exec ex) {
  const auto gens = gens_of(q, w);
  const int e1 = q.epsilon - 1;
  const size_t n = gens.size();
  std::vector<ReportLine> lines(n * n * n);
  for_each_index(ex, lines.size(), [&](size_t t) {
    const auto& a = gens[t / (n * n)];
    const auto& b = gens[(t / n) % n];
    const auto& c = gens[t % n];
    using Key = std::tuple<GroupElem, GroupElem, int, int>;  // lambda, eta, i, k
    std::map<Key, CurrentExpr> res;
    auto slot = [&](const GroupElem& l, const GroupElem& e, int i, int k) -> CurrentExpr& {
      return res.try_emplace(Key{l, e, i, k}, zero_current(q)).first->second;
    };
    auto cur = [&](const GenComb& v, const GroupElem& scale, int l) {
      return current_of(v, scale, q.epsilon, CurrentKind::Scaled, l);
    };
    // a_(eta xi^-1, gamma)(b_(lambda, xi) c)
    for (const auto& s1 : q.entries(b, c)) {
      const GroupElem& xi = s1.beta;
      for (const auto& [d, mu1] : s1.value)
        for (const auto& s2 : q.entries(a, d)) {
          GroupElem eta = s2.alpha * xi;
          for (int s = 0; s <= s1.j; ++s) {
            int i = s2.i + s, j = s1.j - s, l = s2.j + j;
            Scalar f = Scalar(binom(j + s, s) * factorial(i) / factorial(i - s)) * sp(xi, long(i + l - s - j) * e1) * mu1;
            slot(s1.alpha, eta, i, s1.i) += f * cur(s2.value, s2.beta * xi, l);
          }
        }
    }
    // (a_(eta lambda^-1, xi) b)_(lambda xi, gamma) c
    for (const auto& s1 : q.entries(a, b)) {
      const GroupElem& xi = s1.beta;
      for (const auto& [d, mu1] : s1.value)
        for (const auto& s2 : q.entries(d, c)) {
          GroupElem lam = s2.alpha * xi.inv(), eta = s1.alpha * lam;
          int j = s1.j;
          for (int s = 0; s <= s2.i + j; ++s) {
            int k = s2.i + j - s, i = s1.i + s;
            mpq_class num = binom(i, s) * factorial(k + s) / factorial(k + s - j);
            if (j % 2) num = -num;
            Scalar f = Scalar(num) * sp(xi, e1) * sp(lam, long(i + j - s) * e1) * mu1;
            slot(lam, eta, i, k) += (-f) * cur(s2.value, s2.beta, s2.j);
          }
        }
    }
    // b_(lambda xi^-1, gamma)(a_(eta, xi) c)
    for (const auto& s1 : q.entries(a, c)) {
      const GroupElem& xi = s1.beta;
      for (const auto& [d, mu1] : s1.value)
        for (const auto& s2 : q.entries(b, d)) {
          GroupElem lam = s2.alpha * xi;
          for (int s = 0; s <= s1.j; ++s) {
            int j = s1.j - s, k = s2.i + s, l = s2.j + j;
            Scalar f = Scalar(binom(j + s, s) * factorial(k) / factorial(k - s)) * sp(xi, long(k + l - s - j) * e1) * mu1;
            slot(lam, s1.alpha, s1.i, k) += (-f) * cur(s2.value, s2.beta * xi, l);
          }
        }
    }
    ReportLine line{"jacobi " + a.str() + "," + b.str() + "," + c.str(), true, {}};
    for (const auto& [key, r] : res) {
      std::string wit;
      if (!vanishes(q, r, w.modes, wit)) {
        const auto& [l, e, i, k] = key;
        line.pass = false;
        line.witness = "lambda=" + l.str() + " eta=" + e.str() + " i=" + std::to_string(i) + " k=" + std::to_string(k) + ": " + wit;
        break;
      }
    }
    line.key += " (" + std::to_string(res.size()) + " identities)";
    lines[t] = std::move(line);
  });
  return Report{"jacobi", window_text(n, w.modes), std::move(lines)};
}

// ---- maximality on a window ----

Report check_maximality(const QVLA& q, const CheckWindow& w) {
  const auto gens = gens_of(q, w);
  const int M = w.modes, e1 = q.epsilon - 1;
  std::set<GMode> cols;
  for (const auto& a : gens)
    for (int p = -M; p <= M; ++p) cols.insert(GMode{a, p});
  Echelon<GMode> ech;
  for (const auto& col : cols)
    for (const auto& rule : q.rules_for(col.a)) {
      GElement row;
      for (const auto& [k, mu] : rule.expr.terms) {
        int pp = col.m - rule.source.n * e1 + k.n * e1;
        mpq_class f = zeta_falling(-pp + e1, q.epsilon, k.n);
        if (f != 0) row.add(GMode{k.a, pp}, mu * Scalar(f) * sp(k.alpha, -pp + e1));
      }
      bool inside = !row.is_zero();
      for (const auto& [m, v] : row) inside = inside && cols.count(m);
      if (inside) ech.insert(row);
    }
  size_t declared = 0;
  Echelon<GMode> ext = ech;
  bool independent = true;
  for (const auto& col : cols)
    if (q.in_g_basis && q.in_g_basis(col)) {
      ++declared;
      independent = ext.insert(GElement(col)) && independent;
    }
  size_t dim = cols.size() - ech.rank();
  Report rep{"maximality", window_text(gens.size(), M), {}};
  rep.add("quotient dimension " + std::to_string(dim) + " vs declared basis " + std::to_string(declared), dim == declared,
          dim == declared ? "" : "relations leave " + std::to_string(dim) + " independent modes");
  rep.add("declared basis independent modulo relations", independent, independent ? "" : "a basis mode lies in the relation span");
  return rep;
}

// ---- reconstruction of g from g^eps[Gamma] ----

Report check_reconstruction(const QVLA& q, const CheckWindow& w, Exec ex) {
  const auto gens = gens_of(q, w);
  const int M = w.modes, e1 = q.epsilon - 1;
  const auto alphas = alpha_window(q);
  Report rep{"reconstruction", window_text(gens.size(), M), {}};

  // phi([x,y]_Gamma) = [phi x, phi y]
  std::vector<Mode> modes;
  for (const auto& a : gens)
    for (const auto& al : alphas)
      for (int m = -M; m <= M; ++m) modes.push_back(Mode{a, al, m, q.epsilon});
  std::vector<std::string> bad(modes.size());
  for_each_index(ex, modes.size(), [&](size_t u) {
    const Mode& x = modes[u];
    GElement px = phi_gamma(q, LieElement(x));
    for (const auto& y : modes) {
      GElement lhs = phi_gamma(q, gamma_bracket(q, x, y));
      GElement rhs = g_bracket(q, px, phi_gamma(q, LieElement(y)));
      if (!(lhs == rhs)) {
        bad[u] = "[" + x.str() + "," + y.str() + "]: " + str(lhs) + " vs " + str(rhs);
        return;
      }
    }
  });
  std::string first;
  size_t nbad = 0;
  for (const auto& b : bad)
    if (!b.empty() && !nbad++) first = b;
  rep.add("phi preserves brackets on " + std::to_string(modes.size()) + " modes", nbad == 0, first);

  // g^eps[Gamma] window from the g^eps relations with alpha collapsed to 1
  auto collapse = [&](const LieElement& e) {
    GElement r;
    for (const auto& [m, c] : e) r.add(GMode{m.a, m.m}, c * sp(m.alpha, -m.m + e1));
    return r;
  };
  std::set<GMode> cols;
  for (const auto& a : gens)
    for (int m = -M; m <= M; ++m) cols.insert(GMode{a, m});
  Echelon<GMode> ech;
  for (const auto& col : cols)
    for (const auto& al : alphas) {
      Mode x{col.a, al, col.m, q.epsilon};
      GElement row = collapse(LieElement(x)) - collapse(reduce_mode(q, q.epsilon, LieElement(x)));
      bool inside = !row.is_zero();
      for (const auto& [m, v] : row) inside = inside && cols.count(m);
      if (inside) ech.insert(row);
    }
  size_t dim = cols.size() - ech.rank(), declared = 0;
  for (const auto& c : cols) declared += q.in_g_basis && q.in_g_basis(c);
  rep.add("g^eps[Gamma] window dimension " + std::to_string(dim) + " vs declared g basis " + std::to_string(declared),
          dim == declared);
  Echelon<GMode> img;
  size_t rank = 0;
  for (const auto& c : cols)
    if (!ech.is_pivot(c)) rank += img.insert(phi_gamma(q, LieElement(Mode{c.a, q.one(), c.m, q.epsilon})));
  rep.add("phi injective on the window (rank " + std::to_string(rank) + " of " + std::to_string(dim) + ")", rank == dim);
  return rep;
}

}  // namespace qvla
