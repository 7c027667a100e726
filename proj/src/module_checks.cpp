#include <set>

#include "qvla/parallel.hpp"
#include "qvla/phi_modules.hpp"

namespace qvla {

namespace {

std::vector<GroupElem> with_generators(const QVLA& q, const std::vector<GroupElem>& given) {
  if (!given.empty()) return given;
  std::vector<GroupElem> out{q.one()};
  for (const auto& g : associated_group(q)) out.push_back(g);
  return out;
}

PBWMonomial gen(const GeneratorIndex& a, const GroupElem& alpha) { return PBWMonomial{{Mode{a, alpha, -1, 0}}}; }

std::string window_text(const ModuleSamples& s) {
  return "|N|<=" + std::to_string(s.modes) + " carrier degree<=" + std::to_string(s.max_degree);
}

void summarize(Report& rep, const std::string& key, const std::vector<std::string>& wit) {
  size_t bad = 0;
  std::string first;
  for (const auto& w : wit)
    if (!w.empty() && !bad++) first = w;
  rep.add(key + " (" + std::to_string(wit.size() - bad) + "/" + std::to_string(wit.size()) + ")", bad == 0, first);
}

}  // namespace

// a(m) is read back from Y_W(a^{1,0}, z); the g-bracket must hold on the carrier
Report check_module_bracket(const QuasiModule& W, const ModuleSamples& s, Exec ex) {
  const RestrictedModule& M = W.module();
  const QVLA& q = M.g;
  const int e1 = q.epsilon - 1;
  const auto gens = q.window_generators();
  const auto basis = M.basis_up_to(s.max_degree);
  Report rep{"module-bracket " + M.name, window_text(s), {}};
  auto mode = [&](const GeneratorIndex& a, int m, const ModVector& w) {
    return W.field(PBWVector(gen(a, q.one())), e1 - m, w);
  };
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i; j < gens.size(); ++j) pairs.emplace_back(i, j);
  std::vector<std::string> wit(pairs.size());
  for_each_index(ex, pairs.size(), [&](size_t t) {
    const auto& a = gens[pairs[t].first];
    const auto& b = gens[pairs[t].second];
    for (int m = -s.modes; m <= s.modes && wit[t].empty(); ++m)
      for (int n = -s.modes; n <= s.modes && wit[t].empty(); ++n)
        for (const auto& w0 : basis) {
          ModVector w(w0);
          ModVector lhs = mode(a, m, mode(b, n, w));
          lhs -= mode(b, n, mode(a, m, w));
          ModVector rhs;
          for (const auto& [x, c] : g_bracket(q, GMode{a, m}, GMode{b, n})) rhs.add(M.act(x, w), c);
          if (!(lhs == rhs)) {
            wit[t] = "[" + a.str() + "(" + std::to_string(m) + ")," + b.str() + "(" + std::to_string(n) + ")] on " +
                     w0.str();
            break;
          }
        }
  });
  for (size_t t = 0; t < pairs.size(); ++t)
    rep.add("[" + gens[pairs[t].first].str() + ", " + gens[pairs[t].second].str() + "]", wit[t].empty(), wit[t]);
  for (const auto& a : gens) {
    std::string bad;
    for (const auto& w : basis) {
      int b = M.restriction_bound(a, w);
      for (int m = b + 1; m <= b + 3 && bad.empty(); ++m)
        if (!M.action(GMode{a, m}, w).is_zero()) bad = a.str() + "(" + std::to_string(m) + ") " + w.str();
    }
    rep.add("restriction bound " + a.str(), bad.empty(), bad);
  }
  return rep;
}

// Y_W(R_l v, z) = Y_W(v, l^{-1} z)
Report check_equivariance(const QuasiModule& W, const ModuleSamples& s, Exec ex) {
  const RestrictedModule& M = W.module();
  const Enveloping& V = W.vertex_algebra();
  const QVLA& q = M.g;
  const auto alphas = with_generators(q, s.alphas), lambdas = with_generators(q, s.lambdas);
  std::vector<PBWMonomial> vecs;
  for (const auto& m : V.monomials(s.vector_degree, alphas))
    if (!m.modes.empty()) vecs.push_back(m);
  const auto basis = M.basis_up_to(s.max_degree);
  Report rep{"equivariance " + M.name, window_text(s) + " vectors=" + std::to_string(vecs.size()), {}};
  for (const auto& l : lambdas) {
    std::vector<std::string> wit(vecs.size());
    for_each_index(ex, vecs.size(), [&](size_t t) {
      PBWVector rv = V.r_action(l, PBWVector(vecs[t]));
      for (int N = -s.modes; N <= s.modes && wit[t].empty(); ++N)
        for (const auto& w : basis) {
          ModVector a = W.field(rv, N, ModVector(w));
          ModVector b = embed_power(l, -N) * W.field(PBWVector(vecs[t]), N, ModVector(w));
          if (!(a == b)) {
            wit[t] = "v=" + vecs[t].str() + " N=" + std::to_string(N) + " on " + w.str();
            break;
          }
        }
    });
    summarize(rep, "lambda=" + l.str(), wit);
  }
  return rep;
}

// [Y_W(u,z), Y_W(v,w)] = sum_{l,i} l^{1-eps} Y_W((R_{l^-1} u)_i v, w) Delta^{(i)}_{w,eps}(z, l w)
Report check_equi_commutator(const QuasiModule& W, const ModuleSamples& s, Exec ex) {
  const RestrictedModule& M = W.module();
  const Enveloping& V = W.vertex_algebra();
  const QVLA& q = M.g;
  const int eps = q.epsilon, e1 = eps - 1;
  const auto alphas = with_generators(q, s.alphas), lambdas = with_generators(q, s.lambdas);
  const auto basis = M.basis_up_to(s.max_degree);
  std::vector<std::pair<PBWMonomial, PBWMonomial>> pairs;
  for (const auto& a : q.window_generators())
    for (const auto& b : q.window_generators())
      for (const auto& al : alphas) pairs.emplace_back(gen(a, al), gen(b, q.one()));
  Report rep{"equi-commutator " + M.name, window_text(s), {}};
  std::vector<std::string> wit(pairs.size()), support(pairs.size());
  for_each_index(ex, pairs.size(), [&](size_t t) {
    const PBWMonomial& u = pairs[t].first;
    const PBWMonomial& v = pairs[t].second;
    const Mode& x = u.modes[0];
    const Mode& y = v.modes[0];
    std::set<GroupElem> declared, cand(lambdas.begin(), lambdas.end()), found;
    for (const auto& d : current_bracket(q, x.a, x.alpha, y.a, y.alpha))
      if (!d.coeff.is_zero()) declared.insert(d.scale);
    cand.insert(declared.begin(), declared.end());
    struct Term {
      GroupElem l;
      int i;
      PBWVector c;
    };
    std::vector<Term> terms;
    for (const auto& l : cand)
      for (int i = 0; i < V.degree(u) + V.degree(v); ++i) {
        PBWVector c = V.vertex_coefficient(V.r_action(l.inv(), PBWVector(u)), i, PBWVector(v));
        if (c.is_zero()) continue;
        terms.push_back({l, i, c});
        found.insert(l);
      }
    for (const auto& l : found) support[t] += l.str() + " ";
    if (found != declared) wit[t] = "lambda-support {" + support[t] + "} differs from the structure data";
    for (int I = -s.modes; I <= s.modes && wit[t].empty(); ++I)
      for (int J = -s.modes; J <= s.modes && wit[t].empty(); ++J)
        for (const auto& w0 : basis) {
          ModVector w(w0);
          ModVector lhs = W.field(PBWVector(u), I, W.field(PBWVector(v), J, w));
          lhs -= W.field(PBWVector(v), J, W.field(PBWVector(u), I, w));
          ModVector rhs;
          for (const auto& tm : terms) {
            const int Q = -I + (tm.i + 1) * e1;
            Scalar d = delta_expand(tm.i, eps, tm.l, Box2{I, I, Q, Q}).at({I, Q});
            if (d.is_zero()) continue;
            rhs.add(W.field(tm.c, J - Q, w), embed_power(tm.l, -e1) * d);
          }
          if (!(lhs == rhs)) {
            wit[t] = "z^" + std::to_string(I) + " w^" + std::to_string(J) + " on " + w0.str() + ": " + str(lhs) +
                     " vs " + str(rhs);
            break;
          }
        }
  });
  for (size_t t = 0; t < pairs.size(); ++t)
    rep.add("u=" + pairs[t].first.str() + " v=" + pairs[t].second.str() + " support {" + support[t] + "}",
            wit[t].empty(), wit[t]);
  return rep;
}

Report check_phi_associativity(const QuasiModule& W, const PBWMonomial& u, const PBWMonomial& v,
                               const std::optional<QPoly>& q_poly, const ModuleSamples& s, Exec ex) {
  const RestrictedModule& M = W.module();
  const Enveloping& V = W.vertex_algebra();
  const QVLA& q = M.g;
  const int e1 = q.epsilon - 1, K = s.zorder;
  const QPoly qp = q_poly ? *q_poly : auto_q_poly(q, u, v);
  const std::vector<Scalar> qc = qp.coefficients(q.spec);
  const int dq = int(qc.size()) - 1;
  const auto basis = M.basis_up_to(s.max_degree);
  Report rep{"phi-associativity " + M.name,
             "u=" + u.str() + " v=" + v.str() + " q=" + qp.str() + " z0-order<=" + std::to_string(K) + " " +
                 window_text(s),
             {}};

  // membership: nothing below the lowest z1-power allowed by the carrier grading
  std::vector<std::string> mem(basis.size());
  for_each_index(ex, basis.size(), [&](size_t t) {
    const ModMonomial& w = basis[t];
    const int d = M.degree(w), ilo = W.lowest_power(u, d), jlo = W.lowest_power(v, d) - dq;
    for (int J = jlo; J <= jlo + 2 * s.modes && mem[t].empty(); ++J)
      for (int I = ilo - s.modes; I < ilo; ++I) {
        ModVector c = W.product_coefficient(u, v, qc, I, J, w);
        if (!c.is_zero()) {
          mem[t] = "residual pole: z1^" + std::to_string(I) + " z2^" + std::to_string(J) + " on " + w.str();
          break;
        }
      }
  });
  size_t before = rep.lines.size();
  summarize(rep, "membership q(z1/z2) Y(u,z1) Y(v,z2) in W((z1,z2))", mem);
  if (!rep.lines[before].pass) return rep;

  // in y = z0 z^{eps-1}: q(f(y)) sum_l y^l z^{-l e1} Y_W(u_{-l-1} v, z) = substituted product
  const int lmin = -(V.degree(u) + V.degree(v));
  const std::vector<Scalar> Qs = W.q_of_f(qc, K - lmin);
  std::vector<PBWVector> Z(K - lmin + 1);
  for (int l = lmin; l <= K; ++l) Z[l - lmin] = V.vertex_coefficient(PBWVector(u), -l - 1, PBWVector(v));
  std::vector<std::pair<int, size_t>> tasks;
  for (int k = lmin; k <= K; ++k)
    for (size_t b = 0; b < basis.size(); ++b) tasks.emplace_back(k, b);
  std::vector<std::string> wit(tasks.size());
  for_each_index(ex, tasks.size(), [&](size_t t) {
    const auto [k, b] = tasks[t];
    const ModMonomial& w = basis[b];
    for (int Mz = -s.modes; Mz <= s.modes; ++Mz) {
      ModVector lhs;
      for (int l = lmin; l <= k; ++l)
        if (!Qs[k - l].is_zero() && !Z[l - lmin].is_zero())
          lhs.add(W.field(Z[l - lmin], Mz + l * e1, ModVector(w)), Qs[k - l]);
      ModVector rhs = k >= 0 ? W.substituted(u, v, qc, k, Mz, w) : ModVector();
      if (!(lhs == rhs)) {
        wit[t] = "z^" + std::to_string(Mz) + " on " + w.str() + ": " + str(lhs) + " vs " + str(rhs);
        break;
      }
    }
  });
  for (int k = lmin; k <= K; ++k) {
    std::vector<std::string> part;
    for (size_t t = 0; t < tasks.size(); ++t)
      if (tasks[t].first == k) part.push_back(wit[t]);
    summarize(rep, "substitution identity, z0^" + std::to_string(k) + (k < 0 ? " (singular)" : ""), part);
  }
  return rep;
}

}  // namespace qvla
