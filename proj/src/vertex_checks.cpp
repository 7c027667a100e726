#include <algorithm>
#include <random>

#include "qvla/enveloping.hpp"
#include "qvla/parallel.hpp"

namespace qvla {

namespace {

PBWVector vec(const PBWMonomial& m) {
  PBWVector v;
  v.add(m, Scalar(1));
  return v;
}

std::vector<GroupElem> default_alphas(const QVLA& q, const VertexSamples& s) {
  if (!s.alphas.empty()) return s.alphas;
  std::vector<GroupElem> out{q.one()};
  for (const auto& g : associated_group(q)) out.push_back(g);
  return out;
}

struct Sample {
  PBWMonomial u, v, w;
  int m = 0, n = 0;
};

std::vector<Sample> draw(const Enveloping& V, const std::vector<PBWMonomial>& monos, const VertexSamples& s) {
  std::mt19937_64 rng(s.seed);
  std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> mode(-s.modes, s.modes);
  std::vector<Sample> out;
  while (out.size() < s.count) {
    Sample x{monos[pick(rng)], monos[pick(rng)], monos[pick(rng)], mode(rng), mode(rng)};
    if (V.degree(x.u) + V.degree(x.v) + V.degree(x.w) <= s.max_degree) out.push_back(std::move(x));
  }
  return out;
}

// one report line from per-sample witnesses (empty = pass)
void summarize(Report& rep, const std::string& key, const std::vector<std::string>& wit) {
  size_t bad = 0;
  std::string first;
  for (const auto& w : wit)
    if (!w.empty() && !bad++) first = w;
  rep.add(key + " (" + std::to_string(wit.size() - bad) + "/" + std::to_string(wit.size()) + ")", bad == 0, first);
}

}  // namespace

Report check_vertex_axioms(const Enveloping& V, const VertexSamples& s, Exec ex) {
  const QVLA& q = V.algebra();
  const auto monos = V.monomials(s.max_degree, default_alphas(q, s));
  const auto samples = draw(V, monos, s);
  const PBWVector one = V.vacuum();
  Report rep{"vertex-axioms " + q.name,
             "degree<=" + std::to_string(s.max_degree) + " modes=" + std::to_string(s.modes) +
                 " samples=" + std::to_string(samples.size()),
             {}};

  std::vector<std::string> w1(monos.size()), w2(monos.size());
  for_each_index(ex, monos.size(), [&](size_t t) {
    PBWVector x = vec(monos[t]);
    for (int n = -s.modes; n <= s.modes; ++n) {
      PBWVector got = V.vertex_coefficient(one, n, x);
      if (!(got == (n == -1 ? x : PBWVector()))) {
        w1[t] = "1_" + std::to_string(n) + " " + monos[t].str();
        break;
      }
    }
    if (!(V.vertex_coefficient(x, -1, one) == x)) w2[t] = monos[t].str() + "_{-1} 1";
    for (int n = 0; n <= s.modes && w2[t].empty(); ++n)
      if (!V.vertex_coefficient(x, n, one).is_zero()) w2[t] = monos[t].str() + "_" + std::to_string(n) + " 1 != 0";
  });
  summarize(rep, "vacuum", w1);
  summarize(rep, "creation", w2);

  // degrees are additive under the bracket; truncation bounds rely on it
  std::vector<std::string> wg(samples.size()), wb(samples.size()), wsk(samples.size()), wd(samples.size());
  std::vector<char> nontrivial(samples.size(), 0);
  for_each_index(ex, samples.size(), [&](size_t t) {
    const Sample& x = samples[t];
    if (!x.u.modes.empty() && !x.v.modes.empty()) {
      Mode a = x.u.modes.front(), b = x.v.modes.front();
      a.m += x.m;
      b.m += x.n;
      for (const auto& [c, k] : zeta_mode_bracket(q, 0, a, b))
        if (V.degree(c) != V.degree(a) + V.degree(b)) wg[t] = "[" + a.str() + "," + b.str() + "] -> " + c.str();
    }
    const PBWVector u = vec(x.u), v = vec(x.v), w = vec(x.w);
    // [u_m, v_n] w = sum_i C(m,i) (u_i v)_{m+n-i} w
    PBWVector lhs = V.vertex_coefficient(u, x.m, V.vertex_coefficient(v, x.n, w));
    lhs -= V.vertex_coefficient(v, x.n, V.vertex_coefficient(u, x.m, w));
    PBWVector rhs;
    for (int i = 0; i <= V.degree(x.u) + V.degree(x.v); ++i) {
      PBWVector uv = V.vertex_coefficient(u, i, v);
      if (!uv.is_zero()) rhs.add(V.vertex_coefficient(uv, x.m + x.n - i, w), Scalar(binom(x.m, i)));
    }
    nontrivial[t] = !lhs.is_zero();
    if (!(lhs == rhs))
      wb[t] = "u=" + x.u.str() + " v=" + x.v.str() + " w=" + x.w.str() + " m=" + std::to_string(x.m) +
              " n=" + std::to_string(x.n) + ": " + str(lhs) + " vs " + str(rhs);
    // u_n v = sum_j (-1)^{n+j+1} (v_{n+j} u)_{-j-1} 1
    PBWVector sk;
    for (int j = 0; V.degree(x.u) + V.degree(x.v) - (x.n + j) - 1 >= 0; ++j) {
      PBWVector vu = V.vertex_coefficient(v, x.n + j, u);
      if (!vu.is_zero()) sk.add(V.vertex_coefficient(vu, -j - 1, V.vacuum()), Scalar((x.n + j + 1) % 2 ? -1 : 1));
    }
    PBWVector un = V.vertex_coefficient(u, x.n, v);
    if (!(un == sk)) wsk[t] = "u=" + x.u.str() + " v=" + x.v.str() + " n=" + std::to_string(x.n);
    // (D v)_n w = -n v_{n-1} w
    PBWVector dv = V.vertex_coefficient(V.translation(v), x.n, w);
    PBWVector want = Scalar(-x.n) * V.vertex_coefficient(v, x.n - 1, w);
    if (!(dv == want)) wd[t] = "v=" + x.v.str() + " w=" + x.w.str() + " n=" + std::to_string(x.n);
  });
  summarize(rep, "grading", wg);
  size_t nz = std::count(nontrivial.begin(), nontrivial.end(), 1);
  summarize(rep, "borcherds commutator, " + std::to_string(nz) + " with nonzero commutator", wb);
  summarize(rep, "skew-symmetry", wsk);
  summarize(rep, "D-compatibility", wd);
  return rep;
}

Report check_gamma_epsilon_axiom(const Enveloping& V, const std::vector<GroupElem>& lambdas, const VertexSamples& s,
                                 Exec ex) {
  const QVLA& q = V.algebra();
  const auto monos = V.monomials(s.max_degree, default_alphas(q, s));
  const auto samples = draw(V, monos, s);
  const int e1 = q.epsilon - 1;
  Report rep{"gamma-epsilon-axiom " + q.name,
             "degree<=" + std::to_string(s.max_degree) + " modes=" + std::to_string(s.modes) +
                 " samples=" + std::to_string(samples.size()),
             {}};
  for (const auto& l : lambdas) {
    std::vector<std::string> wit(samples.size()), wact(samples.size());
    for_each_index(ex, samples.size(), [&](size_t t) {
      const Sample& x = samples[t];
      PBWVector v = vec(x.v), w = vec(x.w);
      // R(v_n w) = lambda^{(n+1)(eps-1)} (R v)_n (R w)
      PBWVector lhs = V.r_action(l, V.vertex_coefficient(v, x.n, w));
      PBWVector rhs = embed_power(l, long(x.n + 1) * e1) * V.vertex_coefficient(V.r_action(l, v), x.n, V.r_action(l, w));
      if (!(lhs == rhs)) wit[t] = "v=" + x.v.str() + " w=" + x.w.str() + " n=" + std::to_string(x.n);
      // R_l R_u = R_{lu} with u drawn from the same list
      const GroupElem& mu = lambdas[t % lambdas.size()];
      if (!(V.r_action(l, V.r_action(mu, v)) == V.r_action(l * mu, v))) wact[t] = "v=" + x.v.str();
    });
    summarize(rep, "R_" + l.str() + " Y(v,z) R^-1 = Y(Rv, l^{1-eps} z)", wit);
    summarize(rep, "R_" + l.str() + " group action", wact);
    rep.add("R_" + l.str() + " fixes the vacuum", V.r_action(l, V.vacuum()) == V.vacuum());
  }
  return rep;
}

}  // namespace qvla
