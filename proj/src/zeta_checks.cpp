#include <algorithm>
#include <array>
#include <random>

#include "qvla/parallel.hpp"
#include "qvla/qvla.hpp"

namespace qvla {

LieElement zeta_bracket_oracle(const QVLA& q, int zeta, const Mode& x, const Mode& y) {
  const int z1 = zeta - 1;
  const int I = -x.m + z1, J = -y.m + z1;
  LieElement r;
  for (const auto& t : zeta_current_bracket(q, zeta, x.a, x.alpha, y.a, y.alpha)) {
    // Delta^{(i)} at z^I sits on one w-power
    const int Q = -I + (t.order + 1) * z1;
    Scalar d = delta_expand(t.order, zeta, t.scale, Box2{I, I, Q, Q}).at({I, Q});
    if (d.is_zero()) continue;
    // coefficient of w^{J-Q} in coeff(w)
    r.add(zeta_mode_coefficient(t.coeff, -(J - Q) + z1), d);
  }
  return reduce_mode(q, zeta, r);
}

namespace {

std::vector<GroupElem> sample_alphas(const QVLA& q, const ZetaSamples& s) {
  if (!s.alphas.empty()) return s.alphas;
  std::vector<GroupElem> gens{q.one()};
  for (const auto& g : associated_group(q)) {
    gens.push_back(g);
    gens.push_back(g.inv());
  }
  std::vector<GroupElem> out;
  for (const auto& a : gens)
    for (const auto& b : gens) {
      GroupElem c = a * b;
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  return out;
}

}  // namespace

Report check_zeta_bracket(const QVLA& q, int zeta, const ZetaSamples& s, Exec ex) {
  const auto gens = q.window_generators();
  const auto alphas = sample_alphas(q, s);
  std::mt19937_64 rng(s.seed);
  std::uniform_int_distribution<size_t> pg(0, gens.size() - 1), pa(0, alphas.size() - 1);
  std::uniform_int_distribution<int> pm(-s.modes, s.modes);
  auto draw = [&] { return Mode{gens[pg(rng)], alphas[pa(rng)], pm(rng), zeta}; };
  // twist chosen from a structure entry against y, so that [x, y] is usually nonzero
  auto related = [&](const Mode& y) {
    Mode x = draw();
    auto es = q.entries(x.a, y.a);
    if (!es.empty()) x.alpha = es[std::uniform_int_distribution<size_t>(0, es.size() - 1)(rng)].alpha * y.alpha;
    return x;
  };
  std::vector<std::array<Mode, 3>> triples;
  for (size_t t = 0; t < s.triples; ++t) {
    Mode z = draw();
    if (t % 2) {
      triples.push_back({draw(), draw(), z});
      continue;
    }
    Mode y = related(z);
    triples.push_back({related(y), y, z});
  }
  std::vector<std::array<Mode, 2>> pairs;
  for (size_t t = 0; t < s.pairs; ++t) {
    Mode y = draw();
    pairs.push_back({t % 2 ? draw() : related(y), y});
  }

  Report rep{"zeta-bracket " + q.name + " zeta=" + std::to_string(zeta),
             "|m|<=" + std::to_string(s.modes) + " alphas=" + std::to_string(alphas.size()) +
                 " seed=" + std::to_string(s.seed),
             {}};
  std::vector<std::string> anti(triples.size()), jac(triples.size()), conf(triples.size()), orc(pairs.size());
  std::vector<char> nonzero(triples.size(), 0);
  for_each_index(ex, triples.size(), [&](size_t t) {
    const auto& [x, y, z] = triples[t];
    LieElement xl = reduce_mode(q, zeta, LieElement(x)), yl = reduce_mode(q, zeta, LieElement(y)),
               zl = reduce_mode(q, zeta, LieElement(z));
    LieElement xy = zeta_bracket(q, zeta, xl, yl);
    if (!(xy + zeta_bracket(q, zeta, yl, xl)).is_zero()) anti[t] = "[" + x.str() + "," + y.str() + "]";
    LieElement j1 = zeta_bracket(q, zeta, xl, zeta_bracket(q, zeta, yl, zl));
    LieElement j2 = zeta_bracket(q, zeta, yl, zeta_bracket(q, zeta, zl, xl));
    LieElement j3 = zeta_bracket(q, zeta, zl, xy);
    nonzero[t] = !j1.is_zero() || !j2.is_zero() || !j3.is_zero();
    LieElement j = j1 + j2 + j3;
    if (!j.is_zero()) jac[t] = x.str() + ", " + y.str() + ", " + z.str() + ": " + str(j);
    for (const Mode& m : {x, y, z})
      if (!(reduce_mode(q, zeta, LieElement(m)) == reduce_mode(q, zeta, LieElement(m), true)))
        conf[t] = m.str();
  });
  for_each_index(ex, pairs.size(), [&](size_t t) {
    const auto& [x, y] = pairs[t];
    LieElement a = zeta_mode_bracket(q, zeta, x, y), b = zeta_bracket_oracle(q, zeta, x, y);
    if (!(a == b)) orc[t] = "[" + x.str() + "," + y.str() + "]: " + str(a) + " vs " + str(b);
  });
  auto summarize = [&](const std::string& key, const std::vector<std::string>& wit) {
    size_t bad = 0;
    std::string first;
    for (const auto& w : wit)
      if (!w.empty() && !bad++) first = w;
    rep.add(key + " (" + std::to_string(wit.size() - bad) + "/" + std::to_string(wit.size()) + ")", bad == 0, first);
  };
  summarize("antisymmetry", anti);
  summarize("jacobi, " + std::to_string(std::count(nonzero.begin(), nonzero.end(), 1)) + " with a nonzero term", jac);
  summarize("window-expansion oracle", orc);
  summarize("rule-order confluence", conf);
  return rep;
}

}  // namespace qvla
