#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>

#include "qvla/qvla.hpp"

namespace qvla {

// a_1(-n_1)...a_r(-n_r) 1 with twist-0 creation modes in canonical order
struct PBWMonomial {
  std::vector<Mode> modes;
  auto operator<=>(const PBWMonomial&) const = default;
  bool operator==(const PBWMonomial&) const = default;
  std::string str() const;
};
using PBWVector = LinComb<PBWMonomial>;
std::string str(const PBWVector& v);

// canonical order: deeper mode first, then family, params, group element
bool mode_precedes(const Mode& x, const Mode& y);

// (-1)^n n! C(m,n) a^{alpha,0}(m-n)
LieElement rho_mode(int n, const GeneratorIndex& a, const GroupElem& alpha, int m);

class Enveloping {
 public:
  explicit Enveloping(const QVLA& q);

  const QVLA& algebra() const { return q_; }
  PBWVector vacuum() const;
  PBWVector generator(const GeneratorIndex& a, const GroupElem& alpha) const;  // a^{alpha,0}
  int degree(const Mode& x) const;  // weight(a) - m - 1
  int degree(const PBWMonomial& m) const;
  int degree(const PBWVector& v) const;  // max over terms, -1 for zero

  PBWVector act(const Mode& x, const PBWVector& v) const;
  PBWVector act(const LieElement& x, const PBWVector& v) const;
  PBWVector normal_order(const std::vector<Mode>& word) const;
  PBWVector vertex_coefficient(const PBWVector& v, int n, const PBWVector& w) const;
  PBWVector translation(const PBWVector& v) const;  // D v = v_{-2} 1
  PBWVector r_action(const GroupElem& lambda, const PBWVector& v) const;

  // monomials up to the given degree in creation modes of the window generators with the given alphas
  std::vector<PBWMonomial> monomials(int max_degree, const std::vector<GroupElem>& alphas) const;

 private:
  PBWVector act_mono(const Mode& x, const PBWMonomial& m) const;
  PBWVector vertex_mono(const PBWMonomial& v, int n, const PBWMonomial& w) const;

  QVLA q_;
  struct Cache {
    std::mutex mu;
    std::map<std::pair<Mode, PBWMonomial>, PBWVector> act;
    std::map<std::tuple<PBWMonomial, int, PBWMonomial>, PBWVector> vertex;
  };
  std::shared_ptr<Cache> cache_;
};

struct VertexSamples {
  int max_degree = 4;  // PBW degree of u, v, w combined
  int modes = 3;       // |m|, |n|
  std::vector<GroupElem> alphas;  // empty: identity and group generators
  size_t count = 200;
  std::uint64_t seed = 1;
};

Report check_vertex_axioms(const Enveloping& V, const VertexSamples& s, Exec ex = Exec::Parallel);
Report check_gamma_epsilon_axiom(const Enveloping& V, const std::vector<GroupElem>& lambdas, const VertexSamples& s,
                                 Exec ex = Exec::Parallel);

// nullopt when the degree-d piece is infinite dimensional
std::optional<long> graded_dimension(const QVLA& q, int d);

}  // namespace qvla
