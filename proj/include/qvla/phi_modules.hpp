#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "qvla/enveloping.hpp"
#include "qvla/examples.hpp"

namespace qvla {

// coefficients c_k of phi_eps(z, z0) = sum c_k z0^k z^{1+k(eps-1)}
std::vector<mpq_class> phi_series(int eps, int order);
// phi(phi(z, w1), w2) = phi(z, w1 + w2) through total order `order`
Report check_phi_flow(int eps, int order);

// b_1(n_1) ... b_r(n_r) w0, creation modes of g in canonical order
struct ModMonomial {
  std::vector<GMode> modes;
  auto operator<=>(const ModMonomial&) const = default;
  bool operator==(const ModMonomial&) const = default;
  std::string str() const;
};
using ModVector = LinComb<ModMonomial>;
std::string str(const ModVector& v);

struct RestrictedModule {
  std::string name;
  QVLA g;
  std::function<int(const ModMonomial&)> degree;
  std::function<std::vector<ModMonomial>(int)> basis;  // degree-d piece
  std::function<ModVector(const GMode&, const ModMonomial&)> action;
  std::function<int(const GeneratorIndex&, const ModMonomial&)> restriction_bound;  // a(m) w = 0 past this m

  ModVector act(const GMode& x, const ModVector& w) const;
  std::vector<ModMonomial> basis_up_to(int d) const;
};

// E(a(m)) = -m - (eps-1)(weight(a)-1); brackets are additive in E
int mode_energy(const QVLA& q, const GMode& x);

// induced from modes with E <= 0; a central mode with E = 0 acts by central[family], other central modes by 0
RestrictedModule induced_module(const QVLA& q, const std::map<std::string, Scalar>& central, const std::string& name);
RestrictedModule fock_module();  // q-Heisenberg, c = 1
RestrictedModule affine_induced_module(const FiniteLieData& data, int epsilon, const Scalar& level = Scalar(1));

// prod (x - root), roots with multiplicity
struct QPoly {
  std::vector<GroupElem> roots;
  std::vector<Scalar> coefficients(FieldSpec spec) const;  // ascending powers
  std::string str() const;
};
// clears the poles of Y_W(a^alpha, z1) Y_W(b^beta, z2): one root per delta scale, multiplicity order+1
QPoly auto_q_poly(const QVLA& q, const GeneratorIndex& a, const GroupElem& alpha, const GeneratorIndex& b,
                  const GroupElem& beta);
// product over mode pairs; derivative modes add their order
QPoly auto_q_poly(const QVLA& q, const PBWMonomial& u, const PBWMonomial& v);

// one generator field on a box of z-powers and carrier degrees
struct ModuleFieldWindow {
  int zlo = 0, zhi = 0, max_degree = 0;
  std::map<std::pair<int, ModMonomial>, ModVector> cells;  // (N, basis vector) -> coefficient of z^N applied to it
};

// Y_W on V_{g^0}: generators go to a(alpha z); longer monomials through the phi_eps normal-ordered product
class QuasiModule {
 public:
  explicit QuasiModule(RestrictedModule mod);

  const RestrictedModule& module() const { return mod_; }
  const Enveloping& vertex_algebra() const { return V_; }
  int epsilon() const { return mod_.g.epsilon; }

  // coefficient of z^N in Y_W(v, z) w
  ModVector field(const PBWVector& v, int N, const ModVector& w) const;
  ModVector field(const PBWMonomial& v, int N, const ModMonomial& w) const;
  ModuleFieldWindow module_field(const GeneratorIndex& a, const GroupElem& alpha, int zlo, int zhi,
                                 int max_degree) const;

  // lowest N with a possibly nonzero coefficient of Y_W(v, z) on a vector of degree d
  int lowest_power(const PBWMonomial& v, int d) const;
  // coefficient of y^l z^M in (q(z1/z) Y_W(u, z1) Y_W(v, z))|_{z1 = z f(y)}, y = z0 z^{eps-1}
  ModVector substituted(const PBWMonomial& u, const PBWMonomial& v, const std::vector<Scalar>& q, int l, int M,
                        const ModMonomial& w) const;
  // coefficient of z1^I z^J in q(z1/z) Y_W(u, z1) Y_W(v, z) w
  ModVector product_coefficient(const PBWMonomial& u, const PBWMonomial& v, const std::vector<Scalar>& q, int I,
                                int J, const ModMonomial& w) const;
  // y-series of q(f(y)), from y^0
  std::vector<Scalar> q_of_f(const std::vector<Scalar>& q, int order) const;

 private:
  mpq_class f_coeff(int I, int l) const;  // [y^l] f(y)^I

  RestrictedModule mod_;
  Enveloping V_;
  struct Cache {
    std::mutex mu;
    std::map<std::tuple<PBWMonomial, int, ModMonomial>, ModVector> field;
    std::map<int, std::vector<mpq_class>> fpow;
  };
  std::shared_ptr<Cache> cache_;
};

struct ModuleSamples {
  int modes = 4;       // |N| on the z window, |m| for bracket samples
  int max_degree = 2;  // carrier vectors tested
  int zorder = 4;      // z0-order for associativity
  std::vector<GroupElem> alphas;  // generator twists; empty: identity and group generators
  std::vector<GroupElem> lambdas;  // empty: identity and group generators
  int vector_degree = 2;  // PBW degree of composite vectors in the equivariance samples
};

Report check_module_bracket(const QuasiModule& W, const ModuleSamples& s, Exec ex = Exec::Parallel);
Report check_equivariance(const QuasiModule& W, const ModuleSamples& s, Exec ex = Exec::Parallel);
Report check_equi_commutator(const QuasiModule& W, const ModuleSamples& s, Exec ex = Exec::Parallel);
// q_poly empty: auto_q_poly(u, v)
Report check_phi_associativity(const QuasiModule& W, const PBWMonomial& u, const PBWMonomial& v,
                               const std::optional<QPoly>& q_poly, const ModuleSamples& s,
                               Exec ex = Exec::Parallel);

}  // namespace qvla
