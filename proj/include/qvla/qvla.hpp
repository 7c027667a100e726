#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qvla/currents.hpp"
#include "qvla/report.hpp"

namespace qvla {

// a(m) in g
struct GMode {
  GeneratorIndex a;
  int m = 0;
  auto operator<=>(const GMode&) const = default;
  bool operator==(const GMode&) const = default;
  std::string str() const;
};
using GElement = LinComb<GMode>;

// a^{alpha,twist}(m)
struct Mode {
  GeneratorIndex a;
  GroupElem alpha;
  int m = 0;
  int twist = 0;
  auto operator<=>(const Mode&) const = default;
  bool operator==(const Mode&) const = default;
  std::string str() const;
};
using LieElement = LinComb<Mode>;

std::string str(const GElement& e);
std::string str(const LieElement& e);

struct StructureEntry {
  GroupElem alpha, beta;
  int i = 0, j = 0;
  GenComb value;
};

struct Family {
  std::string name;
  int arity = 0;
  bool central = false;
  int weight = 1;                        // degree of a(-1) in the enveloping algebra
  std::vector<std::vector<int>> window;  // parameter tuples enumerated by the checks
};

struct NonConfluentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// expr = 0, directed: rewrites the source current into the remaining terms
struct Rule {
  CurrentKey source;
  CurrentExpr expr;
};

// rules(a) returns the rules whose source generator is a
struct RelationFamily {
  std::string name;
  std::function<std::vector<Rule>(const GeneratorIndex&)> rules;
};

using StructureFn = std::function<std::vector<StructureEntry>(const GeneratorIndex&, const GeneratorIndex&)>;

struct NormalizerCache;

class QVLA {
 public:
  std::string name;
  int epsilon = 1;
  FieldSpec spec;
  std::vector<Family> families;
  StructureFn structure;
  std::vector<RelationFamily> relations;
  std::function<bool(const GMode&)> in_g_basis;  // declared basis of g
  std::function<void(const GeneratorIndex&)> check_generator_hook;  // extra parameter validation

  QVLA();
  QVLA(const QVLA& o);
  QVLA& operator=(const QVLA& o);

  const Family& family(const std::string& name) const;
  void check_generator(const GeneratorIndex& a) const;
  bool is_central(const GeneratorIndex& a) const;
  std::vector<GeneratorIndex> window_generators() const;
  std::vector<StructureEntry> entries(const GeneratorIndex& a, const GeneratorIndex& b) const;
  std::vector<Rule> rules_for(const GeneratorIndex& a) const;
  int max_order() const;  // largest i or j over window pairs
  GroupElem one() const { return GroupElem::identity(spec); }
  QVLA without_relation(const std::string& name) const;

  NormalizerCache& cache() const { return *cache_; }

 private:
  std::shared_ptr<NormalizerCache> cache_;
};

struct CheckWindow {
  int modes = 4;                      // |output mode index| bound
  std::vector<GeneratorIndex> gens;  // empty: every window generator
};

// ---- currents ----
std::vector<DeltaTerm> current_bracket(const QVLA& q, const GeneratorIndex& a, const GroupElem& alpha,
                                       const GeneratorIndex& b, const GroupElem& beta);
std::vector<DeltaTerm> zeta_current_bracket(const QVLA& q, int zeta, const GeneratorIndex& a,
                                            const GroupElem& alpha, const GeneratorIndex& b,
                                            const GroupElem& beta);

// coefficient of z^{-p+twist-1}
GElement mode_coefficient(const QVLA& q, const CurrentExpr& e, int p);
LieElement zeta_mode_coefficient(const CurrentExpr& e, int p);

// ---- g ----
GElement g_normal_form(const QVLA& q, const GElement& e);
GElement g_bracket(const QVLA& q, const GMode& x, const GMode& y);
GElement g_bracket(const QVLA& q, const GElement& x, const GElement& y);

// ---- g^zeta ----
LieElement reduce_mode(const QVLA& q, int zeta, const LieElement& e);
// same rewriting with the rule list reversed, for confluence sampling
LieElement reduce_mode(const QVLA& q, int zeta, const LieElement& e, bool reverse_rules);
LieElement zeta_mode_bracket(const QVLA& q, int zeta, const Mode& x, const Mode& y);
LieElement zeta_bracket(const QVLA& q, int zeta, const LieElement& x, const LieElement& y);

// ---- g^eps[Gamma] ----
LieElement gamma_normal_form(const QVLA& q, const LieElement& e);
LieElement gamma_bracket(const QVLA& q, const Mode& x, const Mode& y);
GElement phi_gamma(const QVLA& q, const LieElement& e);

std::vector<GroupElem> associated_group(const QVLA& q);

// ---- checks ----
Report check_skew_symmetry(const QVLA& q, const CheckWindow& w, Exec ex = Exec::Parallel);
Report check_jacobi(const QVLA& q, const CheckWindow& w, Exec ex = Exec::Parallel);
Report check_maximality(const QVLA& q, const CheckWindow& w);
Report check_reconstruction(const QVLA& q, const CheckWindow& w, Exec ex = Exec::Parallel);

// [x, y] read off the expansion of zeta_current_bracket on a window, then reduced
LieElement zeta_bracket_oracle(const QVLA& q, int zeta, const Mode& x, const Mode& y);

struct ZetaSamples {
  int modes = 4;
  size_t triples = 200, pairs = 100;
  std::uint64_t seed = 1;
  std::vector<GroupElem> alphas;  // empty: words of length <= 2 in the group generators
};
// antisymmetry and Jacobi on random triples, oracle agreement on random pairs, rule-order confluence
Report check_zeta_bracket(const QVLA& q, int zeta, const ZetaSamples& s, Exec ex = Exec::Parallel);

}  // namespace qvla
