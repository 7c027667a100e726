#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qvla/lincomb.hpp"
#include "qvla/scalars.hpp"

namespace qvla {

struct GeneratorIndex {
  std::string family;
  std::vector<int> params;

  auto operator<=>(const GeneratorIndex&) const = default;
  bool operator==(const GeneratorIndex&) const = default;
  std::string str() const;
};

using GenComb = LinComb<GeneratorIndex>;

// prod_{r<i} (x + r(zeta-1)): (w^zeta d/dw)^i w^x = P(x) w^{x+i(zeta-1)}
mpq_class zeta_falling(long x, int zeta, int i);

struct CurrentKey {
  GeneratorIndex a;
  GroupElem alpha;
  int n = 0;
  auto operator<=>(const CurrentKey&) const = default;
  bool operator==(const CurrentKey&) const = default;
};

// Scaled: sum mu (z^twist d/dz)^n a(alpha z), a current of g.
// Superscript: sum mu (z^twist d/dz)^n a^{alpha,twist}(z), a current of g^twist.
enum class CurrentKind { Scaled, Superscript };

struct CurrentExpr {
  int twist = 1;
  CurrentKind kind = CurrentKind::Scaled;
  LinComb<CurrentKey> terms;

  static CurrentExpr single(int twist, CurrentKind kind, const GeneratorIndex& a, const GroupElem& alpha,
                            int n = 0, const Scalar& mu = Scalar(1));
  bool is_zero() const { return terms.is_zero(); }
  CurrentExpr& operator+=(const CurrentExpr& o);
  friend CurrentExpr operator*(const Scalar& c, const CurrentExpr& e);
  friend bool operator==(const CurrentExpr& a, const CurrentExpr& b) {
    return a.twist == b.twist && a.kind == b.kind && a.terms == b.terms;
  }
  std::string str(const std::string& var = "w") const;
};

// coefficient of a generator combination placed at scale gamma: sum mu c(gamma w)
CurrentExpr current_of(const GenComb& c, const GroupElem& gamma, int twist, CurrentKind kind, int n = 0);

// (z^zeta d/dz)^times; contract error when zeta differs from the expression's twist
CurrentExpr apply_zeta_derivative(const CurrentExpr& e, int zeta, int times);

// canonical delta term: coeff(w) * Delta^{(order)}_{w,twist}(z, scale w)
struct DeltaTerm {
  CurrentExpr coeff;
  int order = 0;
  GroupElem scale;
  int twist = 1;
  std::string str() const;
};

struct DeltaKey {
  int order;
  GroupElem scale;
  auto operator<=>(const DeltaKey&) const = default;
  bool operator==(const DeltaKey&) const = default;
};
using DeltaMap = std::map<DeltaKey, CurrentExpr>;

DeltaMap collect_delta_coefficients(const std::vector<DeltaTerm>& expansion);
std::vector<DeltaTerm> delta_terms(const DeltaMap& m, int twist);

// Laurent coefficients on a box; cells outside the box are unknown
template <class V>
struct LaurentWindow {
  std::vector<std::string> vars;
  std::vector<std::pair<int, int>> ranges;
  std::map<std::vector<int>, V> cells;

  bool in_range(const std::vector<int>& key) const {
    for (size_t v = 0; v < ranges.size(); ++v)
      if (key[v] < ranges[v].first || key[v] > ranges[v].second) return false;
    return true;
  }
  void add(const std::vector<int>& key, const V& value) {
    if (!in_range(key)) return;
    auto it = cells.find(key);
    if (it == cells.end()) {
      if (!is_null(value)) cells.emplace(key, value);
      return;
    }
    it->second += value;
    if (is_null(it->second)) cells.erase(it);
  }
  V at(const std::vector<int>& key) const {
    auto it = cells.find(key);
    return it == cells.end() ? V() : it->second;
  }
  // equality on the common box
  bool agrees_with(const LaurentWindow& o) const {
    LaurentWindow d = *this;
    d.ranges = common(o);
    d.cells.clear();
    for (const auto& [k, v] : cells) d.add(k, v);
    for (const auto& [k, v] : o.cells) d.add(k, -v);
    return d.cells.empty();
  }
  std::vector<std::pair<int, int>> common(const LaurentWindow& o) const {
    std::vector<std::pair<int, int>> r = ranges;
    for (size_t v = 0; v < r.size(); ++v) {
      r[v].first = std::max(r[v].first, o.ranges[v].first);
      r[v].second = std::min(r[v].second, o.ranges[v].second);
    }
    return r;
  }

 private:
  static bool is_null(const V& v) { return v.is_zero(); }
};

using ScalarWindow = LaurentWindow<Scalar>;

struct Box2 {
  int zlo, zhi, wlo, whi;
};

ScalarWindow make_window(const Box2& box);

// coefficients of Delta^{(i)}_{w,zeta}(z, lambda w) on the box, variables (z, w)
ScalarWindow delta_expand(int i, int zeta, const GroupElem& lambda, const Box2& box);

// Delta^{(i)}_{w or z, zeta}(alpha z, beta w) before normalization
struct RawDelta {
  int order = 0;
  int twist = 1;
  GroupElem alpha, beta;
  bool z_derivative = false;
  bool swapped = false;  // arguments written as (beta w, alpha z); w-derivative only
};

ScalarWindow delta_expand_raw(const RawDelta& d, const Box2& box);

// raw = factor * Delta^{(order)}_{w,twist}(z, scale w)
struct NormalizedDelta {
  Scalar factor;
  int order;
  GroupElem scale;
  int twist;
};
NormalizedDelta delta_normalize(const RawDelta& d);
DeltaTerm delta_normalize(const CurrentExpr& coeff, const RawDelta& d);

// w^n -> n w^{n+zeta-1} per application on variable var; the box shifts with the degree
ScalarWindow apply_zeta_derivative(const ScalarWindow& win, size_t var, int zeta, int times);

// expansion of coeff(w) * Delta with scalar-valued coefficient sum c_r w^r
struct ScalarDeltaTerm {
  std::map<int, Scalar> coeff;  // w-power -> scalar
  int order = 0;
  GroupElem scale;
  int twist = 1;
};
ScalarWindow expand_scalar_delta(const std::vector<ScalarDeltaTerm>& terms, const Box2& box);
std::map<DeltaKey, std::map<int, Scalar>> collect_scalar_delta(const std::vector<ScalarDeltaTerm>& terms);

}  // namespace qvla
