#pragma once

#include <map>
#include <string>
#include <vector>

#include "qvla/qvla.hpp"

namespace qvla {

// finite dimensional Lie algebra with invariant form and a diagonal automorphism
struct FiniteLieData {
  std::vector<std::string> symbols;
  std::vector<std::vector<std::vector<Scalar>>> bracket;  // [x_u, x_v] = sum_w bracket[u][v][w] x_w
  std::vector<std::vector<Scalar>> form;
  std::vector<std::vector<Scalar>> sigma;  // sigma(x_u) = sum_v sigma[u][v] x_v
  int T = 1;

  FieldSpec spec() const { return {T, 0}; }
  // throws InputError on a broken invariant
  void validate() const;
  // eigenvalue exponents: sigma(x_u) = zeta_T^{grade[u]} x_u
  std::vector<int> grades() const;
};

FiniteLieData sl2_chevalley();  // x0 = e-f, x1 = h, x2 = e+f, T = 2
FiniteLieData sl2_untwisted();  // e, h, f, T = 1
FiniteLieData abelian_data(int dim);

struct QuantumTorusData {
  int ell = 1;
  int N = 1;
  FieldSpec spec;
  std::map<std::pair<int, int>, GroupElem> q;  // q_{ij} for i > j, indices 0..N

  static QuantumTorusData generic(int ell, int N);  // independent parameters
  static int param_index(int i, int j) { return i * (i - 1) / 2 + j; }
  void validate() const;
  GroupElem entry(int i, int j) const;                         // q_{ij}, any order
  GroupElem qm(const std::vector<int>& m) const;               // prod_k q_{k0}^{m_k}
  GroupElem sigma(const std::vector<int>& m, const std::vector<int>& n) const;
};

QVLA twisted_affine(const FiniteLieData& data, int epsilon, int bound = 0);
QVLA quantum_torus(const QuantumTorusData& data, int epsilon, int bound = 3);
QVLA q_heisenberg();
QVLA virasoro_like(int bound = 3);
QVLA klein_bottle(int bound = 3);

struct IsoOptions {
  int modes = 4;        // |mode index|
  int bound = 2;        // family parameter window
  int epsilon = 1;      // for affine and qtorus
  int ell = 2, N = 1;   // qtorus
  int height = 1;       // |alpha exponent| window where Gamma is free
};

// which: affine, qtorus, qheis, vlike, klein
Report check_example_isomorphism(const std::string& which, int zeta, const IsoOptions& opt = {});

}  // namespace qvla
