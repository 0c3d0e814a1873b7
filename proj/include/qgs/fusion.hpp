#pragma once

#include "qgs/chebyshev.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qgs {

/// alpha (x) beta = |alpha-beta|, |alpha-beta|+2, ..., alpha+beta, each once.
std::vector<unsigned> fuse(unsigned alpha, unsigned beta);
bool admissible(unsigned alpha, unsigned beta, unsigned gamma);

struct DimensionTable {
  int N = 2;
  std::vector<Integer> n;      // classical dimensions n_alpha
  std::vector<BigFloat> qdim;  // [alpha+1]_q
  unsigned alpha_max() const { return static_cast<unsigned>(n.size()) - 1; }
};

/// n_0 = 1, n_1 = N, N n_a = n_{a+1} + n_{a-1}.
std::vector<Integer> classical_dims(int N, unsigned alpha_max);
DimensionTable dims(const QParameter& param, unsigned alpha_max);

/// Exact [alpha+1]_q for rational N_q.
std::vector<Rational> quantum_dims_exact(const Rational& Nq, unsigned alpha_max);

/// n_a n_b = sum_{g in a (x) b} n_g, and the same for [x+1]_q, checked
/// exactly for all a, b <= alpha_max. The quantum rule needs rational N_q.
struct SumRuleReport {
  unsigned alpha_max = 0;
  std::size_t pairs = 0;
  bool quantum_checked = false;
  std::vector<std::pair<unsigned, unsigned>> classical_failures, quantum_failures;
  bool pass() const { return classical_failures.empty() && quantum_failures.empty(); }
};
SumRuleReport sum_rules(const QParameter& param, unsigned alpha_max);

struct GrowthRecord {
  double q0 = 0;
  double root = 0;            // n_alpha^{1/alpha}
  double limsup_product = 0;  // n_alpha^{1/alpha} * q
};

GrowthRecord growth_rate(const QParameter& param, unsigned alpha_probe);

}  // namespace qgs
