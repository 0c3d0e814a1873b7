#pragma once

#include "qgs/chebyshev.hpp"

#include <string>
#include <vector>

namespace qgs {

/// lhs = |D_{a+g} - D_a - D_b + D_{b-g}|
/// rhs = |g| |q^{2a+2g} - q^{2b+2g}| + b |q^{2b} - q^{2b-2g}| + a |q^{2a} - q^{2a+2g}|
/// Each rhs term carries its own absolute value; the signed sum can go
/// negative and would not bound anything.
struct GapEvaluation {
  unsigned alpha = 0, beta = 0;
  int gamma = 0;
  BigFloat lhs, rhs;
  double ratio = 0;  // lhs/rhs, 0 when gamma = 0, +inf when rhs vanishes alone
};

/// Mantissa width that resolves lhs ~ q^{2 index} against Delta ~ index.
unsigned gap_precision(const QParameter& param, unsigned index_max);

GapEvaluation gap(const QParameter& param, unsigned alpha, unsigned beta, int gamma);

struct GapCell {
  unsigned alpha = 0, beta = 0;
  int gamma = 0;
  double ratio = 0;
};

struct GapScanReport {
  unsigned alpha_max = 0, gamma_max = 0;
  std::size_t cells = 0;
  double sup_ratio = 0;
  GapCell argmax;
  double inner_sup = 0;  // alpha in [alpha_max/4, alpha_max/2]
  double outer_sup = 0;  // alpha in [alpha_max/2, alpha_max]
  bool finite = true;
  bool stable = false;
  unsigned precision_bits = 0;
};

/// Exhaustive sup of the gap ratio over alpha, beta <= alpha_max,
/// |gamma| <= gamma_max, |beta - alpha| <= 2 gamma_max.
GapScanReport gap_constant_scan(const QParameter& param, unsigned alpha_max, unsigned gamma_max,
                                double stability_tolerance = 0.10);

struct HSCoefficient {
  BigFloat gap;   // |D_{a+g} - D_a - D_b + D_{b-g}|
  BigFloat step;  // |D_b - D_{b-g}|
  double damping = 1;  // exp(-t D_b)
};

HSCoefficient hs_coefficient(const QParameter& param, unsigned alpha, unsigned beta, int gamma, double t);

/// Every (beta, gamma) cell feeding the coefficient of x at alpha:
/// alpha-r-s <= beta <= alpha+r+s, |gamma| <= max(r, s), shifted labels >= 0.
struct SkeletonCell {
  unsigned beta = 0;
  int gamma = 0;
  double gap = 0, step = 0, damping = 1;
};
std::vector<SkeletonCell> coefficient_skeleton(const QParameter& param, unsigned alpha, unsigned r, unsigned s,
                                               double t);

struct HSOptions {
  double ratio_margin = 0.01;
  double term_floor = 1e-3;
  unsigned early_alpha = 10;
};

struct HSCertificate {
  std::string param_key;
  double t = 0;
  unsigned alpha_max = 0;
  std::vector<double> terms;             // n^2 (q^{2a} + q^a)^2 e^{-2ta}
  std::vector<double> partial_sums;
  std::vector<double> compressed_terms;  // n^2 q^{2a} e^{-2ta}
  std::vector<double> compressed_partial_sums;
  double ratio_value = 0;  // n^{2/a} q^2 e^{-2t} at alpha_max
  double early_scale = 0;
  double tail_term = 0;
  std::string verdict;  // finite | divergent | inconclusive
};

HSCertificate hs_certificate(const QParameter& param, double t, unsigned alpha_max, const HSOptions& options = {});

struct Regime {
  bool kac = false;
  bool ighs = true;
  bool ghs = false;
};

Regime regime_classify(const QParameter& param);

}  // namespace qgs
