#include "qgs/estimates.hpp"

#include "qgs/errors.hpp"
#include "qgs/fusion.hpp"
#include "qgs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qgs {

namespace {

struct GapTables {
  std::vector<BigFloat> delta;  // Delta_0 .. Delta_index_max
  std::vector<BigFloat> qpow;   // q^{-2 index_max} .. q^{2 index_max}
  long offset = 0;
  const BigFloat& Q(long k) const { return qpow[static_cast<std::size_t>(k + offset)]; }
};

GapTables gap_tables(const QParameter& p, unsigned index_max) {
  GapTables t;
  t.delta = delta_table(p, index_max);
  // beta + gamma may be negative, so q^{2b+2g} needs negative exponents too.
  t.offset = 2L * index_max;
  t.qpow.reserve(4 * index_max + 1);
  t.qpow.push_back(pow(p.q(), -t.offset));
  for (long k = -t.offset + 1; k <= t.offset; ++k) t.qpow.push_back(t.qpow.back() * p.q());
  return t;
}

void check_gap_labels(unsigned alpha, unsigned beta, int gamma) {
  long a = alpha, b = beta, g = gamma;
  if (a + g < 0 || b - g < 0) throw DomainError("gap: shifted label alpha+gamma or beta-gamma is negative");
  if (std::labs(g) > std::max(a, b)) throw DomainError("gap: |gamma| exceeds max(alpha, beta)");
}

unsigned gap_index_max(unsigned alpha, unsigned beta, int gamma) {
  unsigned g = static_cast<unsigned>(std::abs(gamma));
  return std::max(alpha, beta) + g;
}

GapEvaluation gap_from_tables(const GapTables& t, unsigned alpha, unsigned beta, int gamma) {
  GapEvaluation e;
  e.alpha = alpha;
  e.beta = beta;
  e.gamma = gamma;
  const long a = alpha, b = beta, g = gamma;
  const auto& D = t.delta;
  auto Q = [&t](long k) -> const BigFloat& { return t.Q(k); };
  e.lhs = abs(D[a + g] - D[a] - D[b] + D[b - g]);
  BigFloat r1 = abs(Q(2 * a + 2 * g) - Q(2 * b + 2 * g)) * std::labs(g);
  BigFloat r2 = abs(Q(2 * b) - Q(2 * b - 2 * g)) * b;
  BigFloat r3 = abs(Q(2 * a) - Q(2 * a + 2 * g)) * a;
  e.rhs = r1 + r2 + r3;
  if (gamma == 0 || e.lhs.is_zero()) {
    e.ratio = 0;
  } else if (e.rhs.is_zero()) {
    e.ratio = std::numeric_limits<double>::infinity();
  } else {
    e.ratio = (e.lhs / e.rhs).to_double();
  }
  return e;
}

}  // namespace

unsigned gap_precision(const QParameter& param, unsigned index_max) {
  double q = param.q_double();
  double bits = 128.0 + 16.0 + std::log2(static_cast<double>(index_max) + 2.0);
  if (q < 1) bits += 2.0 * (index_max + 1) * std::log2(1.0 / q);
  return std::max(param.precision(), static_cast<unsigned>(std::ceil(bits)));
}

GapEvaluation gap(const QParameter& param, unsigned alpha, unsigned beta, int gamma) {
  check_gap_labels(alpha, beta, gamma);
  unsigned idx = gap_index_max(alpha, beta, gamma);
  QParameter p = param.at_precision(gap_precision(param, idx));
  return gap_from_tables(gap_tables(p, idx), alpha, beta, gamma);
}

GapScanReport gap_constant_scan(const QParameter& param, unsigned alpha_max, unsigned gamma_max,
                                double stability_tolerance) {
  if (alpha_max < 10) throw DomainError("gap scan needs alpha_max >= 10");
  GapScanReport rep;
  rep.alpha_max = alpha_max;
  rep.gamma_max = gamma_max;
  unsigned idx = alpha_max + gamma_max;
  rep.precision_bits = gap_precision(param, idx);
  GapTables tables = gap_tables(param.at_precision(rep.precision_bits), idx);

  const unsigned inner_lo = alpha_max / 4, mid = alpha_max / 2;
  const long gmax = gamma_max;
  for (unsigned a = 0; a <= alpha_max; ++a) {
    unsigned b_lo = a > 2 * gamma_max ? a - 2 * gamma_max : 0;
    unsigned b_hi = std::min(alpha_max, a + 2 * gamma_max);
    for (unsigned b = b_lo; b <= b_hi; ++b) {
      for (long g = -gmax; g <= gmax; ++g) {
        if (static_cast<long>(a) + g < 0 || static_cast<long>(b) - g < 0) continue;
        if (std::labs(g) > static_cast<long>(std::max(a, b))) continue;
        GapEvaluation e = gap_from_tables(tables, a, b, static_cast<int>(g));
        ++rep.cells;
        if (!std::isfinite(e.ratio)) rep.finite = false;
        if (e.ratio > rep.sup_ratio || rep.cells == 1) {
          rep.sup_ratio = e.ratio;
          rep.argmax = {a, b, static_cast<int>(g), e.ratio};
        }
        if (a >= inner_lo && a <= mid) rep.inner_sup = std::max(rep.inner_sup, e.ratio);
        if (a >= mid) rep.outer_sup = std::max(rep.outer_sup, e.ratio);
      }
    }
  }
  if (rep.inner_sup == 0) {
    rep.stable = rep.outer_sup == 0;
  } else {
    rep.stable = rep.finite && std::abs(rep.outer_sup - rep.inner_sup) <= stability_tolerance * rep.inner_sup;
  }
  return rep;
}

HSCoefficient hs_coefficient(const QParameter& param, unsigned alpha, unsigned beta, int gamma, double t) {
  if (t < 0) throw DomainError("hs_coefficient needs t >= 0");
  check_gap_labels(alpha, beta, gamma);
  unsigned idx = gap_index_max(alpha, beta, gamma);
  QParameter p = param.at_precision(gap_precision(param, idx));
  GapTables tables = gap_tables(p, idx);
  GapEvaluation e = gap_from_tables(tables, alpha, beta, gamma);
  HSCoefficient c;
  c.gap = e.lhs;
  c.step = abs(tables.delta[beta] - tables.delta[static_cast<long>(beta) - gamma]);
  c.damping = std::exp(-t * tables.delta[beta].to_double());
  return c;
}

std::vector<SkeletonCell> coefficient_skeleton(const QParameter& param, unsigned alpha, unsigned r, unsigned s,
                                               double t) {
  const long a = alpha, span = static_cast<long>(r + s), gmax = std::max(r, s);
  std::vector<SkeletonCell> out;
  for (long b = std::max(0L, a - span); b <= a + span; ++b) {
    for (long g = -gmax; g <= gmax; ++g) {
      if (a + g < 0 || b - g < 0 || std::labs(g) > std::max(a, b)) continue;
      HSCoefficient c = hs_coefficient(param, alpha, static_cast<unsigned>(b), static_cast<int>(g), t);
      out.push_back({static_cast<unsigned>(b), static_cast<int>(g), c.gap.to_double(), c.step.to_double(), c.damping});
    }
  }
  return out;
}

HSCertificate hs_certificate(const QParameter& param, double t, unsigned alpha_max, const HSOptions& options) {
  if (alpha_max < 20) throw DomainError("hs_certificate needs alpha_max >= 20");
  if (t < 0) throw DomainError("hs_certificate needs t >= 0");
  const unsigned bits = param.precision();
  HSCertificate c;
  c.param_key = param.key();
  c.t = t;
  c.alpha_max = alpha_max;

  std::vector<Integer> n = classical_dims(param.N(), alpha_max);
  BigFloat damp = exp(BigFloat(-2.0 * t, bits));  // e^{-2t}
  BigFloat one(1L, bits);
  BigFloat qa = one, qa2 = one, da = one;  // q^a, q^{2a}, e^{-2ta}
  BigFloat sum(bits), csum(bits);
  for (unsigned a = 0; a <= alpha_max; ++a) {
    BigFloat n2(Integer(n[a] * n[a]), bits);
    BigFloat s = qa2 + qa;
    BigFloat term = n2 * s * s * da;
    BigFloat cterm = n2 * qa2 * da;
    sum += term;
    csum += cterm;
    c.terms.push_back(term.to_double());
    c.partial_sums.push_back(sum.to_double());
    c.compressed_terms.push_back(cterm.to_double());
    c.compressed_partial_sums.push_back(csum.to_double());
    qa *= param.q();
    qa2 = qa * qa;
    da *= damp;
  }

  BigFloat root2 = pow(root(BigFloat(n[alpha_max], bits), alpha_max), 2L);
  c.ratio_value = (root2 * param.q() * param.q() * damp).to_double();
  for (unsigned a = 0; a <= std::min(options.early_alpha, alpha_max); ++a)
    c.early_scale = std::max(c.early_scale, c.terms[a]);
  c.tail_term = c.terms[alpha_max];

  if (c.ratio_value <= 1.0 - options.ratio_margin) {
    c.verdict = "finite";
  } else if (c.tail_term >= options.term_floor * c.early_scale || c.ratio_value >= 1.0 + options.ratio_margin) {
    c.verdict = "divergent";
  } else {
    c.verdict = "inconclusive";
  }
  return c;
}

Regime regime_classify(const QParameter& param) {
  Regime r;
  double q = param.q_double(), q0 = param.q0_double();
  r.kac = std::abs(q - q0) <= 1e-9;
  r.ighs = true;
  r.ghs = q < q0 - 1e-9;
  return r;
}

}  // namespace qgs
