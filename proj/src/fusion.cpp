#include "qgs/fusion.hpp"

#include "qgs/errors.hpp"

#include <algorithm>

namespace qgs {

std::vector<unsigned> fuse(unsigned alpha, unsigned beta) {
  unsigned lo = alpha > beta ? alpha - beta : beta - alpha;
  std::vector<unsigned> out;
  out.reserve(std::min(alpha, beta) + 1);
  for (unsigned g = lo; g <= alpha + beta; g += 2) out.push_back(g);
  return out;
}

bool admissible(unsigned alpha, unsigned beta, unsigned gamma) {
  unsigned lo = alpha > beta ? alpha - beta : beta - alpha;
  return gamma >= lo && gamma <= alpha + beta && (alpha + beta - gamma) % 2 == 0;
}

std::vector<Integer> classical_dims(int N, unsigned alpha_max) {
  if (N < 2) throw DomainError("N must be at least 2");
  std::vector<Integer> n(alpha_max + 1);
  n[0] = 1;
  if (alpha_max >= 1) n[1] = N;
  for (unsigned a = 1; a < alpha_max; ++a) n[a + 1] = N * n[a] - n[a - 1];
  return n;
}

DimensionTable dims(const QParameter& param, unsigned alpha_max) {
  DimensionTable t;
  t.N = param.N();
  t.n = classical_dims(param.N(), alpha_max);
  t.qdim.reserve(alpha_max + 1);
  unsigned bits = param.precision();
  BigFloat prev(bits), cur(1L, bits);  // [0], [1]
  for (unsigned a = 0; a <= alpha_max; ++a) {
    t.qdim.push_back(cur);
    BigFloat next = param.Nq() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return t;
}

std::vector<Rational> quantum_dims_exact(const Rational& Nq, unsigned alpha_max) {
  std::vector<Rational> out(alpha_max + 1);
  Rational prev = 0, cur = 1;
  for (unsigned a = 0; a <= alpha_max; ++a) {
    out[a] = cur;
    Rational next = Nq * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

SumRuleReport sum_rules(const QParameter& param, unsigned alpha_max) {
  SumRuleReport r;
  r.alpha_max = alpha_max;
  std::vector<Integer> n = classical_dims(param.N(), 2 * alpha_max);
  std::optional<Rational> Nq = param.Nq_exact();
  std::vector<Rational> qd;
  if (Nq) qd = quantum_dims_exact(*Nq, 2 * alpha_max + 1);
  r.quantum_checked = Nq.has_value();
  for (unsigned a = 0; a <= alpha_max; ++a) {
    for (unsigned b = 0; b <= alpha_max; ++b) {
      Integer cs = 0;
      Rational qs = 0;
      for (unsigned g : fuse(a, b)) {
        cs += n[g];
        if (Nq) qs += qd[g];
      }
      ++r.pairs;
      if (cs != n[a] * n[b]) r.classical_failures.push_back({a, b});
      if (Nq && qs != qd[a] * qd[b]) r.quantum_failures.push_back({a, b});
    }
  }
  return r;
}

GrowthRecord growth_rate(const QParameter& param, unsigned alpha_probe) {
  if (alpha_probe < 1) throw DomainError("growth probe needs alpha >= 1");
  std::vector<Integer> n = classical_dims(param.N(), alpha_probe);
  BigFloat root_value = root(BigFloat(n[alpha_probe], param.precision()), alpha_probe);
  GrowthRecord r;
  r.q0 = param.q0_double();
  r.root = root_value.to_double();
  r.limsup_product = (root_value * param.q()).to_double();
  return r;
}

}  // namespace qgs
