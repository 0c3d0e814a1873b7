#pragma once

#include "qgs/numbers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qgs {

/// U_alpha with integer coefficients in ascending powers of x.
struct ChebyshevPoly {
  unsigned degree = 0;
  std::vector<Integer> coeffs;
};

ChebyshevPoly build_poly(unsigned alpha);

// Value-domain recurrence x*U_a = U_{a-1} + U_{a+1}; O(alpha).
Rational eval(unsigned alpha, const Rational& x);
BigFloat eval(unsigned alpha, const BigFloat& x);
double eval(unsigned alpha, double x);

// Exact derivative. The rational overload differentiates the coefficient
// vector; the float overloads run the differentiated recurrence
// U'_{a+1} = x*U'_a + U_a - U'_{a-1}, which is the same polynomial identity.
Rational eval_derivative(unsigned alpha, const Rational& x);
BigFloat eval_derivative(unsigned alpha, const BigFloat& x);
double eval_derivative(unsigned alpha, double x);

/// Deformation data (q, N, N_q, q0) of one quantum group model.
///
/// q is either an exact rational or the Kac value q0 of N. Floating views are
/// materialized at a fixed mantissa width; at_precision() rebuilds them wider.
class QParameter {
 public:
  static QParameter from_rational(const Rational& q, int N, unsigned bits = kDefaultPrecisionBits);
  static QParameter from_string(const std::string& q, int N, unsigned bits = kDefaultPrecisionBits);
  /// q = q0(N): the Kac point.
  static QParameter kac(int N, unsigned bits = kDefaultPrecisionBits);

  QParameter at_precision(unsigned bits) const;

  int N() const { return N_; }
  unsigned precision() const { return bits_; }
  const BigFloat& q() const { return q_; }
  const BigFloat& Nq() const { return Nq_; }
  const BigFloat& q0() const { return q0_; }
  double q_double() const { return q_.to_double(); }
  double Nq_double() const { return Nq_.to_double(); }
  double q0_double() const { return q0_.to_double(); }

  /// Present when q (hence N_q) is rational.
  const std::optional<Rational>& q_exact() const { return q_exact_; }
  std::optional<Rational> Nq_exact() const;

  /// N_q >= N, i.e. q <= q0. Eigenvalue data depend on q alone, so an
  /// inconsistent pair is still evaluated; callers decide whether to refuse it.
  bool is_consistent() const;
  bool is_classical() const { return q_exact_ && *q_exact_ == 1; }
  /// Stable text key, e.g. "N=3;q=1/2" or "N=3;q=q0".
  std::string key() const;

 private:
  QParameter() = default;
  void materialize();

  int N_ = 2;
  unsigned bits_ = kDefaultPrecisionBits;
  std::optional<Rational> q_exact_;
  BigFloat q_, Nq_, q0_;
};

/// [n]_q = U_{n-1}(N_q); [0] = 0.
BigFloat q_number(unsigned n, const QParameter& param);
Rational q_number(unsigned n, const Rational& Nq);

}  // namespace qgs
