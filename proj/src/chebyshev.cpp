#include "qgs/chebyshev.hpp"

#include "qgs/errors.hpp"

#include <cmath>

namespace qgs {

ChebyshevPoly build_poly(unsigned alpha) {
  std::vector<Integer> prev{1};
  if (alpha == 0) return {0, prev};
  std::vector<Integer> cur{0, 1};
  for (unsigned a = 1; a < alpha; ++a) {
    // U_{a+1} = x U_a - U_{a-1}
    std::vector<Integer> next(a + 2, 0);
    for (unsigned i = 0; i <= a; ++i) next[i + 1] += cur[i];
    for (unsigned i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {alpha, cur};
}

namespace {

template <class T>
T eval_recurrence(unsigned alpha, const T& x, const T& one) {
  if (alpha == 0) return one;
  T prev = one, cur = x;
  for (unsigned a = 1; a < alpha; ++a) {
    T next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

template <class T>
T eval_derivative_recurrence(unsigned alpha, const T& x, const T& zero, const T& one) {
  if (alpha == 0) return zero;
  T u_prev = one, u = x;
  T d_prev = zero, d = one;
  for (unsigned a = 1; a < alpha; ++a) {
    T d_next = x * d + u - d_prev;
    T u_next = x * u - u_prev;
    d_prev = std::move(d);
    d = std::move(d_next);
    u_prev = std::move(u);
    u = std::move(u_next);
  }
  return d;
}

}  // namespace

Rational eval(unsigned alpha, const Rational& x) { return eval_recurrence<Rational>(alpha, x, Rational(1)); }

BigFloat eval(unsigned alpha, const BigFloat& x) {
  return eval_recurrence<BigFloat>(alpha, x, BigFloat(1L, x.precision()));
}

double eval(unsigned alpha, double x) { return eval_recurrence<double>(alpha, x, 1.0); }

Rational eval_derivative(unsigned alpha, const Rational& x) {
  ChebyshevPoly p = build_poly(alpha);
  // Horner on the differentiated coefficients.
  Rational acc = 0;
  for (unsigned i = p.degree; i >= 1; --i) acc = acc * x + Rational(p.coeffs[i] * i);
  return acc;
}

BigFloat eval_derivative(unsigned alpha, const BigFloat& x) {
  unsigned bits = x.precision();
  return eval_derivative_recurrence<BigFloat>(alpha, x, BigFloat(bits), BigFloat(1L, bits));
}

double eval_derivative(unsigned alpha, double x) { return eval_derivative_recurrence<double>(alpha, x, 0.0, 1.0); }

QParameter QParameter::from_rational(const Rational& q, int N, unsigned bits) {
  if (N < 2) throw DomainError("N must be at least 2");
  if (q <= 0 || q > 1) throw DomainError("q must lie in (0, 1]");
  QParameter p;
  p.N_ = N;
  p.bits_ = bits;
  p.q_exact_ = q;
  p.materialize();
  return p;
}

QParameter QParameter::from_string(const std::string& q, int N, unsigned bits) {
  if (q == "q0" || q == "kac") return kac(N, bits);
  return from_rational(parse_rational(q), N, bits);
}

QParameter QParameter::kac(int N, unsigned bits) {
  if (N < 2) throw DomainError("N must be at least 2");
  if (N == 2) return from_rational(Rational(1), 2, bits);
  QParameter p;
  p.N_ = N;
  p.bits_ = bits;
  p.materialize();
  return p;
}

QParameter QParameter::at_precision(unsigned bits) const {
  QParameter p = *this;
  p.bits_ = bits;
  p.materialize();
  return p;
}

void QParameter::materialize() {
  // q0 = (N - sqrt(N^2 - 4)) / 2, written as 2 / (N + sqrt(N^2 - 4)) to avoid cancellation.
  BigFloat n(static_cast<long>(N_), bits_);
  BigFloat disc = sqrt(n * n - BigFloat(4L, bits_));
  q0_ = BigFloat(2L, bits_) / (n + disc);
  if (N_ == 2) q0_ = BigFloat(1L, bits_);
  if (q_exact_) {
    q_ = BigFloat(*q_exact_, bits_);
    Nq_ = BigFloat(Rational(*q_exact_ + 1 / *q_exact_), bits_);
  } else {
    q_ = q0_;
    Nq_ = n;
  }
}

std::optional<Rational> QParameter::Nq_exact() const {
  if (q_exact_) return Rational(*q_exact_ + 1 / *q_exact_);
  if (N_ >= 2) return Rational(N_);  // Kac point: N_q = N exactly
  return std::nullopt;
}

bool QParameter::is_consistent() const {
  if (!q_exact_ || N_ == 2) return true;
  // Compare N_q >= N exactly: q + 1/q >= N.
  return *Nq_exact() >= N_;
}

std::string QParameter::key() const {
  std::string q = q_exact_ ? q_exact_->str() : std::string("q0");
  return "N=" + std::to_string(N_) + ";q=" + q;
}

BigFloat q_number(unsigned n, const QParameter& param) {
  if (n == 0) return BigFloat(param.precision());
  return eval(n - 1, param.Nq());
}

Rational q_number(unsigned n, const Rational& Nq) {
  if (n == 0) return 0;
  return eval(n - 1, Nq);
}

}  // namespace qgs
