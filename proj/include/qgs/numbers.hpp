#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace qgs {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Mantissa width used when a caller does not ask for anything else.
inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Parses a plain decimal literal ("0.381966", "-2", "1e-3", "3/7") into an
/// exact rational. Throws DomainError on malformed input.
Rational parse_rational(std::string_view text);

/// Arbitrary-precision binary float backed by MPFR.
///
/// Every value owns its precision. Binary operations round to the larger of
/// the two operand precisions, so no global state is consulted and values may
/// be used from concurrent threads freely.
class BigFloat {
 public:
  explicit BigFloat(unsigned bits = kDefaultPrecisionBits);
  BigFloat(long value, unsigned bits);
  BigFloat(double value, unsigned bits);
  BigFloat(const Integer& value, unsigned bits);
  BigFloat(const Rational& value, unsigned bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
  /// Same numeric value rounded to a new precision.
  BigFloat with_precision(unsigned bits) const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
  std::string str(int significant_digits = 20) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat& operator*=(long rhs);

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }
  friend BigFloat operator*(BigFloat lhs, long rhs) { return lhs *= rhs; }
  friend BigFloat operator*(long lhs, BigFloat rhs) { return rhs *= lhs; }
  BigFloat operator-() const;

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

  friend BigFloat abs(const BigFloat& x);
  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);
  friend BigFloat exp(const BigFloat& x);
  friend BigFloat sinh(const BigFloat& x);
  friend BigFloat cosh(const BigFloat& x);
  friend BigFloat coth(const BigFloat& x);
  friend BigFloat pow(const BigFloat& base, const BigFloat& exponent);
  friend BigFloat pow(const BigFloat& base, long exponent);
  /// x^(1/n) for n >= 1.
  friend BigFloat root(const BigFloat& x, unsigned long n);

  mpfr_srcptr raw() const { return value_; }

 private:
  mpfr_t value_;
};

/// Converts anything arithmetic-like to double.
inline double to_double(const BigFloat& x) { return x.to_double(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const Integer& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

}  // namespace qgs
