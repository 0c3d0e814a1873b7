#include "qgs/numbers.hpp"

#include "qgs/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <memory>
#include <string>

namespace qgs {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer pow10(unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw DomainError("empty numeric literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + s + "'");
    return num / den;
  }

  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string mantissa = s.substr(pos);
  long exponent = 0;
  if (auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    std::string exp_part = mantissa.substr(e + 1);
    mantissa = mantissa.substr(0, e);
    std::string_view digits = exp_part;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) digits.remove_prefix(1);
    if (!all_digits(digits) || digits.size() > 6) throw DomainError("malformed exponent in '" + s + "'");
    exponent = std::strtol(exp_part.c_str(), nullptr, 10);
  }
  std::string int_part = mantissa;
  std::string frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw DomainError("malformed number '" + s + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw DomainError("malformed number '" + s + "'");

  // Leading zeros would make the integer parser read octal.
  std::string all = int_part + frac_part;
  all.erase(0, std::min(all.find_first_not_of('0'), all.size()));
  Integer digits(all.empty() ? std::string("0") : all);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  Rational r = scale >= 0 ? Rational(digits, pow10(static_cast<unsigned>(scale)))
                          : Rational(digits * pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-r) : r;
}

BigFloat::BigFloat(unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& value, unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_z(value_, value.backend().data(), MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_q(value_, value.backend().data(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Steal the limbs and leave `other` as a valid minimal-precision zero.
  value_[0] = other.value_[0];
  mpfr_init2(other.value_, MPFR_PREC_MIN);
  mpfr_set_zero(other.value_, 1);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::with_precision(unsigned bits) const {
  BigFloat r(bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

std::string BigFloat::str(int significant_digits) const {
  std::unique_ptr<char, void (*)(char*)> buf(nullptr, mpfr_free_str);
  char* raw_buf = nullptr;
  std::string fmt = "%." + std::to_string(significant_digits) + "Rg";
  mpfr_asprintf(&raw_buf, fmt.c_str(), value_);
  buf.reset(raw_buf);
  return std::string(buf.get());
}

namespace {

// Grows `target` to at least `bits` without losing its value.
void widen(mpfr_t target, mpfr_prec_t bits) {
  if (mpfr_get_prec(target) < bits) mpfr_prec_round(target, bits, MPFR_RNDN);
}

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  widen(value_, mpfr_get_prec(rhs.value_));
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  widen(value_, mpfr_get_prec(rhs.value_));
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  widen(value_, mpfr_get_prec(rhs.value_));
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  widen(value_, mpfr_get_prec(rhs.value_));
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define QGS_UNARY(name, call)          \
  BigFloat name(const BigFloat& x) {   \
    BigFloat r(x.precision());         \
    call(r.value_, x.value_, MPFR_RNDN); \
    return r;                          \
  }

QGS_UNARY(abs, mpfr_abs)
QGS_UNARY(sqrt, mpfr_sqrt)
QGS_UNARY(log, mpfr_log)
QGS_UNARY(exp, mpfr_exp)
QGS_UNARY(sinh, mpfr_sinh)
QGS_UNARY(cosh, mpfr_cosh)
QGS_UNARY(coth, mpfr_coth)

#undef QGS_UNARY

BigFloat pow(const BigFloat& base, const BigFloat& exponent) {
  BigFloat r(std::max(base.precision(), exponent.precision()));
  mpfr_pow(r.value_, base.value_, exponent.value_, MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& base, long exponent) {
  BigFloat r(base.precision());
  mpfr_pow_si(r.value_, base.value_, exponent, MPFR_RNDN);
  return r;
}

BigFloat root(const BigFloat& x, unsigned long n) {
  BigFloat r(x.precision());
#if MPFR_VERSION_MAJOR >= 4
  mpfr_rootn_ui(r.value_, x.value_, n, MPFR_RNDN);
#else
  mpfr_root(r.value_, x.value_, n, MPFR_RNDN);
#endif
  return r;
}

}  // namespace qgs
