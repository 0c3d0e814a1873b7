#include "qgs/errors.hpp"
#include "qgs/fusion.hpp"
#include "qgs/spectrum.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qgs;

namespace {

// ((a+1) coth((a+1) s) - coth s) / (2 sinh s), s = log(1/q)
BigFloat hyperbolic(unsigned alpha, const BigFloat& q) {
  BigFloat s = -log(q);
  BigFloat a1(long(alpha + 1), q.precision());
  return (a1 * coth(a1 * s) - coth(s)) / (BigFloat(2L, q.precision()) * sinh(s));
}

}  // namespace

TEST_CASE("eigenvalue spot values") {
  CHECK(delta_exact(Rational(5, 2), 1) == Rational(2, 5));
  CHECK(delta_exact(Rational(5, 2), 2) == Rational(20, 21));
  QParameter p = QParameter::from_string("0.5", 3);
  CHECK(delta_double(p, 1) == Catch::Approx(0.4).epsilon(1e-15));
  CHECK(delta_double(p, 2) == Catch::Approx(20.0 / 21.0).epsilon(1e-15));
  CHECK(delta(p, 0).is_zero());
}

TEST_CASE("eigenvalues match the hyperbolic closed form") {
  for (const char* q : {"0.2", "0.5", "0.8", "q0"}) {
    QParameter p = QParameter::from_string(q, 3, 192);
    std::vector<BigFloat> table = delta_table(p, 300);
    for (unsigned a = 1; a <= 300; a += 7) {
      double ref = hyperbolic(a, p.q()).to_double();
      CHECK(table[a].to_double() == Catch::Approx(ref).epsilon(1e-12));
      CHECK(delta(p, a).to_double() == Catch::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("classical eigenvalues are a(a+2)/6") {
  QParameter p = QParameter::kac(2);
  for (unsigned a = 0; a <= 100; ++a) CHECK(delta_double(p, a) == Catch::Approx(a * (a + 2) / 6.0));
  CHECK_THROWS_AS(delta_asymptote(p), DomainError);
}

TEST_CASE("eigenvalues increase with gaps tending to the asymptote") {
  QParameter p = QParameter::from_string("0.5", 3, 256);
  auto t = delta_table(p, 400);
  for (unsigned a = 1; a <= 400; ++a) CHECK(t[a] > t[a - 1]);
  double lim = delta_asymptote(p).to_double();
  CHECK(lim == Catch::Approx(2.0 / 3.0));
  CHECK((t[400] - t[399]).to_double() == Catch::Approx(lim).epsilon(1e-12));
}

TEST_CASE("rational eigenvalues agree with floating ones") {
  QParameter p = QParameter::from_string("1/3", 4, 256);
  for (unsigned a = 0; a <= 40; ++a)
    CHECK(delta(p, a).to_double() == Catch::Approx(delta_exact(Rational(10, 3), a).convert_to<double>()).epsilon(1e-15));
}

TEST_CASE("spectral data carry n_a^2 multiplicities") {
  auto d = spectral_data(QParameter::kac(3), 5);
  REQUIRE(d.size() == 6);
  CHECK(d[3].n == 21);
  CHECK(d[3].multiplicity == 441);
}

TEST_CASE("semigroup coefficients: c(1) = 1 and generator by central difference") {
  for (const char* q : {"0.3", "0.5"}) {
    QParameter p = QParameter::from_string(q, 3, 256);
    const double lq = std::log(p.q_double()), qq = p.q_double();
    for (unsigned a : {1u, 5u, 20u}) {
      CHECK(semigroup_coeff(p, a, 1.0).to_double() == 1.0);
      BigFloat h(1e-12, 256), one(1L, 256);
      double fd = ((semigroup_coeff(p, a, one + h) - semigroup_coeff(p, a, one - h)) / (BigFloat(2L, 256) * h)).to_double();
      CHECK(fd == Catch::Approx(3 * (qq - 1 / qq) * lq * delta_double(p, a)).epsilon(1e-9));
    }
    CHECK(semigroup_coeff(p, 0, 0.4).to_double() == 1.0);
  }
  CHECK_THROWS_AS(semigroup_coeff(QParameter::kac(2), 1, 0.5), DomainError);
}

TEST_CASE("multiplier and resolvent") {
  QParameter p = QParameter::from_string("0.5", 3);
  CHECK(multiplier(p, 2, 0.0) == 1.0);
  CHECK(multiplier(p, 2, 1.5) == Catch::Approx(std::exp(-1.5 * 20.0 / 21.0)));
  CHECK_THROWS_AS(multiplier(p, 2, -1), DomainError);
  ResolventCoeff r = resolvent_coeff(p, 2, 0.1);
  CHECK(r.R + 0.1 * r.delta_eps == Catch::Approx(1.0));
  CHECK(r.delta_eps == Catch::Approx((20.0 / 21.0) / (1 + 2.0 / 21.0)));
  CHECK_THROWS_AS(resolvent_coeff(p, 2, 0.0), DomainError);
}

TEST_CASE("Cesaro means approach log(2) P'(0)") {
  CHECK(cesaro_limit([](double x) { return x; }, 100000) == Catch::Approx(std::log(2.0)).margin(1e-5));
  CHECK(cesaro_limit([](double x) { return x * x; }, 100000) == Catch::Approx(0.0).margin(1e-5));
  CHECK(cesaro_limit([](double x) { return std::exp(2 * x); }, 100000) ==
        Catch::Approx(2 * std::log(2.0)).margin(1e-4));
  CHECK_THROWS_AS(cesaro_limit([](double x) { return x; }, 0), DomainError);
}

TEST_CASE("Dirichlet form and gradient norm coincide") {
  QParameter p = QParameter::from_string("0.5", 3);
  SpectralVector xi{{{1, 1, 2}, {1.0, 1.0}}, {{2, 8, 8}, {0.0, 2.0}}, {{0, 1, 1}, {5.0, 0.0}}};
  double expected = 0.4 * 2.0 + (20.0 / 21.0) * 4.0;
  CHECK(dirichlet_form(p, xi) == Catch::Approx(expected));
  CHECK(gradient_norm(p, xi) == Catch::Approx(expected));
  CHECK(dirichlet_form(p, {}) == 0.0);
  CHECK_THROWS_AS(dirichlet_form(p, {{{1, 4, 1}, {1.0, 0.0}}}), InvalidVector);
  CHECK_THROWS_AS(dirichlet_form(p, {{{1, 0, 1}, {1.0, 0.0}}}), InvalidVector);
}

TEST_CASE("amenability: classical model satisfied, Kac N = 3 not") {
  AmenabilityOptions o;  // threshold 50 needs the default n = 10^6
  AmenabilityReport two = amenability_criterion(quantum_model(QParameter::kac(2)), o);
  CHECK(two.verdict == "satisfied");
  AmenabilityReport three = amenability_criterion(quantum_model(QParameter::kac(3)), o);
  CHECK(three.verdict == "not-satisfied");
  CHECK(three.liminf_estimate < 1.0);
  for (std::size_t i = 1; i < three.samples.size(); ++i) CHECK(three.samples[i].n > three.samples[i - 1].n);
}

TEST_CASE("amenability on explicit blocks") {
  AmenabilityOptions o;
  o.n_max = 1000;
  o.threshold = 1.0;
  // lambda_n = n: ratio n / log n grows without bound
  std::vector<std::pair<double, Integer>> blocks;
  for (unsigned i = 0; i < 1000; ++i) blocks.push_back({double(i), Integer(1)});
  CHECK(amenability_criterion(list_model(blocks), o).verdict == "satisfied");
  std::vector<std::pair<double, Integer>> flat{{0.0, Integer(1)}, {1.0, Integer(10000)}};
  CHECK(amenability_criterion(list_model(flat), o).verdict == "not-satisfied");
  std::vector<std::pair<double, Integer>> unsorted{{2.0, Integer(5)}, {1.0, Integer(5000)}};
  CHECK_THROWS_AS(amenability_criterion(list_model(unsorted), o), DomainError);
  CHECK_THROWS_AS(amenability_criterion(list_model({}), o), DomainError);
}
