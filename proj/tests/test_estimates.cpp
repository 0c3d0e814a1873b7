#include "qgs/errors.hpp"
#include "qgs/estimates.hpp"
#include "qgs/spectrum.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qgs;

TEST_CASE("gap spot value at q = 1/2") {
  GapEvaluation e = gap(QParameter::from_string("0.5", 3), 5, 5, 1);
  CHECK(e.lhs.to_double() == Catch::Approx(0.003179273).epsilon(1e-6));
  CHECK(e.rhs.to_double() == Catch::Approx(0.018310547).epsilon(1e-6));
  CHECK(e.ratio == Catch::Approx(0.1736).epsilon(1e-3));
  CHECK(gap(QParameter::from_string("0.5", 3), 5, 3, 0).ratio == 0.0);
}

TEST_CASE("gap numerator matches exact rational arithmetic") {
  const Rational Nq(5, 2);
  QParameter p = QParameter::from_string("1/2", 3);
  for (unsigned a = 0; a < 20; ++a)
    for (unsigned b = 0; b < 20; ++b)
      for (int g = -5; g <= 5; ++g) {
        if (long(a) + g < 0 || long(b) - g < 0 || unsigned(std::abs(g)) > std::max(a, b)) continue;
        Rational exact = delta_exact(Nq, a + g) - delta_exact(Nq, a) - delta_exact(Nq, b) + delta_exact(Nq, b - g);
        if (exact < 0) exact = -exact;
        GapEvaluation e = gap(p, a, b, g);
        double ref = exact.convert_to<double>();
        CHECK(e.lhs.to_double() == Catch::Approx(ref).epsilon(1e-14).margin(1e-30));
      }
}

TEST_CASE("gap numerator is symmetric under (a, b) -> (b - g, a + g)") {
  QParameter p = QParameter::from_string("0.3", 3);
  for (unsigned a = 0; a < 20; ++a)
    for (unsigned b = 0; b < 20; ++b)
      for (int g = -5; g <= 5; ++g) {
        long a2 = long(b) - g, b2 = long(a) + g;
        if (a2 < 0 || b2 < 0 || long(a) + g < 0 || long(b) - g < 0) continue;
        if (unsigned(std::abs(g)) > std::max(a, b) || std::labs(g) > std::max(a2, b2)) continue;
        BigFloat x = gap(p, a, b, g).lhs, y = gap(p, unsigned(a2), unsigned(b2), g).lhs;
        CHECK(std::abs((x - y).to_double()) <= 1e-30 * std::max(1.0, x.to_double()));
      }
}

TEST_CASE("gap rejects labels outside the domain") {
  QParameter p = QParameter::from_string("0.5", 3);
  CHECK_THROWS_AS(gap(p, 1, 5, -2), DomainError);
  CHECK_THROWS_AS(gap(p, 5, 1, 2), DomainError);
  CHECK_THROWS_AS(gap(p, 1, 1, 3), DomainError);
}

TEST_CASE("precision grows with the index and with 1/q") {
  QParameter p = QParameter::from_string("0.5", 3);
  CHECK(gap_precision(p, 10) < gap_precision(p, 100));
  CHECK(gap_precision(QParameter::from_string("0.3", 3), 100) > gap_precision(p, 100));
  CHECK(gap_precision(p, 0) >= p.precision());
}

TEST_CASE("gap scan on a small grid") {
  GapScanReport r = gap_constant_scan(QParameter::from_string("0.5", 3), 40, 3);
  CHECK(r.finite);
  CHECK(r.cells > 0);
  CHECK(r.sup_ratio >= r.inner_sup);
  CHECK(r.sup_ratio >= r.outer_sup);
  CHECK(r.argmax.ratio == r.sup_ratio);
  CHECK_THROWS_AS(gap_constant_scan(QParameter::from_string("0.5", 3), 5, 1), DomainError);
}

TEST_CASE("HS certificate verdicts") {
  CHECK(hs_certificate(QParameter::kac(3), 0.1, 200).verdict == "finite");
  CHECK(hs_certificate(QParameter::kac(3), 0.0, 200).verdict == "divergent");
  CHECK(hs_certificate(QParameter::from_string("0.25", 3), 0.0, 200).verdict == "finite");
  CHECK_THROWS_AS(hs_certificate(QParameter::kac(3), 0.1, 10), DomainError);
  CHECK_THROWS_AS(hs_certificate(QParameter::kac(3), -1.0, 200), DomainError);
}

TEST_CASE("HS certificate series are consistent") {
  HSCertificate c = hs_certificate(QParameter::from_string("0.25", 3), 0.0, 60);
  REQUIRE(c.terms.size() == 61);
  double s = 0;
  for (std::size_t a = 0; a < c.terms.size(); ++a) {
    s += c.terms[a];
    CHECK(c.partial_sums[a] == Catch::Approx(s));
    CHECK(c.compressed_terms[a] <= c.terms[a]);
    if (a) CHECK(c.partial_sums[a] >= c.partial_sums[a - 1]);
  }
  CHECK(c.terms[0] == 4.0);  // n_0^2 (1 + 1)^2
  CHECK(c.param_key == "N=3;q=1/4");
}

TEST_CASE("regime classification") {
  Regime kac = regime_classify(QParameter::kac(3));
  CHECK(kac.kac);
  CHECK(kac.ighs);
  CHECK(!kac.ghs);
  Regime low = regime_classify(QParameter::from_string("0.25", 3));
  CHECK(!low.kac);
  CHECK(low.ghs);
  CHECK(!regime_classify(QParameter::from_string("0.5", 3)).ghs);
}

TEST_CASE("coefficient skeleton covers the shifted window") {
  QParameter p = QParameter::from_string("0.5", 3);
  auto cells = coefficient_skeleton(p, 6, 1, 1, 0.5);
  for (const auto& c : cells) {
    CHECK(c.beta >= 4);
    CHECK(c.beta <= 8);
    CHECK(std::abs(c.gamma) <= 1);
    CHECK(c.damping == Catch::Approx(std::exp(-0.5 * delta_double(p, c.beta))));
  }
  CHECK(cells.size() == 5 * 3);
  HSCoefficient h = hs_coefficient(p, 6, 6, 1, 0.0);
  CHECK(h.damping == 1.0);
  CHECK(h.step.to_double() == Catch::Approx(delta_double(p, 6) - delta_double(p, 5)));
}
