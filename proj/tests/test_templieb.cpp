#include "qgs/errors.hpp"
#include "qgs/fusion.hpp"
#include "qgs/templieb.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qgs;

namespace {

Matrix kron2(const Matrix& A) {
  Matrix K = Matrix::Zero(A.rows() * 2, A.cols() * 2);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      K(2 * i, 2 * j) = A(i, j);
      K(2 * i + 1, 2 * j + 1) = A(i, j);
    }
  return K;
}

double qn(unsigned n, double q) { return (std::pow(q, -double(n)) - std::pow(q, n)) / (1 / q - q); }

// Wenzl: p_{n+1} = p_n - ([n]/[n+1]) p_n e_n p_n, built densely.
std::vector<Matrix> wenzl(const QParameter& p, unsigned n_max) {
  std::vector<Matrix> out{Matrix::Identity(1, 1), Matrix::Identity(2, 2)};
  for (unsigned n = 1; n < n_max; ++n) {
    Matrix P = kron2(out[n]);
    Matrix e = tl_rep(p, n + 1).generator(n);
    out.push_back(P - (qn(n, p.q_double()) / qn(n + 1, p.q_double())) * P * e * P);
  }
  return out;
}

}  // namespace

TEST_CASE("Temperley-Lieb relations in the qubit chain") {
  for (const char* q : {"0.3", "0.5", "1"}) {
    QParameter p = QParameter::from_string(q, 3);
    for (unsigned n = 2; n <= 7; ++n) {
      TLRep rep = tl_rep(p, n);
      CHECK(rep.delta == Catch::Approx(p.q_double() + 1 / p.q_double()));
      TLResiduals r = tl_relations(rep);
      CHECK(r.idempotent <= 1e-12);
      CHECK(r.braid <= 1e-12);
      CHECK(r.commute <= 1e-12);
    }
  }
}

TEST_CASE("apply agrees with the dense generator") {
  TLRep rep = tl_rep(QParameter::from_string("0.4", 3), 5);
  Matrix X = Matrix::Random(32, 3);
  for (unsigned i = 1; i < 5; ++i) {
    Matrix Y = X;
    rep.apply(i, Y);
    CHECK((Y - rep.generator(i) * X).norm() <= 1e-13);
  }
}

TEST_CASE("Jones-Wenzl projections match the dense Wenzl recursion") {
  for (const char* q : {"0.3", "0.5", "0.9"}) {
    QParameter p = QParameter::from_string(q, 3);
    auto ref = wenzl(p, 8);
    for (unsigned n = 1; n <= 8; ++n) {
      auto jw = jones_wenzl(p, n);
      CHECK((jw->matrix() - ref[n]).norm() <= 1e-9);
      CHECK(jw->basis.cols() == n + 1);
    }
  }
}

TEST_CASE("Jones-Wenzl residuals and quantum trace") {
  for (const char* q : {"0.3", "0.5"}) {
    QParameter p = QParameter::from_string(q, 3);
    for (unsigned n = 1; n <= 10; ++n) {
      auto jw = jones_wenzl(p, n);
      CHECK(jw->residuals.orthonormality <= 1e-9);
      CHECK(jw->residuals.annihilation <= 1e-9);
      CHECK(jw->residuals.trace_error <= 1e-8);
      CHECK(jw->quantum_trace() == Catch::Approx(qn(n + 1, p.q_double())).epsilon(1e-12));
    }
  }
}

TEST_CASE("image basis columns are weight vectors with positive leading entry") {
  QParameter p = QParameter::from_string("0.5", 3);
  auto jw = jones_wenzl(p, 4);
  for (Eigen::Index j = 0; j <= 4; ++j) {
    Eigen::Index arg;
    jw->basis.col(j).cwiseAbs().maxCoeff(&arg);
    CHECK(jw->basis(arg, j) > 0);
    for (Eigen::Index x = 0; x < 16; ++x)
      if (std::abs(jw->basis(x, j)) > 1e-12) CHECK(std::popcount(static_cast<unsigned>(x)) == j);
  }
  Vector w = q_weights(0.5, 3);
  CHECK(w(0) == Catch::Approx(8.0));
  CHECK(w(3) == Catch::Approx(0.125));
  Matrix Q = q_matrix(p, 3);
  CHECK((Q - Matrix(w.asDiagonal())).norm() <= 1e-12);
}

TEST_CASE("fusion isometries are isometric intertwiners") {
  QParameter p = QParameter::from_string("0.5", 3);
  for (unsigned a = 0; a <= 4; ++a)
    for (unsigned b = 0; b <= 4; ++b)
      for (unsigned g : fuse(a, b)) {
        auto V = fusion_isometry(p, a, b, g);
        CHECK(V->compressed.rows() == (a + 1) * (b + 1));
        CHECK((V->compressed.transpose() * V->compressed - Matrix::Identity(g + 1, g + 1)).norm() <= 1e-10);
        CHECK(V->scalar_residual <= 1e-10);
        // image is killed by every cap across the junction-free strands of a and b
        Matrix C = V->chain(p);
        if (a >= 2) {
          TLRep rep = tl_rep(p, a + b);
          for (unsigned i = 1; i < a; ++i) {
            Matrix Y = C;
            rep.apply(i, Y);
            CHECK(Y.norm() <= 1e-10);
          }
        }
      }
}

TEST_CASE("fusion isometries resolve the identity") {
  for (const char* q : {"0.3", "0.5"}) {
    QParameter p = QParameter::from_string(q, 3);
    for (unsigned a = 0; a <= 8; ++a)
      for (unsigned b = 0; a + b <= 8; ++b) CHECK(resolution_of_identity(p, a, b) <= 1e-8);
  }
}

TEST_CASE("fusion isometry errors") {
  QParameter p = QParameter::from_string("0.5", 3);
  CHECK_THROWS_AS(fusion_isometry(p, 2, 2, 3), DomainError);
  CHECK_THROWS_AS(fusion_isometry(p, 10, 10, 20), ResourceError);
  TLConfig small;
  small.max_strands = 4;
  CHECK_THROWS_AS(jones_wenzl(p, 6, small), ResourceError);
}

TEST_CASE("pentagon defect decays like q^alpha for k = -1") {
  for (const char* q : {"0.3", "0.5"}) {
    QParameter p = QParameter::from_string(q, 3);
    std::vector<double> xs, ys;
    for (unsigned a = 2; a <= 8; ++a) {
      PentagonResult r = pentagon_defect(p, a, 1, 1, -1, 1, true);
      CHECK(r.constant <= 2.0);
      CHECK(r.defect <= r.raw_defect + 1e-15);
      CHECK(r.bound == Catch::Approx(std::pow(p.q_double(), a - 1.0)));
      xs.push_back(a);
      ys.push_back(std::log(r.defect));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / xs.size(), my += ys[i] / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    CHECK(sxy / sxx == Catch::Approx(std::log(p.q_double())).epsilon(0.05));
  }
}

TEST_CASE("pentagon composites agree when the target has multiplicity one") {
  QParameter p = QParameter::from_string("0.5", 3);
  for (unsigned a = 2; a <= 6; ++a) CHECK(pentagon_defect(p, a, 1, 1, 1, 1, true).defect <= 1e-12);
}

TEST_CASE("commutator estimate respects its constants") {
  for (const char* q : {"0.3", "0.5"}) {
    QParameter p = QParameter::from_string(q, 3);
    for (unsigned a = 2; a <= 6; ++a) {
      for (auto [k, l] : {std::pair{1, 1}, {1, -1}, {-1, 1}}) {
        CommutatorEstimate e = commutator_estimate(p, a, 1, 1, k, l);
        CHECK(e.bound_constant == 2);
        CHECK(e.within_bound);
      }
      CommutatorEstimate c = commutator_estimate(p, a, 1, 1, -1, -1);
      CHECK(c.bound_constant == 6);
      CHECK(c.assembled_ratio <= 6);
      CHECK(c.within_bound);
    }
  }
  CHECK_THROWS_AS(commutator_estimate(QParameter::from_string("0.5", 3), 3, 2, 1, 1, 1), DomainError);
}
