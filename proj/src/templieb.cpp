#include "qgs/templieb.hpp"

#include "qgs/errors.hpp"
#include "qgs/fusion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace qgs {

namespace {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
Eigen::Matrix<S, 4, 4> cup_projector(S q) {
  Eigen::Matrix<S, 4, 1> w;
  w << S(0), std::sqrt(q), -S(1) / std::sqrt(q), S(0);
  return w * w.transpose();
}

// X <- e_i X on an n-strand chain; only the 4 x 4 block on strands (i, i+1) acts.
template <class S>
void apply_cup(const Eigen::Matrix<S, 4, 4>& E, unsigned n, unsigned i, Mat<S>& X) {
  const std::size_t lo = std::size_t{1} << (n - i - 1);
  const std::size_t block = 4 * lo;
  const std::size_t rows = std::size_t{1} << n;
  Eigen::Matrix<S, 4, Eigen::Dynamic> tmp(4, X.cols());
  for (std::size_t base = 0; base < rows; base += block) {
    for (std::size_t c = 0; c < lo; ++c) {
      for (int p = 0; p < 4; ++p) tmp.row(p) = X.row(static_cast<Eigen::Index>(base + p * lo + c));
      tmp = (E * tmp).eval();
      for (int p = 0; p < 4; ++p) X.row(static_cast<Eigen::Index>(base + p * lo + c)) = tmp.row(p);
    }
  }
}

template <class S>
std::vector<S> q_numbers(S q, unsigned count) {
  // [0], [1], ..., [count]
  std::vector<S> out(count + 1);
  S Nq = q + S(1) / q;
  out[0] = 0;
  if (count >= 1) out[1] = 1;
  for (unsigned k = 2; k <= count; ++k) out[k] = Nq * out[k - 1] - out[k - 2];
  return out;
}

// Orders the columns of an orthonormal basis of im p_n by weight sector and
// fixes the sign so the largest-magnitude entry is positive.
template <class S>
Mat<S> canonical_basis(const Mat<S>& B, unsigned n) {
  const Eigen::Index rows = B.rows();
  Mat<S> out = Mat<S>::Zero(rows, n + 1);
  for (unsigned j = 0; j <= n; ++j) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index r = 0; r < rows; ++r)
      if (static_cast<unsigned>(std::popcount(static_cast<unsigned long>(r))) == j) idx.push_back(r);
    Mat<S> P(static_cast<Eigen::Index>(idx.size()), B.cols());
    for (std::size_t t = 0; t < idx.size(); ++t) P.row(static_cast<Eigen::Index>(t)) = B.row(idx[t]);
    // The weight-j slice of im p_n is one-dimensional: take the top right singular vector.
    Eigen::SelfAdjointEigenSolver<Mat<S>> eig(P.transpose() * P);
    Eigen::Matrix<S, Eigen::Dynamic, 1> c = eig.eigenvectors().col(B.cols() - 1);
    Eigen::Matrix<S, Eigen::Dynamic, 1> v = Eigen::Matrix<S, Eigen::Dynamic, 1>::Zero(rows);
    Eigen::Matrix<S, Eigen::Dynamic, 1> slice = P * c;
    for (std::size_t t = 0; t < idx.size(); ++t) v(idx[t]) = slice(static_cast<Eigen::Index>(t));
    v /= v.norm();
    S vmax = v.cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (std::abs(v(r)) >= vmax * S(1 - 1e-9)) {
        if (v(r) < 0) v = -v;
        break;
      }
    }
    out.col(j) = v;
  }
  return out;
}

template <class S>
struct JWBuild {
  Mat<S> basis;
  double separation = 1;
};

// Wenzl recursion p_{m+1} = p_m (x) 1 - ([m]/[m+1]) (p_m (x) 1) e_m (p_m (x) 1),
// carried out on C = B_m (x) I_2 so only 2(m+1)-dimensional problems are solved.
template <class S>
JWBuild<S> build_jw(S q, unsigned n) {
  JWBuild<S> out;
  const auto E = cup_projector<S>(q);
  const auto qn = q_numbers<S>(q, n + 1);
  Mat<S> B = Mat<S>::Identity(2, 2);
  for (unsigned m = 1; m < n; ++m) {
    const Eigen::Index rows = B.rows(), cols = B.cols();
    Mat<S> C = Mat<S>::Zero(2 * rows, 2 * cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) {
        C(2 * r, 2 * c) = B(r, c);
        C(2 * r + 1, 2 * c + 1) = B(r, c);
      }
    Mat<S> EC = C;
    apply_cup<S>(E, m + 1, m, EC);
    Mat<S> M = Mat<S>::Identity(2 * cols, 2 * cols) - (qn[m] / qn[m + 1]) * (C.transpose() * EC);
    M = (M + M.transpose()).eval() / S(2);
    Eigen::SelfAdjointEigenSolver<Mat<S>> eig(M);
    const Eigen::Index keep = static_cast<Eigen::Index>(m) + 2;
    const Eigen::Index drop = 2 * cols - keep;
    // Eigenvalues ascend: the top `keep` are ~1, the rest ~0.
    S gap = eig.eigenvalues()(drop) - (drop > 0 ? eig.eigenvalues()(drop - 1) : S(0));
    out.separation = std::min(out.separation, static_cast<double>(gap));
    B = C * eig.eigenvectors().rightCols(keep);
  }
  out.basis = canonical_basis<S>(B, n);
  return out;
}

double qn_double(double q, unsigned k) { return q_numbers<double>(q, k)[k]; }

JWResiduals jw_residuals(const Matrix& B, double q, unsigned n) {
  JWResiduals r;
  r.orthonormality = (B.transpose() * B - Matrix::Identity(n + 1, n + 1)).norm();
  const auto E = cup_projector<double>(q);
  for (unsigned i = 1; i < n; ++i) {
    Matrix X = B;
    apply_cup<double>(E, n, i, X);
    r.annihilation = std::max(r.annihilation, X.norm());
  }
  double tr = 0;
  for (Eigen::Index row = 0; row < B.rows(); ++row) {
    int j = std::popcount(static_cast<unsigned long>(row));
    tr += B.row(row).squaredNorm() * std::pow(q, 2 * j - static_cast<int>(n));
  }
  r.trace_error = std::abs(tr - qn_double(q, n + 1));
  return r;
}

std::mutex cache_mutex;
std::map<std::tuple<std::uint64_t, unsigned, bool>, std::shared_ptr<const JWProjection>> jw_cache;
std::map<std::tuple<std::uint64_t, unsigned, unsigned, unsigned, bool>, std::shared_ptr<const FusionIsometry>>
    iso_cache;

std::uint64_t q_key(double q) {
  std::uint64_t k;
  std::memcpy(&k, &q, sizeof k);
  return k;
}

void check_strands(unsigned n, const TLConfig& config) {
  if (n < 1) throw DomainError("need at least one strand");
  if (n > config.max_strands) {
    throw ResourceError(std::to_string(n) + " strands exceed the configured maximum of " +
                        std::to_string(config.max_strands));
  }
}

}  // namespace

void TLRep::apply(unsigned i, Matrix& X) const {
  if (i < 1 || i >= n) throw DomainError("generator index out of range");
  apply_cup<double>(E, n, i, X);
}

Matrix TLRep::generator(unsigned i) const {
  Matrix X = Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  apply(i, X);
  return X;
}

TLRep tl_rep(const QParameter& param, unsigned n, const TLConfig& config) {
  check_strands(n, config);
  TLRep rep;
  rep.n = n;
  rep.q = param.q_double();
  rep.delta = rep.q + 1.0 / rep.q;
  rep.E = cup_projector<double>(rep.q);
  return rep;
}

TLResiduals tl_relations(const TLRep& rep) {
  TLResiduals res;
  const unsigned n = rep.n;
  const Matrix I = Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  std::vector<Matrix> e(n);
  for (unsigned i = 1; i < n; ++i) e[i] = rep.generator(i);
  for (unsigned i = 1; i < n; ++i) {
    Matrix sq = e[i];
    rep.apply(i, sq);
    res.idempotent = std::max(res.idempotent, (sq - rep.delta * e[i]).norm());
    for (unsigned j = 1; j < n; ++j) {
      unsigned d = i > j ? i - j : j - i;
      if (d == 1) {
        Matrix x = e[i];
        rep.apply(j, x);
        rep.apply(i, x);
        res.braid = std::max(res.braid, (x - e[i]).norm());
      } else if (d >= 2 && i < j) {
        Matrix a = e[j], b = e[i];
        rep.apply(i, a);
        rep.apply(j, b);
        res.commute = std::max(res.commute, (a - b).norm());
      }
    }
  }
  return res;
}

double JWProjection::quantum_trace() const {
  double tr = 0;
  for (Eigen::Index row = 0; row < basis.rows(); ++row) {
    int j = std::popcount(static_cast<unsigned long>(row));
    tr += basis.row(row).squaredNorm() * std::pow(q, 2 * j - static_cast<int>(n));
  }
  return tr;
}

std::shared_ptr<const JWProjection> jones_wenzl(const QParameter& param, unsigned n, const TLConfig& config) {
  check_strands(n, config);
  const double q = param.q_double();
  const auto key = std::make_tuple(q_key(q), n, config.force_extended);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = jw_cache.find(key); it != jw_cache.end()) return it->second;
  }

  auto jw = std::make_shared<JWProjection>();
  jw->n = n;
  jw->q = q;
  auto within = [&](const JWResiduals& r) {
    return r.orthonormality <= config.jw_tolerance && r.annihilation <= config.jw_tolerance &&
           r.separation >= 0.5 && r.trace_error <= config.trace_tolerance * std::max(1.0, qn_double(q, n + 1));
  };
  bool ok = false;
  if (!config.force_extended) {
    JWBuild<double> b = build_jw<double>(q, n);
    jw->basis = b.basis;
    jw->residuals = jw_residuals(jw->basis, q, n);
    jw->residuals.separation = b.separation;
    ok = within(jw->residuals);
  }
  if (!ok) {
    JWBuild<long double> b = build_jw<long double>(param.q().to_long_double(), n);
    jw->basis = b.basis.cast<double>();
    jw->residuals = jw_residuals(jw->basis, q, n);
    jw->residuals.separation = b.separation;
    jw->extended_precision = true;
    if (!within(jw->residuals)) {
      const auto& r = jw->residuals;
      double worst = std::max({r.orthonormality, r.annihilation, r.trace_error, 1.0 - r.separation});
      throw NumericalDegradation("Jones-Wenzl projection p_" + std::to_string(n) + " failed its invariants", worst);
    }
  }

  std::lock_guard<std::mutex> lock(cache_mutex);
  // A concurrent builder may have published first; both values are identical.
  return jw_cache.emplace(key, std::move(jw)).first->second;
}

Vector q_weights(double q, unsigned alpha) {
  Vector w(alpha + 1);
  for (unsigned j = 0; j <= alpha; ++j) w(j) = std::pow(q, 2.0 * j - alpha);
  return w;
}

Matrix q_matrix(const QParameter& param, unsigned alpha, const TLConfig& config) {
  auto jw = jones_wenzl(param, std::max(alpha, 1u), config);
  if (alpha == 0) return Matrix::Identity(1, 1);
  const double q = jw->q;
  Matrix QB = jw->basis;
  for (Eigen::Index row = 0; row < QB.rows(); ++row) {
    int j = std::popcount(static_cast<unsigned long>(row));
    QB.row(row) *= std::pow(q, 2 * j - static_cast<int>(alpha));
  }
  return jw->basis.transpose() * QB;
}

namespace {

// Image basis of p_n, with p_0 the 1 x 1 identity on the empty chain.
Matrix image_basis(const QParameter& param, unsigned n, const TLConfig& config) {
  if (n == 0) return Matrix::Identity(1, 1);
  return jones_wenzl(param, n, config)->basis;
}

// m nested cups on 2m strands: strand i pairs with strand 2m+1-i.
Vector nested_cups(double q, unsigned m) {
  const std::size_t dim = std::size_t{1} << (2 * m);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  const double a = std::sqrt(q), b = -1.0 / std::sqrt(q);
  for (std::size_t x = 0; x < dim; ++x) {
    double val = 1;
    for (unsigned i = 1; i <= m && val != 0; ++i) {
      unsigned left = (x >> (2 * m - i)) & 1u;
      unsigned right = (x >> (i - 1)) & 1u;
      if (left == 0 && right == 1) val *= a;
      else if (left == 1 && right == 0) val *= b;
      else val = 0;
    }
    v(static_cast<Eigen::Index>(x)) = val;
  }
  return v;
}

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

}  // namespace

Matrix FusionIsometry::chain(const QParameter& param, const TLConfig& config) const {
  return kron(image_basis(param, alpha, config), image_basis(param, beta, config)) * compressed;
}

std::shared_ptr<const FusionIsometry> fusion_isometry(const QParameter& param, unsigned alpha, unsigned beta,
                                                      unsigned gamma, const TLConfig& config) {
  if (!admissible(alpha, beta, gamma)) {
    throw DomainError(std::to_string(gamma) + " does not occur in " + std::to_string(alpha) + " (x) " +
                      std::to_string(beta));
  }
  if (alpha + beta > config.max_strands) {
    throw ResourceError("alpha + beta exceeds the configured strand maximum");
  }
  const double q = param.q_double();
  const auto key = std::make_tuple(q_key(q), alpha, beta, gamma, config.force_extended);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = iso_cache.find(key); it != iso_cache.end()) return it->second;
  }

  const unsigned m = (alpha + beta - gamma) / 2;
  const unsigned head = alpha - m, tail = beta - m;  // through-strands on each side
  const Matrix Ba = image_basis(param, alpha, config);
  const Matrix Bb = image_basis(param, beta, config);
  const Matrix Bg = image_basis(param, gamma, config);
  const Vector cups = nested_cups(q, m);
  const std::size_t cup_dim = std::size_t{1} << (2 * m);
  const std::size_t tail_dim = std::size_t{1} << tail;
  const Eigen::Index dim_a = Ba.rows(), dim_b = Bb.rows();

  Matrix Wc((alpha + 1) * (beta + 1), gamma + 1);
  for (unsigned c = 0; c <= gamma; ++c) {
    // Cup insertion: y[P | cup | S] = b[P | S] * cups[cup], viewed as a 2^alpha x 2^beta array.
    Matrix Y = Matrix::Zero(dim_a, dim_b);
    for (Eigen::Index x = 0; x < Bg.rows(); ++x) {
      double bx = Bg(x, c);
      if (bx == 0) continue;
      std::size_t P = static_cast<std::size_t>(x) >> tail;
      std::size_t S = static_cast<std::size_t>(x) & (tail_dim - 1);
      for (std::size_t cup = 0; cup < cup_dim; ++cup) {
        double cv = cups(static_cast<Eigen::Index>(cup));
        if (cv == 0) continue;
        std::size_t y = (((P << (2 * m)) | cup) << tail) | S;
        Y(static_cast<Eigen::Index>(y >> beta), static_cast<Eigen::Index>(y & ((std::size_t{1} << beta) - 1))) +=
            bx * cv;
      }
    }
    Matrix core = Ba.transpose() * Y * Bb;  // (B_a (x) B_b)^T y, row-major over (a, b)
    for (Eigen::Index a = 0; a <= alpha; ++a)
      for (Eigen::Index b = 0; b <= beta; ++b) Wc(a * (beta + 1) + b, c) = core(a, b);
  }
  (void)head;

  auto iso = std::make_shared<FusionIsometry>();
  iso->alpha = alpha;
  iso->beta = beta;
  iso->gamma = gamma;
  iso->q = q;
  Matrix G = Wc.transpose() * Wc;
  iso->scale = G.trace() / (gamma + 1);
  if (!(iso->scale > 0)) throw ConsistencyError("fusion isometry: cup insertion was annihilated");
  iso->scalar_residual = (G / iso->scale - Matrix::Identity(gamma + 1, gamma + 1)).norm();
  if (iso->scalar_residual > 1e-8) {
    throw ConsistencyError("fusion isometry " + std::to_string(alpha) + "," + std::to_string(beta) + "->" +
                           std::to_string(gamma) + ": W^T W is not a multiple of the identity (residual " +
                           std::to_string(iso->scalar_residual) + ")");
  }
  iso->compressed = Wc / std::sqrt(iso->scale);

  std::lock_guard<std::mutex> lock(cache_mutex);
  return iso_cache.emplace(key, std::move(iso)).first->second;
}

namespace {

double op_norm(const Matrix& M) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

// ||A - e^{i theta} B|| through the real form [[X, -Y], [Y, X]] of X + iY.
double rotated_norm(const Matrix& A, const Matrix& B, double theta) {
  const Eigen::Index r = A.rows(), c = A.cols();
  Matrix X = A - std::cos(theta) * B;
  Matrix Y = -std::sin(theta) * B;
  Matrix R(2 * r, 2 * c);
  R << X, -Y, Y, X;
  return op_norm(R);
}

struct PhaseMin {
  double norm;
  double theta;
};

PhaseMin minimize_phase(const Matrix& A, const Matrix& B) {
  constexpr int grid = 72;
  constexpr double two_pi = 6.283185307179586;
  PhaseMin best{op_norm(A - B), 0.0};
  if (double v = op_norm(A + B); v < best.norm) best = {v, two_pi / 2};
  int best_k = -1;
  for (int k = 0; k < grid; ++k) {
    double th = two_pi * k / grid;
    double v = rotated_norm(A, B, th);
    if (v < best.norm - 1e-15) {
      best = {v, th};
      best_k = k;
    }
  }
  if (best_k >= 0) {
    // Golden-section refinement inside the bracketing grid cells.
    double lo = two_pi * (best_k - 1) / grid, hi = two_pi * (best_k + 1) / grid;
    const double g = 0.6180339887498949;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = rotated_norm(A, B, x1), f2 = rotated_norm(A, B, x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = rotated_norm(A, B, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = rotated_norm(A, B, x2);
      }
    }
    double th = 0.5 * (lo + hi);
    double v = rotated_norm(A, B, th);
    if (v < best.norm) best = {v, th};
  }
  return best;
}

bool in_fusion(long a, long b, long c) {
  return a >= 0 && b >= 0 && c >= 0 &&
         admissible(static_cast<unsigned>(a), static_cast<unsigned>(b), static_cast<unsigned>(c));
}

struct Composites {
  Matrix c1, c2;
};

Composites pentagon_composites(const QParameter& param, unsigned alpha, unsigned r, unsigned s, int k, int l,
                               const TLConfig& config) {
  const long a = alpha, ak = a + k, al = a + l, akl = a + k + l;
  if (!in_fusion(s, a, ak) || !in_fusion(a, r, al) || !in_fusion(s, al, akl) || !in_fusion(ak, r, akl)) {
    throw DomainError("pentagon: labels (alpha=" + std::to_string(alpha) + ", r=" + std::to_string(r) +
                      ", s=" + std::to_string(s) + ", k=" + std::to_string(k) + ", l=" + std::to_string(l) +
                      ") are not admissible");
  }
  if (s + alpha + r > config.max_strands) throw ResourceError("s + alpha + r exceeds the configured strand maximum");
  auto v_ar = fusion_isometry(param, alpha, r, static_cast<unsigned>(al), config);
  auto v_s_al = fusion_isometry(param, s, static_cast<unsigned>(al), static_cast<unsigned>(akl), config);
  auto v_sa = fusion_isometry(param, s, alpha, static_cast<unsigned>(ak), config);
  auto v_ak_r = fusion_isometry(param, static_cast<unsigned>(ak), r, static_cast<unsigned>(akl), config);
  Composites out;
  out.c1 = kron(Matrix::Identity(s + 1, s + 1), v_ar->compressed) * v_s_al->compressed;
  out.c2 = kron(v_sa->compressed, Matrix::Identity(r + 1, r + 1)) * v_ak_r->compressed;
  return out;
}

}  // namespace

PentagonResult pentagon_defect(const QParameter& param, unsigned alpha, unsigned r, unsigned s, int k, int l,
                               bool align_phase, const TLConfig& config) {
  Composites c = pentagon_composites(param, alpha, r, s, k, l, config);
  PentagonResult res;
  res.raw_defect = op_norm(c.c1 - c.c2);
  if (align_phase) {
    PhaseMin pm = minimize_phase(c.c1, c.c2);
    res.defect = std::min(pm.norm, res.raw_defect);
    res.phase = pm.norm < res.raw_defect ? pm.theta : 0.0;
  } else {
    res.defect = res.raw_defect;
  }
  const double q = param.q_double();
  res.bound = std::pow(q, static_cast<double>(alpha) + (static_cast<double>(k) - static_cast<double>(r)) / 2.0);
  res.constant = res.defect / res.bound;
  res.composite1 = std::move(c.c1);
  res.composite2 = std::move(c.c2);
  return res;
}

namespace {

// Row index (i_s, i_a, i_r) -> weight product q^{2j_s - s} q^{2j_a - a} q^{2j_r - r}.
Vector triple_weights(double q, unsigned s, unsigned a, unsigned r) {
  Vector ws = q_weights(q, s), wa = q_weights(q, a), wr = q_weights(q, r);
  Vector out((s + 1) * (a + 1) * (r + 1));
  Eigen::Index idx = 0;
  for (unsigned i = 0; i <= s; ++i)
    for (unsigned j = 0; j <= a; ++j)
      for (unsigned t = 0; t <= r; ++t) out(idx++) = ws(i) * wa(j) * wr(t);
  return out;
}

struct CoefficientDefect {
  double vector_ratio = 0;
  double coefficient_ratio = 0;
};

CoefficientDefect coefficient_defect(const QParameter& param, unsigned alpha, unsigned r, unsigned s, int k, int l,
                                     const TLConfig& config) {
  Composites c = pentagon_composites(param, alpha, r, s, k, l, config);
  const double q = param.q_double();
  const double qa = std::pow(q, static_cast<double>(alpha));
  const unsigned target = static_cast<unsigned>(static_cast<long>(alpha) + k + l);
  const Vector wt = q_weights(q, target);
  const Vector w = triple_weights(q, s, alpha, r);
  CoefficientDefect out;

  // Vector level: D = c1 - z c2 with the real sign z that best aligns them.
  double z = (c.c2.transpose() * c.c1).trace() >= 0 ? 1.0 : -1.0;
  Matrix D = c.c1 - z * c.c2;
  for (Eigen::Index row = 0; row < D.rows(); ++row) {
    // D^*(Q m (x) Q i (x) Q m') = w(row) D^* e_row; the norm product is w(row).
    out.vector_ratio = std::max(out.vector_ratio, D.row(row).norm() / qa);
  }

  // Coefficient level: u_{xi, eta} with xi = A^* e, eta = A^* f has
  // ||u||_2 = ||(Q xi) eta^T||_HS, independent of the phase of A.
  const Eigen::Index rows = c.c1.rows();
  for (Eigen::Index e = 0; e < rows; ++e) {
    Vector xi1 = wt.cwiseProduct(c.c1.row(e).transpose());
    Vector xi2 = wt.cwiseProduct(c.c2.row(e).transpose());
    for (Eigen::Index f = 0; f < rows; ++f) {
      Matrix diff = xi1 * c.c1.row(f) - xi2 * c.c2.row(f);
      // ||c|| ||x|| ||a|| for unit basis vectors: weights of the first triple.
      double ratio = diff.norm() / (qa * w(e));
      out.coefficient_ratio = std::max(out.coefficient_ratio, ratio);
    }
  }
  return out;
}

}  // namespace

CommutatorEstimate commutator_estimate(const QParameter& param, unsigned alpha, unsigned r, unsigned s, int k, int l,
                                       const TLConfig& config) {
  if (r != 1 || s != 1) throw DomainError("commutator_estimate covers r = s = 1");
  CommutatorEstimate est;
  est.alpha = alpha;
  est.k = k;
  est.l = l;
  est.q_alpha = std::pow(param.q_double(), static_cast<double>(alpha));
  CoefficientDefect d = coefficient_defect(param, alpha, r, s, k, l, config);
  est.vector_ratio = d.vector_ratio;
  est.coefficient_ratio = d.coefficient_ratio;
  if (k == -1 && l == -1) {
    est.bound_constant = 6;
    for (auto [kk, ll] : {std::pair{1, 1}, std::pair{1, -1}, std::pair{-1, 1}}) {
      const long a = alpha;
      if (!in_fusion(s, a, a + kk) || !in_fusion(a, r, a + ll) || !in_fusion(s, a + ll, a + kk + ll) ||
          !in_fusion(a + kk, r, a + kk + ll))
        continue;
      est.assembled_ratio += coefficient_defect(param, alpha, r, s, kk, ll, config).coefficient_ratio;
    }
    est.within_bound = est.coefficient_ratio <= 6 && est.assembled_ratio <= 6;
  } else {
    est.bound_constant = 2;
    est.within_bound = est.coefficient_ratio <= 2;
  }
  return est;
}

double resolution_of_identity(const QParameter& param, unsigned alpha, unsigned beta, const TLConfig& config) {
  if (alpha + beta > config.max_strands) throw ResourceError("alpha + beta exceeds the configured strand maximum");
  const Matrix Bab = kron(image_basis(param, alpha, config), image_basis(param, beta, config));
  Matrix S = -Bab * Bab.transpose();
  for (unsigned gamma : fuse(alpha, beta)) {
    Matrix V = fusion_isometry(param, alpha, beta, gamma, config)->chain(param, config);
    S += V * V.transpose();
  }
  return S.norm();
}

void clear_templieb_cache() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  jw_cache.clear();
  iso_cache.clear();
}

}  // namespace qgs
