#pragma once

#include "qgs/chebyshev.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace qgs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct TLConfig {
  unsigned max_strands = 14;
  double jw_tolerance = 1e-9;
  double trace_tolerance = 1e-8;
  /// Skip the double pass and build Jones-Wenzl bases in extended precision.
  bool force_extended = false;
};

/// Qubit-chain Temperley-Lieb generators. Strand 1 is the most significant
/// bit. e_i = |w><w| on strands (i, i+1), w = q^{1/2}|01> - q^{-1/2}|10>.
struct TLRep {
  unsigned n = 1;
  double q = 1;
  double delta = 2;  // <w|w> = q + 1/q
  Eigen::Matrix4d E;

  /// X <- e_i X, for 1 <= i < n, X with 2^n rows.
  void apply(unsigned i, Matrix& X) const;
  Matrix generator(unsigned i) const;  // dense 2^n x 2^n
};

TLRep tl_rep(const QParameter& param, unsigned n, const TLConfig& config = {});

struct TLResiduals {
  double idempotent = 0;  // max ||e_i^2 - delta e_i||
  double braid = 0;       // max ||e_i e_{i+-1} e_i - e_i||
  double commute = 0;     // max ||e_i e_j - e_j e_i||, |i-j| >= 2
};
/// Frobenius norms, which bound the operator norms from above.
TLResiduals tl_relations(const TLRep& rep);

struct JWResiduals {
  double orthonormality = 0;  // ||B^T B - I||, equal to ||p^2 - p||
  double annihilation = 0;    // max_i ||e_i p||
  double separation = 1;      // spectral gap between kept and dropped eigenvalues
  double trace_error = 0;     // |tr(Q^{(x)n} p) - [n+1]|
};

/// Jones-Wenzl projection p_n = B B^T with B an orthonormal basis of its
/// image. Column j spans the weight-j sector (j ones), so Q_n is diagonal
/// with entries q^{2j-n}; each column's largest entry is positive.
struct JWProjection {
  unsigned n = 1;
  double q = 1;
  Matrix basis;  // 2^n x (n+1)
  JWResiduals residuals;
  bool extended_precision = false;

  Matrix matrix() const { return basis * basis.transpose(); }
  double quantum_trace() const;
};

std::shared_ptr<const JWProjection> jones_wenzl(const QParameter& param, unsigned n, const TLConfig& config = {});

/// Q_1^{(x)alpha} restricted to im p_alpha, in the JW image basis.
Matrix q_matrix(const QParameter& param, unsigned alpha, const TLConfig& config = {});
/// Diagonal of Q_alpha: q^{2j-alpha}, j = 0..alpha.
Vector q_weights(double q, unsigned alpha);

/// Isometric intertwiner H_gamma -> H_alpha (x) H_beta.
struct FusionIsometry {
  unsigned alpha = 0, beta = 0, gamma = 0;
  double q = 1;
  /// Coordinates in the product basis B_alpha (x) B_beta: (alpha+1)(beta+1) x (gamma+1).
  Matrix compressed;
  double scale = 1;            // W^T W = scale * I before normalization
  double scalar_residual = 0;  // ||W^T W / scale - I||

  /// The same map in the 2^{alpha+beta}-dimensional chain space.
  Matrix chain(const QParameter& param, const TLConfig& config = {}) const;
};

std::shared_ptr<const FusionIsometry> fusion_isometry(const QParameter& param, unsigned alpha, unsigned beta,
                                                      unsigned gamma, const TLConfig& config = {});

/// ||sum_gamma V_gamma V_gamma^* - p_alpha (x) p_beta||_F in the chain space.
double resolution_of_identity(const QParameter& param, unsigned alpha, unsigned beta, const TLConfig& config = {});

struct PentagonResult {
  double defect = 0;      // phase-minimized (or raw, if not aligned) operator norm
  double raw_defect = 0;  // no phase correction
  double phase = 0;       // angle of the minimizing unit scalar
  double bound = 0;       // q^{alpha + (k - r)/2}
  double constant = 0;    // defect / bound
  Matrix composite1, composite2;
};

/// || (1_s (x) V^{alpha,r}_{alpha+l}) V^{s,alpha+l}_{alpha+k+l}
///   - (V^{s,alpha}_{alpha+k} (x) 1_r) V^{alpha+k,r}_{alpha+k+l} ||
PentagonResult pentagon_defect(const QParameter& param, unsigned alpha, unsigned r, unsigned s, int k, int l,
                               bool align_phase, const TLConfig& config = {});

struct CommutatorEstimate {
  unsigned alpha = 0;
  int k = 0, l = 0;
  double q_alpha = 0;
  /// max over basis (m, i, m') of ||D^*(Q m (x) Q i (x) Q m')|| / (norm product q^alpha)
  double vector_ratio = 0;
  /// max over basis sextuples of the L2 norm of the coefficient difference
  /// divided by q^alpha ||x|| ||a|| ||c||
  double coefficient_ratio = 0;
  /// (k, l) = (-1, -1): sum of coefficient ratios of the other three sign cases.
  double assembled_ratio = 0;
  double bound_constant = 2;  // 2, or 6 for the complementary case
  bool within_bound = true;
};

CommutatorEstimate commutator_estimate(const QParameter& param, unsigned alpha, unsigned r, unsigned s, int k, int l,
                                       const TLConfig& config = {});

/// Drops all memoized projections and isometries.
void clear_templieb_cache();

}  // namespace qgs
