#pragma once

#include "qgs/chebyshev.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace qgs {

struct SpectralDatum {
  unsigned alpha = 0;
  BigFloat delta;
  Integer n;
  Integer multiplicity;  // n_alpha^2
};

/// Delta_alpha = U'_alpha(N_q) / U_alpha(N_q) at the parameter's precision.
BigFloat delta(const QParameter& param, unsigned alpha);
double delta_double(const QParameter& param, unsigned alpha);
/// Exact Delta_alpha for rational N_q.
Rational delta_exact(const Rational& Nq, unsigned alpha);
/// Delta_0 .. Delta_alpha_max in one sweep of the recurrence.
std::vector<BigFloat> delta_table(const QParameter& param, unsigned alpha_max);
std::vector<SpectralDatum> spectral_data(const QParameter& param, unsigned alpha_max);

/// 1/sqrt(N_q^2 - 4), the limiting gap. Throws DomainError at q = 1.
BigFloat delta_asymptote(const QParameter& param);

/// c_alpha(t) = (U_alpha(q^t + q^-t) / U_alpha(N_q))^3. Requires q < 1.
/// Defined for every real t; the semigroup uses t in (-1, 1].
BigFloat semigroup_coeff(const QParameter& param, unsigned alpha, const BigFloat& t);
BigFloat semigroup_coeff(const QParameter& param, unsigned alpha, double t);

/// exp(-t Delta_alpha), t >= 0.
double multiplier(const QParameter& param, unsigned alpha, double t);

/// k * (-P(0) + (1/k) sum_{l=k+1}^{2k} P(1/l)); tends to log(2) P'(0).
double cesaro_limit(const std::function<double(double)>& P, std::uint64_t k);

/// Finitely supported coefficients <e^alpha_{i,j}, xi>, 1 <= i, j <= n_alpha.
using SpectralIndex = std::tuple<unsigned, std::uint64_t, std::uint64_t>;
using SpectralVector = std::map<SpectralIndex, std::complex<double>>;

/// sum Delta_alpha |<e^alpha_ij, xi>|^2. Throws InvalidVector on bad indices.
double dirichlet_form(const QParameter& param, const SpectralVector& xi);
/// ||Delta^{1/2} xi||^2, which coincides with the Dirichlet form.
double gradient_norm(const QParameter& param, const SpectralVector& xi);

struct ResolventCoeff {
  double R = 1;        // 1/(1 + eps Delta)
  double delta_eps = 0;  // Delta/(1 + eps Delta)
};
ResolventCoeff resolvent_coeff(const QParameter& param, unsigned alpha, double eps);

/// An eigenvalue sequence given by blocks: Delta_alpha repeated
/// multiplicity(alpha) times, alpha = 0, 1, ...
struct SpectralModel {
  std::function<double(unsigned)> delta;
  std::function<Integer(unsigned)> multiplicity;
  /// Number of blocks for a finite spectrum; unset means unbounded.
  std::optional<unsigned> block_count;
};

/// The Dirichlet spectrum of the quantum model: Delta_alpha with multiplicity n_alpha^2.
SpectralModel quantum_model(const QParameter& param);
/// Finite list of (eigenvalue, multiplicity) blocks.
SpectralModel list_model(std::vector<std::pair<double, Integer>> blocks);

struct AmenabilityOptions {
  std::uint64_t n_max = 1000000;
  /// Checkpoints with n <= warmup are ignored. 0 selects n_max / 10.
  std::uint64_t warmup = 0;
  double threshold = 50.0;
  unsigned checkpoints_per_decade = 10;
};

struct AmenabilitySample {
  std::uint64_t n = 0;
  double lambda = 0;
  double ratio = 0;     // lambda_n / log n
  double envelope = 0;  // inf of ratio over checkpoints >= n
  unsigned alpha = 0;   // block holding lambda_n
};

struct AmenabilityReport {
  std::vector<AmenabilitySample> samples;
  std::uint64_t warmup = 0;
  double threshold = 0;
  double liminf_estimate = 0;
  bool satisfied = false;
  std::string verdict;  // "satisfied" or "not-satisfied"
};

AmenabilityReport amenability_criterion(const SpectralModel& model, const AmenabilityOptions& options);

}  // namespace qgs
