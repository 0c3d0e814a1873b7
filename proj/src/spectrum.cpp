#include "qgs/spectrum.hpp"

#include "qgs/errors.hpp"
#include "qgs/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace qgs {

namespace {

// At q = 1 the data are polynomial in alpha: U_a(2) = a+1, U'_a(2) = a(a+1)(a+2)/6.
Rational classical_delta(unsigned alpha) {
  Integer a = alpha;
  return Rational(a * (a + 2), Integer(6));
}

}  // namespace

BigFloat delta(const QParameter& param, unsigned alpha) {
  if (param.is_classical()) return BigFloat(classical_delta(alpha), param.precision());
  if (alpha == 0) return BigFloat(param.precision());
  return eval_derivative(alpha, param.Nq()) / eval(alpha, param.Nq());
}

double delta_double(const QParameter& param, unsigned alpha) { return delta(param, alpha).to_double(); }

Rational delta_exact(const Rational& Nq, unsigned alpha) {
  if (alpha == 0) return 0;
  return eval_derivative(alpha, Nq) / eval(alpha, Nq);
}

std::vector<BigFloat> delta_table(const QParameter& param, unsigned alpha_max) {
  std::vector<BigFloat> out;
  out.reserve(alpha_max + 1);
  unsigned bits = param.precision();
  if (param.is_classical()) {
    for (unsigned a = 0; a <= alpha_max; ++a) out.emplace_back(classical_delta(a), bits);
    return out;
  }
  const BigFloat& x = param.Nq();
  BigFloat u_prev(bits), u(1L, bits);  // U_{-1}, U_0
  BigFloat d_prev(bits), d(bits);      // U'_{-1}, U'_0
  for (unsigned a = 0; a <= alpha_max; ++a) {
    out.push_back(d / u);
    BigFloat d_next = x * d + u - d_prev;
    BigFloat u_next = x * u - u_prev;
    d_prev = std::move(d);
    d = std::move(d_next);
    u_prev = std::move(u);
    u = std::move(u_next);
  }
  return out;
}

std::vector<SpectralDatum> spectral_data(const QParameter& param, unsigned alpha_max) {
  std::vector<BigFloat> deltas = delta_table(param, alpha_max);
  std::vector<Integer> n = classical_dims(param.N(), alpha_max);
  std::vector<SpectralDatum> out;
  out.reserve(alpha_max + 1);
  for (unsigned a = 0; a <= alpha_max; ++a) out.push_back({a, deltas[a], n[a], n[a] * n[a]});
  return out;
}

BigFloat delta_asymptote(const QParameter& param) {
  if (param.is_classical()) throw DomainError("q = 1: eigenvalue gaps grow linearly, no finite asymptote");
  BigFloat four(4L, param.precision());
  return BigFloat(1L, param.precision()) / sqrt(param.Nq() * param.Nq() - four);
}

BigFloat semigroup_coeff(const QParameter& param, unsigned alpha, const BigFloat& t) {
  if (param.is_classical()) throw DomainError("semigroup coefficients need q < 1");
  unsigned bits = std::max(param.precision(), t.precision());
  if (t == BigFloat(1L, bits)) return BigFloat(1L, bits);
  QParameter p = param.precision() >= bits ? param : param.at_precision(bits);
  BigFloat qt = exp(t * log(p.q()));
  BigFloat x = qt + BigFloat(1L, bits) / qt;
  BigFloat ratio = eval(alpha, x) / eval(alpha, p.Nq());
  return ratio * ratio * ratio;
}

BigFloat semigroup_coeff(const QParameter& param, unsigned alpha, double t) {
  return semigroup_coeff(param, alpha, BigFloat(t, param.precision()));
}

double multiplier(const QParameter& param, unsigned alpha, double t) {
  if (t < 0) throw DomainError("multiplier needs t >= 0");
  return std::exp(-t * delta_double(param, alpha));
}

double cesaro_limit(const std::function<double(double)>& P, std::uint64_t k) {
  if (k < 1) throw DomainError("cesaro_limit needs k >= 1");
  const long double p0 = P(0.0);
  // Summing differences keeps the O(1/k) signal above the rounding floor.
  long double sum = 0, comp = 0;
  for (std::uint64_t l = k + 1; l <= 2 * k; ++l) {
    long double term = static_cast<long double>(P(1.0 / static_cast<double>(l))) - p0 - comp;
    long double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return static_cast<double>(sum);
}

namespace {

double spectral_sum(const QParameter& param, const SpectralVector& xi) {
  if (xi.empty()) return 0.0;
  unsigned alpha_max = 0;
  for (const auto& [idx, v] : xi) alpha_max = std::max(alpha_max, std::get<0>(idx));
  std::vector<Integer> n = classical_dims(param.N(), alpha_max);
  std::vector<BigFloat> deltas = delta_table(param, alpha_max);
  long double total = 0;
  for (const auto& [idx, v] : xi) {
    auto [alpha, i, j] = idx;
    if (i < 1 || j < 1 || Integer(i) > n[alpha] || Integer(j) > n[alpha]) {
      throw InvalidVector("coefficient (" + std::to_string(alpha) + ", " + std::to_string(i) + ", " +
                          std::to_string(j) + ") outside 1..n_alpha = " + n[alpha].str());
    }
    total += static_cast<long double>(deltas[alpha].to_double()) * std::norm(v);
  }
  return static_cast<double>(total);
}

}  // namespace

double dirichlet_form(const QParameter& param, const SpectralVector& xi) { return spectral_sum(param, xi); }

double gradient_norm(const QParameter& param, const SpectralVector& xi) {
  // ||d(a)||^2 = <Delta a, a> = ||Delta^{1/2} a||^2 for a central multiplier.
  return spectral_sum(param, xi);
}

ResolventCoeff resolvent_coeff(const QParameter& param, unsigned alpha, double eps) {
  if (!(eps > 0)) throw DomainError("resolvent needs eps > 0");
  double d = delta_double(param, alpha);
  return {1.0 / (1.0 + eps * d), d / (1.0 + eps * d)};
}

SpectralModel quantum_model(const QParameter& param) {
  SpectralModel m;
  m.delta = [param](unsigned a) { return delta_double(param, a); };
  int N = param.N();
  m.multiplicity = [N](unsigned a) {
    Integer n = classical_dims(N, a)[a];
    return Integer(n * n);
  };
  return m;
}

SpectralModel list_model(std::vector<std::pair<double, Integer>> blocks) {
  SpectralModel m;
  m.block_count = static_cast<unsigned>(blocks.size());
  auto shared = std::make_shared<std::vector<std::pair<double, Integer>>>(std::move(blocks));
  m.delta = [shared](unsigned a) { return (*shared)[a].first; };
  m.multiplicity = [shared](unsigned a) { return (*shared)[a].second; };
  return m;
}

AmenabilityReport amenability_criterion(const SpectralModel& model, const AmenabilityOptions& options) {
  if (model.block_count && *model.block_count == 0) throw DomainError("empty spectrum");
  if (options.n_max < 10) throw DomainError("amenability criterion needs n_max >= 10");
  if (options.checkpoints_per_decade == 0) throw DomainError("need at least one checkpoint per decade");
  std::uint64_t warmup = options.warmup ? options.warmup : options.n_max / 10;
  if (warmup >= options.n_max) throw DomainError("warm-up index must be below n_max");

  std::vector<std::uint64_t> checkpoints;
  double decades = std::log10(static_cast<double>(options.n_max));
  for (unsigned j = 1;; ++j) {
    double e = static_cast<double>(j) / options.checkpoints_per_decade;
    if (e >= decades) break;
    auto n = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e)));
    if (n >= 2 && (checkpoints.empty() || n > checkpoints.back())) checkpoints.push_back(n);
  }
  if (checkpoints.empty() || checkpoints.back() != options.n_max) checkpoints.push_back(options.n_max);

  AmenabilityReport report;
  report.warmup = warmup;
  report.threshold = options.threshold;

  // Stream blocks; lambda_n is the eigenvalue of the block holding index n.
  Integer cumulative = 0;
  unsigned alpha = 0;
  double last = -INFINITY;
  std::size_t next = 0;
  while (next < checkpoints.size()) {
    if (model.block_count && alpha >= *model.block_count) break;
    double lambda = model.delta(alpha);
    if (lambda < last) throw DomainError("eigenvalues must be sorted ascending");
    last = lambda;
    cumulative += model.multiplicity(alpha);
    while (next < checkpoints.size() && Integer(checkpoints[next]) <= cumulative) {
      std::uint64_t n = checkpoints[next++];
      report.samples.push_back({n, lambda, lambda / std::log(static_cast<double>(n)), 0.0, alpha});
    }
    ++alpha;
  }
  if (report.samples.empty()) throw DomainError("spectrum has fewer than two eigenvalues");

  double env = INFINITY;
  for (auto it = report.samples.rbegin(); it != report.samples.rend(); ++it) {
    env = std::min(env, it->ratio);
    it->envelope = env;
  }
  report.liminf_estimate = INFINITY;
  for (const auto& s : report.samples)
    if (s.n > warmup) report.liminf_estimate = std::min(report.liminf_estimate, s.ratio);
  if (!std::isfinite(report.liminf_estimate)) report.liminf_estimate = report.samples.back().ratio;
  report.satisfied = report.liminf_estimate > options.threshold;
  report.verdict = report.satisfied ? "satisfied" : "not-satisfied";
  return report;
}

}  // namespace qgs
