#include "dioph/scalar_bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dioph {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2Pi = 2.50662827463100050242;

// rational approximation for the normal quantile (relative error ~1.15e-9
// across the full range), then one Newton step against normal_cdf below
double quantile_seed(double y) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (y < plow) {
    const double q = std::sqrt(-2.0 * std::log(y));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (y > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - y));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = y - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

void require_delta(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw InvalidDeltaError("delta must lie strictly between 0 and 1");
}

}  // namespace

double normal_cdf(double x) {
  const double v = 0.5 * std::erfc(-x * kInvSqrt2);
  if (v == 0.0 && std::isfinite(x)) return std::numeric_limits<double>::denorm_min();
  return v;
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / kSqrt2Pi;
}

double normal_cdf_inv(double y) {
  if (std::isnan(y) || y < 0.0 || y > 1.0)
    throw std::domain_error("normal_cdf_inv: argument outside [0,1]");
  if (y == 0.0) return -std::numeric_limits<double>::infinity();
  if (y == 1.0) return std::numeric_limits<double>::infinity();
  double x = quantile_seed(y);
  const double pdf = normal_pdf(x);
  if (pdf > 1e-300) {
    const double step = (normal_cdf(x) - y) / pdf;
    if (std::isfinite(step) && std::fabs(step) < 1.0) x -= step;
  }
  return x;
}

DensityModel DensityModel::standard_gaussian() {
  DensityModel d;
  d.kind = DensityKind::standard_gaussian;
  return d;
}

DensityModel DensityModel::uniform_cube(double side) {
  if (!(side > 0.0) || !std::isfinite(side))
    throw std::invalid_argument("uniform_cube: side must be positive");
  DensityModel d;
  d.kind = DensityKind::uniform_cube;
  d.side = side;
  return d;
}

DensityModel DensityModel::bounded(double K, std::function<double(std::int64_t)> coverage) {
  if (!(K > 0.0) || !std::isfinite(K))
    throw std::invalid_argument("bounded density: K must be positive");
  DensityModel d;
  d.kind = DensityKind::bounded_density;
  d.sup_density = K;
  d.coverage = std::move(coverage);
  return d;
}

double DensityModel::sup(int dim) const {
  switch (kind) {
    case DensityKind::standard_gaussian:
      return std::pow(2.0 * M_PI, -0.5 * dim);
    case DensityKind::uniform_cube:
      return std::pow(side, -double(dim));
    case DensityKind::bounded_density:
      return sup_density;
  }
  return 0.0;
}

double DensityModel::cube_mass(std::int64_t T, int dim) const {
  switch (kind) {
    case DensityKind::standard_gaussian: {
      const double per_axis = 2.0 * normal_cdf(double(T)) - 1.0;
      return std::pow(per_axis, double(dim));
    }
    case DensityKind::uniform_cube: {
      const double per_axis = std::min(1.0, 2.0 * double(T) / side);
      return std::pow(per_axis, double(dim));
    }
    case DensityKind::bounded_density:
      if (!coverage)
        throw CoverageUnavailableError(
            "bounded density has no coverage data; cannot locate the truncation cube");
      return coverage(T);
  }
  return 0.0;
}

KappaReport kappa_theorem2(int m, int n, double p, double sigma_f,
                           double sigma_psi_symmetric, double m_psi, double delta,
                           bool even_psi) {
  if (m < 1 || n < 1) throw std::invalid_argument("kappa_theorem2: need m, n >= 1");
  require_delta(delta);
  if (!(p > 1.0)) throw std::invalid_argument("kappa_theorem2: need p > 1 (inf allowed)");
  if (!(sigma_f > 0.0) || !std::isfinite(sigma_f))
    throw std::invalid_argument("kappa_theorem2: sigma_f must be positive and finite");
  if (!(sigma_psi_symmetric > 0.0) || !std::isfinite(sigma_psi_symmetric))
    throw std::invalid_argument("kappa_theorem2: sigma_psi must be positive and finite");
  if (!(m_psi > 0.0) || !std::isfinite(m_psi))
    throw std::invalid_argument("kappa_theorem2: m_psi must be positive and finite");

  const double sigma_eff = even_psi ? 0.5 * sigma_psi_symmetric : sigma_psi_symmetric;
  const double expo = std::isinf(p) ? 1.0 : p / (p - 1.0);
  const double cand_sup = 0.5 / m_psi;
  const double cand_measure =
      0.5 * std::pow(std::pow(delta / (2.0 * sigma_f), expo) / sigma_eff, 1.0 / m);

  KappaReport r;
  r.formula = KappaFormula::theorem_density;
  r.delta = delta;
  r.branch_sup = cand_sup;
  r.branch_measure = cand_measure;
  r.branch = cand_measure < cand_sup ? KappaBranch::measure_bound : KappaBranch::sup_bound;
  r.kappa = std::min(cand_sup, cand_measure);
  r.m = m;
  r.n = n;
  r.p = p;
  r.sigma_f = sigma_f;
  r.sigma_psi = sigma_psi_symmetric;
  r.m_psi = m_psi;
  r.even_psi = even_psi;
  return r;
}

KappaReport kappa_corollary2(int m, int n, const DensityModel& density,
                             double sigma_psi_symmetric, double m_psi, double delta) {
  if (m < 1 || n < 1) throw std::invalid_argument("kappa_corollary2: need m, n >= 1");
  require_delta(delta);
  if (!(sigma_psi_symmetric > 0.0) || !std::isfinite(sigma_psi_symmetric))
    throw std::invalid_argument("kappa_corollary2: sigma_psi must be positive and finite");
  if (!(m_psi > 0.0) || !std::isfinite(m_psi))
    throw std::invalid_argument("kappa_corollary2: m_psi must be positive and finite");

  const int dim = m * n;
  const double target = 1.0 - 0.5 * delta;
  std::int64_t T = 1;
  while (density.cube_mass(T, dim) < target) {
    if (++T > 1000000000)
      throw CoverageUnavailableError("coverage never reaches 1 - delta/2 within the scan");
  }

  // assembled in logs: (2T)^(mn) overflows a double long before kappa does
  const double log_meas = (std::log(delta) - std::log(2.0) - std::log(density.sup(dim)) -
                           dim * std::log(2.0 * double(T)) - std::log(sigma_psi_symmetric)) /
                          double(m);
  const double cand_sup = 0.5 / m_psi;
  const double cand_measure = 0.5 * std::exp(log_meas);

  KappaReport r;
  r.formula = KappaFormula::corollary_cube;
  r.delta = delta;
  r.branch_sup = cand_sup;
  r.branch_measure = cand_measure;
  r.branch = cand_measure < cand_sup ? KappaBranch::measure_bound : KappaBranch::sup_bound;
  r.kappa = std::min(cand_sup, cand_measure);
  r.m = m;
  r.n = n;
  r.p = std::numeric_limits<double>::infinity();
  r.sigma_psi = sigma_psi_symmetric;
  r.m_psi = m_psi;
  r.K = density.sup(dim);
  r.N_or_T = T;
  return r;
}

GaussianScalarReport kappa_gaussian_scalar(double delta, double sigma_one_sided) {
  require_delta(delta);
  if (!(sigma_one_sided > 0.0) || !std::isfinite(sigma_one_sided))
    throw std::invalid_argument("kappa_gaussian_scalar: sigma must be positive and finite");

  // N = ceil(Phi^-1(1 - delta/8)) realized as the smallest integer whose
  // upper Gaussian tail is within delta/8; the delta/4 variant is reported
  // for audit but never used in kappa
  const auto smallest_shell = [](double tail) {
    std::int64_t N = 1;
    while (normal_cdf(-double(N)) > tail) {
      if (++N > 1000)
        throw InvalidDeltaError("delta too small to resolve the Gaussian shell in doubles");
    }
    return N;
  };

  GaussianScalarReport r;
  r.delta = delta;
  r.sigma = sigma_one_sided;
  r.N = smallest_shell(delta / 8.0);
  r.N_literal = smallest_shell(delta / 4.0);
  r.z_threshold = -normal_cdf_inv(delta / 8.0);
  r.kappa = delta * kSqrt2Pi / (8.0 * double(r.N) * sigma_one_sided);
  return r;
}

std::vector<GaussianScalarReport> gaussian_scalar_table(const std::vector<double>& deltas,
                                                        double sigma_one_sided) {
  std::vector<GaussianScalarReport> rows;
  rows.reserve(deltas.size());
  for (double d : deltas) rows.push_back(kappa_gaussian_scalar(d, sigma_one_sided));
  return rows;
}

}  // namespace dioph
