#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "dioph/errors.hpp"

// Explicit kappa formulas for random systems of linear forms with
// absolutely continuous matrix entries: the generic p-norm density bound,
// its bounded-density cube truncation, and the scalar Gaussian
// specialisation behind the published delta/N/kappa table.

namespace dioph {

// Phi(x), absolute error <= 1e-12; returns the smallest positive double
// instead of underflowing to zero for very negative finite x
double normal_cdf(double x);
double normal_pdf(double x);
// inverse of Phi on [0,1]; 0 -> -inf and 1 -> +inf by convention, anything
// outside [0,1] throws std::domain_error
double normal_cdf_inv(double y);

enum class DensityKind { standard_gaussian, uniform_cube, bounded_density };

// distribution of one matrix entry (entries i.i.d.); `coverage` reports the
// probability mass the product density places on the cube [-T,T)^dim
struct DensityModel {
  DensityKind kind = DensityKind::standard_gaussian;
  double side = 1.0;         // uniform_cube: support [-side/2, side/2) per axis
  double sup_density = 1.0;  // bounded_density: K
  std::function<double(std::int64_t)> coverage;  // bounded_density only
  // tabulated (T, mass) rows behind `coverage` when it came from a table;
  // kept so serialization does not lose the data behind the callback
  std::vector<std::pair<std::int64_t, double>> coverage_rows;

  static DensityModel standard_gaussian();
  static DensityModel uniform_cube(double side);
  static DensityModel bounded(double K, std::function<double(std::int64_t)> coverage);

  double sup(int dim) const;  // sup of the dim-dimensional product density
  // mass of [-T,T)^dim; throws CoverageUnavailableError for bounded_density
  // without a coverage callback
  double cube_mass(std::int64_t T, int dim) const;
};

enum class KappaFormula { theorem_density, corollary_cube, gaussian_scalar };
enum class KappaBranch { sup_bound, measure_bound };

struct KappaReport {
  double kappa = 0.0;
  double delta = 0.0;
  KappaFormula formula = KappaFormula::theorem_density;
  KappaBranch branch = KappaBranch::measure_bound;
  double branch_sup = 0.0;      // (1/2) / M_psi
  double branch_measure = 0.0;  // the measure-driven candidate, halved
  std::int64_t N_or_T = -1;     // cube half-width when the formula uses one
  // input echo
  int m = 0, n = 0;
  double p = 0.0, sigma_f = 0.0, sigma_psi = 0.0, m_psi = 0.0, K = 0.0;
  bool even_psi = false;
};

// kappa = (1/2) min{ 1/M_psi, (Sigma^-1 (delta/(2 Sigma_f))^(p/(p-1)))^(1/m) };
// p = inf means exponent 1; even_psi halves the symmetric series
KappaReport kappa_theorem2(int m, int n, double p, double sigma_f,
                           double sigma_psi_symmetric, double m_psi, double delta,
                           bool even_psi = false);

// cube truncation: T is the smallest positive integer with
// coverage([-T,T)^(mn)) >= 1 - delta/2 (linear scan), then
// kappa = (1/2) min{ 1/M_psi, (delta / (2 K (2T)^(mn) Sigma))^(1/m) }
KappaReport kappa_corollary2(int m, int n, const DensityModel& density,
                             double sigma_psi_symmetric, double m_psi, double delta);

struct GaussianScalarReport {
  double delta = 0.0;
  double sigma = 0.0;  // one-sided series value
  std::int64_t N = 0;          // smallest N with Phi(-N) <= delta/8 (table convention)
  std::int64_t N_literal = 0;  // same with delta/4, kept for audit
  double z_threshold = 0.0;    // -Phi^-1(delta/8)
  double kappa = 0.0;          // delta sqrt(2 pi) / (8 N sigma)
};

GaussianScalarReport kappa_gaussian_scalar(double delta, double sigma_one_sided);

std::vector<GaussianScalarReport> gaussian_scalar_table(const std::vector<double>& deltas,
                                                        double sigma_one_sided);

}  // namespace dioph
