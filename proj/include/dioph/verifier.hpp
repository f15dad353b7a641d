#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dioph/approxfn.hpp"
#include "dioph/errors.hpp"
#include "dioph/scalar_bounds.hpp"

// Monte Carlo side: membership of a sampled matrix in the badly-approximable
// event, measure estimation with Wilson intervals, and the elementary
// neighbourhood-measure identity |{X in P : ||Xa|| <= eps}| = (2 eps)^m.
// Every trial draws from its own counter-based stream, so estimates are
// byte-identical no matter how many threads run them.

namespace dioph {

// distance to the nearest integer
double dist_to_int(double x);

// max over rows of ||(Xa)_i||; X is row-major m x n
double linear_form_dist(std::span<const double> X, std::span<const std::int64_t> a,
                        int m, int n);

struct MembershipResult {
  bool member = true;
  std::vector<std::int64_t> witness;  // first violating a in scan order
  bool exhaustive = false;  // psi's support fits inside the scanned cutoff
  std::int64_t cutoff = 0;  // the cutoff policy actually applied
};

// scans nonzero a with ||a||_inf <= cutoff, one representative per {a, -a}
// pair; a violation is ||Xa|| <= kappa psi(||a||_inf) (ties conservative);
// shells with psi = 0 impose no finite threshold and are skipped
MembershipResult membership(std::span<const double> X, int m, int n,
                            const ApproxFunction& psi, double kappa, std::int64_t cutoff);

// scan depth when the caller does not pick one: n=1 max(support, 1000),
// n=2 100, n>=3 32
std::int64_t default_cutoff(const ApproxFunction& psi, int n);

struct WilsonInterval {
  double lo = 0.0, hi = 1.0;
};
WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials);

struct TrialConfig {
  int m = 1, n = 1;
  ApproxFunction psi = ApproxFunction::log_square_decay();
  double kappa = 0.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::int64_t cutoff = 0;  // 0 -> default_cutoff
  DensityKind dist = DensityKind::standard_gaussian;
  double side = 1.0;  // uniform cube side
  int threads = 0;    // 0 -> hardware concurrency
};

struct TrialReport {
  TrialConfig config;
  std::uint64_t trials = 0, members = 0;
  double estimate = 0.0;
  WilsonInterval ci;
  bool exhaustive = false;
  std::int64_t cutoff = 0;
  // up to eight (trial index, witness vector) pairs, in trial order
  std::vector<std::pair<std::uint64_t, std::vector<std::int64_t>>> sample_violations;
};

TrialReport estimate_B_measure(const TrialConfig& cfg);

struct WMeasureReport {
  std::vector<std::int64_t> a;
  double epsilon = 0.0;
  int m = 0;
  std::uint64_t samples = 0, hits = 0;
  std::uint64_t seed = 0;
  double empirical = 0.0;
  double exact = 0.0;  // (2 eps)^m
  WilsonInterval ci;
};

// X uniform on [0,1)^(m x n); counts max_i ||(Xa)_i|| <= eps
WMeasureReport measure_of_W(std::span<const std::int64_t> a, double eps, int m,
                            std::uint64_t samples, std::uint64_t seed);

}  // namespace dioph
