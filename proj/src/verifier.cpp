#include "dioph/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "dioph/philox.hpp"

namespace dioph {

double dist_to_int(double x) {
  const double f = std::fabs(x);
  const double fr = f - std::floor(f);
  return std::min(fr, 1.0 - fr);
}

double linear_form_dist(std::span<const double> X, std::span<const std::int64_t> a,
                        int m, int n) {
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += X[std::size_t(i) * std::size_t(n) + std::size_t(j)] * double(a[std::size_t(j)]);
    worst = std::max(worst, dist_to_int(s));
  }
  return worst;
}

std::int64_t default_cutoff(const ApproxFunction& psi, int n) {
  if (n == 1) {
    const std::int64_t support = psi.finite_support() ? psi.support_bound() : 0;
    return std::max<std::int64_t>(support, 1000);
  }
  return n == 2 ? 100 : 32;
}

namespace {

// odometer over representatives of {a, -a}: the first nonzero coordinate is
// positive. Positions before `lead` are zero, position `lead` runs over
// [1, kmax], later positions over [-kmax, kmax].
struct HalfLattice {
  int n;
  std::int64_t kmax;
  int lead = 0;
  std::vector<std::int64_t> a;

  explicit HalfLattice(int n_, std::int64_t kmax_) : n(n_), kmax(kmax_), a(std::size_t(n_), 0) {
    a[0] = 1;
    for (int t = 1; t < n; ++t) a[std::size_t(t)] = -kmax;
  }

  bool advance() {
    for (int pos = n - 1; pos >= lead; --pos) {
      const std::int64_t lo = pos == lead ? 1 : -kmax;
      if (a[std::size_t(pos)] < kmax) {
        ++a[std::size_t(pos)];
        for (int t = pos + 1; t < n; ++t) a[std::size_t(t)] = -kmax;
        return true;
      }
      a[std::size_t(pos)] = lo;
    }
    // move the leading nonzero one slot right
    if (++lead >= n) return false;
    for (int t = 0; t < lead; ++t) a[std::size_t(t)] = 0;
    a[std::size_t(lead)] = 1;
    for (int t = lead + 1; t < n; ++t) a[std::size_t(t)] = -kmax;
    return true;
  }

  std::int64_t norm() const {
    std::int64_t k = 0;
    for (std::int64_t v : a) k = std::max(k, v < 0 ? -v : v);
    return k;
  }
};

void sample_matrix(RandomStream& rs, DensityKind dist, double side,
                   std::vector<double>& X) {
  for (double& x : X) {
    const double u = rs.next_uniform();
    x = dist == DensityKind::standard_gaussian ? normal_cdf_inv(u) : (u - 0.5) * side;
  }
}

}  // namespace

MembershipResult membership(std::span<const double> X, int m, int n,
                            const ApproxFunction& psi, double kappa, std::int64_t cutoff) {
  if (m < 1 || n < 1) throw std::invalid_argument("membership: need m, n >= 1");
  if (X.size() != std::size_t(m) * std::size_t(n))
    throw std::invalid_argument("membership: X must hold m*n entries");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("membership: kappa must be positive and finite");
  if (cutoff < 1) throw std::invalid_argument("membership: cutoff must be >= 1");

  MembershipResult res;
  res.cutoff = cutoff;
  const std::int64_t support = psi.finite_support() ? psi.support_bound() : -1;
  res.exhaustive = support >= 0 && support <= cutoff;
  // beyond the support every threshold is zero, nothing left to scan
  const std::int64_t kmax = support >= 0 ? std::min(cutoff, support) : cutoff;
  if (kmax < 1) return res;

  std::vector<double> threshold(std::size_t(kmax) + 1, 0.0);
  for (std::int64_t k = 1; k <= kmax; ++k) threshold[std::size_t(k)] = kappa * psi.eval_scalar(k);

  HalfLattice it(n, kmax);
  do {
    const std::int64_t k = it.norm();
    const double t = threshold[std::size_t(k)];
    if (t == 0.0) continue;
    if (linear_form_dist(X, it.a, m, n) <= t) {
      res.member = false;
      res.witness = it.a;
      return res;
    }
  } while (it.advance());
  return res;
}

WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // two-sided 95%
  const double nn = double(trials);
  const double ph = double(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (ph + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
  // the bound is exactly 0 (or 1) at the empirical endpoints; the sqrt above
  // only almost cancels there
  const double lo = hits == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = hits == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

TrialReport estimate_B_measure(const TrialConfig& cfg) {
  if (cfg.m < 1 || cfg.n < 1) throw std::invalid_argument("estimate: need m, n >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("estimate: need at least one trial");
  if (!(cfg.kappa > 0.0) || !std::isfinite(cfg.kappa))
    throw std::invalid_argument("estimate: kappa must be positive and finite");
  if (cfg.dist == DensityKind::bounded_density)
    throw std::invalid_argument("estimate: cannot sample from an abstract bounded density");
  if (cfg.dist == DensityKind::uniform_cube && !(cfg.side > 0.0))
    throw std::invalid_argument("estimate: cube side must be positive");
  // admissibility precondition for the measure bound being verified
  if (2.0 * cfg.kappa * m_psi(cfg.psi) > 1.0)
    throw std::invalid_argument("estimate: need 2 kappa M_psi <= 1");

  const std::int64_t cutoff = cfg.cutoff > 0 ? cfg.cutoff : default_cutoff(cfg.psi, cfg.n);

  struct ChunkOut {
    std::uint64_t members = 0;
    bool exhaustive = false;
    std::vector<std::pair<std::uint64_t, std::vector<std::int64_t>>> violations;
  };

  const auto run_chunk = [&](std::uint64_t lo, std::uint64_t hi) {
    ChunkOut out;
    std::vector<double> X(std::size_t(cfg.m) * std::size_t(cfg.n));
    for (std::uint64_t t = lo; t < hi; ++t) {
      RandomStream rs(cfg.seed, t);
      sample_matrix(rs, cfg.dist, cfg.side, X);
      const MembershipResult mr = membership(X, cfg.m, cfg.n, cfg.psi, cfg.kappa, cutoff);
      out.exhaustive = mr.exhaustive;
      if (mr.member) {
        ++out.members;
      } else if (out.violations.size() < 8) {
        out.violations.emplace_back(t, mr.witness);
      }
    }
    return out;
  };

  unsigned threads = cfg.threads > 0 ? unsigned(cfg.threads) : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = unsigned(std::min<std::uint64_t>(threads, cfg.trials));

  std::vector<ChunkOut> parts(threads);
  {
    std::vector<std::future<ChunkOut>> futs;
    const std::uint64_t per = cfg.trials / threads;
    const std::uint64_t extra = cfg.trials % threads;
    std::uint64_t lo = 0;
    for (unsigned i = 0; i < threads; ++i) {
      const std::uint64_t hi = lo + per + (i < extra ? 1 : 0);
      futs.push_back(std::async(std::launch::async, run_chunk, lo, hi));
      lo = hi;
    }
    for (unsigned i = 0; i < threads; ++i) parts[i] = futs[i].get();
  }

  TrialReport rep;
  rep.config = cfg;
  rep.trials = cfg.trials;
  rep.cutoff = cutoff;
  for (const ChunkOut& c : parts) {
    rep.members += c.members;
    rep.exhaustive = c.exhaustive;
    for (const auto& v : c.violations)
      if (rep.sample_violations.size() < 8) rep.sample_violations.push_back(v);
  }
  rep.estimate = double(rep.members) / double(rep.trials);
  rep.ci = wilson_interval(rep.members, rep.trials);
  return rep;
}

WMeasureReport measure_of_W(std::span<const std::int64_t> a, double eps, int m,
                            std::uint64_t samples, std::uint64_t seed) {
  bool all_zero = true;
  for (std::int64_t v : a)
    if (v != 0) all_zero = false;
  if (a.empty() || all_zero)
    throw ZeroVectorError("measure_of_W: a must be a nonzero integer vector");
  if (!(eps >= 0.0) || !(eps <= 0.5))
    throw EpsilonOutOfRangeError("measure_of_W: the identity needs 0 <= eps <= 1/2");
  if (m < 1) throw std::invalid_argument("measure_of_W: need m >= 1");
  if (samples < 1) throw std::invalid_argument("measure_of_W: need at least one sample");

  const int n = int(a.size());
  WMeasureReport rep;
  rep.a.assign(a.begin(), a.end());
  rep.epsilon = eps;
  rep.m = m;
  rep.samples = samples;
  rep.seed = seed;
  std::vector<double> X(std::size_t(m) * std::size_t(n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    RandomStream rs(seed, s);
    for (double& x : X) x = rs.next_uniform();
    if (linear_form_dist(X, a, m, n) <= eps) ++rep.hits;
  }
  rep.empirical = double(rep.hits) / double(rep.samples);
  rep.exact = std::pow(2.0 * eps, double(m));
  rep.ci = wilson_interval(rep.hits, rep.samples);
  return rep;
}

}  // namespace dioph
