#include "dioph/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dioph/shells.hpp"

namespace dioph {

namespace {

constexpr double kLog10_2 = 0.30102999566398119521;
constexpr double kLog10_5 = 0.69897000433601880479;

LogReal lr(double v) { return LogReal::from_double(v); }

}  // namespace

void validate(const ManifoldParams& p) {
  if (p.d < 1) throw std::invalid_argument("manifold: need d >= 1");
  if (p.n <= p.d) throw std::invalid_argument("manifold: need ambient n > d");
  if (p.l < 1) throw std::invalid_argument("manifold: need l >= 1");
  if (!(p.s0 > 0.0) || !std::isfinite(p.s0))
    throw std::invalid_argument("manifold: s0 must be positive");
  if (!(p.M >= 1.0) || !std::isfinite(p.M))
    throw std::invalid_argument("manifold: M must be >= 1");
  if (p.s0 > p.M) throw std::invalid_argument("manifold: need s0 <= M");
  if (!(p.L_star >= 0.0) || !std::isfinite(p.L_star))
    throw std::invalid_argument("manifold: L_star must be >= 0");
}

LogReal phi_volume(const LogReal& omega, const LogReal& B, int k) {
  if (k < 1) throw std::invalid_argument("phi_volume: need k >= 1");
  if (!(omega.positive()) || !(B.positive()))
    throw std::invalid_argument("phi_volume: omega and B must be positive");
  const double half_kk1 = 0.5 * double(k) * double(k - 1);
  return omega.pow(half_kk1) /
         (lr(2.0 * std::sqrt(2.0)) * B.pow(double(k)) * factorial_log(unsigned(k) + 1));
}

LogReal sigma_ld(int l, int d) {
  if (l < 1 || d < 1) throw std::invalid_argument("sigma_ld: need l, d >= 1");
  const double omega0_lg = -(0.5 * kLog10_2 + (2.0 + 0.5 * double(l) * double(l - 1)) *
                                                  std::log10(2.0 * double(l)) +
                             factorial_log(unsigned(l) + 1).log10_abs());
  const LogReal phi0 = phi_volume(LogReal::from_log10(omega0_lg), lr(2.0), l);
  return LogReal::from_log10(-1.5 * double(l) * double(d - 1) * kLog10_2) *
         phi0.pow(double(d - 1));
}

BallConstants besicovitch_and_ball(int d) {
  if (d < 1) throw std::invalid_argument("besicovitch_and_ball: need d >= 1");
  BallConstants b;
  b.v_d = LogReal::from_log10(0.5 * d * std::log10(M_PI) -
                              std::lgamma(1.0 + 0.5 * d) / LogReal::kLn10);
  b.n_d = LogReal::from_log10(d * kLog10_5);
  b.k_d = LogReal::from_log10((2.0 * d + 1.0) * 2.0 * kLog10_2 +
                              0.5 * d * std::log10(double(d))) *
          b.n_d / b.v_d;
  return b;
}

LogReal eta_const(int l, int d) {
  if (l < 1 || d < 1) throw std::invalid_argument("eta_const: need l, d >= 1");
  const BallConstants b = besicovitch_and_ball(d);
  const LogReal base = b.v_d / (pow_log(2.0, double(d + 2)) * lr(double(d)) * lr(double(l)) *
                                pow_log(double(l + 1), 1.0 / double(l)) * pow_log(5.0, double(d)));
  const double expo = double(d) * double(2 * l - 1) * double(2 * l - 2);
  return min(lr(1.0 / 16.0), base.pow(expo));
}

RadiusBound radius_bound(const ManifoldParams& p) {
  validate(p);
  const LogReal three_pow = pow_log(3.0, double(p.n + p.d + 2));
  RadiusBound rb;
  rb.arm_sigma = lr(p.s0) * sigma_ld(p.l, p.d) /
                 (lr(2.0) * three_pow * lr(std::sqrt(double(p.d))) * lr(p.M));
  rb.arm_eta = eta_const(p.l, p.d) * lr(p.s0) /
               (lr(4e7) * three_pow * lr(double(p.d)) * lr(p.M) *
                pow_log(double(p.l), double(p.l + 2)) * factorial_log(unsigned(p.l) + 1));
  rb.r_max = min(rb.arm_sigma, rb.arm_eta);
  return rb;
}

RhoChain rho_chain(const ManifoldParams& p, const LogReal& r) {
  validate(p);
  if (!r.positive()) throw std::invalid_argument("rho_chain: r must be positive");
  const LogReal F = lr(4.0) * pow_log(double(p.l), double(p.l)) * factorial_log(unsigned(p.l) + 1);
  const LogReal s0F = lr(p.s0) / F;
  RhoChain rc;
  rc.tau = s0F * r.pow(double(p.l));
  rc.rho1 = rc.tau * pow_log(2.0, double(p.l)) / lr(std::sqrt(double(p.d)));
  const LogReal tau_over_M = rc.tau / lr(p.M);
  const LogReal g = s0F * tau_over_M.pow(double(p.l));
  const LogReal num = s0F * tau_over_M.pow(double(p.l - 1)) *
                      (rc.tau * lr(1.0 - 1.0 / std::sqrt(2.0))).pow(2.0);
  const LogReal den = (g.pow(2.0) + (rc.tau * lr(1.0 + 1.0 / std::sqrt(2.0))).pow(2.0)).sqrt();
  rc.rho2 = num / den;
  rc.rho = rc.rho1 * rc.rho2 /
           (rc.rho1.pow(2.0) + (rc.rho2 + lr(2.0 * p.M * p.M)).pow(2.0)).sqrt();
  return rc;
}

GoodConstants good_constants(const ManifoldParams& p) {
  validate(p);
  const LogReal sig = sigma_ld(p.l, p.d);
  const BallConstants b = besicovitch_and_ball(p.d);
  GoodConstants g;
  const LogReal arm1 = lr(2.0 * p.M) / (lr(p.s0) * sig);
  const LogReal two_ll_plus_1 = lr(2.0) * pow_log(double(p.l), double(p.l)) + LogReal::one();
  const LogReal arm2 = pow_log(2.0, double(p.d + 2)) / b.v_d * lr(double(p.d)) *
                       lr(double(p.l)) * lr(double(p.l + 1)) * lr(p.M / p.s0) *
                       (two_ll_plus_1 / sig).pow(1.0 / double(p.l));
  g.c1_star = max(arm1, arm2);
  g.c_dl = pow_log(2.0, double(p.d + 1)) * lr(double(p.d)) * lr(double(p.l)) *
           pow_log(double(p.l + 1), 1.0 / double(p.l)) / b.v_d;
  g.alpha_num = 1;
  g.alpha_den = long(p.d) * long(2 * p.l - 1);
  const double alpha = 1.0 / double(g.alpha_den);
  const double poly = 0.5 * double(p.d) * double(p.n + 2) * (double(p.d) * double(p.n + 1) + 2.0);
  g.c_big = pow_log(poly, 0.5 * alpha) * max(g.c1_star, lr(2.0) * g.c_dl);
  return g;
}

LogReal e_constant(const ManifoldParams& p, const LogReal& rho) {
  validate(p);
  if (!rho.positive()) throw std::invalid_argument("e_constant: rho must be positive");
  const GoodConstants g = good_constants(p);
  const BallConstants b = besicovitch_and_ball(p.d);
  const double alpha = 1.0 / double(g.alpha_den);
  return g.c_big * lr(double(p.n + 1)) *
         (pow_log(3.0, double(p.d)) * b.n_d).pow(double(p.n + 1)) * rho.pow(-alpha);
}

Epsilon1 epsilon1(const LogReal& delta_prime, const LogReal& K, std::span<const double> T) {
  if (!delta_prime.positive()) throw std::invalid_argument("epsilon1: delta' must be positive");
  if (!K.positive()) throw std::invalid_argument("epsilon1: K must be positive");
  if (T.empty()) throw std::invalid_argument("epsilon1: need at least one T_i");
  LogReal prod = LogReal::one();
  double t_max = 0.0;
  for (double t : T) {
    if (!(t > 0.0) || !std::isfinite(t))
      throw std::invalid_argument("epsilon1: every T_i must be positive and finite");
    prod = prod * lr(t);
    t_max = std::max(t_max, t);
  }
  Epsilon1 e;
  e.product = delta_prime * K * prod / lr(t_max);
  if (e.product > LogReal::one()) {
    std::ostringstream msg;
    msg << "epsilon1: delta' K T1..Tn / max T = 10^" << e.product.log10_abs()
        << " exceeds 1; shrink delta' or the box";
    throw RestrictionViolatedError(msg.str());
  }
  const double n = double(T.size());
  e.epsilon1 = max(delta_prime, e.product.pow(1.0 / (n + 1.0)));
  return e;
}

bool check_restriction(const LogReal& delta_prime, const LogReal& K, std::span<const double> T) {
  LogReal prod = LogReal::one();
  double t_max = 0.0;
  for (double t : T) {
    prod = prod * lr(t);
    t_max = std::max(t_max, t);
  }
  return delta_prime * K * prod / lr(t_max) <= LogReal::one();
}

LogReal theorem4_bound(const ManifoldParams& p, const LogReal& r, const LogReal& delta_prime,
                       const LogReal& K, std::span<const double> T) {
  validate(p);
  const Epsilon1 e = epsilon1(delta_prime, K, T);
  const RhoChain rc = rho_chain(p, r);
  const LogReal E = e_constant(p, rc.rho);
  const double alpha = 1.0 / (double(p.d) * double(2 * p.l - 1));
  const LogReal ball = besicovitch_and_ball(p.d).v_d * r.pow(double(p.d));
  return E * (lr(std::sqrt(double(p.n + p.d + 1))) * e.epsilon1).pow(alpha) * ball;
}

SnResult s_n_sum(int n, int d, int l, double rel_tol) {
  if (n < 1 || d < 1 || l < 1) throw std::invalid_argument("s_n_sum: need n, d, l >= 1");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("s_n_sum: rel_tol must be positive");
  const double beta = 2.0 * d * double(2 * l - 1) * double(n + 1);
  const double x = std::pow(2.0, -1.0 / beta);
  const auto mono = shell_monomials(n);

  double partial = 1.0;  // t = 0 term
  std::int64_t k = 1;
  std::int64_t checkpoint = 64;
  const std::int64_t cap = 100000000;
  double xk = x;
  while (true) {
    partial += shell_count(k, n) * xk;
    if (k == checkpoint || k == cap) {
      // tail over k' > k: above, each monomial k'^p <= (k+1)^p e^(p (k'-k-1)/(k+1))
      // gives a geometric series with a bumped ratio; below, shell counts are
      // non-decreasing, so the plain geometric series with ratio x is a floor
      const double first = shell_count(k + 1, n) * xk * x;
      double hi = 0.0;
      bool ok = true;
      for (const auto& [p, coef] : mono) {
        const double ratio = x * std::exp(double(p) / double(k + 1));
        if (ratio >= 1.0) {
          ok = false;
          break;
        }
        hi += coef * std::pow(double(k + 1), double(p)) * xk * x / (1.0 - ratio);
      }
      if (ok) {
        const double lo = first / (1.0 - x);
        const double value = partial + 0.5 * (lo + hi);
        const double err = 0.5 * (hi - lo);
        if (err <= rel_tol * value) return {value, err};
      }
      if (k == cap) throw std::invalid_argument("s_n_sum: rel_tol unreachable");
      checkpoint = std::min(cap, checkpoint * 2);
    }
    xk *= x;
    ++k;
  }
}

ConstantsLedger kappa_theorem5(const ManifoldParams& p, const LogReal& r_request,
                               const ApproxSummary& summary, double delta) {
  validate(p);
  if (!(delta > 0.0) || !(delta < 1.0))
    throw InvalidDeltaError("kappa_theorem5: delta must lie strictly between 0 and 1");
  if (!summary.globally_monotone)
    throw NotMonotoneError("kappa_theorem5: psi must be non-increasing on all of q >= 1");
  if (!summary.c_psi_certified)
    throw NotMonotoneError("kappa_theorem5: C_psi scan did not certify the sup");
  if (!(summary.sigma_symmetric > 0.0) || !std::isfinite(summary.sigma_symmetric))
    throw std::invalid_argument("kappa_theorem5: symmetric sigma must be positive and finite");
  if (!(summary.c_psi > 0.0) || !std::isfinite(summary.c_psi))
    throw std::invalid_argument("kappa_theorem5: C_psi must be positive and finite");

  ConstantsLedger led;
  led.params = p;
  led.delta = delta;
  led.sigma_psi = summary.sigma_symmetric;
  led.c_psi = summary.c_psi;

  const RadiusBound rb = radius_bound(p);
  led.r_max = rb.r_max;
  led.r_arm_sigma = rb.arm_sigma;
  led.r_arm_eta = rb.arm_eta;
  led.r_auto = r_request.is_zero();
  if (led.r_auto) {
    led.r = rb.r_max;
  } else {
    if (!r_request.positive())
      throw std::invalid_argument("kappa_theorem5: r must be positive");
    if (r_request > rb.r_max) {
      std::ostringstream msg;
      msg << "r exceeds the maximum admissible radius; r_max = 10^"
          << rb.r_max.log10_abs() << " (pass r = 0 to use it)";
      throw RadiusTooLargeError(msg.str());
    }
    led.r = r_request;
  }

  const BallConstants ball = besicovitch_and_ball(p.d);
  led.v_d = ball.v_d;
  led.n_d = ball.n_d;
  led.k_d = ball.k_d;
  led.sigma = sigma_ld(p.l, p.d);
  led.eta = eta_const(p.l, p.d);

  const RhoChain rc = rho_chain(p, led.r);
  led.tau = rc.tau;
  led.rho1 = rc.rho1;
  led.rho2 = rc.rho2;
  led.rho = rc.rho;

  const GoodConstants gc = good_constants(p);
  led.c1_star = gc.c1_star;
  led.c_dl = gc.c_dl;
  led.c_big = gc.c_big;
  led.alpha_num = gc.alpha_num;
  led.alpha_den = gc.alpha_den;

  const double L_lin = p.L_star > 0.0 ? p.L_star : p.M;
  led.l_bound = max(lr(L_lin), lr(0.25) * led.r.pow(-2.0));

  led.e_big = e_constant(p, rc.rho);

  const SnResult sn = s_n_sum(p.n, p.d, p.l, 1e-11);
  led.s_n = sn.value;
  led.s_n_tail = sn.tail_error;

  // X = C_psi 2^(n - 1/2) sqrt(n d L); branch 1 is 1/X
  const LogReal X = lr(summary.c_psi) * pow_log(2.0, double(p.n) - 0.5) *
                    (lr(double(p.n) * double(p.d)) * led.l_bound).sqrt();
  const double alpha = 1.0 / double(gc.alpha_den);
  led.k0 = led.e_big *
           (lr(std::sqrt(double(p.n + p.d + 1))) * X.pow(1.0 / double(p.n + 1))).pow(alpha);

  led.branch_sup = LogReal::one() / X;
  led.branch_measure = lr(delta) / (lr(2.0) * led.k_d * lr(summary.sigma_symmetric));
  const double series_expo = double(p.d) * double(p.n + 1) * double(2 * p.l - 1);
  led.branch_series =
      (lr(delta) / (lr(2.0) * led.k0 * lr(led.s_n))).pow(series_expo);

  led.kappa = min(led.branch_sup, min(led.branch_measure, led.branch_series));
  if (led.kappa == led.branch_sup)
    led.active_branch = 0;
  else if (led.kappa == led.branch_measure)
    led.active_branch = 1;
  else
    led.active_branch = 2;
  return led;
}

}  // namespace dioph
