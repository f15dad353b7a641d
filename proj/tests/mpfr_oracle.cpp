#include "mpfr_oracle.hpp"

#include <mpfr.h>

#include <stdexcept>
#include <utility>

namespace oracle {
namespace {

constexpr mpfr_prec_t kPrec = 256;

// minimal RAII value type so the chain below reads like the formulas
class Big {
 public:
  Big() { mpfr_init2(v_, kPrec); }
  explicit Big(double x) : Big() { mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Big(long x) : Big() { mpfr_set_si(v_, x, MPFR_RNDN); }
  Big(const Big& o) : Big() { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Big(Big&& o) noexcept : Big() { mpfr_swap(v_, o.v_); }
  Big& operator=(Big o) {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Big() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double log10_value() const {
    Big t;
    mpfr_log10(t.v_, v_, MPFR_RNDN);
    return mpfr_get_d(t.v_, MPFR_RNDN);
  }
  double value() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend Big operator+(const Big& a, const Big& b) {
    Big r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Big operator-(const Big& a, const Big& b) {
    Big r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Big operator*(const Big& a, const Big& b) {
    Big r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Big operator/(const Big& a, const Big& b) {
    Big r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend bool operator<(const Big& a, const Big& b) { return mpfr_cmp(a.v_, b.v_) < 0; }

 private:
  mpfr_t v_;
};

Big pow(const Big& base, const Big& e) {
  Big r;
  mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
  return r;
}
Big pow(const Big& base, double e) { return pow(base, Big(e)); }
Big sqrt(const Big& x) {
  Big r;
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Big factorial(unsigned k) {
  Big r;
  mpfr_fac_ui(r.raw(), k, MPFR_RNDN);
  return r;
}
Big pi() {
  Big r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
Big gamma_at(const Big& x) {
  Big r;
  mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
const Big& min(const Big& a, const Big& b) { return b < a ? b : a; }
const Big& max(const Big& a, const Big& b) { return a < b ? b : a; }

Big phi(const Big& omega, const Big& B, int k) {
  return pow(omega, 0.5 * k * (k - 1)) /
         (Big(2.0) * sqrt(Big(2.0)) * pow(B, double(k)) * factorial(unsigned(k) + 1));
}

Big exp(const Big& x) {
  Big r;
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Big s_n_series(int n, int d, int l) {
  const Big beta(2.0 * d * (2 * l - 1) * (n + 1));
  const Big x = pow(Big(2.0), Big(-1.0) / beta);
  Big total(1.0);
  Big xk = x;
  for (long k = 1; k <= 2000000; ++k) {
    const Big shell = pow(Big(2.0 * double(k) + 1.0), double(n)) -
                      pow(Big(2.0 * double(k) - 1.0), double(n));
    const Big term = shell * xk;
    total = total + term;
    // shell is a degree n-1 polynomial with nonnegative coefficients, so
    // shell(k+j) <= shell(k) exp((n-1)j/k) and the tail is geometric with
    // ratio q = x exp((n-1)/k) once q < 1
    const Big q = x * exp(Big(double(n - 1)) / Big(double(k)));
    if (q < Big(1.0) && term * q / (Big(1.0) - q) < total * Big(1e-45)) return total;
    xk = xk * x;
  }
  throw std::runtime_error("oracle s_n did not converge");
}

}  // namespace

OracleLedger oracle_theorem5(const OracleInputs& in) {
  const int d = in.d, n = in.n, l = in.l;
  const Big s0(in.s0), M(in.M), delta(in.delta);
  OracleLedger out;

  const Big v_d = pow(pi(), 0.5 * d) / gamma_at(Big(1.0 + 0.5 * d));
  const Big n_d = pow(Big(5.0), double(d));
  const Big k_d = pow(Big(4.0), double(2 * d + 1)) * pow(Big(double(d)), 0.5 * d) * n_d / v_d;
  out.lg_v_d = v_d.log10_value();
  out.lg_n_d = n_d.log10_value();
  out.lg_k_d = k_d.log10_value();

  const Big omega0 =
      Big(1.0) / (sqrt(Big(2.0)) * pow(Big(2.0 * l), 2.0 + 0.5 * l * (l - 1)) *
                  factorial(unsigned(l) + 1));
  const Big sigma =
      Big(1.0) / pow(Big(2.0), 1.5 * l * (d - 1)) * pow(phi(omega0, Big(2.0), l), double(d - 1));
  out.lg_sigma = sigma.log10_value();

  const Big eta_base = v_d / (pow(Big(2.0), double(d + 2)) * Big(double(d)) * Big(double(l)) *
                              pow(Big(double(l + 1)), 1.0 / l) * pow(Big(5.0), double(d)));
  const Big eta = min(Big(1.0 / 16.0), pow(eta_base, double(d) * (2 * l - 1) * (2 * l - 2)));
  out.lg_eta = eta.log10_value();

  const Big three_pow = pow(Big(3.0), double(n + d + 2));
  const Big arm_sigma = s0 * sigma / (Big(2.0) * three_pow * sqrt(Big(double(d))) * M);
  const Big arm_eta = eta * s0 / (Big(4e7) * three_pow * Big(double(d)) * M *
                                  pow(Big(double(l)), double(l + 2)) * factorial(unsigned(l) + 1));
  const Big r_max = min(arm_sigma, arm_eta);
  const Big r = Big(in.r_frac) * r_max;
  out.lg_arm_sigma = arm_sigma.log10_value();
  out.lg_arm_eta = arm_eta.log10_value();
  out.lg_r_max = r_max.log10_value();
  out.lg_r = r.log10_value();

  const Big F = Big(4.0) * pow(Big(double(l)), double(l)) * factorial(unsigned(l) + 1);
  const Big tau = pow(r, double(l)) * s0 / F;
  const Big rho1 = s0 * pow(Big(2.0) * r, double(l)) / (F * sqrt(Big(double(d))));
  const Big rho2 =
      s0 / F * pow(tau / M, double(l - 1)) * pow(tau * (Big(1.0) - Big(1.0) / sqrt(Big(2.0))), 2.0) /
      sqrt(pow(s0 / F * pow(tau / M, double(l)), 2.0) +
           pow(tau * (Big(1.0) + Big(1.0) / sqrt(Big(2.0))), 2.0));
  const Big rho = rho1 * rho2 / sqrt(pow(rho1, 2.0) + pow(rho2 + Big(2.0) * M * M, 2.0));
  out.lg_tau = tau.log10_value();
  out.lg_rho1 = rho1.log10_value();
  out.lg_rho2 = rho2.log10_value();
  out.lg_rho = rho.log10_value();

  const Big c1_star =
      max(Big(2.0) * M / (s0 * sigma),
          pow(Big(2.0), double(d + 2)) / v_d * Big(double(d)) * Big(double(l)) *
              Big(double(l + 1)) * M / s0 *
              pow((Big(2.0) * pow(Big(double(l)), double(l)) + Big(1.0)) / sigma, 1.0 / l));
  const Big c_dl = pow(Big(2.0), double(d + 1)) * Big(double(d)) * Big(double(l)) *
                   pow(Big(double(l + 1)), 1.0 / l) / v_d;
  const double alpha = 1.0 / (double(d) * (2 * l - 1));
  const Big c_big = pow(Big(0.5 * d * (n + 2) * (d * (n + 1) + 2.0)), 0.5 * alpha) *
                    max(c1_star, Big(2.0) * c_dl);
  out.lg_c1_star = c1_star.log10_value();
  out.lg_c_dl = c_dl.log10_value();
  out.lg_c_big = c_big.log10_value();

  const Big L =
      max(Big(in.L_star > 0.0 ? in.L_star : in.M), Big(1.0) / (Big(4.0) * r * r));
  const Big X = Big(in.c_psi) * pow(Big(2.0), double(n) - 0.5) * sqrt(Big(double(n * d)) * L);
  const Big e_big = c_big * Big(double(n + 1)) *
                    pow(pow(Big(3.0), double(d)) * n_d, double(n + 1)) * pow(rho, -alpha);
  const Big k0 =
      e_big * pow(sqrt(Big(double(n + d + 1))) * pow(X, 1.0 / (n + 1)), alpha);
  out.lg_l_bound = L.log10_value();
  out.lg_e_big = e_big.log10_value();
  out.lg_k0 = k0.log10_value();

  const Big s_n = s_n_series(n, d, l);
  out.s_n = s_n.value();

  const Big branch_sup = Big(1.0) / X;
  const Big branch_measure = delta / (Big(2.0) * k_d * Big(in.sigma_psi));
  const Big branch_series =
      pow(delta / (Big(2.0) * k0 * s_n), double(d) * (n + 1) * (2 * l - 1));
  const Big kappa = min(branch_sup, min(branch_measure, branch_series));
  out.lg_branch_sup = branch_sup.log10_value();
  out.lg_branch_measure = branch_measure.log10_value();
  out.lg_branch_series = branch_series.log10_value();
  out.lg_kappa = kappa.log10_value();
  return out;
}

}  // namespace oracle
