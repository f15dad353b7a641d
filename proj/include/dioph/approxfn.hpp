#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dioph/errors.hpp"

// Approximating functions psi : Z -> [0, inf) (zero for q <= 0) and their
// radial extension Psi(a) = psi(||a||_inf) on Z^n \ {0}. This module owns the
// three statistics every kappa formula consumes:
//   sigma_psi  series sum, one-sided sum_q q^(n-1) psi(q)^m or symmetric
//              sum over Z^n \ {0} of Psi(a)^m, with a certified tail bound
//   c_psi      sup over a of Psi(a) * prod max(1,|a_i|)
//   m_psi      sup over a of Psi(a)

namespace dioph {

enum class PsiVariant { log_square_decay, uniform_cutoff, power_decay, tabulated };

enum class SumConvention { one_sided, symmetric };

class ApproxFunction {
 public:
  // psi(1) = 1/2, psi(q) = 1/(2 q ln^2 q) for q >= 2 (natural log)
  static ApproxFunction log_square_decay();
  // psi(q) = 1/Q on 1 <= q <= Q, zero beyond
  static ApproxFunction uniform_cutoff(std::int64_t Q);
  // psi(q) = c * q^(-s), c > 0, s > 0
  static ApproxFunction power_decay(double c, double s);
  // values[i] = psi(i+1), zero beyond the table; tail_bound is a
  // caller-certified bound on series mass the table omits
  static ApproxFunction tabulated(std::vector<double> values, double tail_bound);

  PsiVariant variant() const { return variant_; }

  double eval_scalar(std::int64_t q) const;
  // Psi(a); throws ZeroVectorError when a = 0
  double eval(std::span<const std::int64_t> a) const;

  bool finite_support() const;
  // largest q with psi(q) > 0; only meaningful when finite_support()
  std::int64_t support_bound() const;

  // true when psi is non-increasing on all of q >= 1, the hypothesis
  // kappa_theorem5 insists on; log_square_decay fails it (psi(2) > psi(1))
  bool globally_monotone() const;
  // smallest q0 with psi certified non-increasing on [q0, inf)
  std::int64_t monotone_from() const;

  std::int64_t cutoff_Q() const { return Q_; }
  double power_c() const { return c_; }
  double power_s() const { return s_; }
  const std::vector<double>& table() const { return table_; }
  double table_tail_bound() const { return tail_bound_; }

 private:
  ApproxFunction() = default;
  PsiVariant variant_ = PsiVariant::log_square_decay;
  std::int64_t Q_ = 0;
  double c_ = 0.0, s_ = 0.0;
  std::vector<double> table_;
  double tail_bound_ = 0.0;
};

struct SigmaResult {
  double value = 0.0;
  double tail_error = 0.0;  // certified bound on |true sum - value|
  std::int64_t terms = 0;   // shells actually summed
};

// sum over shells of weight(q) * psi(q)^m, weight q^(n-1) (one_sided) or the
// shell count (symmetric); throws DivergentSumError when the series diverges
SigmaResult sigma_psi(const ApproxFunction& psi, int m, int n, double rel_tol,
                      SumConvention conv);

struct CpsiResult {
  double value = 0.0;
  std::int64_t arg = 0;
  // the running sup was still being improved at the scan cutoff, so the
  // returned value is a lower bound rather than a certified sup
  bool still_increasing_at_cutoff = false;
};

// C_Psi = sup_k psi(k) * k^n (the product sup is attained on the diagonal of
// each shell); throws DivergentSumError when the sup is infinite
CpsiResult c_psi(const ApproxFunction& psi, int n, std::int64_t cutoff = 1000000);

// M_Psi = sup_q psi(q)
double m_psi(const ApproxFunction& psi);

// bundle consumed by the kappa formulas; can be filled from a psi object or
// asserted directly by a caller that knows the numbers
struct ApproxSummary {
  double sigma_one_sided = 0.0, sigma_one_sided_tail = 0.0;
  double sigma_symmetric = 0.0, sigma_symmetric_tail = 0.0;
  double c_psi = 0.0;
  bool c_psi_certified = true;
  double m_psi = 0.0;
  bool globally_monotone = true;
};

ApproxSummary summarize(const ApproxFunction& psi, int m, int n,
                        double rel_tol = 1e-9, std::int64_t c_cutoff = 1000000);

}  // namespace dioph
