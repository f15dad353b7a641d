#include "dioph/approxfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dioph/shells.hpp"

namespace dioph {

namespace {

double safe_abs(std::int64_t v) {
  // |INT64_MIN| overflows int64; go through unsigned
  const std::uint64_t u = v < 0 ? ~std::uint64_t(v) + 1u : std::uint64_t(v);
  return double(u);
}

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// One series piece coef * q^e * ln(q)^(-2*lp), summed over integer q. All
// tails below are integral-comparison brackets valid where the piece is
// non-increasing (e <= -1 covers every convergent case we emit).
struct Piece {
  double coef;
  double e;
  int lp;  // ln power is 2*lp
};

// upper bound on integral of q^e ln(q)^(-2lp) over (x, inf)
double piece_tail_hi(const Piece& p, double x) {
  const double L = std::log(x);
  if (p.lp == 0) return std::pow(x, p.e + 1.0) / (-p.e - 1.0);
  if (p.e == -1.0) return std::pow(L, 1.0 - 2.0 * p.lp) / (2.0 * p.lp - 1.0);
  const double beta = -(p.e + 1.0);
  return std::pow(x, p.e + 1.0) * std::pow(L, -2.0 * p.lp) / beta;
}

// lower bound on the same integral, from one integration by parts
double piece_tail_lo(const Piece& p, double x) {
  const double L = std::log(x);
  if (p.lp == 0) return std::pow(x, p.e + 1.0) / (-p.e - 1.0);
  if (p.e == -1.0) return std::pow(L, 1.0 - 2.0 * p.lp) / (2.0 * p.lp - 1.0);
  const double beta = -(p.e + 1.0);
  const double a = std::pow(x, p.e + 1.0) * std::pow(L, -2.0 * p.lp) / beta;
  return a / (1.0 + 2.0 * p.lp / (beta * L));
}

}  // namespace

ApproxFunction ApproxFunction::log_square_decay() {
  ApproxFunction f;
  f.variant_ = PsiVariant::log_square_decay;
  return f;
}

ApproxFunction ApproxFunction::uniform_cutoff(std::int64_t Q) {
  if (Q < 1) throw std::invalid_argument("uniform_cutoff: Q must be >= 1");
  ApproxFunction f;
  f.variant_ = PsiVariant::uniform_cutoff;
  f.Q_ = Q;
  return f;
}

ApproxFunction ApproxFunction::power_decay(double c, double s) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("power_decay: c must be positive");
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("power_decay: s must be positive");
  ApproxFunction f;
  f.variant_ = PsiVariant::power_decay;
  f.c_ = c;
  f.s_ = s;
  return f;
}

ApproxFunction ApproxFunction::tabulated(std::vector<double> values, double tail_bound) {
  if (values.empty()) throw std::invalid_argument("tabulated: empty table");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("tabulated: values must be finite and non-negative");
  if (!(tail_bound >= 0.0) || !std::isfinite(tail_bound))
    throw std::invalid_argument("tabulated: tail_bound must be finite and non-negative");
  ApproxFunction f;
  f.variant_ = PsiVariant::tabulated;
  f.table_ = std::move(values);
  f.tail_bound_ = tail_bound;
  return f;
}

double ApproxFunction::eval_scalar(std::int64_t q) const {
  if (q <= 0) return 0.0;
  switch (variant_) {
    case PsiVariant::log_square_decay: {
      if (q == 1) return 0.5;
      const double lq = std::log(double(q));
      return 1.0 / (2.0 * double(q) * lq * lq);
    }
    case PsiVariant::uniform_cutoff:
      return q <= Q_ ? 1.0 / double(Q_) : 0.0;
    case PsiVariant::power_decay:
      return c_ * std::pow(double(q), -s_);
    case PsiVariant::tabulated:
      return q <= std::int64_t(table_.size()) ? table_[std::size_t(q) - 1] : 0.0;
  }
  return 0.0;
}

double ApproxFunction::eval(std::span<const std::int64_t> a) const {
  double norm = 0.0;
  for (std::int64_t v : a) norm = std::max(norm, safe_abs(v));
  if (norm == 0.0)
    throw ZeroVectorError("Psi is only defined on nonzero integer vectors");
  return eval_scalar(std::int64_t(norm));
}

bool ApproxFunction::finite_support() const {
  return variant_ == PsiVariant::uniform_cutoff || variant_ == PsiVariant::tabulated;
}

std::int64_t ApproxFunction::support_bound() const {
  if (variant_ == PsiVariant::uniform_cutoff) return Q_;
  if (variant_ == PsiVariant::tabulated) {
    for (std::size_t i = table_.size(); i > 0; --i)
      if (table_[i - 1] > 0.0) return std::int64_t(i);
    return 0;
  }
  return -1;
}

bool ApproxFunction::globally_monotone() const { return monotone_from() == 1; }

std::int64_t ApproxFunction::monotone_from() const {
  switch (variant_) {
    case PsiVariant::log_square_decay:
      return 2;  // psi(2) = 1/(4 ln^2 2) > 1/2 = psi(1); non-increasing beyond
    case PsiVariant::uniform_cutoff:
    case PsiVariant::power_decay:
      return 1;
    case PsiVariant::tabulated: {
      // smallest q0 such that the table (padded with zero) never increases on
      // [q0, inf); always exists because the support is finite
      std::int64_t q0 = 1;
      double prev = table_[0];
      for (std::size_t i = 1; i < table_.size(); ++i) {
        if (table_[i] > prev) q0 = std::int64_t(i) + 1;
        prev = table_[i];
      }
      return q0;
    }
  }
  return 1;
}

namespace {

// weight monomials (power, coef): {(n-1, 1)} one-sided, shell expansion symmetric
std::vector<std::pair<int, double>> weight_monomials(int n, SumConvention conv) {
  if (conv == SumConvention::one_sided) return {{n - 1, 1.0}};
  return shell_monomials(n);
}

double weight_at(std::int64_t q, int n, SumConvention conv) {
  if (conv == SumConvention::one_sided) {
    double w = 1.0;
    for (int i = 1; i < n; ++i) w *= double(q);
    return w;
  }
  return shell_count(q, n);
}

SigmaResult finite_sigma(const ApproxFunction& psi, int m, int n, SumConvention conv) {
  const std::int64_t bound =
      psi.variant() == PsiVariant::uniform_cutoff ? psi.cutoff_Q()
                                                  : std::int64_t(psi.table().size());
  SigmaResult r;
  if (psi.variant() == PsiVariant::uniform_cutoff && bound > (std::int64_t(1) << 26)) {
    // closed forms so an absurd Q cannot stall the sum; the symmetric shell
    // counts telescope to (2Q+1)^n - 1
    const double Q = double(bound);
    const double scale = std::pow(Q, -double(m));
    if (conv == SumConvention::symmetric) {
      r.value = (std::pow(2.0 * Q + 1.0, n) - 1.0) * scale;
    } else if (n == 1) {
      r.value = Q * scale;
    } else if (n == 2) {
      r.value = 0.5 * Q * (Q + 1.0) * scale;
    } else if (n == 3) {
      r.value = Q * (Q + 1.0) * (2.0 * Q + 1.0) / 6.0 * scale;
    } else {
      throw std::invalid_argument("sigma_psi: cutoff too large for exact one-sided sum");
    }
    r.terms = bound;
    return r;
  }
  KahanSum acc;
  for (std::int64_t q = 1; q <= bound; ++q) {
    const double v = psi.eval_scalar(q);
    if (v == 0.0) continue;
    acc.add(weight_at(q, n, conv) * std::pow(v, double(m)));
  }
  r.value = acc.s;
  r.terms = bound;
  r.tail_error = psi.variant() == PsiVariant::tabulated ? psi.table_tail_bound() : 0.0;
  return r;
}

SigmaResult bracketed_sigma(const ApproxFunction& psi, int m, int n, double rel_tol,
                            SumConvention conv) {
  // series pieces valid from q >= 2; the q = 1 shell is added directly
  std::vector<Piece> pieces;
  const auto weights = weight_monomials(n, conv);
  if (psi.variant() == PsiVariant::log_square_decay) {
    if (m < n)
      throw DivergentSumError("sigma_psi: log-square decay series diverges for m < n");
    const double scale = std::pow(2.0, -double(m));
    for (const auto& [p, coef] : weights)
      pieces.push_back({coef * scale, double(p - m), m});
  } else {
    if (!(double(m) * psi.power_s() > double(n)))
      throw DivergentSumError("sigma_psi: power decay series diverges unless m*s > n");
    const double scale = std::pow(psi.power_c(), double(m));
    for (const auto& [p, coef] : weights)
      pieces.push_back({coef * scale, double(p) - double(m) * psi.power_s(), 0});
  }

  KahanSum acc;
  acc.add(weight_at(1, n, conv) * std::pow(psi.eval_scalar(1), double(m)));
  std::int64_t q = 2;
  std::int64_t checkpoint = 64;
  const std::int64_t cap = 200000000;
  SigmaResult r;
  while (true) {
    acc.add(weight_at(q, n, conv) * std::pow(psi.eval_scalar(q), double(m)));
    if (q == checkpoint || q == cap) {
      double lo = 0.0, hi = 0.0;
      for (const Piece& p : pieces) {
        lo += p.coef * piece_tail_lo(p, double(q) + 1.0);
        hi += p.coef * piece_tail_hi(p, double(q));
      }
      const double value = acc.s + 0.5 * (lo + hi);
      // half-width of the bracket plus a float-rounding allowance
      const double err = 0.5 * (hi - lo) +
                         8.0 * std::numeric_limits<double>::epsilon() * value;
      if (err <= rel_tol * value) {
        r.value = value;
        r.tail_error = err;
        r.terms = q;
        return r;
      }
      if (q == cap)
        throw std::invalid_argument("sigma_psi: rel_tol unreachable within the term cap");
      checkpoint = std::min(cap, checkpoint * 2);
    }
    ++q;
  }
}

}  // namespace

SigmaResult sigma_psi(const ApproxFunction& psi, int m, int n, double rel_tol,
                      SumConvention conv) {
  if (m < 1 || n < 1) throw std::invalid_argument("sigma_psi: need m >= 1 and n >= 1");
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
    throw std::invalid_argument("sigma_psi: rel_tol must be positive");
  if (psi.finite_support()) return finite_sigma(psi, m, n, conv);
  return bracketed_sigma(psi, m, n, rel_tol, conv);
}

CpsiResult c_psi(const ApproxFunction& psi, int n, std::int64_t cutoff) {
  if (n < 1) throw std::invalid_argument("c_psi: need n >= 1");
  if (cutoff < 1) throw std::invalid_argument("c_psi: cutoff must be >= 1");
  CpsiResult r;
  switch (psi.variant()) {
    case PsiVariant::log_square_decay: {
      if (n >= 2)
        throw DivergentSumError("c_psi: q^n/(2 q ln^2 q) is unbounded for n >= 2");
      // candidates: q=1 gives 1/2, q>=2 gives 1/(2 ln^2 q), maximal at q=2
      const double l2 = std::log(2.0);
      r.value = 1.0 / (2.0 * l2 * l2);
      r.arg = 2;
      return r;
    }
    case PsiVariant::power_decay: {
      if (psi.power_s() < double(n))
        throw DivergentSumError("c_psi: q^n * c q^(-s) is unbounded for s < n");
      // s >= n: k^(n-s) is non-increasing, sup at k = 1
      r.value = psi.power_c();
      r.arg = 1;
      return r;
    }
    case PsiVariant::uniform_cutoff:
    case PsiVariant::tabulated: {
      const std::int64_t support = psi.support_bound();
      const std::int64_t scan = std::min(cutoff, support);
      for (std::int64_t k = 1; k <= scan; ++k) {
        double t = psi.eval_scalar(k);
        for (int i = 0; i < n; ++i) t *= double(k);
        if (t > r.value) {
          r.value = t;
          r.arg = k;
        }
      }
      r.still_increasing_at_cutoff = support > cutoff;
      return r;
    }
  }
  return r;
}

double m_psi(const ApproxFunction& psi) {
  switch (psi.variant()) {
    case PsiVariant::log_square_decay: {
      const double l2 = std::log(2.0);
      return 1.0 / (4.0 * l2 * l2);  // psi(2), the true sup under natural log
    }
    case PsiVariant::uniform_cutoff:
      return 1.0 / double(psi.cutoff_Q());
    case PsiVariant::power_decay:
      return psi.power_c();
    case PsiVariant::tabulated:
      return *std::max_element(psi.table().begin(), psi.table().end());
  }
  return 0.0;
}

ApproxSummary summarize(const ApproxFunction& psi, int m, int n, double rel_tol,
                        std::int64_t c_cutoff) {
  ApproxSummary s;
  const SigmaResult os = sigma_psi(psi, m, n, rel_tol, SumConvention::one_sided);
  const SigmaResult sym = sigma_psi(psi, m, n, rel_tol, SumConvention::symmetric);
  s.sigma_one_sided = os.value;
  s.sigma_one_sided_tail = os.tail_error;
  s.sigma_symmetric = sym.value;
  s.sigma_symmetric_tail = sym.tail_error;
  const CpsiResult c = c_psi(psi, n, c_cutoff);
  s.c_psi = c.value;
  s.c_psi_certified = !c.still_increasing_at_cutoff;
  s.m_psi = m_psi(psi);
  s.globally_monotone = psi.globally_monotone();
  return s;
}

}  // namespace dioph
