#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

// Sign + log10-magnitude scalar. The manifold constant chain produces values
// like 10^(-50000) that no IEEE double can hold; every constant in that chain
// is carried as a LogReal and only mirrored back to a double when |log10| is
// small enough (see linear_or_nan).

namespace dioph {

class LogReal {
 public:
  LogReal() = default;

  static LogReal zero() { return LogReal(); }
  static LogReal one() { return from_log10(0.0); }

  static LogReal from_double(double v) {
    if (std::isnan(v)) throw std::invalid_argument("LogReal: NaN input");
    if (v == 0.0) return LogReal();
    LogReal r;
    r.sign_ = v > 0 ? 1 : -1;
    r.lg_ = std::log10(std::fabs(v));
    return r;
  }

  static LogReal from_log10(double lg, int sign = 1) {
    if (std::isnan(lg)) throw std::invalid_argument("LogReal: NaN exponent");
    if (sign == 0) return LogReal();
    LogReal r;
    r.sign_ = sign > 0 ? 1 : -1;
    r.lg_ = lg;
    return r;
  }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool positive() const { return sign_ > 0; }

  // log10 of |x|; -inf for zero
  double log10_abs() const { return lg_; }

  double to_double() const {
    if (sign_ == 0) return 0.0;
    return sign_ * std::pow(10.0, lg_);
  }

  // linear mirror for reports: NaN marks "outside the double-friendly window"
  double linear_or_nan() const {
    if (sign_ == 0) return 0.0;
    if (std::fabs(lg_) >= 280.0) return std::numeric_limits<double>::quiet_NaN();
    return to_double();
  }

  LogReal operator-() const {
    LogReal r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  friend LogReal operator*(const LogReal& a, const LogReal& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return LogReal();
    return from_log10(a.lg_ + b.lg_, a.sign_ * b.sign_);
  }

  friend LogReal operator/(const LogReal& a, const LogReal& b) {
    if (b.sign_ == 0) throw std::domain_error("LogReal: division by zero");
    if (a.sign_ == 0) return LogReal();
    return from_log10(a.lg_ - b.lg_, a.sign_ * b.sign_);
  }

  friend LogReal operator+(const LogReal& a, const LogReal& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    const LogReal& big = (a.lg_ >= b.lg_) ? a : b;
    const LogReal& sml = (a.lg_ >= b.lg_) ? b : a;
    const double d = sml.lg_ - big.lg_;  // <= 0
    if (a.sign_ == b.sign_)
      return from_log10(big.lg_ + std::log1p(std::pow(10.0, d)) / kLn10, a.sign_);
    if (a.lg_ == b.lg_) return LogReal();  // exact cancellation
    // 1 - 10^d via expm1 keeps precision when the magnitudes are close
    const double m = -std::expm1(d * kLn10);
    return from_log10(big.lg_ + std::log10(m), big.sign_);
  }

  friend LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

  // real exponent; base must be positive (zero allowed for e > 0)
  LogReal pow(double e) const {
    if (sign_ == 0) {
      if (e > 0) return LogReal();
      throw std::domain_error("LogReal: 0 raised to non-positive power");
    }
    if (sign_ < 0) throw std::domain_error("LogReal: pow of negative value");
    if (e == 0.0) return one();
    return from_log10(lg_ * e);
  }

  LogReal sqrt() const { return pow(0.5); }

  friend bool operator==(const LogReal& a, const LogReal& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.lg_ == b.lg_);
  }
  friend bool operator<(const LogReal& a, const LogReal& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.lg_ < b.lg_ : a.lg_ > b.lg_;
  }
  friend bool operator>(const LogReal& a, const LogReal& b) { return b < a; }
  friend bool operator<=(const LogReal& a, const LogReal& b) { return !(b < a); }
  friend bool operator>=(const LogReal& a, const LogReal& b) { return !(a < b); }

  static constexpr double kLn10 = 2.302585092994045684;

 private:
  int sign_ = 0;
  double lg_ = -std::numeric_limits<double>::infinity();
};

inline LogReal min(const LogReal& a, const LogReal& b) { return a < b ? a : b; }
inline LogReal max(const LogReal& a, const LogReal& b) { return a < b ? b : a; }

// k! as LogReal: exact below 21!, log-gamma beyond
inline LogReal factorial_log(unsigned k) {
  if (k <= 20) {
    double v = 1.0;
    for (unsigned i = 2; i <= k; ++i) v *= double(i);
    return LogReal::from_double(v);
  }
  return LogReal::from_log10(std::lgamma(double(k) + 1.0) / LogReal::kLn10);
}

// base^e for a plain positive base
inline LogReal pow_log(double base, double e) {
  if (base <= 0.0) throw std::domain_error("pow_log: base must be positive");
  return LogReal::from_log10(e * std::log10(base));
}

}  // namespace dioph
