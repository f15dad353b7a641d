#pragma once

#include <cstdint>
#include <span>

#include "dioph/approxfn.hpp"
#include "dioph/errors.hpp"
#include "dioph/logreal.hpp"

// Constant chain for badly-approximable points on nondegenerate manifolds:
// simplex volume bound -> inductive separation constant -> admissible radius
// -> transversality chain rho -> covering constants -> the final kappa with
// its three competing branches. Everything is evaluated in log10 domain; the
// intermediate constants routinely overflow any IEEE format.

namespace dioph {

struct ManifoldParams {
  int d = 1;   // manifold dimension
  int n = 2;   // ambient dimension (number of coordinate functions), n > d
  int l = 1;   // nondegeneracy order
  double s0 = 1.0;      // lower derivative scale, 0 < s0 <= M
  double M = 1.0;       // upper derivative bound, M >= 1
  double L_star = 0.0;  // sup of second partials on the doubled ball; 0 -> M
};

void validate(const ManifoldParams& p);

// phi(omega, B, k) = omega^(k(k-1)/2) / (2 sqrt(2) B^k (k+1)!)
LogReal phi_volume(const LogReal& omega, const LogReal& B, int k);

// sigma(l, d) = 2^(-3l(d-1)/2) * phi(omega0, 2, l)^(d-1) with
// omega0 = (sqrt(2) (2l)^(2 + l(l-1)/2) (l+1)!)^(-1); equals 1 when d = 1
LogReal sigma_ld(int l, int d);

struct BallConstants {
  LogReal v_d;  // volume of the unit ball
  LogReal n_d;  // Besicovitch covering multiplicity bound, 5^d
  LogReal k_d;  // 4^(2d+1) d^(d/2) N_d / V_d
};
BallConstants besicovitch_and_ball(int d);

// eta = min{ 1/16, (V_d / (2^(d+2) d l (l+1)^(1/l) 5^d))^(d(2l-1)(2l-2)) };
// the exponent vanishes at l = 1, so eta = 1/16 there
LogReal eta_const(int l, int d);

struct RadiusBound {
  LogReal r_max;
  LogReal arm_sigma;  // s0 sigma(l,d) / (2 * 3^(n+d+2) sqrt(d) M)
  LogReal arm_eta;    // eta s0 / (4e7 * 3^(n+d+2) d M l^(l+2) (l+1)!)
};
RadiusBound radius_bound(const ManifoldParams& p);

struct RhoChain {
  LogReal tau;   // r^l s0 / (4 l^l (l+1)!)
  LogReal rho1;  // tau 2^l / sqrt(d)
  LogReal rho2;
  LogReal rho;   // rho1 rho2 / sqrt(rho1^2 + (rho2 + 2 M^2)^2)
};
RhoChain rho_chain(const ManifoldParams& p, const LogReal& r);

struct GoodConstants {
  LogReal c1_star;
  LogReal c_dl;
  LogReal c_big;
  long alpha_num = 1;  // alpha = 1 / (d(2l-1)), kept as an exact rational
  long alpha_den = 1;
};
GoodConstants good_constants(const ManifoldParams& p);

// E = C (n+1) (3^d N_d)^(n+1) rho^(-1/(d(2l-1)))
LogReal e_constant(const ManifoldParams& p, const LogReal& rho);

struct Epsilon1 {
  LogReal epsilon1;  // max(delta', (delta' K T1...Tn / max Ti)^(1/(n+1)))
  LogReal product;   // delta' K T1...Tn / max Ti, must be <= 1
};
// throws RestrictionViolatedError when the product exceeds 1
Epsilon1 epsilon1(const LogReal& delta_prime, const LogReal& K, std::span<const double> T);
bool check_restriction(const LogReal& delta_prime, const LogReal& K, std::span<const double> T);

// measure bound E (sqrt(n+d+1) eps1)^(1/(d(2l-1))) * V_d r^d
LogReal theorem4_bound(const ManifoldParams& p, const LogReal& r, const LogReal& delta_prime,
                       const LogReal& K, std::span<const double> T);

struct SnResult {
  double value = 0.0;
  double tail_error = 0.0;
};
// S = sum over t in Z^n of 2^(-||t||_inf / (2d(2l-1)(n+1)))
SnResult s_n_sum(int n, int d, int l, double rel_tol);

// every constant the pipeline produced, in the order it produced them
struct ConstantsLedger {
  ManifoldParams params;
  double delta = 0.0;
  double sigma_psi = 0.0;  // symmetric series at m = 1
  double c_psi = 0.0;
  bool r_auto = true;
  LogReal r, r_max, r_arm_sigma, r_arm_eta;
  LogReal v_d, n_d, k_d, sigma, eta;
  LogReal tau, rho1, rho2, rho;
  LogReal c1_star, c_dl, c_big;
  long alpha_num = 1, alpha_den = 1;
  LogReal l_bound;  // L = max(L*, 1/(4 r^2))
  LogReal e_big, k0;
  double s_n = 0.0, s_n_tail = 0.0;
  LogReal branch_sup, branch_measure, branch_series;
  LogReal kappa;
  int active_branch = 0;  // 0 sup, 1 measure, 2 series
};

// r_request zero => auto (r = r_max); otherwise r must satisfy r <= r_max or
// RadiusTooLargeError is thrown with r_max in the message. The summary must
// carry a certified c_psi, a globally monotone psi, and the symmetric series
// at m = 1.
ConstantsLedger kappa_theorem5(const ManifoldParams& p, const LogReal& r_request,
                               const ApproxSummary& summary, double delta);

}  // namespace dioph
