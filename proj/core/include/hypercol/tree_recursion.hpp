#pragma once

// Fixpoints of the tree recursion: the full (q+1)-spin step, the reduced
// 8-coordinate iteration with colour-class multiplicities, and the scalar
// half-half and (q,0,0) solvers.

#include "hypercol/numerics.hpp"
#include "hypercol/spin.hpp"

#include <array>

namespace hypercol {

struct NoAsymmetricFixpoint : NumericError {
  using NumericError::NumericError;
};

// Multiplicities of the (up to three) distinct pure-colour values,
// canonically sorted descending; q1 + q2 + q3 = q.
struct TypeTriple {
  Real q1, q2, q3;

  static TypeTriple make(const Real& a, const Real& b, const Real& c, int q);
};

struct FixpointRC {
  TypeTriple qvec;
  std::array<Real, 4> R;  // (R0, R1, R2, R3), R0 + sum q_i R_i = 1
  std::array<Real, 4> C;  // (C0, C1, C2, C3), C0 + sum q_i C_i = 1
  Real residual;          // max violation of the full critical-point system
};

// One step of the full (q+1)-spin recursion, normalized to sum 1:
//   R0 ∝ t^d (t C0 + sum_j C_j)^d,  R_i ∝ (t C0 + sum_{j != i} C_j)^d.
std::vector<Real> tree_step(const std::vector<Real>& C,
                            const ModelParams& params);

// Reduced step on (V0..V3) with multiplicities qvec; same formulas with
// sum_j C_j = sum q_i C_i.
std::array<Real, 4> tree_step_reduced(const std::array<Real, 4>& C,
                                      const TypeTriple& qvec,
                                      const ModelParams& params);

// Standard 2-spin tree step lambda ((beta y + 1)/(y + gamma))^d; with
// beta = t/q, gamma = (q-1)/t, lambda = q^d it reproduces the (q,0,0)
// subsystem x = t^d ((t y + q)/(t y + q - 1))^d.
Real ising_step(const Real& y, const Real& beta, const Real& gamma,
                const Real& lambda, int d);

// Unique x > 0 with x = ((t^2 x + q t)/(t x + q - 1))^d, via the monotone
// scale u = x^{1/d}/t.  Checks t x + q - 1 < d and u < 1+0.5/(t^{d+1}-1).
Real solve_symmetric_q00(const ModelParams& params);

// The x > y solution of the 2-spin pair system
//   x = t^d ((t y + q)/(t y + q - 1))^d  (and symmetrically for y);
// x is the largest root of the two-step map, bracketed downward from
// 10 d^2/(q^k - q).  Asserts x > d^2/(q^k - q).
std::pair<Real, Real> solve_asymmetric_q00(const ModelParams& params);

// The unique (q/2, q/2, 0) fixpoint from the scalar root x of h:
// classes (x^d, 1) and (1, x^d) against R0 = C0 = r0^d.
FixpointRC solve_half_half(const ModelParams& params);

// Damped log-domain iteration of the reduced critical-point system from
// a positive init; converged when the full-system residual <= abs_tol.
FixpointRC solve_general_type(const TypeTriple& qvec, const ModelParams& params,
                              const std::array<Real, 8>& init,
                              const Real& damping = Real("0.5"));

// Residual of a normalized reduced point under the critical-point system.
Real fixpoint_residual(const FixpointRC& fp, const ModelParams& params);

// Expands reduced coordinates to the full (q+1)-vector (integer qvec only).
std::vector<Real> expand_reduced(const std::array<Real, 4>& V,
                                 const TypeTriple& qvec, int q);

}  // namespace hypercol
