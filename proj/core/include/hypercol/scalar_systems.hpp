#pragma once

// Scalar root systems and the two-dimensional f1/f2 curve analysis:
// landmark roots, curve tracing, intersection and exterior-point checks.

#include "hypercol/numerics.hpp"
#include "hypercol/spin.hpp"

#include <vector>

namespace hypercol {

struct NoRoot : NumericError {
  using NumericError::NumericError;
};
struct RegimeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class CurveId { f1, f2 };

struct CurvePoint {
  Real x, y, residual;
};

struct CurveTrace {
  CurveId which = CurveId::f1;
  std::vector<CurvePoint> points;
};

struct LandmarkSet {
  Real x_hat;    // unique root of h on (1, inf)
  Real x_star;   // smallest root of h1
  Real x_2star;  // unique root of h2
  Real x_0;      // crossing g(x_0) = t^{d+1}
  Real y_E;      // 1 + 0.5/(t^{d+1}-1)
  Real x_E;      // the f2(., y_E) root beyond y_E
  Real u;        // symmetric one-step 2-spin scale
};

// (x^n - 1)/(x - 1), stable near x = 1.
Real geometric_sum(const Real& x, int n);

// h(x)  = ((x^{d+1}-1)/(x^d-1))^d t^{d+1} - (x^d-1)/(x-1) + q' + (q'-1) x^d
// h1(x) = same head + q - x^d
// h2(x) = same head + (q-1) x^d
Real eval_h(const Real& x, const ModelParams& params);
Real eval_h1(const Real& x, const ModelParams& params);
Real eval_h2(const Real& x, const ModelParams& params);

// Unique root of h on (1, 1 + 1/(t^{d+1}-1)], certified by sign scan.
Real root_h(const ModelParams& params);
// Smallest root of h1 (h1 < 0 before it, verified by scan).
Real root_h1_smallest(const ModelParams& params);
// Unique root of h2.
Real root_h2(const ModelParams& params);

// u - (1 + 1/(t^{d+1} u^d + q - 1)); its root > 1 is the scale of the
// symmetric one-step solution x = (t u)^d.
Real symmetric_u(const ModelParams& params);

// f1(x,y) = (x-1)((1 + x^d(y-1)/(x^d-1))^d t^{d+1} + q - y^d) - y^d + 1
// f2(x,y) = (y-1)((1 + y^d(x-1)/(y^d-1))^d t^{d+1} + (q-1) x^d) - x^d + 1
Real eval_f1(const Real& x, const Real& y, const ModelParams& params);
Real eval_f2(const Real& x, const Real& y, const ModelParams& params);

// Unique crossing of g(x) = (x^d-1)^d / ((x^{d+1}-1)^{d-1}(x-1)) with
// t^{d+1}; checks g is decreasing on a sample grid and that
// f1(x_0, x_0) = q(x_0 - 1).
Real x0_crossing(const ModelParams& params);

// The branch of f1(x,y) = 0 with 1 < y <= x <= x_star, one y per x
// (df1/dy < 0 there); adaptive x-steps keep |dy| <= 2|dx|.
CurveTrace trace_P1_plus(const ModelParams& params, int n_points);

// Roots x > 1 of f2(x, y) for fixed y in (1, 1 + 1/(q-1)); at most two.
std::vector<Real> solve_f2_for_x(const Real& y, const ModelParams& params);

// With s = d/(t^{d+1}-1): f2(1 + s/d, 1 + s/(2d)) < 0 and
// f2(y_E, y_E) < 0.  Requires d = 5 q^k.
bool exterior_point_check(const ModelParams& params);

struct IntersectionPoint {
  Real x, y;        // f1 = f2 = 0, x > y > y_E
  Real r0, c0;      // reconstructed via r0/t = (x-1)/(y^d-1) + x etc.
  Real f1_residual, f2_residual;
};

// Walks the f1 branch from the last f2-negative point at height y_E
// toward (x_star, x_star) and bisects the f2 sign change along it.
IntersectionPoint find_intersection_near_diagonal(const ModelParams& params);

// 1 + 3q - 2q^k + (q^k - q)(1 + 1/(2q^k - 2(q+1)))^{5 q^k} > 0, together
// with the chain c3 < u < 1 + 0.5/(t^{d+1}-1).
bool sym_bound_check(const ModelParams& params);

LandmarkSet compute_landmarks(const ModelParams& params);

}  // namespace hypercol
