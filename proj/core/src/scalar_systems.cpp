#include "hypercol/scalar_systems.hpp"

#include <algorithm>

namespace hypercol {

namespace {

// t^{d+1} = t^Delta = q^k - q, exact.
Real t_pow_dp1(const ModelParams& p) { return Real(p.qk_minus_q()); }

Real pow_int(const Real& x, long n) { return exp(n * log(x)); }

// ((x^{d+1}-1)/(x^d-1))^d t^{d+1} - (x^d-1)/(x-1), the head shared by
// h, h1, h2.
Real scalar_head(const Real& x, const ModelParams& p) {
  const long d = p.d;
  const Real ratio = pow_m1_ratio(x, d + 1) / pow_m1_ratio(x, d);
  return pow_int(ratio, d) * t_pow_dp1(p) - pow_m1_ratio(x, d);
}

}  // namespace

Real geometric_sum(const Real& x, int n) { return pow_m1_ratio(x, n); }

Real eval_h(const Real& x, const ModelParams& p) {
  if (p.q % 2 != 0) throw InvalidParams("eval_h needs even q");
  const long qp = p.q / 2;
  return scalar_head(x, p) + qp + (qp - 1) * pow_int(x, p.d);
}

Real eval_h1(const Real& x, const ModelParams& p) {
  return scalar_head(x, p) + p.q - pow_int(x, p.d);
}

Real eval_h2(const Real& x, const ModelParams& p) {
  return scalar_head(x, p) + (p.q - 1) * pow_int(x, p.d);
}

namespace {

// Right endpoint 1 + 1/(t^{d+1}-1) bounding every f1/f2 zero, and a left
// endpoint just above the x = 1 singularity of the root searches.
Real boundary_bound(const ModelParams& p) {
  return 1 + 1 / (t_pow_dp1(p) - 1);
}

Real left_endpoint(const ModelParams& p) {
  return 1 + (boundary_bound(p) - 1) / 1000000;
}

}  // namespace

Real root_h(const ModelParams& p) {
  const auto f = [&](const Real& x) { return eval_h(x, p); };
  try {
    return certified_unique_root(f, left_endpoint(p), boundary_bound(p), p.ctx);
  } catch (const NoSignChange&) {
    throw NoRoot("h has no sign change on (1, 1 + 1/(t^{d+1}-1)]");
  }
}

Real root_h1_smallest(const ModelParams& p) {
  const auto f = [&](const Real& x) { return eval_h1(x, p); };
  // Scan for the first sign change; h1 < 0 on (1, x_star).
  const Real lo = left_endpoint(p);
  const Real hi = boundary_bound(p);
  const int grid = 2048;
  Real prev_x = lo;
  Real prev_f = f(lo);
  if (prev_f >= 0) throw NoRoot("h1 not negative just above 1");
  for (int i = 1; i <= grid; ++i) {
    const Real x = lo + (hi - lo) * i / grid;
    const Real fx = f(x);
    if (fx >= 0) {
      Bracket br{prev_x, x, -1, 1};
      return bracketed_root(f, br, p.ctx);
    }
    prev_x = x;
    prev_f = fx;
  }
  throw NoRoot("h1 has no sign change on (1, 1 + 1/(t^{d+1}-1)]");
}

Real root_h2(const ModelParams& p) {
  const auto f = [&](const Real& x) { return eval_h2(x, p); };
  try {
    return certified_unique_root(f, left_endpoint(p), boundary_bound(p), p.ctx);
  } catch (const NoSignChange&) {
    throw NoRoot("h2 has no sign change on (1, 1 + 1/(t^{d+1}-1)]");
  }
}

Real symmetric_u(const ModelParams& p) {
  const Real tdp1 = t_pow_dp1(p);
  const auto f = [&](const Real& u) {
    return u - 1 - 1 / (tdp1 * pow_int(u, p.d) + p.q - 1);
  };
  const Real hi = 1 + Real(1) / (p.q - 1);
  return certified_unique_root(f, Real(1), hi, p.ctx);
}

Real eval_f1(const Real& x, const Real& y, const ModelParams& p) {
  const long d = p.d;
  const Real xd_m1 = pow_m1(x, d);           // x^d - 1
  const Real arg = (xd_m1 + 1) * (y - 1) / xd_m1;
  const Real yd = pow_int(y, d);
  return (x - 1) * (pow1p(arg, Real(d)) * t_pow_dp1(p) + p.q - yd) - yd + 1;
}

Real eval_f2(const Real& x, const Real& y, const ModelParams& p) {
  const long d = p.d;
  const Real yd_m1 = pow_m1(y, d);
  const Real arg = (yd_m1 + 1) * (x - 1) / yd_m1;
  const Real xd = pow_int(x, d);
  return (y - 1) * (pow1p(arg, Real(d)) * t_pow_dp1(p) + (p.q - 1) * xd) - xd + 1;
}

Real x0_crossing(const ModelParams& p) {
  const long d = p.d;
  const Real target = log(t_pow_dp1(p));
  // ln g(x) = d ln P_d(x) - (d-1) ln P_{d+1}(x) with P_n = (x^n-1)/(x-1).
  const auto log_g = [&](const Real& x) {
    return d * log(pow_m1_ratio(x, d)) - (d - 1) * log(pow_m1_ratio(x, d + 1));
  };
  const auto f = [&](const Real& x) { return log_g(x) - target; };

  // g decreases from d^d/(d+1)^{d-1} to 1; expand until it dips below t^{d+1}.
  Real lo = left_endpoint(p);
  if (f(lo) <= 0) throw NoRoot("g already below t^{d+1} next to 1");
  Real hi = boundary_bound(p);
  int expansions = 0;
  while (f(hi) > 0) {
    hi = 1 + (hi - 1) * 2;
    if (++expansions > 200) throw NoRoot("no crossing of g with t^{d+1}");
  }
  // Monotonicity spot check on the search interval.
  Real prev = log_g(lo);
  for (int i = 1; i <= 64; ++i) {
    const Real x = lo + (hi - lo) * i / 64;
    const Real cur = log_g(x);
    if (cur >= prev) throw NumericError("g failed the decreasing check");
    prev = cur;
  }
  const Real x0 = bracketed_root(f, make_bracket(f, lo, hi), p.ctx);
  // Consistency: f1 on the diagonal collapses to q(x0 - 1) at the crossing.
  const Real lhs = eval_f1(x0, x0, p);
  const Real rhs = p.q * (x0 - 1);
  if (abs(lhs - rhs) > p.ctx.abs_tol + 1e-20 * abs(rhs)) {
    throw NumericError("f1(x0,x0) != q(x0-1) at the g-crossing");
  }
  return x0;
}

namespace {

// The unique y in (1, x] with f1(x, y) = 0 (df1/dy < 0 there).
Real solve_f1_for_y(const Real& x, const ModelParams& p) {
  const auto f = [&](const Real& y) { return eval_f1(x, y, p); };
  const Real lo = 1 + (x - 1) / 1000000000;
  Bracket br = make_bracket(f, lo, x);
  return bracketed_root(f, br, p.ctx);
}

}  // namespace

CurveTrace trace_P1_plus(const ModelParams& p, int n_points) {
  if (n_points < 2) throw InvalidParams("trace needs at least 2 points");
  CurveTrace trace;
  trace.which = CurveId::f1;

  const Real x_star = root_h1_smallest(p);
  const Real lo = left_endpoint(p);
  const Real base_step = (x_star - lo) / n_points;

  Real x = lo;
  Real prev_y = solve_f1_for_y(x, p);
  trace.points.push_back({x, prev_y, abs(eval_f1(x, prev_y, p))});
  Real step = base_step;
  while (x < x_star) {
    Real next_x = x + step;
    if (next_x > x_star) next_x = x_star;
    Real y;
    try {
      y = solve_f1_for_y(next_x, p);
    } catch (const NumericError&) {
      // Record nothing for this x; skip ahead.
      x = next_x;
      continue;
    }
    if (abs(y - prev_y) > 2 * (next_x - x) && (next_x - x) > base_step / 1024) {
      step /= 2;  // keep |dy| <= 2|dx|
      continue;
    }
    trace.points.push_back({next_x, y, abs(eval_f1(next_x, y, p))});
    prev_y = y;
    x = next_x;
    step = std::min(step * 2, base_step);
  }
  return trace;
}

std::vector<Real> solve_f2_for_x(const Real& y, const ModelParams& p) {
  const Real slack = y - p.q * (y - 1);
  if (y <= 1 || slack <= 0) {
    throw DomainError("solve_f2_for_x needs 1 < y < 1 + 1/(q-1)");
  }
  const auto f = [&](const Real& x) { return eval_f2(x, y, p); };

  // All critical points of x -> f2(x,y) past chi carry negative values, so
  // sampling densely up to chi and expanding past it until f2 turns
  // positive sees every sign change.
  const Real chi = exp((p.d * log(y) - log(slack)) / (p.d - 1));
  std::vector<Real> grid;
  const int dense = 512;
  for (int i = 1; i <= dense; ++i) grid.push_back(1 + (chi - 1) * i / dense);
  Real ext = chi;
  for (int m = 0; m < 400; ++m) {
    ext = 1 + (ext - 1) * Real("1.05");
    grid.push_back(ext);
    if (f(ext) > 0) break;
  }

  std::vector<Real> roots;
  Real prev_x = grid.front();
  Real prev_f = f(prev_x);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Real fx = f(grid[i]);
    if ((prev_f < 0) != (fx < 0)) {
      Bracket br{prev_x, grid[i], prev_f < 0 ? -1 : 1, fx < 0 ? -1 : 1};
      roots.push_back(bracketed_root(f, br, p.ctx));
    }
    prev_x = grid[i];
    prev_f = fx;
  }
  if (roots.size() > 2) {
    throw NumericError("f2(., y) produced more than two roots");
  }
  return roots;
}

bool exterior_point_check(const ModelParams& p) {
  BigInt qk = 1;
  for (int i = 0; i < p.k; ++i) qk *= p.q;
  if (p.d != 5 * qk) throw RegimeMismatch("exterior check requires d = 5 q^k");
  const Real tdp1 = t_pow_dp1(p);
  const Real s = p.d / (tdp1 - 1);
  const Real x1 = 1 + s / p.d;        // = 1 + 1/(t^{d+1}-1)
  const Real y_E = 1 + s / (2 * p.d); // = 1 + 0.5/(t^{d+1}-1)
  return eval_f2(x1, y_E, p) < 0 && eval_f2(y_E, y_E, p) < 0;
}

IntersectionPoint find_intersection_near_diagonal(const ModelParams& p) {
  const Real tdp1 = t_pow_dp1(p);
  const Real y_E = 1 + Real("0.5") / (tdp1 - 1);
  const Real x_star = root_h1_smallest(p);

  // M: largest x in [y_E, x_star] with f1(x, y_E) = 0.
  const auto f1_at_yE = [&](const Real& x) { return eval_f1(x, y_E, p); };
  const int grid = 1024;
  Real x_M;
  {
    bool found = false;
    Real prev_x = x_star;
    Real prev_f = f1_at_yE(prev_x);
    for (int i = 1; i <= grid; ++i) {
      const Real x = x_star + (y_E - x_star) * i / grid;  // downward
      const Real fx = f1_at_yE(x);
      if ((prev_f < 0) != (fx < 0)) {
        Bracket br{x, prev_x, fx < 0 ? -1 : 1, prev_f < 0 ? -1 : 1};
        x_M = bracketed_root(f1_at_yE, br, p.ctx);
        found = true;
        break;
      }
      prev_x = x;
      prev_f = fx;
    }
    if (!found) throw NoSignChange("no point of the f1 branch at height y_E");
  }

  // f2 along the branch changes sign between M and (x_star, x_star).
  const auto f2_on_curve = [&](const Real& x) {
    return eval_f2(x, solve_f1_for_y(x, p), p);
  };
  if (!(f2_on_curve(x_M) < 0)) {
    throw NoSignChange("f2 not negative at the start of the walk");
  }
  Bracket br = make_bracket(f2_on_curve, x_M, x_star);
  const Real x = bracketed_root(f2_on_curve, br, p.ctx);
  const Real y = solve_f1_for_y(x, p);
  if (!(x > y && y > y_E)) {
    throw NumericError("intersection violates x > y > y_E");
  }

  IntersectionPoint pt;
  pt.x = x;
  pt.y = y;
  pt.r0 = p.t * ((x - 1) / pow_m1(y, p.d) + x);
  pt.c0 = p.t * ((y - 1) / pow_m1(x, p.d) + y);
  pt.f1_residual = abs(eval_f1(x, y, p));
  pt.f2_residual = abs(eval_f2(x, y, p));

  // Consistency with the reduced critical-point relations at (q,0,0):
  //   x = (c0^d t + q - 1) / (c0^d t + q - y^d)
  //   y = (r0^d t + q x^d - 1) / (r0^d t + (q-1) x^d)
  //   r0 = (c0^d t^2 + q t) / (c0^d t + q - y^d)
  const Real c0dt = pow_int(pt.c0, p.d) * p.t;
  const Real r0dt = pow_int(pt.r0, p.d) * p.t;
  const Real xd = pow_int(x, p.d);
  const Real yd = pow_int(y, p.d);
  const Real tol = sqrt(p.ctx.abs_tol);
  if (abs(x - (c0dt + p.q - 1) / (c0dt + p.q - yd)) > tol ||
      abs(y - (r0dt + p.q * xd - 1) / (r0dt + (p.q - 1) * xd)) > tol ||
      abs(pt.r0 - (c0dt * p.t + p.q * p.t) / (c0dt + p.q - yd)) > tol) {
    throw NumericError("reconstructed r0/c0 fail the reduced relations");
  }
  return pt;
}

bool sym_bound_check(const ModelParams& p) {
  if (p.q < 4 || p.k < 2) throw InvalidParams("sym_bound_check needs q>=4, k>=2");
  BigInt qk = 1;
  for (int i = 0; i < p.k; ++i) qk *= p.q;
  const Real qkr(qk);
  const Real expo = pow1p(1 / (2 * qkr - 2 * (p.q + 1)), Real(5) * qkr);
  const bool inequality = 1 + 3 * p.q - 2 * qkr + (qkr - p.q) * expo > 0;

  // Chain: c3 = (u(r^d-1)+1)/r^d < u < 1 + 0.5/(t^{d+1}-1) at sample r > 1.
  const Real u = symmetric_u(p);
  const Real y_E = 1 + Real("0.5") / (t_pow_dp1(p) - 1);
  bool chain = u < y_E;
  for (const Real& r : {boundary_bound(p), 1 + (boundary_bound(p) - 1) / 7}) {
    const Real rd = pow_int(r, p.d);
    const Real c3 = (u * (rd - 1) + 1) / rd;
    chain = chain && c3 < u;
  }
  return inequality && chain;
}

LandmarkSet compute_landmarks(const ModelParams& p) {
  LandmarkSet lm;
  lm.x_hat = root_h(p);
  lm.x_star = root_h1_smallest(p);
  lm.x_2star = root_h2(p);
  lm.x_0 = x0_crossing(p);
  lm.y_E = 1 + Real("0.5") / (t_pow_dp1(p) - 1);
  lm.u = symmetric_u(p);
  lm.x_E = 0;
  for (const Real& r : solve_f2_for_x(lm.y_E, p)) {
    if (r > lm.y_E) lm.x_E = r;  // the root beyond y_E
  }
  if (lm.x_E == 0) throw NoRoot("no f2 root beyond y_E");
  return lm;
}

}  // namespace hypercol
