#include <doctest.h>

#include "hypercol/scalar_systems.hpp"

using namespace hypercol;

namespace {

const PrecisionContext kCtx = PrecisionContext::make();

ModelParams regime(int q, int k) {
  int qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;
  return build_params(q, k, 5 * qk + 1, kCtx);
}

}  // namespace

TEST_CASE("geometric_sum stable near 1") {
  PrecisionScope scope(kCtx);
  CHECK(abs(geometric_sum(Real(1), 9) - 9) == 0);
  CHECK(abs(geometric_sum(Real(2), 4) - 15) < Real("1e-60"));
  const Real x = 1 + Real("1e-40");
  CHECK(abs(geometric_sum(x, 5) - 5) < Real("1e-38"));
}

TEST_CASE("landmark ordering across the regime grid") {
  PrecisionScope scope(kCtx);
  for (int q : {4, 6, 8, 10}) {
    for (int k : {2, 3}) {
      const ModelParams p = regime(q, k);
      CAPTURE(q);
      CAPTURE(k);
      const LandmarkSet lm = compute_landmarks(p);
      // x0 > x_star > x_2star, all above 1 and inside the boundary bound
      CHECK(lm.x_0 > lm.x_star);
      CHECK(lm.x_star > lm.x_2star);
      CHECK(lm.x_2star > 1);
      const Real bound = 1 + 1 / (Real(p.qk_minus_q()) - 1);
      CHECK(lm.x_0 < bound);
      CHECK(lm.y_E > 1);
      CHECK(lm.y_E < lm.x_2star);
      CHECK(lm.x_E > lm.y_E);
      CHECK(lm.u > 1);

      // the scalar functions actually vanish there
      CHECK(abs(eval_h(lm.x_hat, p)) < Real("1e-20"));
      CHECK(abs(eval_h1(lm.x_star, p)) < Real("1e-20"));
      CHECK(abs(eval_h2(lm.x_2star, p)) < Real("1e-20"));
    }
  }
}

TEST_CASE("x0 is the crossing of g with t^{d+1}") {
  PrecisionScope scope(kCtx);
  const ModelParams p = regime(6, 3);
  const Real x0 = x0_crossing(p);
  // g(x) = P_d(x)^d / P_{d+1}(x)^{d-1} equals t^{d+1} = q^k - q at x0
  const Real lhs = p.d * log(geometric_sum(x0, p.d)) -
                   (p.d - 1) * log(geometric_sum(x0, p.d + 1));
  CHECK(abs(lhs - log(Real(p.qk_minus_q()))) < Real("1e-25"));
  // consistency: f1(x0, x0) = q (x0 - 1)
  CHECK(abs(eval_f1(x0, x0, p) - p.q * (x0 - 1)) < Real("1e-25"));
}

TEST_CASE("f1 diagonal matches h-type roots") {
  PrecisionScope scope(kCtx);
  const ModelParams p = regime(6, 3);
  const Real xs = root_h1_smallest(p);
  // f1(x, x) = (x-1) h1-head relation: the diagonal zero of f1 sits at x*
  CHECK(abs(eval_f1(xs, xs, p)) < Real("1e-22"));
}

TEST_CASE("exterior point checks on the regime grid") {
  PrecisionScope scope(kCtx);
  for (int q : {4, 6, 8, 10}) {
    for (int k : {2, 3}) {
      const ModelParams p = regime(q, k);
      CAPTURE(q);
      CAPTURE(k);
      CHECK(exterior_point_check(p));
      CHECK(sym_bound_check(p));
    }
  }
  // wrong degree is rejected
  CHECK_THROWS_AS(exterior_point_check(build_params(4, 2, 100, kCtx)),
                  RegimeMismatch);
}

TEST_CASE("near-diagonal intersection of the two critical curves") {
  PrecisionScope scope(kCtx);
  for (int q : {4, 6}) {
    for (int k : {2, 3}) {
      const ModelParams p = regime(q, k);
      CAPTURE(q);
      CAPTURE(k);
      const IntersectionPoint ip = find_intersection_near_diagonal(p);
      const Real y_E = 1 + Real("0.5") / (Real(p.qk_minus_q()) - 1);
      CHECK(ip.x > ip.y);
      CHECK(ip.y > y_E);
      CHECK(abs(ip.f1_residual) < Real("1e-25"));
      CHECK(abs(ip.f2_residual) < Real("1e-25"));
      CHECK(abs(eval_f1(ip.x, ip.y, p)) < Real("1e-25"));
      CHECK(abs(eval_f2(ip.x, ip.y, p)) < Real("1e-25"));
      // below but near the diagonal; the relative gap shrinks as d grows
      CHECK(ip.x - ip.y < (ip.x - 1) / 2);
      if (k == 3) CHECK(ip.x - ip.y < (ip.x - 1) / 10);
    }
  }
}

TEST_CASE("P1+ trace stays below the diagonal and satisfies f1") {
  PrecisionScope scope(kCtx);
  const ModelParams p = regime(6, 3);
  const CurveTrace tr = trace_P1_plus(p, 40);
  CHECK(tr.which == CurveId::f1);
  CHECK(tr.points.size() >= 40);
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    const CurvePoint& pt = tr.points[i];
    CHECK(pt.y <= pt.x);
    CHECK(abs(eval_f1(pt.x, pt.y, p)) < Real("1e-20"));
    if (i > 0) CHECK(pt.x >= tr.points[i - 1].x);
  }
}

TEST_CASE("f2 slices have at most two roots") {
  PrecisionScope scope(kCtx);
  const ModelParams p = regime(6, 3);
  const Real y_E = 1 + Real("0.5") / (Real(p.qk_minus_q()) - 1);
  const auto roots = solve_f2_for_x(y_E, p);
  CHECK(roots.size() <= 2);
  for (const Real& r : roots) {
    CHECK(abs(eval_f2(r, y_E, p)) < Real("1e-22"));
  }
}
