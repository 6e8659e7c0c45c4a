#include <doctest.h>

#include "hypercol/scalar_systems.hpp"
#include "hypercol/tree_recursion.hpp"

using namespace hypercol;

namespace {

const PrecisionContext kCtx = PrecisionContext::make();

ModelParams regime(int q, int k) {
  int qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;
  return build_params(q, k, 5 * qk + 1, kCtx);
}

}  // namespace

TEST_CASE("TypeTriple::make sorts descending and checks the budget") {
  PrecisionScope scope(kCtx);
  const TypeTriple t = TypeTriple::make(Real(1), Real(3), Real(0), 4);
  CHECK(t.q1 == 3);
  CHECK(t.q2 == 1);
  CHECK(t.q3 == 0);
  CHECK_THROWS_AS(TypeTriple::make(Real(3), Real(3), Real(0), 4),
                  InvalidParams);
}

TEST_CASE("tree_step preserves normalization and positivity") {
  PrecisionScope scope(kCtx);
  const ModelParams p = build_params(4, 2, 81, kCtx);
  std::vector<Real> C(p.q + 1, Real(1) / (p.q + 1));
  const auto R = tree_step(C, p);
  REQUIRE(R.size() == static_cast<std::size_t>(p.q + 1));
  Real sum = 0;
  for (const Real& r : R) {
    CHECK(r > 0);
    sum += r;
  }
  CHECK(abs(sum - 1) < Real("1e-40"));
  // colour symmetry of the uniform input is preserved
  for (int i = 2; i <= p.q; ++i) CHECK(abs(R[i] - R[1]) < Real("1e-40"));
}

TEST_CASE("reduced step agrees with the full step on expanded vectors") {
  PrecisionScope scope(kCtx);
  const ModelParams p = build_params(4, 2, 81, kCtx);
  const TypeTriple qv = TypeTriple::make(Real(2), Real(1), Real(1), 4);
  std::array<Real, 4> C{Real("0.4"), Real("0.2"), Real("0.1"), Real("0.05")};
  // normalize in the reduced chart
  Real norm = C[0] + 2 * C[1] + 1 * C[2] + 1 * C[3];
  for (Real& c : C) c /= norm;
  const auto R_red = tree_step_reduced(C, qv, p);

  const std::vector<Real> C_full = expand_reduced(C, qv, p.q);
  const auto R_full = tree_step(C_full, p);
  const std::vector<Real> R_exp = expand_reduced(R_red, qv, p.q);
  REQUIRE(R_full.size() == R_exp.size());
  for (std::size_t i = 0; i < R_full.size(); ++i) {
    CHECK(abs(R_full[i] - R_exp[i]) < Real("1e-40"));
  }
}

TEST_CASE("symmetric two-spin solution and its degree bound") {
  PrecisionScope scope(kCtx);
  for (int q : {4, 6, 8, 10}) {
    for (int k : {2, 3}) {
      const ModelParams p = regime(q, k);
      CAPTURE(q);
      CAPTURE(k);
      const Real x = solve_symmetric_q00(p);
      CHECK(x > 1);
      CHECK(p.t * x + p.q - 1 < p.d);  // quantitative bound
      // u = x^{1/d} solves u - 1 = 1/(t^{d+1} u^d + q - 1)
      const Real u = symmetric_u(p);
      const Real resid =
          u - 1 -
          1 / (Real(p.qk_minus_q()) * pow1p(u - 1, Real(p.d)) + p.q - 1);
      CHECK(abs(resid) < Real("1e-25"));
    }
  }
}

TEST_CASE("asymmetric two-spin solution and its size bound") {
  PrecisionScope scope(kCtx);
  for (int q : {4, 6, 8, 10}) {
    for (int k : {2, 3}) {
      const ModelParams p = regime(q, k);
      CAPTURE(q);
      CAPTURE(k);
      const auto [x, y] = solve_asymmetric_q00(p);
      CHECK(x > y);
      CHECK(y > 1);
      CHECK(x > Real(p.d) * p.d / Real(p.qk_minus_q()));  // x > d^2/(q^k-q)
      // distinct from the symmetric solution -> three distinct fixpoints
      const Real xs = solve_symmetric_q00(p);
      CHECK(abs(x - xs) > 1);
      CHECK(abs(y - xs) > Real("1e-6"));
    }
  }
}

TEST_CASE("two-spin fixpoints close the recursion") {
  PrecisionScope scope(kCtx);
  const ModelParams p = regime(4, 2);
  const auto [x, y] = solve_asymmetric_q00(p);
  // x = lambda f(y), y = lambda f(x) with f(z) = ((B z + 1)/(z + g))^d
  const Real beta = p.t / p.q;
  const Real gamma = Real(p.q - 1) / p.t;
  const Real lambda = exp(p.d * log(Real(p.q)));
  CHECK(abs(ising_step(y, beta, gamma, lambda, p.d) - x) <
        Real("1e-20") * x);
  CHECK(abs(ising_step(x, beta, gamma, lambda, p.d) - y) <
        Real("1e-20") * y);
}

TEST_CASE("half-half fixpoint structure") {
  PrecisionScope scope(kCtx);
  const ModelParams p = regime(4, 2);
  const FixpointRC fp = solve_half_half(p);
  CHECK(fp.qvec.q1 == 2);
  CHECK(fp.qvec.q2 == 2);
  CHECK(fp.qvec.q3 == 0);
  CHECK(fp.residual < sqrt(kCtx.abs_tol));
  // pairing: R1/R2 == C2/C1 (the two halves swap roles between sides)
  CHECK(abs(fp.R[1] / fp.R[2] - fp.C[2] / fp.C[1]) <
        Real("1e-20") * fp.R[1] / fp.R[2]);
  // R and C are genuinely asymmetric
  CHECK(abs(fp.R[1] - fp.C[1]) > Real("1e-10"));
}

TEST_CASE("general solver reproduces the half-half point from rough inits") {
  PrecisionScope scope(kCtx);
  const ModelParams p = regime(4, 2);
  const FixpointRC ref = solve_half_half(p);
  const TypeTriple qv = ref.qvec;
  std::array<Real, 8> init{ref.R[0] * Real("1.7"), ref.R[1] * Real("0.6"),
                           ref.R[2], Real(0),
                           ref.C[0], ref.C[1] * Real("1.3"),
                           ref.C[2], Real(0)};
  const FixpointRC fp = solve_general_type(qv, p, init);
  CHECK(fp.residual < sqrt(kCtx.abs_tol));
  // cross-solver agreement at 1e-20 relative on each active coordinate
  for (int i : {0, 1, 2}) {
    CHECK(abs(fp.R[i] - ref.R[i]) < Real("1e-20") * ref.R[i]);
    CHECK(abs(fp.C[i] - ref.C[i]) < Real("1e-20") * ref.C[i]);
  }
}

TEST_CASE("fixpoint residual detects non-fixpoints") {
  PrecisionScope scope(kCtx);
  const ModelParams p = regime(4, 2);
  FixpointRC fp = solve_half_half(p);
  fp.R[1] *= Real("1.01");
  CHECK(fixpoint_residual(fp, p) > Real("1e-6"));
}

TEST_CASE("expand_reduced lays out multiplicity classes") {
  PrecisionScope scope(kCtx);
  const TypeTriple qv = TypeTriple::make(Real(2), Real(1), Real(1), 4);
  const std::array<Real, 4> v{Real(10), Real(1), Real(2), Real(3)};
  const auto full = expand_reduced(v, qv, 4);
  REQUIRE(full.size() == 5);
  CHECK(full[0] == 10);
  CHECK(full[1] == 1);
  CHECK(full[2] == 1);
  CHECK(full[3] == 2);
  CHECK(full[4] == 3);
}
