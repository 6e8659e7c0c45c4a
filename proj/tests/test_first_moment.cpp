#include <doctest.h>

#include <cmath>
#include <random>

#include "hypercol/first_moment.hpp"

using namespace hypercol;

TEST_CASE("entropy basics") {
  CHECK(entropy({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(std::log(4.0)));
  CHECK(entropy({1.0, 0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(entropy({0.5, 0.5}) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("tuple colour counts sum to K") {
  const int q = 3, K = 4;
  long long nK = 81;
  for (long long b = 0; b < nK; ++b) {
    int total = 0;
    for (int i = 0; i < q; ++i) total += tuple_colour_count(b, q, K, i);
    CHECK(total == K);
  }
}

TEST_CASE("beta_star is a feasible maximizer of G") {
  const int q = 3, K = 3;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> alpha(q);
    double s = 0;
    for (double& a : alpha) {
      a = w(rng);
      s += a;
    }
    for (double& a : alpha) a /= s;
    const auto beta = beta_star(alpha, K);

    // normalization and monochromatic zeros
    double total = 0;
    long long mono_hits = 0;
    long long nK = 27;
    for (long long b = 0; b < nK; ++b) {
      total += beta[b];
      bool mono = true;
      for (int i = 0; i < q && mono; ++i) {
        const int c = tuple_colour_count(b, q, K, i);
        mono = (c == 0 || c == K);
      }
      if (mono) {
        CHECK(beta[b] == 0.0);
        ++mono_hits;
      }
    }
    CHECK(mono_hits == q);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // marginals of the unconstrained maximizer: the product measure loses
    // the monochromatic mass of each colour, so
    // sum_b t_ib beta*_b = K (alpha_i - alpha_i^K) / (1 - ||alpha||_K^K);
    // they sum to K and collapse to K alpha_i exactly at uniform alpha
    double msum = 0;
    const double denom = 1.0 - alpha_norm_kk(alpha, K);
    for (int i = 0; i < q; ++i) {
      double m = 0;
      for (long long b = 0; b < nK; ++b) {
        m += tuple_colour_count(b, q, K, i) * beta[b];
      }
      const double want = K * (alpha[i] - std::pow(alpha[i], K)) / denom;
      CHECK(m == doctest::Approx(want).epsilon(1e-12));
      msum += m;
    }
    CHECK(msum == doctest::Approx(static_cast<double>(K)).epsilon(1e-12));

    // G at beta_star equals ln(1 - ||alpha||_K^K)
    PhasePair pp{q, K, alpha, beta};
    CHECK(G_value(pp) ==
          doctest::Approx(std::log(1.0 - alpha_norm_kk(alpha, K)))
              .epsilon(1e-10));

  }
}

TEST_CASE("G(alpha, beta) <= G(alpha, beta_star) on random feasible beta") {
  // feasible betas generated by symmetrizing beta_star over tuple positions
  // keeps the marginals; perturb within the kernel of the marginal map.
  const int q = 2, K = 3;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> w(0.2, 0.8);
  int compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> alpha{w(rng), 0.0};
    alpha[1] = 1.0 - alpha[0];
    auto beta = beta_star(alpha, K);
    PhasePair star{q, K, alpha, beta};
    const double g_star = G_value(star);

    // kernel direction: tuples (0,0,1),(0,1,0) swap counts t_ib equally,
    // as do (1,1,0),(1,0,1); shifting mass within such an orbit preserves
    // the marginals.  Tuple index b = c0 + 2 c1 + 4 c2.
    auto betam = beta;
    const double eps = 0.4 * std::min(betam[4], betam[2]);
    betam[4] += eps;  // (0,0,1)
    betam[2] -= eps;  // (0,1,0)
    PhasePair moved{q, K, alpha, betam};
    CHECK(G_value(moved) <= g_star + 1e-12);
    ++compared;
  }
  CHECK(compared == 100);
}

TEST_CASE("F decomposition and the upper bound chain") {
  const int q = 2, K = 3, Delta = 10;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> w(0.05, 1.0);

  // On the marginal polytope, F = h(alpha) + (Delta/K) G as an algebraic
  // identity and F <= h(alpha) + (Delta/K) ln(1-||alpha||) <= the closed
  // form bound.  Sample feasible pairs by drawing beta on the non-mono
  // tuples and reading alpha off its marginals.
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> beta(8, 0.0);
    double s = 0.0;
    for (long long b = 1; b < 7; ++b) {  // 0 and 7 are monochromatic
      beta[static_cast<std::size_t>(b)] = w(rng);
      s += beta[static_cast<std::size_t>(b)];
    }
    for (double& x : beta) x /= s;
    std::vector<double> alpha(q, 0.0);
    for (int i = 0; i < q; ++i) {
      double m = 0.0;
      for (long long b = 0; b < 8; ++b) {
        m += tuple_colour_count(b, q, K, i) * beta[static_cast<std::size_t>(b)];
      }
      alpha[static_cast<std::size_t>(i)] = m / K;
    }
    PhasePair pp{q, K, alpha, beta};
    const double f = F_value(pp, Delta);
    const double via_g =
        entropy(alpha) + (static_cast<double>(Delta) / K) * G_value(pp);
    CHECK(f == doctest::Approx(via_g).epsilon(1e-10));
    const double relaxed = entropy(alpha) + (static_cast<double>(Delta) / K) *
                                                std::log1p(-alpha_norm_kk(alpha, K));
    CHECK(f <= relaxed + 1e-12);
    CHECK(relaxed <= F_upper_bound(q, K, Delta) + 1e-12);
  }

  // At uniform alpha the maximizer lies on the polytope and every
  // inequality is tight: F(alpha_u, beta*) equals the closed-form bound.
  std::vector<double> uniform{0.5, 0.5};
  PhasePair tight{q, K, uniform, beta_star(uniform, K)};
  CHECK(F_value(tight, Delta) ==
        doctest::Approx(F_upper_bound(q, K, Delta)).epsilon(1e-12));
}

TEST_CASE("uncolourability threshold at q=2, K=3") {
  CHECK(threshold_delta(2, 3) == doctest::Approx(12.0 * std::log(2.0)));
  CHECK(F_upper_bound(2, 3, 10) ==
        doctest::Approx(std::log(2.0) + (10.0 / 3.0) * std::log(0.75)));
  CHECK(F_upper_bound(2, 3, 10) < 0);
  CHECK(std::abs(F_upper_bound_surrogate(2, 3, threshold_delta(2, 3))) < 1e-12);
  CHECK_FALSE(is_uncolourable_regime(2, 3, 8));
  CHECK_FALSE(is_uncolourable_regime(2, 3, 9));
  CHECK(is_uncolourable_regime(2, 3, 10));
  // monotone in Delta
  bool prev = false;
  for (int Delta = 2; Delta <= 40; ++Delta) {
    const bool cur = is_uncolourable_regime(2, 3, Delta);
    CHECK((!prev || cur));
    prev = cur;
  }
}

TEST_CASE("grid maximization of the reduced first-moment objective") {
  SUBCASE("argmax at uniform, value matches closed form") {
    const GridMaximum m = maximize_F_grid(2, 3, 10, 24);
    CHECK(m.alpha.size() == 2);
    CHECK(m.alpha[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(m.value == doctest::Approx(F_upper_bound(2, 3, 10)).epsilon(1e-9));
    CHECK(m.value < 0);
  }
  SUBCASE("positive maximum at small Delta") {
    const GridMaximum m = maximize_F_grid(2, 3, 2, 24);
    CHECK(m.value > 0);
  }
  SUBCASE("value never exceeds the closed-form upper bound") {
    for (int Delta : {2, 5, 10, 20}) {
      const GridMaximum m = maximize_F_grid(2, 3, Delta, 16);
      CHECK(m.value <= F_upper_bound(2, 3, Delta) + 1e-12);
    }
    const GridMaximum m3 = maximize_F_grid(3, 4, 30, 12);
    CHECK(m3.value <= F_upper_bound(3, 4, 30) + 1e-12);
  }
}

TEST_CASE("beta_star domain error at point masses") {
  CHECK_THROWS_AS(beta_star({1.0, 0.0}, 3), DomainError);
}

TEST_CASE("q^K budget guard") {
  CHECK_THROWS_AS(maximize_F_grid(10, 7, 10, 8), TooLarge);
}
