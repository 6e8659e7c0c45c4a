#include "hypercol/first_moment.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace hypercol {

double entropy(const std::vector<double>& v) {
  double h = 0.0;
  for (double x : v) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

int tuple_colour_count(long long b, int q, int K, int i) {
  int t = 0;
  for (int s = 0; s < K; ++s) {
    if (b % q == i) ++t;
    b /= q;
  }
  return t;
}

double alpha_norm_kk(const std::vector<double>& alpha, int K) {
  double s = 0.0;
  for (double a : alpha) s += std::pow(a, K);
  return s;
}

namespace {

long long pow_ll(int q, int K) {
  long long p = 1;
  for (int s = 0; s < K; ++s) {
    if (p > 1'000'000 / q + 1) throw TooLarge("q^K exceeds the tuple budget");
    p *= q;
  }
  return p;
}

bool monochromatic_tuple(long long b, int q, int K) {
  const int c = static_cast<int>(b % q);
  for (int s = 1; s < K; ++s) {
    b /= q;
    if (b % q != c) return false;
  }
  return true;
}

}  // namespace

std::vector<double> beta_star(const std::vector<double>& alpha, int K) {
  const int q = static_cast<int>(alpha.size());
  const double norm = alpha_norm_kk(alpha, K);
  if (norm >= 1.0) {
    throw DomainError("beta_star undefined: ||alpha||_K^K >= 1 (point mass)");
  }
  const long long tuples = pow_ll(q, K);
  std::vector<double> beta(static_cast<std::size_t>(tuples), 0.0);
  for (long long b = 0; b < tuples; ++b) {
    if (monochromatic_tuple(b, q, K)) continue;
    double w = 1.0;
    long long rest = b;
    for (int s = 0; s < K; ++s) {
      w *= alpha[static_cast<std::size_t>(rest % q)];
      rest /= q;
    }
    beta[static_cast<std::size_t>(b)] = w / (1.0 - norm);
  }
  return beta;
}

double F_value(const PhasePair& pp, int Delta) {
  return -(Delta - 1) * entropy(pp.alpha) +
         (static_cast<double>(Delta) / pp.K) * entropy(pp.beta);
}

double G_value(const PhasePair& pp) {
  double g = entropy(pp.beta);
  for (int i = 0; i < pp.q; ++i) {
    double marginal = 0.0;
    for (long long b = 0; b < static_cast<long long>(pp.beta.size()); ++b) {
      const double bb = pp.beta[static_cast<std::size_t>(b)];
      if (bb > 0.0) marginal += tuple_colour_count(b, pp.q, pp.K, i) * bb;
    }
    // plus sign: with it, F = h(alpha) + (Delta/K) G on the marginal
    // polytope and beta_star attains G = ln(1 - ||alpha||_K^K)
    if (marginal > 0.0) g += std::log(pp.alpha[static_cast<std::size_t>(i)]) * marginal;
  }
  return g;
}

double F_upper_bound(int q, int K, double Delta) {
  return std::log(q) + (Delta / K) * std::log1p(-std::pow(q, 1 - K));
}

double F_upper_bound_surrogate(int q, int K, double Delta) {
  return std::log(q) - Delta / (K * std::pow(q, K - 1));
}

double threshold_delta(int q, int K) {
  return K * std::pow(q, K - 1) * std::log(q);
}

bool is_uncolourable_regime(int q, int K, double Delta) {
  // The branching degree d = Delta - 1 must clear the threshold; at
  // q=2, K=3 this flips between Delta = 9 and Delta = 10.
  return Delta - 1.0 > threshold_delta(q, K);
}

namespace {

// h(alpha) + (Delta/K) ln(1 - ||alpha||_K^K); -inf at point masses.
double reduced_objective(const std::vector<double>& alpha, int K, double Delta) {
  const double norm = alpha_norm_kk(alpha, K);
  if (norm >= 1.0) return -std::numeric_limits<double>::infinity();
  return entropy(alpha) + (Delta / K) * std::log1p(-norm);
}

// Enumerates integer points c with lo_i <= c_i <= hi_i and sum = total.
void for_each_composition(const std::vector<int>& lo, const std::vector<int>& hi,
                          int total,
                          const std::function<void(const std::vector<int>&)>& fn) {
  const int q = static_cast<int>(lo.size());
  std::vector<int> c(static_cast<std::size_t>(q), 0);
  std::vector<int> lo_suffix(static_cast<std::size_t>(q) + 1, 0);
  std::vector<int> hi_suffix(static_cast<std::size_t>(q) + 1, 0);
  for (int i = q - 1; i >= 0; --i) {
    lo_suffix[static_cast<std::size_t>(i)] =
        lo_suffix[static_cast<std::size_t>(i) + 1] + lo[static_cast<std::size_t>(i)];
    hi_suffix[static_cast<std::size_t>(i)] =
        hi_suffix[static_cast<std::size_t>(i) + 1] + hi[static_cast<std::size_t>(i)];
  }
  std::function<void(int, int)> rec = [&](int i, int rem) {
    if (i == q) {
      fn(c);
      return;
    }
    const int from = std::max(lo[static_cast<std::size_t>(i)],
                              rem - hi_suffix[static_cast<std::size_t>(i) + 1]);
    const int to = std::min(hi[static_cast<std::size_t>(i)],
                            rem - lo_suffix[static_cast<std::size_t>(i) + 1]);
    for (int v = from; v <= to; ++v) {
      c[static_cast<std::size_t>(i)] = v;
      rec(i + 1, rem - v);
    }
  };
  if (lo_suffix[0] <= total && total <= hi_suffix[0]) rec(0, total);
}

}  // namespace

GridMaximum maximize_F_grid(int q, int K, double Delta, int grid_resolution) {
  if (q < 2 || K < 2 || grid_resolution < 1) {
    throw InvalidParams("maximize_F_grid: need q,K >= 2 and resolution >= 1");
  }
  pow_ll(q, K);  // enforce the q^K budget

  GridMaximum best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<int> best_c;
  int best_g = grid_resolution;  // resolution at which best_c was recorded

  int g = grid_resolution;
  std::vector<int> lo(static_cast<std::size_t>(q), 0);
  std::vector<int> hi(static_cast<std::size_t>(q), g);

  constexpr int kRounds = 3;
  constexpr int kRefine = 10;
  for (int round = 0; round <= kRounds; ++round) {
    std::vector<double> alpha(static_cast<std::size_t>(q));
    for_each_composition(lo, hi, g, [&](const std::vector<int>& c) {
      for (int i = 0; i < q; ++i) {
        alpha[static_cast<std::size_t>(i)] =
            static_cast<double>(c[static_cast<std::size_t>(i)]) / g;
      }
      const double val = reduced_objective(alpha, K, Delta);
      if (val > best.value) {
        best.value = val;
        best.alpha = alpha;
        best_c = c;
        best_g = g;
      }
    });
    if (round == kRounds) break;
    // Zoom: one coarse cell around the incumbent at 10x the resolution.
    const int g_new = g * kRefine;
    const int scale = g_new / best_g;
    for (int i = 0; i < q; ++i) {
      const int centre = best_c[static_cast<std::size_t>(i)] * scale;
      lo[static_cast<std::size_t>(i)] = std::max(0, centre - kRefine);
      hi[static_cast<std::size_t>(i)] = std::min(g_new, centre + kRefine);
    }
    g = g_new;
  }
  return best;
}

}  // namespace hypercol
