#pragma once

// First-moment functionals over the phase polytope S_q and the
// non-colourability threshold for random Delta-regular K-uniform
// hypergraphs.  Double precision throughout: every quantity here is an
// entropy-scale bound, not a certified root.

#include "hypercol/numerics.hpp"

#include <vector>

namespace hypercol {

// alpha: colour frequencies on vertices; beta: frequencies on ordered
// colour K-tuples (hyperedge slots), indexed base-q with slot 0 least
// significant.  Monochromatic tuples must carry zero mass.
struct PhasePair {
  int q = 0;
  int K = 0;
  std::vector<double> alpha;  // length q
  std::vector<double> beta;   // length q^K
};

// -sum v_i ln v_i with 0 ln 0 = 0.
double entropy(const std::vector<double>& v);

// Occurrences of colour i in tuple index b (base-q, K slots).
int tuple_colour_count(long long b, int q, int K, int i);

// ||alpha||_K^K = sum alpha_i^K.
double alpha_norm_kk(const std::vector<double>& alpha, int K);

// Closed-form maximizer of G_alpha over the beta slice of S_q:
// beta*_b = prod_i alpha_i^{t_{i,b}} 1[b not monochromatic] / (1 - ||alpha||_K^K).
// Throws DomainError when ||alpha||_K^K >= 1 (point masses).
std::vector<double> beta_star(const std::vector<double>& alpha, int K);

// F(alpha,beta) = -(Delta-1) h(alpha) + (Delta/K) h(beta).
double F_value(const PhasePair& pp, int Delta);

// G(alpha,beta) = h(beta) + sum_i ln(alpha_i) sum_b t_{i,b} beta_b,
// maximized by beta_star at ln(1 - ||alpha||_K^K); on the marginal
// polytope F = h(alpha) + (Delta/K) G.
double G_value(const PhasePair& pp);

// ln( q (1 - q^{1-K})^{Delta/K} ).
double F_upper_bound(int q, int K, double Delta);

// ln q - Delta/(K q^{K-1}): the ln(1-x) <= -x relaxation of
// F_upper_bound; crosses zero exactly at threshold_delta.
double F_upper_bound_surrogate(int q, int K, double Delta);

// K q^{K-1} ln q
double threshold_delta(int q, int K);

// Delta - 1 > K q^{K-1} ln q  (the conservative threshold on the branching
// degree; F_upper_bound is already negative slightly below it).
bool is_uncolourable_regime(int q, int K, double Delta);

struct GridMaximum {
  double value = 0.0;
  std::vector<double> alpha;
};

// Maximizes h(alpha) + (Delta/K) ln(1 - ||alpha||_K^K), i.e. F at
// beta = beta*(alpha), over the simplex lattice of the given resolution
// with three 10x local refinement rounds.  Requires q^K <= 10^6.
GridMaximum maximize_F_grid(int q, int K, double Delta, int grid_resolution);

}  // namespace hypercol
