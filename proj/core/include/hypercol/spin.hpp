#pragma once

// Model parameters, the (q+1)x(q+1) interaction matrix B, and exact
// partition-function oracles on graphs by exhaustive enumeration.
//
// Spin 0 is the "mixed" state (weights t^2 / t); spins 1..q are pure
// colours with an antiferromagnetic 0/1 block.

#include "hypercol/numerics.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace hypercol {

struct NotRegular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // multiset, no self-loops

  void add_edge(int u, int v);
  std::vector<int> degrees() const;
  // degree if regular, -1 otherwise
  int regular_degree() const;

  static Graph cycle(int m);
  static Graph path(int m);           // m vertices, m-1 edges
  static Graph complete(int n);
  static Graph hypercube(int dim);    // 2^dim vertices
  static Graph single_edge();

  static Graph load(std::istream& in);
  void save(std::ostream& out) const;
};

struct ModelParams {
  int q = 0;
  int k = 0;
  int K = 0;       // 2k
  int Delta = 0;
  int d = 0;       // Delta - 1
  Real t;          // (q^k - q)^(1/Delta)
  bool paper_regime = false;  // q even >= 4, k >= 2, d >= 5 q^k
  PrecisionContext ctx;

  BigInt qk_minus_q() const;  // t^Delta as an exact integer
};

ModelParams build_params(int q, int k, int Delta,
                         const PrecisionContext& ctx =
                             PrecisionContext::make());

struct InteractionMatrix {
  int q = 0;
  Real t;
  // entry over spins {0,..,q}
  Real operator()(int i, int j) const;
  std::vector<std::vector<Real>> dense() const;
};

InteractionMatrix build_interaction_matrix(const ModelParams& params);

// assignment over spins {0,..,q}; index = vertex
using Assignment = std::vector<int>;

Real weight(const Assignment& sigma, const Graph& g,
            const InteractionMatrix& B);

inline constexpr std::int64_t kDefaultEnumBudget = 100'000'000;

// Exact Z_B by enumeration of (q+1)^n assignments.  Requires G regular of
// degree params.Delta so every nonzero weight is the integer (q^k-q)^{n0}.
BigInt partition_function_zb_exact(const Graph& g, const ModelParams& params,
                                   std::int64_t budget = kDefaultEnumBudget);

// Float-mode Z_B; no regularity requirement.
Real partition_function_zb(const Graph& g, const ModelParams& params,
                           std::int64_t budget = kDefaultEnumBudget);

// number of monochromatic edges of sigma (pure q-colouring semantics)
std::int64_t mono_count(const Graph& g, const Assignment& sigma);

// histogram[m] = #assignments sigma: V -> [q] with mono_count == m.
// Z_potts(B) = sum_m histogram[m] B^m, exactly.
std::vector<BigInt> potts_mono_histogram(const Graph& g, int q,
                                         std::int64_t budget = kDefaultEnumBudget);

Real potts_partition(const Graph& g, int q, const Real& B_scalar,
                     std::int64_t budget = kDefaultEnumBudget);

}  // namespace hypercol
