#pragma once

// Hypergraph data model, exact colouring counts, the halving fiber map,
// and the configuration-model sampler.

#include "hypercol/numerics.hpp"
#include "hypercol/spin.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hypercol {

struct NotProper : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Indivisible : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Hypergraph {
  int n = 0;
  std::vector<std::vector<int>> edges;  // sorted vertex lists

  void add_edge(std::vector<int> e);    // sorts; rejects repeated vertices
  std::vector<int> degrees() const;
  // uniform arity, or nullopt for mixed sizes / no edges
  std::optional<int> uniform_arity() const;
  // pairwise hyperedge intersections all of size <= 1
  bool is_simple() const;

  static Hypergraph fano_plane();       // 7 points, 7 lines, q=2-uncolourable
  static Hypergraph load(std::istream& in);
  void save(std::ostream& out) const;
};

using Colouring = std::vector<int>;  // vertex -> colour in [0, q)

// Exact number of q-colourings with no monochromatic hyperedge.
BigInt count_colourings(const Hypergraph& h, int q,
                        std::int64_t budget = kDefaultEnumBudget);

// Enumerates proper colourings, invoking fn on each; returns the count.
BigInt for_each_colouring(const Hypergraph& h, int q, std::int64_t budget,
                          const std::function<void(const Colouring&)>& fn);

// Pairing-model Delta-regular K-uniform multihypergraph.  A hyperedge with a
// repeated vertex marks the draw non-simple; it is kept verbatim in
// raw_edges so the caller can reject.
struct ConfigurationDraw {
  Hypergraph h;                          // only valid if repeated_vertex == false
  std::vector<std::vector<int>> raw_edges;
  bool repeated_vertex = false;
  std::uint64_t seed = 0;
};

ConfigurationDraw sample_configuration_model(int n, int Delta, int K,
                                             std::uint64_t seed);

// Rejection loop: resample until simple (no repeated vertices, pairwise
// intersections <= 1) or the retry cap is hit.
std::optional<ConfigurationDraw> sample_simple_configuration(
    int n, int Delta, int K, std::uint64_t seed, int max_retries = 1000);

// phi: proper colourings of H_G = halve(G,k)  ->  nonzero-weight spin
// assignments of G.  Clone i of vertex v has index v*k + i.
Assignment phi_map(const Colouring& tau, const Graph& g, int k);

// |phi^{-1}(sigma)| = (q^k - q)^{n0(sigma)}
BigInt fiber_size(const Assignment& sigma, int k, int q);

}  // namespace hypercol
