#pragma once

// Constructive reductions: halving, gadget discovery by trimming,
// equality / Potts edge gadgets, parallel-edge powering.

#include "hypercol/hypergraph.hpp"
#include "hypercol/spin.hpp"

#include <iosfwd>

namespace hypercol {

struct NotUncolourable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyS : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WrongQ : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GadgetKind { disequality, equality };

struct Gadget {
  Hypergraph h;
  int u = -1, v = -1;
  GadgetKind kind = GadgetKind::disequality;
  int q = 0;
  BigInt C0 = 0;  // colourings per ordered pair (i,j), i != j

  void save(std::ostream& out) const;  // hypergraph + trailer "u v kind C0"
  static Gadget load(std::istream& in);
};

// Each G-edge becomes one 2k-ary hyperedge over the clone clusters.
Hypergraph halve(const Graph& g, int k);

// Remove hyperedges (input order) while Z_col stays 0; the result is
// minimally non-q-colourable.
Hypergraph trim_to_minimal(const Hypergraph& h, int q,
                           std::int64_t budget = kDefaultEnumBudget);

// The H_1..H_i splitting sequence on the lexicographically first hyperedge;
// returns a verified disequality gadget.
Gadget build_disequality_gadget(const Hypergraph& h_min, int q,
                                std::int64_t budget = kDefaultEnumBudget);

// Chains two q=2 disequality gadgets through a shared middle vertex.
Gadget build_equality_gadget(const Gadget& dis,
                             std::int64_t budget = kDefaultEnumBudget);

// (sigma_u, sigma_v) -> number of proper colourings of the gadget.
std::vector<std::vector<BigInt>> gadget_pair_counts(
    const Hypergraph& h, int u, int v, int q,
    std::int64_t budget = kDefaultEnumBudget);

// Each edge (u,v) replaced by three gadget copies on (u,w1), (w2,w1), (v,w2).
Hypergraph potts_edge_gadget_replace(const Graph& g, const Gadget& dis);

struct PottsIdentityReport {
  bool holds = false;
  BigInt lhs;            // Z_col(H_G)
  BigInt rhs;            // C^{|E|} Z_B(G), cleared of denominators
  BigInt C;              // ((q-2)^2 + (q-1)) C0^3
  BigInt same_count;     // gadget-edge colourings, equal endpoints
  BigInt diff_count;     // gadget-edge colourings, distinct endpoints
  bool direct_enumeration = false;  // lhs by full enumeration vs composition
};

// Checks Z_col(H_G) = C^{|E|} Z_potts(G, B) exactly, B = 1 - 1/(q^2-3q+3).
// Z_col side: full enumeration when within budget, otherwise exact
// transfer composition of the per-gadget pair counts.
PottsIdentityReport verify_potts_identity(const Graph& g, const Gadget& dis,
                                          std::int64_t budget = kDefaultEnumBudget);

// Each edge duplicated s times: Z_potts(G', B) = Z_potts(G, B^s).
Graph parallel_power(const Graph& g, int s);

}  // namespace hypercol
