#pragma once

// The Phi matrix norm, the reduced objective over type triples, its
// q-space derivatives, the phase transformation, and the dominant-phase
// search.

#include "hypercol/numerics.hpp"
#include "hypercol/spin.hpp"
#include "hypercol/tree_recursion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypercol {

struct ZeroInteraction : NumericError {
  using NumericError::NumericError;
};
struct InfeasiblePoint : NumericError {
  using NumericError::NumericError;
};
struct NotCritical : NumericError {
  using NumericError::NumericError;
};

struct PhasePoint {
  std::vector<Real> alpha, beta;  // length q+1, each summing to 1
};

// Delta * ln( R^T B C / (||R||_p ||C||_p) ), p = Delta/(Delta-1).
Real phi_norm(const std::vector<Real>& R, const std::vector<Real>& C,
              const ModelParams& params);

// The interaction sum S(q,r,c) whose positivity defines feasibility:
// R0C0t^2 + (sum qR)C0t + (sum qC)R0t + (sum qR)(sum qC) - sum qRC.
Real interaction_sum(const TypeTriple& qvec, const std::array<Real, 4>& R,
                     const std::array<Real, 4>& C, const ModelParams& params);

// (d+1) ln S - d ln(R0^{(d+1)/d} + sum q_i R_i^{(d+1)/d}) - d ln(same for C).
Real phi_S_bar(const TypeTriple& qvec, const std::array<Real, 4>& R,
               const std::array<Real, 4>& C, const ModelParams& params);

struct PhiBarResult {
  Real value;
  std::array<Real, 4> R, C;
};

// max over (R,C) of phi_S_bar at fixed qvec: multi-start damped fixpoint
// iteration; asserts the interior conditions at the winner.
PhiBarResult phi_bar(const TypeTriple& qvec, const ModelParams& params);

// Closed-form critical-point derivative
// dPhi/dq_i = (R_iC_0t + R_0C_it + (d-1)R_iC_i + R_i sum qC + C_i sum qR)/S,
// cross-checked against central finite differences of phi_S_bar.
std::array<Real, 3> dphi_dq(const TypeTriple& qvec, const std::array<Real, 4>& R,
                            const std::array<Real, 4>& C,
                            const ModelParams& params);

// alpha_i = R_i^p / ||R||_p^p, beta_j = C_j^p / ||C||_p^p.
PhasePoint to_phase(const std::vector<Real>& R, const std::vector<Real>& C,
                    const ModelParams& params);

struct Candidate {
  std::string label;
  std::optional<FixpointRC> fixpoint;  // empty when the solver failed
  Real phi_value;
  std::string verdict;   // stable | unstable | marginal | n/a
  std::string note;      // failure reason when fixpoint is empty
};

struct DominanceReport {
  std::vector<Candidate> candidates;  // sorted by phi_value descending
  int winner = -1;
  bool balanced = false;               // alpha == beta at the winner
  bool permutation_symmetric = false;  // swap(alpha,beta) = colour-permuted
  bool heuristic_regime = false;       // parameters outside the proven regime
};

// Assembles half-half, symmetric and asymmetric (q,0,0), and lattice
// general-type candidates; ranks by phi_S_bar with stability verdicts.
DominanceReport dominant_search(const ModelParams& params);

}  // namespace hypercol
