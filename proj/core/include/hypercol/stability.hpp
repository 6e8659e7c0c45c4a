#pragma once

// Jacobian stability of tree-recursion fixpoints via the A/L matrices:
// generic singular-value path with type-specific closed-form spectra as
// cross-checks.

#include "hypercol/numerics.hpp"
#include "hypercol/spin.hpp"
#include "hypercol/tree_recursion.hpp"

#include <string>
#include <vector>

namespace hypercol {

struct ZeroMarginal : NumericError {
  using NumericError::NumericError;
};

using Matrix = std::vector<std::vector<Real>>;

// A_ij = B_ij R_i C_j / sqrt(alpha_i beta_j) with alpha_i = sum_j B_ij R_i C_j,
// beta_j = sum_i B_ij R_i C_j; L = [[0, A], [A^T, 0]].
std::pair<Matrix, Matrix> build_A_L(const std::vector<Real>& R,
                                    const std::vector<Real>& C,
                                    const ModelParams& params);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
std::vector<Real> symmetric_eigenvalues(Matrix S, const PrecisionContext& ctx);

// Singular values of A (descending); the spectrum of L is +-(these).
std::vector<Real> singular_values(const Matrix& A, const PrecisionContext& ctx);

// Full 2(q+1) spectra from the closed forms, sorted descending.
// half-half: +-ab (mult q-2) and the roots of
//   z^3 - (q'a^2 + q'b^2 + c^2) z^2 + (2q'-1) a^2 b^2 z + a^2 b^2 c^2.
std::vector<Real> spectrum_half_half(const Real& x, const ModelParams& params);
// asymmetric (q,0,0): +-ab (mult q-1) and +-lambda_{1,2} from
//   z^4 - ((q-1)^2 a^2 b^2 + q b^2 r^2 + q a^2 s^2 + r^2 s^2) z^2 + a^2b^2r^2s^2.
std::vector<Real> spectrum_q00_asym(const Real& x, const Real& y,
                                    const ModelParams& params);
// symmetric (q,0,0): A itself symmetric; -a with multiplicity q-1,
// a = 1/(q-1+tx), plus the rank-2 symmetric block.
std::vector<Real> spectrum_q00_sym(const Real& x, const ModelParams& params);

enum class Verdict { stable, unstable, marginal };

std::string to_string(Verdict v);

struct StabilityReport {
  std::vector<Real> eigenvalues;  // spectrum of L, descending
  Real second_largest;
  Real threshold;                 // 1/d
  Verdict verdict;
  std::string closed_form_used;   // half_half | q00_asym | q00_sym | generic
  Real crosscheck_delta;          // max relative gap generic vs closed form
};

// Generic verdict from the singular values of A (escalating precision in
// the 1e-9 marginal band); closed form matched by fixpoint type is run as
// a cross-check.
StabilityReport classify(const FixpointRC& fp, const ModelParams& params);

}  // namespace hypercol
