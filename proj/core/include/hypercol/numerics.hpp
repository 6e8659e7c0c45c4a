#pragma once

// Extended-precision real arithmetic and certified root finding.
//
// Everything downstream (tree recursions, scalar curve systems, stability
// spectra) evaluates quantities like x^d with d up to ~10^4 and differences
// x^d - 1 with x - 1 of order 1/(q^k - q).  Doubles die on both counts, so
// the working scalar is an MPFR-backed float with configurable mantissa.

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypercol {

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<
        0, boost::multiprecision::allocate_dynamic>,
    boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// errors

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : NumericError {
  using NumericError::NumericError;
};
struct NoSignChange : NumericError {
  using NumericError::NumericError;
};
struct MaxIters : NumericError {
  using NumericError::NumericError;
};
struct NotConverged : NumericError {
  using NumericError::NumericError;
};
struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// precision

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(bits * 0.3010299957) + 3;
}

struct PrecisionContext {
  unsigned mantissa_bits = 256;
  Real abs_tol;
  Real rel_tol;
  int max_iters = 500;

  static PrecisionContext make(unsigned bits = 256,
                               const std::string& abs_tol = "1e-30",
                               const std::string& rel_tol = "1e-50",
                               int max_iters = 500);
};

// RAII guard: sets the thread default mantissa width for newly created Reals.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned mantissa_bits)
      : prev_(Real::default_precision()) {
    Real::default_precision(bits_to_digits10(mantissa_bits));
  }
  explicit PrecisionScope(const PrecisionContext& ctx)
      : PrecisionScope(ctx.mantissa_bits) {}
  ~PrecisionScope() { Real::default_precision(prev_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned prev_;
};

// ---------------------------------------------------------------------------
// stable kernels

// (1+a)^b via b*log1p(a); the workhorse behind every x^d in the analyses.
Real pow1p(const Real& a, const Real& b);

// x^n - 1 as expm1(n*log(x)); exact cancellation control near x = 1.
Real pow_m1(const Real& x, long n);

// (x^n - 1)/(x - 1), stable as x -> 1 (limit n).
Real pow_m1_ratio(const Real& x, long n);

// exp(a) > (1+a/b)^b > exp(ab/(a+b)) for a,b > 0.
bool check_exp_sandwich(const Real& a, const Real& b);

// ---------------------------------------------------------------------------
// root finding

struct Bracket {
  Real lo, hi;
  int f_lo_sign, f_hi_sign;
};

using RealFn = std::function<Real(const Real&)>;

// Builds a bracket by evaluating f at the endpoints; throws NoSignChange.
Bracket make_bracket(const RealFn& f, const Real& lo, const Real& hi);

// Bisection with a guarded Newton/secant polish; never leaves the bracket.
Real bracketed_root(const RealFn& f, const Bracket& bracket,
                    const PrecisionContext& ctx);

// Number of sign changes of f on a uniform grid over [lo,hi].
int count_sign_changes(const RealFn& f, const Real& lo, const Real& hi,
                       int grid_points = 2048);

// Root + certificate: exactly one sign change on the scan grid.
// Throws NoSignChange if none, NumericError if more than one.
Real certified_unique_root(const RealFn& f, const Real& lo, const Real& hi,
                           const PrecisionContext& ctx,
                           int grid_points = 2048);

// All real roots of sum_i coeffs[i] x^i, ascending.  Quadratics in closed
// form; higher degrees by recursive critical-point isolation (the polynomial
// is monotone between roots of its derivative).
std::vector<Real> real_polynomial_roots(const std::vector<Real>& coeffs,
                                        const PrecisionContext& ctx);

}  // namespace hypercol
