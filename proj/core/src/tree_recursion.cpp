#include "hypercol/tree_recursion.hpp"

#include "hypercol/scalar_systems.hpp"

#include <algorithm>
#include <sstream>

namespace hypercol {

TypeTriple TypeTriple::make(const Real& a, const Real& b, const Real& c, int q) {
  std::array<Real, 3> v{a, b, c};
  std::sort(v.begin(), v.end(), [](const Real& l, const Real& r) { return l > r; });
  if (v[2] < 0 || abs(v[0] + v[1] + v[2] - q) > Real("1e-25")) {
    throw InvalidParams("type triple must be nonnegative and sum to q");
  }
  return TypeTriple{v[0], v[1], v[2]};
}

std::vector<Real> tree_step(const std::vector<Real>& C, const ModelParams& p) {
  const int q = static_cast<int>(C.size()) - 1;
  Real S = 0;
  for (int j = 1; j <= q; ++j) S += C[static_cast<std::size_t>(j)];

  std::vector<Real> lg(C.size());
  lg[0] = p.d * (log(p.t) + log(p.t * C[0] + S));
  for (int i = 1; i <= q; ++i) {
    lg[static_cast<std::size_t>(i)] =
        p.d * log(p.t * C[0] + S - C[static_cast<std::size_t>(i)]);
  }
  const Real top = *std::max_element(lg.begin(), lg.end());
  Real total = 0;
  std::vector<Real> R(C.size());
  for (std::size_t i = 0; i < R.size(); ++i) {
    R[i] = exp(lg[i] - top);
    total += R[i];
  }
  for (Real& r : R) r /= total;
  return R;
}

std::array<Real, 4> tree_step_reduced(const std::array<Real, 4>& C,
                                      const TypeTriple& qv,
                                      const ModelParams& p) {
  const std::array<Real, 3> mult{qv.q1, qv.q2, qv.q3};
  Real S = 0;
  for (int i = 0; i < 3; ++i) S += mult[static_cast<std::size_t>(i)] * C[static_cast<std::size_t>(i) + 1];

  std::array<Real, 4> lg;
  lg[0] = p.d * (log(p.t) + log(p.t * C[0] + S));
  for (int i = 1; i <= 3; ++i) {
    if (mult[static_cast<std::size_t>(i - 1)] == 0) continue;
    lg[static_cast<std::size_t>(i)] =
        p.d * log(p.t * C[0] + S - C[static_cast<std::size_t>(i)]);
  }
  Real top = lg[0];
  for (int i = 1; i <= 3; ++i) {
    if (mult[static_cast<std::size_t>(i - 1)] > 0) top = std::max(top, lg[static_cast<std::size_t>(i)]);
  }
  std::array<Real, 4> R{Real(0), Real(0), Real(0), Real(0)};
  R[0] = exp(lg[0] - top);
  Real total = R[0];
  for (int i = 1; i <= 3; ++i) {
    if (mult[static_cast<std::size_t>(i - 1)] == 0) continue;
    R[static_cast<std::size_t>(i)] = exp(lg[static_cast<std::size_t>(i)] - top);
    total += mult[static_cast<std::size_t>(i - 1)] * R[static_cast<std::size_t>(i)];
  }
  for (Real& r : R) r /= total;
  return R;
}

Real ising_step(const Real& y, const Real& beta, const Real& gamma,
                const Real& lambda, int d) {
  return lambda * exp(d * (log(beta * y + 1) - log(y + gamma)));
}

Real solve_symmetric_q00(const ModelParams& p) {
  const Real u = symmetric_u(p);
  const Real x = exp(p.d * log(p.t * u));

  // Defining equation, relative residual.
  const Real fx = exp(p.d * (log(p.t * p.t * x + p.q * p.t) -
                             log(p.t * x + p.q - 1)));
  if (abs(x - fx) / x > sqrt(p.ctx.abs_tol)) {
    throw NotConverged("symmetric one-step solution fails its equation");
  }
  if (p.paper_regime) {
    if (!(p.t * x + p.q - 1 < p.d)) {
      throw NumericError("t x + q - 1 < d violated at the symmetric root");
    }
    const Real y_E = 1 + Real("0.5") / (Real(p.qk_minus_q()) - 1);
    if (!(u < y_E)) {
      throw NumericError("u < 1 + 0.5/(t^{d+1}-1) violated");
    }
  }
  return x;
}

namespace {

// One 2-spin application y -> t^d ((t y + q)/(t y + q - 1))^d.
Real q00_step(const Real& y, const ModelParams& p) {
  return exp(p.d * (log(p.t) + log1p(1 / (p.t * y + p.q - 1))));
}

}  // namespace

std::pair<Real, Real> solve_asymmetric_q00(const ModelParams& p) {
  const Real qkq(p.qk_minus_q());
  const Real floor_x = Real(p.d) * p.d / qkq;
  const auto f = [&](const Real& z) { return q00_step(q00_step(z, p), p) - z; };

  // Scan downward from 10 d^2/(q^k - q): the first sign change brackets the
  // largest two-step root.
  Real hi = 10 * floor_x;
  Real f_hi = f(hi);
  if (f_hi > 0) throw NoAsymmetricFixpoint("two-step map positive at the start");
  const Real x_sym = solve_symmetric_q00(p);
  Real lo = hi;
  bool bracketed = false;
  for (int m = 0; m < 2000; ++m) {
    lo = hi * Real("0.95");
    const Real f_lo = f(lo);
    if (f_lo > 0) {
      bracketed = true;
      break;
    }
    hi = lo;
    f_hi = f_lo;
    if (lo < x_sym) break;  // passed the symmetric root: nothing above it
  }
  if (!bracketed) {
    throw NoAsymmetricFixpoint("no two-step sign change above the symmetric root");
  }
  const Real x = bracketed_root(f, Bracket{lo, hi, 1, -1}, p.ctx);
  const Real y = q00_step(x, p);
  if (!(x > y)) throw NoAsymmetricFixpoint("largest root is the symmetric one");
  if (p.paper_regime && !(x > floor_x)) {
    throw NumericError("x > d^2/(q^k - q) violated");
  }
  return {x, y};
}

namespace {

// Residual over coordinate 0 and the active classes, in the normalized chart.
Real reduced_residual(const std::array<Real, 4>& R, const std::array<Real, 4>& C,
                      const TypeTriple& qv, const ModelParams& p) {
  const auto Rn = tree_step_reduced(C, qv, p);
  const auto Cn = tree_step_reduced(R, qv, p);
  const std::array<Real, 3> mult{qv.q1, qv.q2, qv.q3};
  Real res = std::max(abs(R[0] - Rn[0]), abs(C[0] - Cn[0]));
  for (std::size_t i = 1; i <= 3; ++i) {
    if (mult[i - 1] == 0) continue;
    res = std::max(res, abs(R[i] - Rn[i]));
    res = std::max(res, abs(C[i] - Cn[i]));
  }
  return res;
}

void normalize_reduced(std::array<Real, 4>& V, const TypeTriple& qv) {
  const Real total = V[0] + qv.q1 * V[1] + qv.q2 * V[2] + qv.q3 * V[3];
  for (Real& v : V) v /= total;
}

}  // namespace

Real fixpoint_residual(const FixpointRC& fp, const ModelParams& p) {
  return reduced_residual(fp.R, fp.C, fp.qvec, p);
}

FixpointRC solve_general_type(const TypeTriple& qvec, const ModelParams& p,
                              const std::array<Real, 8>& init,
                              const Real& damping) {
  const std::array<Real, 3> mult{qvec.q1, qvec.q2, qvec.q3};
  std::array<Real, 4> R{init[0], init[1], init[2], init[3]};
  std::array<Real, 4> C{init[4], init[5], init[6], init[7]};
  for (std::size_t i = 1; i <= 3; ++i) {
    if (mult[i - 1] == 0) {
      R[i] = 0;
      C[i] = 0;
    } else if (R[i] <= 0 || C[i] <= 0) {
      throw InvalidParams("active init coordinates must be positive");
    }
  }
  if (R[0] <= 0 || C[0] <= 0) throw InvalidParams("init must have R0, C0 > 0");
  normalize_reduced(R, qvec);
  normalize_reduced(C, qvec);

  Real best_res = reduced_residual(R, C, qvec, p);
  for (int it = 0; it < p.ctx.max_iters; ++it) {
    if (best_res <= p.ctx.abs_tol) {
      return FixpointRC{qvec, R, C, best_res};
    }
    const auto Rn = tree_step_reduced(C, qvec, p);
    const auto Cn = tree_step_reduced(R, qvec, p);
    for (std::size_t i = 0; i < 4; ++i) {
      if (i >= 1 && mult[i - 1] == 0) continue;
      R[i] = exp((1 - damping) * log(R[i]) + damping * log(Rn[i]));
      C[i] = exp((1 - damping) * log(C[i]) + damping * log(Cn[i]));
    }
    normalize_reduced(R, qvec);
    normalize_reduced(C, qvec);
    best_res = reduced_residual(R, C, qvec, p);
  }
  std::ostringstream msg;
  msg << "general-type iteration stalled at residual " << best_res;
  throw NotConverged(msg.str());
}

FixpointRC solve_half_half(const ModelParams& p) {
  if (p.q < 4 || p.q % 2 != 0) throw InvalidParams("half-half needs even q >= 4");
  const Real x = root_h(p);
  const Real r0 = p.t * (x + (x - 1) / pow_m1(x, p.d));
  const Real r0d = exp(p.d * log(r0));
  const Real xd = exp(p.d * log(x));

  const TypeTriple qv = TypeTriple::make(Real(p.q) / 2, Real(p.q) / 2, Real(0), p.q);
  const std::array<Real, 8> init{r0d, xd, Real(1), Real(0),
                                 r0d, Real(1), xd, Real(0)};
  FixpointRC fp = solve_general_type(qv, p, init);

  // Reciprocal pairing between the two active classes.
  if (abs(fp.R[1] / fp.R[2] - fp.C[2] / fp.C[1]) >
      sqrt(p.ctx.abs_tol) * (fp.R[1] / fp.R[2])) {
    throw NumericError("half-half classes lost the R_i/R_j = C_j/C_i pairing");
  }
  return fp;
}

std::vector<Real> expand_reduced(const std::array<Real, 4>& V,
                                 const TypeTriple& qv, int q) {
  const std::array<Real, 3> mult{qv.q1, qv.q2, qv.q3};
  std::vector<Real> full;
  full.push_back(V[0]);
  for (std::size_t i = 0; i < 3; ++i) {
    if (abs(mult[i] - round(mult[i])) > 0) {
      throw InvalidParams("expansion requires integer multiplicities");
    }
    const long m = static_cast<long>(mult[i]);
    for (long j = 0; j < m; ++j) full.push_back(V[i + 1]);
  }
  if (static_cast<int>(full.size()) != q + 1) {
    throw InvalidParams("multiplicities do not sum to q");
  }
  return full;
}

}  // namespace hypercol
