#include "hypercol/stability.hpp"

#include <algorithm>

namespace hypercol {

std::pair<Matrix, Matrix> build_A_L(const std::vector<Real>& R,
                                    const std::vector<Real>& C,
                                    const ModelParams& p) {
  const std::size_t n = R.size();
  const InteractionMatrix B{p.q, p.t};
  std::vector<Real> alpha(n, Real(0)), beta(n, Real(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Real w = B(static_cast<int>(i), static_cast<int>(j)) * R[i] * C[j];
      alpha[i] += w;
      beta[j] += w;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] <= 0 || beta[i] <= 0) {
      throw ZeroMarginal("vanishing row/column marginal in the A matrix");
    }
  }
  Matrix A(n, std::vector<Real>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      A[i][j] = B(static_cast<int>(i), static_cast<int>(j)) * R[i] * C[j] /
                sqrt(alpha[i] * beta[j]);
    }
  }
  Matrix L(2 * n, std::vector<Real>(2 * n, Real(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      L[i][n + j] = A[i][j];
      L[n + j][i] = A[i][j];
    }
  }
  return {A, L};
}

std::vector<Real> symmetric_eigenvalues(Matrix S, const PrecisionContext& ctx) {
  const std::size_t n = S.size();
  const Real eps = ctx.abs_tol * ctx.abs_tol;
  for (int sweep = 0; sweep < 200; ++sweep) {
    Real off = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += S[i][j] * S[i][j];
    }
    if (off < eps) break;
    for (std::size_t pp = 0; pp < n; ++pp) {
      for (std::size_t qq = pp + 1; qq < n; ++qq) {
        if (S[pp][qq] == 0) continue;
        const Real theta = (S[qq][qq] - S[pp][pp]) / (2 * S[pp][qq]);
        Real t_rot = 1 / (abs(theta) + sqrt(theta * theta + 1));
        if (theta < 0) t_rot = -t_rot;
        const Real c = 1 / sqrt(t_rot * t_rot + 1);
        const Real s = t_rot * c;
        for (std::size_t r = 0; r < n; ++r) {
          const Real srp = S[r][pp], srq = S[r][qq];
          S[r][pp] = c * srp - s * srq;
          S[r][qq] = s * srp + c * srq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const Real spr = S[pp][r], sqr = S[qq][r];
          S[pp][r] = c * spr - s * sqr;
          S[qq][r] = s * spr + c * sqr;
        }
      }
    }
  }
  std::vector<Real> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = S[i][i];
  std::sort(eig.begin(), eig.end(), [](const Real& a, const Real& b) { return a > b; });
  return eig;
}

std::vector<Real> singular_values(const Matrix& A, const PrecisionContext& ctx) {
  const std::size_t n = A.size();
  Matrix ata(n, std::vector<Real>(n, Real(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Real s = 0;
      for (std::size_t r = 0; r < n; ++r) s += A[r][i] * A[r][j];
      ata[i][j] = s;
    }
  }
  std::vector<Real> sv = symmetric_eigenvalues(std::move(ata), ctx);
  for (Real& v : sv) v = v > 0 ? sqrt(v) : Real(0);
  return sv;  // already descending
}

namespace {

Real pow_int(const Real& x, long n) { return exp(n * log(x)); }

std::vector<Real> mirror_and_sort(std::vector<Real> plus) {
  std::vector<Real> full;
  full.reserve(2 * plus.size());
  for (const Real& v : plus) {
    full.push_back(v);
    full.push_back(-v);
  }
  std::sort(full.begin(), full.end(), [](const Real& a, const Real& b) { return a > b; });
  return full;
}

}  // namespace

std::vector<Real> spectrum_half_half(const Real& x, const ModelParams& p) {
  const long d = p.d;
  const long qp = p.q / 2;
  const Real xd_m1 = pow_m1(x, d);
  const Real a2 = pow_int(x, d - 1) * (x - 1) / xd_m1;
  const Real b2 = (x - 1) / xd_m1;
  const Real xdp1_m1 = pow_m1(x, d + 1);
  const Real c2 = (xdp1_m1 - qp * (x - 1) * (pow_int(x, d) + 1)) / xdp1_m1;
  const Real ab2 = a2 * b2;

  std::vector<Real> cubic{ab2 * c2, (2 * qp - 1) * ab2, -(qp * a2 + qp * b2 + c2),
                          Real(1)};
  std::vector<Real> lambdas = real_polynomial_roots(cubic, p.ctx);

  std::vector<Real> plus;
  const Real ab = sqrt(ab2);
  for (int i = 0; i < p.q - 2; ++i) plus.push_back(ab);
  std::vector<Real> full = mirror_and_sort(plus);
  for (const Real& l : lambdas) full.push_back(l);      // cubic roots
  for (const Real& l : lambdas) full.push_back(-l);     // and their mirrors
  std::sort(full.begin(), full.end(), [](const Real& a, const Real& b) { return a > b; });
  return full;
}

std::vector<Real> spectrum_q00_asym(const Real& x, const Real& y,
                                    const ModelParams& p) {
  const Real a2 = 1 / (p.t * x + p.q - 1);
  const Real b2 = 1 / (p.t * y + p.q - 1);
  const Real r2 = p.t * y / (p.t * x + p.q);
  const Real s2 = p.t * x / (p.t * y + p.q);

  // z^4 - P z^2 + Q: biquadratic in w = z^2.
  const Real P = (p.q - 1) * (p.q - 1) * a2 * b2 + p.q * b2 * r2 +
                 p.q * a2 * s2 + r2 * s2;
  const Real Q = a2 * b2 * r2 * s2;
  const Real disc = sqrt(P * P - 4 * Q);
  const Real w1 = (P + disc) / 2;
  const Real w2 = (P - disc) / 2;

  std::vector<Real> plus;
  const Real ab = sqrt(a2 * b2);
  for (int i = 0; i < p.q - 1; ++i) plus.push_back(ab);
  plus.push_back(sqrt(w1));
  plus.push_back(sqrt(w2));
  return mirror_and_sort(plus);
}

std::vector<Real> spectrum_q00_sym(const Real& x, const ModelParams& p) {
  const Real a = 1 / (p.q - 1 + p.t * x);
  const Real b = p.t * x / (p.t * x + p.q);
  // On the span of e_0 and the uniform pure-colour vector, A acts as
  // [[b, sqrt(abq)], [sqrt(abq), a(q-1)]].
  const Real tr = b + a * (p.q - 1);
  const Real det = b * a * (p.q - 1) - a * b * p.q;
  const Real disc = sqrt(tr * tr - 4 * det);
  const Real mu1 = (tr + disc) / 2;
  const Real mu2 = (tr - disc) / 2;

  std::vector<Real> plus;
  for (int i = 0; i < p.q - 1; ++i) plus.push_back(a);  // |-a| repeated
  plus.push_back(abs(mu1));
  plus.push_back(abs(mu2));
  return mirror_and_sort(plus);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    default: return "marginal";
  }
}

StabilityReport classify(const FixpointRC& fp, const ModelParams& p) {
  const std::vector<Real> R = expand_reduced(fp.R, fp.qvec, p.q);
  const std::vector<Real> C = expand_reduced(fp.C, fp.qvec, p.q);

  const auto spectrum_at = [&](const PrecisionContext& ctx) {
    auto [A, L] = build_A_L(R, C, p);
    (void)L;
    std::vector<Real> sv = singular_values(A, ctx);
    return mirror_and_sort(sv);
  };

  StabilityReport rep;
  rep.threshold = Real(1) / p.d;
  rep.eigenvalues = spectrum_at(p.ctx);
  // second largest of the positive side = singular value #2
  rep.second_largest = rep.eigenvalues[1];

  const Real margin("1e-9");
  if (abs(rep.second_largest - rep.threshold) <= margin) {
    // Marginal band: double the working precision and re-run once.
    PrecisionContext hi = p.ctx;
    hi.mantissa_bits *= 2;
    PrecisionScope scope(hi);
    rep.eigenvalues = spectrum_at(hi);
    rep.second_largest = rep.eigenvalues[1];
  }
  if (abs(rep.second_largest - rep.threshold) <= margin) {
    rep.verdict = Verdict::marginal;
  } else {
    rep.verdict = rep.second_largest < rep.threshold ? Verdict::stable
                                                     : Verdict::unstable;
  }

  // Closed-form cross-check when the type matches one of the families.
  std::vector<Real> closed;
  rep.closed_form_used = "generic";
  const Real eq_tol = sqrt(p.ctx.abs_tol);
  if (fp.qvec.q3 == 0 && fp.qvec.q2 > 0 && fp.qvec.q1 == fp.qvec.q2 &&
      abs(fp.R[1] / fp.R[2] - fp.C[2] / fp.C[1]) < eq_tol * abs(fp.R[1] / fp.R[2])) {
    const Real x = exp(log(fp.R[1] / fp.R[2]) / p.d);
    closed = spectrum_half_half(x, p);
    rep.closed_form_used = "half_half";
  } else if (fp.qvec.q2 == 0 && fp.qvec.q3 == 0) {
    const Real x = fp.R[0] / fp.R[1];
    const Real y = fp.C[0] / fp.C[1];
    if (abs(x - y) < eq_tol * abs(x)) {
      closed = spectrum_q00_sym(x, p);
      rep.closed_form_used = "q00_sym";
    } else {
      closed = spectrum_q00_asym(x, y, p);
      rep.closed_form_used = "q00_asym";
    }
  }
  rep.crosscheck_delta = 0;
  if (!closed.empty()) {
    if (closed.size() != rep.eigenvalues.size()) {
      throw NumericError("closed-form spectrum has the wrong size");
    }
    for (std::size_t i = 0; i < closed.size(); ++i) {
      const Real scale = std::max(Real(1), abs(closed[i]));
      rep.crosscheck_delta =
          std::max(rep.crosscheck_delta, abs(closed[i] - rep.eigenvalues[i]) / scale);
    }
  }
  return rep;
}

}  // namespace hypercol
