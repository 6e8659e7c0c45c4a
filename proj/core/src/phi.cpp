#include "hypercol/phi.hpp"

#include "hypercol/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace hypercol {

Real phi_norm(const std::vector<Real>& R, const std::vector<Real>& C,
              const ModelParams& p) {
  const InteractionMatrix B{p.q, p.t};
  Real inter = 0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    for (std::size_t j = 0; j < C.size(); ++j) {
      inter += B(static_cast<int>(i), static_cast<int>(j)) * R[i] * C[j];
    }
  }
  if (inter <= 0) throw ZeroInteraction("R^T B C vanishes");
  const Real pr = Real(p.Delta) / p.d;  // Delta/(Delta-1)
  Real rp = 0, cp = 0;
  for (const Real& r : R) {
    if (r > 0) rp += exp(pr * log(r));
  }
  for (const Real& c : C) {
    if (c > 0) cp += exp(pr * log(c));
  }
  return p.Delta * (log(inter) - (log(rp) + log(cp)) / pr);
}

Real interaction_sum(const TypeTriple& qv, const std::array<Real, 4>& R,
                     const std::array<Real, 4>& C, const ModelParams& p) {
  const std::array<Real, 3> m{qv.q1, qv.q2, qv.q3};
  Real sr = 0, sc = 0, src = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    sr += m[i] * R[i + 1];
    sc += m[i] * C[i + 1];
    src += m[i] * R[i + 1] * C[i + 1];
  }
  return R[0] * C[0] * p.t * p.t + sr * C[0] * p.t + sc * R[0] * p.t + sr * sc - src;
}

Real phi_S_bar(const TypeTriple& qv, const std::array<Real, 4>& R,
               const std::array<Real, 4>& C, const ModelParams& p) {
  const Real S = interaction_sum(qv, R, C, p);
  if (S <= 0) throw InfeasiblePoint("interaction sum not positive");
  const std::array<Real, 3> m{qv.q1, qv.q2, qv.q3};
  const Real expo = Real(p.d + 1) / p.d;
  // Multiplicities enter linearly, so tiny negative values (finite
  // differencing across a zero class) are fine as long as the sums stay
  // positive.
  const auto power_sum = [&](const std::array<Real, 4>& V) {
    Real s = V[0] > 0 ? exp(expo * log(V[0])) : Real(0);
    for (std::size_t i = 0; i < 3; ++i) {
      if (m[i] != 0 && V[i + 1] > 0) s += m[i] * exp(expo * log(V[i + 1]));
    }
    if (s <= 0) throw InfeasiblePoint("power sum not positive");
    return s;
  };
  return (p.d + 1) * log(S) - p.d * log(power_sum(R)) - p.d * log(power_sum(C));
}

std::array<Real, 3> dphi_dq(const TypeTriple& qv, const std::array<Real, 4>& R,
                            const std::array<Real, 4>& C, const ModelParams& p) {
  FixpointRC fp{qv, R, C, Real(0)};
  const Real res = fixpoint_residual(fp, p);
  if (res > sqrt(p.ctx.abs_tol)) {
    throw NotCritical("dphi_dq requires a critical point");
  }
  const Real S = interaction_sum(qv, R, C, p);
  const std::array<Real, 3> m{qv.q1, qv.q2, qv.q3};
  Real sr = 0, sc = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    sr += m[i] * R[i + 1];
    sc += m[i] * C[i + 1];
  }
  std::array<Real, 3> grad;
  for (std::size_t i = 0; i < 3; ++i) {
    const Real& Ri = R[i + 1];
    const Real& Ci = C[i + 1];
    grad[i] = (Ri * C[0] * p.t + R[0] * Ci * p.t + (p.d - 1) * Ri * Ci +
               Ri * sc + Ci * sr) /
              S;
  }

  // Central finite differences of phi_S_bar in raw q-space; the analytic
  // continuation across q_i = 0 is exact since multiplicities enter
  // linearly, so boundary classes pose no problem.
  const Real h = Real("1e-8");
  const auto field = [](TypeTriple& t, std::size_t i) -> Real& {
    return i == 0 ? t.q1 : i == 1 ? t.q2 : t.q3;
  };
  for (std::size_t i = 0; i < 3; ++i) {
    TypeTriple up = qv, dn = qv;
    field(up, i) += h;
    field(dn, i) -= h;
    const Real fd = (phi_S_bar(up, R, C, p) - phi_S_bar(dn, R, C, p)) / (2 * h);
    const Real tol = Real("1e-6") * std::max(Real(1), abs(grad[i]));
    if (abs(fd - grad[i]) > tol) {
      throw NumericError("closed-form dphi/dq disagrees with finite differences");
    }
  }
  return grad;
}

PhasePoint to_phase(const std::vector<Real>& R, const std::vector<Real>& C,
                    const ModelParams& p) {
  const Real pr = Real(p.Delta) / p.d;
  PhasePoint pp;
  pp.alpha.resize(R.size());
  pp.beta.resize(C.size());
  Real ra = 0, cb = 0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    pp.alpha[i] = R[i] > 0 ? exp(pr * log(R[i])) : Real(0);
    ra += pp.alpha[i];
  }
  for (std::size_t j = 0; j < C.size(); ++j) {
    pp.beta[j] = C[j] > 0 ? exp(pr * log(C[j])) : Real(0);
    cb += pp.beta[j];
  }
  for (Real& a : pp.alpha) a /= ra;
  for (Real& b : pp.beta) b /= cb;
  return pp;
}

namespace {

std::vector<std::array<Real, 8>> default_starts(const TypeTriple& qv) {
  // Symmetry-breaking deterministic inits in the normalized chart.
  (void)qv;
  return {
      {Real(1), Real(1), Real(1), Real(1), Real(1), Real(1), Real(1), Real(1)},
      {Real(2), Real(3), Real(1), Real("0.4"), Real(2), Real("0.4"), Real(1), Real(3)},
      {Real(5), Real(1), Real("0.2"), Real("0.05"), Real(5), Real("0.05"), Real("0.2"), Real(1)},
  };
}

// Direct log-coordinate hill climb, used only when no iteration converges.
PhiBarResult ascent_fallback(const TypeTriple& qv, const ModelParams& p) {
  std::array<Real, 8> v{Real(0), Real(0), Real(0), Real(0),
                        Real(0), Real(0), Real(0), Real(0)};  // log coords
  const auto value = [&](const std::array<Real, 8>& w) {
    std::array<Real, 4> R, C;
    for (std::size_t i = 0; i < 4; ++i) {
      R[i] = exp(w[i]);
      C[i] = exp(w[i + 4]);
    }
    return phi_S_bar(qv, R, C, p);
  };
  Real best = value(v);
  Real step = 1;
  for (int round = 0; round < 200 && step > Real("1e-25"); ++round) {
    bool improved = false;
    for (std::size_t i = 0; i < 8; ++i) {
      for (int sgn : {+1, -1}) {
        auto w = v;
        w[i] += sgn * step;
        Real val;
        try {
          val = value(w);
        } catch (const InfeasiblePoint&) {
          continue;
        }
        if (val > best) {
          best = val;
          v = w;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2;
  }
  PhiBarResult out;
  out.value = best;
  for (std::size_t i = 0; i < 4; ++i) {
    out.R[i] = exp(v[i]);
    out.C[i] = exp(v[i + 4]);
  }
  return out;
}

}  // namespace

PhiBarResult phi_bar(const TypeTriple& qv, const ModelParams& p) {
  bool any = false;
  PhiBarResult best;
  for (const auto& start : default_starts(qv)) {
    try {
      const FixpointRC fp = solve_general_type(qv, p, start);
      const Real val = phi_S_bar(qv, fp.R, fp.C, p);
      if (!any || val > best.value) {
        best = PhiBarResult{val, fp.R, fp.C};
        any = true;
      }
    } catch (const NumericError&) {
      continue;
    }
  }
  if (!any) best = ascent_fallback(qv, p);

  // Interior conditions: no vanishing coordinate among the active ones.
  const std::array<Real, 3> m{qv.q1, qv.q2, qv.q3};
  if (best.R[0] <= 0 || best.C[0] <= 0) {
    throw NumericError("maximizer hit the R0/C0 boundary");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (m[i] > 0 && (best.R[i + 1] <= 0 || best.C[i + 1] <= 0)) {
      throw NumericError("maximizer hit an active-coordinate boundary");
    }
  }
  return best;
}

namespace {

FixpointRC q00_fixpoint(const Real& x, const Real& y, const ModelParams& p) {
  const TypeTriple qv = TypeTriple::make(Real(p.q), Real(0), Real(0), p.q);
  std::array<Real, 4> R{x, Real(1), Real(0), Real(0)};
  std::array<Real, 4> C{y, Real(1), Real(0), Real(0)};
  const Real rn = R[0] + p.q * R[1];
  const Real cn = C[0] + p.q * C[1];
  for (Real& r : R) r /= rn;
  for (Real& c : C) c /= cn;
  FixpointRC fp{qv, R, C, Real(0)};
  fp.residual = fixpoint_residual(fp, p);
  return fp;
}

bool near(const Real& a, const Real& b, const Real& tol) {
  return abs(a - b) <= tol;
}

}  // namespace

DominanceReport dominant_search(const ModelParams& p) {
  DominanceReport rep;
  rep.heuristic_regime = !p.paper_regime;

  const auto add_fixpoint = [&](const std::string& label, FixpointRC fp) {
    Candidate c;
    c.label = label;
    c.phi_value = phi_S_bar(fp.qvec, fp.R, fp.C, p);
    try {
      c.verdict = to_string(classify(fp, p).verdict);
    } catch (const std::exception& e) {
      c.verdict = "n/a";
      c.note = e.what();
    }
    c.fixpoint = std::move(fp);
    rep.candidates.push_back(std::move(c));
  };
  const auto add_failure = [&](const std::string& label, const std::string& why) {
    Candidate c;
    c.label = label;
    c.phi_value = Real("-1e100");
    c.verdict = "n/a";
    c.note = why;
    rep.candidates.push_back(std::move(c));
  };

  try {
    add_fixpoint("half-half (q/2,q/2,0)", solve_half_half(p));
  } catch (const std::exception& e) {
    add_failure("half-half (q/2,q/2,0)", e.what());
  }
  try {
    const Real x = solve_symmetric_q00(p);
    add_fixpoint("symmetric (q,0,0)", q00_fixpoint(x, x, p));
  } catch (const std::exception& e) {
    add_failure("symmetric (q,0,0)", e.what());
  }
  try {
    const auto [x, y] = solve_asymmetric_q00(p);
    add_fixpoint("asymmetric (q,0,0)", q00_fixpoint(x, y, p));
  } catch (const std::exception& e) {
    add_failure("asymmetric (q,0,0)", e.what());
  }

  // Lattice of type triples: step q/16 plus all integer triples, stored
  // canonically (descending) in units of q/L to deduplicate permutations.
  const long L = std::lcm<long>(16, p.q);
  std::set<std::array<long, 3>> lattice;
  const auto push = [&](long a, long b, long c) {
    std::array<long, 3> v{a, b, c};
    std::sort(v.begin(), v.end(), std::greater<>());
    if (v[0] == L || v[0] == 0) return;  // (q,0,0) done above; skip empty
    lattice.insert(v);
  };
  for (long a = 0; a <= 16; ++a) {
    for (long b = 0; a + b <= 16; ++b) {
      push(a * (L / 16), b * (L / 16), (16 - a - b) * (L / 16));
    }
  }
  for (long a = 0; a <= p.q; ++a) {
    for (long b = 0; a + b <= p.q; ++b) {
      push(a * (L / p.q), b * (L / p.q), (p.q - a - b) * (L / p.q));
    }
  }

  for (const auto& v : lattice) {
    const TypeTriple qv = TypeTriple::make(Real(v[0]) * p.q / L,
                                           Real(v[1]) * p.q / L,
                                           Real(v[2]) * p.q / L, p.q);
    if (qv.q1 == Real(p.q) / 2 && qv.q2 == Real(p.q) / 2 && qv.q3 == 0) {
      continue;  // half-half handled above
    }
    const std::string label = "lattice (" + qv.q1.str(6) + "," + qv.q2.str(6) +
                              "," + qv.q3.str(6) + ")";
    try {
      const PhiBarResult r = phi_bar(qv, p);
      Candidate c;
      c.label = label;
      c.phi_value = r.value;
      c.verdict = "n/a";
      // Merged-duplicate detection: two active classes whose coordinates
      // coincide collapse the maximizer into one from a coarser triple.
      const Real tol = sqrt(sqrt(p.ctx.abs_tol));
      const std::array<Real, 3> mu{qv.q1, qv.q2, qv.q3};
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) {
          if (mu[a] > 0 && mu[b] > 0 && near(r.R[a + 1], r.R[b + 1], tol) &&
              near(r.C[a + 1], r.C[b + 1], tol)) {
            c.note = "degenerate: merges into a coarser triple";
          }
        }
      }
      FixpointRC fp{qv, r.R, r.C, Real(0)};
      fp.residual = fixpoint_residual(fp, p);
      if (fp.residual <= sqrt(p.ctx.abs_tol)) {
        bool integral = true;
        for (const Real& m : {qv.q1, qv.q2, qv.q3}) {
          if (abs(m - round(m)) > 0) integral = false;
        }
        if (integral) {
          try {
            c.verdict = to_string(classify(fp, p).verdict);
          } catch (const std::exception&) {
          }
        }
        c.fixpoint = std::move(fp);
      }
      rep.candidates.push_back(std::move(c));
    } catch (const std::exception& e) {
      add_failure(label, e.what());
    }
  }

  std::stable_sort(rep.candidates.begin(), rep.candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.phi_value > b.phi_value;
                   });
  rep.winner = 0;

  // Balanced / permutation-symmetric flags at the winner.
  const Candidate& win = rep.candidates[0];
  if (win.fixpoint) {
    const FixpointRC& fp = *win.fixpoint;
    bool integral = true;
    for (const Real& m : {fp.qvec.q1, fp.qvec.q2, fp.qvec.q3}) {
      if (abs(m - round(m)) > 0) integral = false;
    }
    if (integral) {
      const auto R = expand_reduced(fp.R, fp.qvec, p.q);
      const auto C = expand_reduced(fp.C, fp.qvec, p.q);
      const PhasePoint pp = to_phase(R, C, p);
      Real l1 = 0, diff = 0;
      for (std::size_t i = 0; i < pp.alpha.size(); ++i) {
        l1 += abs(pp.alpha[i]);
        diff = std::max(diff, abs(pp.alpha[i] - pp.beta[i]));
      }
      rep.balanced = diff <= Real("1e-12") * l1;
      // Swap symmetry: beta is a colour permutation of alpha.
      std::vector<Real> sa(pp.alpha.begin() + 1, pp.alpha.end());
      std::vector<Real> sb(pp.beta.begin() + 1, pp.beta.end());
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      bool perm = abs(pp.alpha[0] - pp.beta[0]) <= Real("1e-12") * l1;
      for (std::size_t i = 0; i < sa.size(); ++i) {
        perm = perm && abs(sa[i] - sb[i]) <= Real("1e-12") * l1;
      }
      rep.permutation_symmetric = perm;
    }
  }
  return rep;
}

}  // namespace hypercol
