#include "hypercol/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace hypercol {

PrecisionContext PrecisionContext::make(unsigned bits,
                                        const std::string& abs_tol,
                                        const std::string& rel_tol,
                                        int max_iters) {
  if (bits < 53) throw InvalidParams("mantissa_bits must be >= 53");
  if (max_iters < 1) throw InvalidParams("max_iters must be >= 1");
  PrecisionScope scope(bits);
  PrecisionContext ctx;
  ctx.mantissa_bits = bits;
  ctx.abs_tol = Real(abs_tol);
  ctx.rel_tol = Real(rel_tol);
  ctx.max_iters = max_iters;
  if (ctx.abs_tol <= 0 || ctx.rel_tol <= 0)
    throw InvalidParams("tolerances must be positive");
  return ctx;
}

Real pow1p(const Real& a, const Real& b) {
  if (a <= -1) throw DomainError("pow1p: 1+a <= 0");
  return exp(b * log1p(a));
}

Real pow_m1(const Real& x, long n) {
  if (x <= 0) throw DomainError("pow_m1: x <= 0");
  if (n == 0) return Real(0);
  return expm1(Real(n) * log(x));
}

Real pow_m1_ratio(const Real& x, long n) {
  if (x <= 0) throw DomainError("pow_m1_ratio: x <= 0");
  Real e = x - 1;
  if (e == 0) return Real(n);
  return pow_m1(x, n) / e;
}

bool check_exp_sandwich(const Real& a, const Real& b) {
  if (a <= 0 || b <= 0) throw DomainError("check_exp_sandwich: need a,b > 0");
  Real mid = b * log1p(a / b);  // log of (1+a/b)^b
  return a > mid && mid > a * b / (a + b);
}

namespace {

int sgn(const Real& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

Bracket make_bracket(const RealFn& f, const Real& lo, const Real& hi) {
  if (!(lo < hi)) throw InvalidParams("bracket: lo >= hi");
  Bracket b{lo, hi, sgn(f(lo)), sgn(f(hi))};
  if (b.f_lo_sign == 0 || b.f_hi_sign == 0) return b;  // endpoint root, fine
  if (b.f_lo_sign == b.f_hi_sign)
    throw NoSignChange("bracket endpoints have equal sign");
  return b;
}

Real bracketed_root(const RealFn& f, const Bracket& bracket,
                    const PrecisionContext& ctx) {
  Real lo = bracket.lo, hi = bracket.hi;
  Real flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (sgn(flo) == sgn(fhi))
    throw NoSignChange("bracketed_root: no sign change");

  Real x = (lo + hi) / 2;
  for (int it = 0; it < ctx.max_iters; ++it) {
    // secant candidate, accepted only if it stays strictly inside
    Real xs = hi - fhi * (hi - lo) / (fhi - flo);
    if (!(xs > lo && xs < hi)) xs = (lo + hi) / 2;
    Real fx = f(xs);
    x = xs;
    if (abs(fx) <= ctx.abs_tol || hi - lo <= ctx.rel_tol * abs(x)) return x;
    if (sgn(fx) == sgn(flo)) {
      lo = xs;
      flo = fx;
    } else {
      hi = xs;
      fhi = fx;
    }
    // keep bisection progress guaranteed: if the bracket barely shrank,
    // force a midpoint step
    Real mid = (lo + hi) / 2;
    Real fm = f(mid);
    if (fm == 0) return mid;
    if (sgn(fm) == sgn(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  throw MaxIters("bracketed_root: iteration budget exhausted");
}

int count_sign_changes(const RealFn& f, const Real& lo, const Real& hi,
                       int grid_points) {
  int changes = 0;
  Real step = (hi - lo) / grid_points;
  int prev = 0;
  for (int i = 0; i <= grid_points; ++i) {
    Real x = (i == grid_points) ? hi : lo + step * i;
    int s = sgn(f(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

Real certified_unique_root(const RealFn& f, const Real& lo, const Real& hi,
                           const PrecisionContext& ctx, int grid_points) {
  int changes = count_sign_changes(f, lo, hi, grid_points);
  if (changes == 0) throw NoSignChange("certified_unique_root: no sign change on scan grid");
  if (changes > 1)
    throw NumericError("certified_unique_root: multiple sign changes (" +
                       std::to_string(changes) + ") on scan grid");
  return bracketed_root(f, make_bracket(f, lo, hi), ctx);
}

namespace {

Real poly_eval(const std::vector<Real>& c, const Real& x) {
  Real v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

std::vector<Real> poly_derivative(const std::vector<Real>& c) {
  std::vector<Real> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * Real(i));
  return d;
}

// Cauchy bound: all real roots lie in [-M, M].
Real root_bound(const std::vector<Real>& c) {
  Real lead = abs(c.back());
  Real m = 0;
  for (size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, abs(c[i]));
  return 1 + m / lead;
}

void roots_recursive(const std::vector<Real>& c, const PrecisionContext& ctx,
                     std::vector<Real>& out) {
  size_t deg = c.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(-c[0] / c[1]);
    return;
  }
  if (deg == 2) {
    Real a = c[2], b = c[1], cc = c[0];
    Real disc = b * b - 4 * a * cc;
    if (disc < 0) return;
    Real sq = sqrt(disc);
    // stable quadratic formula
    Real q = -(b + (b >= 0 ? sq : -sq)) / 2;
    Real r1 = q / a;
    if (q != 0) {
      Real r2 = cc / q;
      out.push_back(std::min(r1, r2));
      out.push_back(std::max(r1, r2));
    } else {
      out.push_back(Real(0));
      out.push_back(Real(0));
    }
    return;
  }
  // isolate via critical points of the derivative
  std::vector<Real> crit;
  roots_recursive(poly_derivative(c), ctx, crit);
  std::sort(crit.begin(), crit.end());
  Real M = root_bound(c);
  std::vector<Real> nodes;
  nodes.push_back(-M);
  for (auto& r : crit)
    if (r > -M && r < M) nodes.push_back(r);
  nodes.push_back(M);
  auto f = [&](const Real& x) { return poly_eval(c, x); };
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    Real a = nodes[i], b = nodes[i + 1];
    Real fa = f(a), fb = f(b);
    if (fa == 0) {
      if (out.empty() || out.back() != a) out.push_back(a);
      continue;
    }
    if (fb == 0) continue;  // picked up as the next interval's left endpoint
    if (sgn(fa) != sgn(fb))
      out.push_back(bracketed_root(f, Bracket{a, b, sgn(fa), sgn(fb)}, ctx));
  }
  Real fb = poly_eval(c, nodes.back());
  if (fb == 0) out.push_back(nodes.back());
}

}  // namespace

std::vector<Real> real_polynomial_roots(const std::vector<Real>& coeffs,
                                        const PrecisionContext& ctx) {
  std::vector<Real> c = coeffs;
  Real maxc = 0;
  for (auto& v : c) maxc = std::max(maxc, abs(v));
  if (maxc == 0) throw InvalidParams("real_polynomial_roots: zero polynomial");
  while (!c.empty() && abs(c.back()) <= 0) c.pop_back();
  if (c.size() < 2)
    throw InvalidParams(
        "real_polynomial_roots: degenerate leading coefficient");
  std::vector<Real> out;
  roots_recursive(c, ctx, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hypercol
