#include "hypercol/spin.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace hypercol {

void Graph::add_edge(int u, int v) {
  if (u == v) throw InvalidParams("graph: self-loop");
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw InvalidParams("graph: endpoint out of range");
  edges.emplace_back(u, v);
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n, 0);
  for (auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

int Graph::regular_degree() const {
  auto deg = degrees();
  if (deg.empty()) return 0;
  for (int d : deg)
    if (d != deg[0]) return -1;
  return deg[0];
}

Graph Graph::cycle(int m) {
  Graph g;
  g.n = m;
  for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
  return g;
}

Graph Graph::path(int m) {
  Graph g;
  g.n = m;
  for (int i = 0; i + 1 < m; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::complete(int nn) {
  Graph g;
  g.n = nn;
  for (int i = 0; i < nn; ++i)
    for (int j = i + 1; j < nn; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::hypercube(int dim) {
  Graph g;
  g.n = 1 << dim;
  for (int v = 0; v < g.n; ++v)
    for (int b = 0; b < dim; ++b)
      if (!(v & (1 << b))) g.add_edge(v, v | (1 << b));
  return g;
}

Graph Graph::single_edge() {
  Graph g;
  g.n = 2;
  g.add_edge(0, 1);
  return g;
}

Graph Graph::load(std::istream& in) {
  Graph g;
  int m = 0;
  if (!(in >> g.n >> m)) throw InvalidParams("graph file: bad header");
  for (int i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw InvalidParams("graph file: truncated edge list");
    g.add_edge(u, v);
  }
  return g;
}

void Graph::save(std::ostream& out) const {
  out << n << " " << edges.size() << "\n";
  for (auto& [u, v] : edges) out << u << " " << v << "\n";
}

BigInt ModelParams::qk_minus_q() const {
  BigInt p = 1;
  for (int i = 0; i < k; ++i) p *= q;
  return p - q;
}

ModelParams build_params(int q, int k, int Delta, const PrecisionContext& ctx) {
  if (q < 2 || k < 1 || Delta < 2) throw InvalidParams("build_params: need q>=2, k>=1, Delta>=2");
  PrecisionScope scope(ctx);
  ModelParams p;
  p.q = q;
  p.k = k;
  p.K = 2 * k;
  p.Delta = Delta;
  p.d = Delta - 1;
  p.ctx = ctx;
  BigInt w = p.qk_minus_q();
  if (w <= 0) throw InvalidParams("build_params: q^k <= q");
  p.t = exp(log(Real(w)) / Delta);
  // paper regime: q even >= 4, k >= 2, d >= 5 q^k
  BigInt qk = w + q;
  p.paper_regime = (q >= 4 && q % 2 == 0 && k >= 2 && BigInt(p.d) >= 5 * qk);
  return p;
}

Real InteractionMatrix::operator()(int i, int j) const {
  if (i == 0 && j == 0) return t * t;
  if (i == 0 || j == 0) return t;
  return i == j ? Real(0) : Real(1);
}

std::vector<std::vector<Real>> InteractionMatrix::dense() const {
  std::vector<std::vector<Real>> m(q + 1, std::vector<Real>(q + 1));
  for (int i = 0; i <= q; ++i)
    for (int j = 0; j <= q; ++j) m[i][j] = (*this)(i, j);
  return m;
}

InteractionMatrix build_interaction_matrix(const ModelParams& params) {
  return InteractionMatrix{params.q, params.t};
}

Real weight(const Assignment& sigma, const Graph& g,
            const InteractionMatrix& B) {
  Real w = 1;
  for (auto& [u, v] : g.edges) {
    w *= B(sigma[u], sigma[v]);
    if (w == 0) return w;
  }
  return w;
}

namespace {

void check_budget(double states, std::int64_t budget) {
  if (states > static_cast<double>(budget))
    throw TooLarge("enumeration exceeds budget");
}

// enumerate base^n states via odometer, calling fn(sigma) each time
template <typename Fn>
void enumerate(int n, int base, Fn&& fn) {
  Assignment sigma(n, 0);
  while (true) {
    fn(sigma);
    int i = 0;
    while (i < n && ++sigma[i] == base) sigma[i++] = 0;
    if (i == n) break;
  }
}

}  // namespace

BigInt partition_function_zb_exact(const Graph& g, const ModelParams& params,
                                   std::int64_t budget) {
  if (g.regular_degree() != params.Delta)
    throw NotRegular("exact Z_B requires a Delta-regular graph");
  check_budget(std::pow(params.q + 1.0, g.n), budget);
  const BigInt w = params.qk_minus_q();
  // precompute w^n0 for n0 <= n
  std::vector<BigInt> pw(g.n + 1);
  pw[0] = 1;
  for (int i = 1; i <= g.n; ++i) pw[i] = pw[i - 1] * w;
  BigInt z = 0;
  enumerate(g.n, params.q + 1, [&](const Assignment& sigma) {
    int n0 = 0;
    for (int s : sigma)
      if (s == 0) ++n0;
    for (auto& [u, v] : g.edges)
      if (sigma[u] != 0 && sigma[u] == sigma[v]) return;
    z += pw[n0];
  });
  return z;
}

Real partition_function_zb(const Graph& g, const ModelParams& params,
                           std::int64_t budget) {
  check_budget(std::pow(params.q + 1.0, g.n), budget);
  PrecisionScope scope(params.ctx);
  InteractionMatrix B = build_interaction_matrix(params);
  Real z = 0;
  enumerate(g.n, params.q + 1,
            [&](const Assignment& sigma) { z += weight(sigma, g, B); });
  return z;
}

std::int64_t mono_count(const Graph& g, const Assignment& sigma) {
  std::int64_t m = 0;
  for (auto& [u, v] : g.edges)
    if (sigma[u] == sigma[v]) ++m;
  return m;
}

std::vector<BigInt> potts_mono_histogram(const Graph& g, int q,
                                         std::int64_t budget) {
  check_budget(std::pow(static_cast<double>(q), g.n), budget);
  std::vector<BigInt> hist(g.edges.size() + 1, BigInt(0));
  enumerate(g.n, q, [&](const Assignment& sigma) {
    ++hist[mono_count(g, sigma)];
  });
  return hist;
}

Real potts_partition(const Graph& g, int q, const Real& B_scalar,
                     std::int64_t budget) {
  if (B_scalar < 0) throw InvalidParams("potts: B < 0");
  auto hist = potts_mono_histogram(g, q, budget);
  Real z = 0, bp = 1;
  for (size_t m = 0; m < hist.size(); ++m) {
    if (m > 0) bp *= B_scalar;
    if (hist[m] != 0) {
      if (m == 0)
        z += Real(hist[m]);
      else
        z += Real(hist[m]) * bp;
    }
  }
  return z;
}

}  // namespace hypercol
