#include "hypercol/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

namespace hypercol {

void Hypergraph::add_edge(std::vector<int> e) {
  std::sort(e.begin(), e.end());
  if (std::adjacent_find(e.begin(), e.end()) != e.end())
    throw InvalidParams("hyperedge: repeated vertex");
  if (e.empty() || e.front() < 0 || e.back() >= n)
    throw InvalidParams("hyperedge: vertex out of range");
  edges.push_back(std::move(e));
}

std::vector<int> Hypergraph::degrees() const {
  std::vector<int> deg(n, 0);
  for (auto& e : edges)
    for (int v : e) ++deg[v];
  return deg;
}

std::optional<int> Hypergraph::uniform_arity() const {
  if (edges.empty()) return std::nullopt;
  size_t a = edges[0].size();
  for (auto& e : edges)
    if (e.size() != a) return std::nullopt;
  return static_cast<int>(a);
}

bool Hypergraph::is_simple() const {
  for (size_t i = 0; i < edges.size(); ++i)
    for (size_t j = i + 1; j < edges.size(); ++j) {
      std::vector<int> inter;
      std::set_intersection(edges[i].begin(), edges[i].end(),
                            edges[j].begin(), edges[j].end(),
                            std::back_inserter(inter));
      if (inter.size() > 1) return false;
    }
  return true;
}

Hypergraph Hypergraph::fano_plane() {
  Hypergraph h;
  h.n = 7;
  for (auto& line : {std::vector<int>{0, 1, 2}, {0, 3, 4}, {0, 5, 6},
                     {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}})
    h.add_edge(line);
  return h;
}

Hypergraph Hypergraph::load(std::istream& in) {
  Hypergraph h;
  int m = 0, K = 0;
  if (!(in >> h.n >> m >> K)) throw InvalidParams("hypergraph file: bad header");
  for (int i = 0; i < m; ++i) {
    std::vector<int> e(K);
    for (int& v : e)
      if (!(in >> v)) throw InvalidParams("hypergraph file: truncated edge");
    h.add_edge(std::move(e));
  }
  return h;
}

void Hypergraph::save(std::ostream& out) const {
  auto K = uniform_arity();
  if (!K) throw InvalidParams("hypergraph save: non-uniform arity");
  out << n << " " << edges.size() << " " << *K << "\n";
  for (auto& e : edges) {
    for (size_t i = 0; i < e.size(); ++i) out << e[i] << (i + 1 < e.size() ? ' ' : '\n');
  }
}

BigInt for_each_colouring(const Hypergraph& h, int q, std::int64_t budget,
                          const std::function<void(const Colouring&)>& fn) {
  if (std::pow(static_cast<double>(q), h.n) > static_cast<double>(budget))
    throw TooLarge("colouring enumeration exceeds budget");

  // per-edge incremental state: edges still monochromatic so far, and the
  // vertex at which each edge completes
  const int m = static_cast<int>(h.edges.size());
  std::vector<std::vector<int>> edges_of(h.n);
  std::vector<int> last_vertex(m, -1);
  for (int e = 0; e < m; ++e) {
    for (int v : h.edges[e]) edges_of[v].push_back(e);
    last_vertex[e] = h.edges[e].empty() ? -1 : h.edges[e].back();
  }

  Colouring col(h.n, -1);
  std::vector<char> alive(m);  // edge could still end up monochromatic
  std::vector<int> first_col(m);
  BigInt count = 0;

  // DFS in vertex order; prune when a completed edge is monochromatic
  std::function<void(int)> dfs = [&](int v) {
    if (v == h.n) {
      ++count;
      if (fn) fn(col);
      return;
    }
    for (int c = 0; c < q; ++c) {
      col[v] = c;
      bool ok = true;
      std::vector<int> killed;
      for (int e : edges_of[v]) {
        if (!alive[e]) continue;
        if (first_col[e] == -1) {
          first_col[e] = c;
        } else if (first_col[e] != c) {
          alive[e] = 0;
          killed.push_back(e);
          continue;
        }
        if (alive[e] && last_vertex[e] == v) {
          ok = false;  // edge completed monochromatic
        }
      }
      if (ok) dfs(v + 1);
      for (int e : killed) alive[e] = 1;
      for (int e : edges_of[v])
        if (first_col[e] == c && h.edges[e].front() == v) first_col[e] = -1;
      col[v] = -1;
    }
  };

  std::fill(alive.begin(), alive.end(), 1);
  std::fill(first_col.begin(), first_col.end(), -1);
  dfs(0);
  return count;
}

BigInt count_colourings(const Hypergraph& h, int q, std::int64_t budget) {
  return for_each_colouring(h, q, budget, nullptr);
}

ConfigurationDraw sample_configuration_model(int n, int Delta, int K,
                                             std::uint64_t seed) {
  if (n < 1 || Delta < 1 || K < 2)
    throw InvalidParams("configuration model: bad parameters");
  const std::int64_t points = static_cast<std::int64_t>(n) * Delta;
  if (points % K != 0)
    throw Indivisible("configuration model: n*Delta not divisible by K");
  const std::int64_t m = points / K;

  // vertex half-edges, shuffled by seeded Fisher-Yates (mt19937_64, modulo
  // draw) so results are identical across platforms
  std::vector<int> halves(points);
  for (std::int64_t i = 0; i < points; ++i) halves[i] = static_cast<int>(i / Delta);
  std::mt19937_64 rng(seed);
  for (std::int64_t i = points - 1; i > 0; --i) {
    std::uint64_t j = rng() % static_cast<std::uint64_t>(i + 1);
    std::swap(halves[i], halves[j]);
  }

  ConfigurationDraw draw;
  draw.seed = seed;
  draw.raw_edges.resize(m);
  for (std::int64_t e = 0; e < m; ++e) {
    auto& edge = draw.raw_edges[e];
    edge.assign(halves.begin() + e * K, halves.begin() + (e + 1) * K);
    std::sort(edge.begin(), edge.end());
    if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
      draw.repeated_vertex = true;
  }
  if (!draw.repeated_vertex) {
    draw.h.n = n;
    for (auto& e : draw.raw_edges) draw.h.add_edge(e);
  }
  return draw;
}

std::optional<ConfigurationDraw> sample_simple_configuration(
    int n, int Delta, int K, std::uint64_t seed, int max_retries) {
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    auto draw = sample_configuration_model(n, Delta, K, seed + attempt);
    if (!draw.repeated_vertex && draw.h.is_simple()) return draw;
  }
  return std::nullopt;
}

Assignment phi_map(const Colouring& tau, const Graph& g, int k) {
  Assignment sigma(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    int c0 = tau[v * k];
    bool same = true;
    for (int i = 1; i < k; ++i)
      if (tau[v * k + i] != c0) same = false;
    sigma[v] = same ? c0 + 1 : 0;  // colours are 0-based, spins 1-based
  }
  return sigma;
}

BigInt fiber_size(const Assignment& sigma, int k, int q) {
  BigInt qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;
  BigInt w = qk - q, f = 1;
  for (int s : sigma)
    if (s == 0) f *= w;
  return f;
}

}  // namespace hypercol
