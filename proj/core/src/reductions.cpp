#include "hypercol/reductions.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace hypercol {

namespace {

// Power needed when clearing the rational edge weight B = (D-1)/D.
BigInt bigint_pow(BigInt base, unsigned long exp) {
  BigInt acc = 1;
  while (exp > 0) {
    if (exp & 1) acc *= base;
    base *= base;
    exp >>= 1;
  }
  return acc;
}

// Appends a relabelled copy of `src` to `dst`.  `pin_map` fixes the images
// of selected vertices; all others get fresh indices in increasing order.
void append_copy(Hypergraph& dst, const Hypergraph& src,
                 const std::map<int, int>& pin_map) {
  std::vector<int> image(src.n, -1);
  for (const auto& [from, to] : pin_map) image[from] = to;
  for (int v = 0; v < src.n; ++v) {
    if (image[v] < 0) image[v] = dst.n++;
  }
  for (const auto& e : src.edges) {
    std::vector<int> mapped;
    mapped.reserve(e.size());
    for (int v : e) mapped.push_back(image[v]);
    dst.add_edge(std::move(mapped));
  }
}

}  // namespace

Hypergraph halve(const Graph& g, int k) {
  if (k < 1) throw InvalidParams("halve: k must be >= 1");
  Hypergraph h;
  h.n = g.n * k;
  for (const auto& [u, v] : g.edges) {
    std::vector<int> e;
    e.reserve(2 * k);
    for (int i = 0; i < k; ++i) e.push_back(u * k + i);
    for (int i = 0; i < k; ++i) e.push_back(v * k + i);
    h.add_edge(std::move(e));
  }
  return h;
}

Hypergraph trim_to_minimal(const Hypergraph& h, int q, std::int64_t budget) {
  if (count_colourings(h, q, budget) != 0) {
    throw NotUncolourable("trim_to_minimal: input is q-colourable");
  }
  Hypergraph cur = h;
  // One pass in input order suffices: once e is kept, every later removal
  // only shrinks the edge set, so Z_col(cur - e) can only grow and e stays
  // necessary.
  std::size_t i = 0;
  while (i < cur.edges.size()) {
    Hypergraph cand = cur;
    cand.edges.erase(cand.edges.begin() + static_cast<std::ptrdiff_t>(i));
    if (count_colourings(cand, q, budget) == 0) {
      cur = std::move(cand);  // e was redundant
    } else {
      ++i;  // e is necessary
    }
  }
  return cur;
}

std::vector<std::vector<BigInt>> gadget_pair_counts(const Hypergraph& h,
                                                    int u, int v, int q,
                                                    std::int64_t budget) {
  std::vector<std::vector<BigInt>> counts(
      static_cast<std::size_t>(q), std::vector<BigInt>(static_cast<std::size_t>(q), 0));
  for_each_colouring(h, q, budget, [&](const Colouring& c) {
    counts[static_cast<std::size_t>(c[static_cast<std::size_t>(u)])]
          [static_cast<std::size_t>(c[static_cast<std::size_t>(v)])] += 1;
  });
  return counts;
}

namespace {

// Disequality invariant: zero diagonal, one common off-diagonal count C0.
BigInt verified_disequality_c0(const std::vector<std::vector<BigInt>>& counts) {
  const int q = static_cast<int>(counts.size());
  BigInt c0 = counts[0][1];
  if (c0 == 0) throw VerificationFailure("gadget admits no proper colouring");
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      const BigInt want = (i == j) ? BigInt(0) : c0;
      if (counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != want) {
        throw VerificationFailure("pair counts are not a uniform disequality");
      }
    }
  }
  return c0;
}

}  // namespace

Gadget build_disequality_gadget(const Hypergraph& h_min, int q,
                                std::int64_t budget) {
  if (h_min.edges.empty()) throw NotUncolourable("no hyperedges");
  if (count_colourings(h_min, q, budget) != 0) {
    throw NotUncolourable("build_disequality_gadget: input is q-colourable");
  }
  // Lexicographically first hyperedge (edge lists are stored sorted).
  std::size_t e_idx = 0;
  for (std::size_t i = 1; i < h_min.edges.size(); ++i) {
    if (h_min.edges[i] < h_min.edges[e_idx]) e_idx = i;
  }
  const std::vector<int> e = h_min.edges[e_idx];
  const int K = static_cast<int>(e.size());

  Hypergraph rest = h_min;
  rest.edges.erase(rest.edges.begin() + static_cast<std::ptrdiff_t>(e_idx));
  const std::vector<int> rest_deg = rest.degrees();

  // S: vertices of e still attached to the remainder; then e \ S.
  std::vector<int> order;  // v_1..v_i (in S), then v_{i+1}..v_K
  for (int v : e) {
    if (rest_deg[static_cast<std::size_t>(v)] > 0) order.push_back(v);
  }
  const int i = static_cast<int>(order.size());
  if (i == 0) {
    throw EmptyS("chosen hyperedge is disconnected; input was not minimal");
  }
  for (int v : e) {
    if (rest_deg[static_cast<std::size_t>(v)] == 0) order.push_back(v);
  }

  for (int j = 1; j <= i; ++j) {
    // H_j: fresh u_1..u_j replace v_1..v_j inside e.
    Hypergraph hj = rest;
    std::vector<int> ej;
    for (int a = 0; a < j; ++a) ej.push_back(hj.n + a);
    hj.n += j;
    for (int a = j; a < K; ++a) ej.push_back(order[static_cast<std::size_t>(a)]);
    hj.add_edge(std::move(ej));

    if (count_colourings(hj, q, budget) == 0) continue;

    Gadget g;
    g.h = std::move(hj);
    g.u = rest.n + (j - 1);                       // u_j
    g.v = order[static_cast<std::size_t>(j - 1)]; // v_j
    g.kind = GadgetKind::disequality;
    g.q = q;
    auto counts = gadget_pair_counts(g.h, g.u, g.v, q, budget);
    g.C0 = verified_disequality_c0(counts);
    if (g.h.degrees()[static_cast<std::size_t>(g.u)] != 1) {
      throw VerificationFailure("distinguished vertex u does not have degree 1");
    }
    return g;
  }
  throw VerificationFailure("no H_j in the sequence became colourable");
}

Gadget build_equality_gadget(const Gadget& dis, std::int64_t budget) {
  if (dis.q != 2 || dis.kind != GadgetKind::disequality) {
    throw WrongQ("build_equality_gadget requires a q=2 disequality gadget");
  }
  // Two copies share their high-degree pin as the middle vertex w, so the
  // surviving pins are the two degree-1 vertices.
  Gadget eq;
  eq.h = dis.h;
  const int w = dis.v;
  const int u2_base = eq.h.n;  // fresh indices for copy 2
  append_copy(eq.h, dis.h, {{dis.v, w}});
  // Copy 2's image of dis.u: pins keep their slot, others fill fresh
  // indices in increasing vertex order.
  int fresh = u2_base;
  int u2 = -1;
  for (int v = 0; v < dis.h.n; ++v) {
    if (v == dis.v) continue;
    if (v == dis.u) u2 = fresh;
    ++fresh;
  }
  eq.u = dis.u;
  eq.v = u2;
  eq.kind = GadgetKind::equality;
  eq.q = 2;

  auto counts = gadget_pair_counts(eq.h, eq.u, eq.v, 2, budget);
  if (counts[0][1] != 0 || counts[1][0] != 0 || counts[0][0] == 0 ||
      counts[0][0] != counts[1][1]) {
    throw VerificationFailure("chained gadget is not a uniform equality");
  }
  eq.C0 = counts[0][0];
  const auto deg = eq.h.degrees();
  if (deg[static_cast<std::size_t>(eq.u)] != 1 ||
      deg[static_cast<std::size_t>(eq.v)] != 1) {
    throw VerificationFailure("equality pins must both have degree 1");
  }
  return eq;
}

Hypergraph potts_edge_gadget_replace(const Graph& g, const Gadget& dis) {
  if (dis.kind != GadgetKind::disequality) {
    throw std::invalid_argument("potts_edge_gadget_replace needs a disequality gadget");
  }
  Hypergraph h;
  h.n = g.n;  // original vertices keep their indices
  for (const auto& [u, v] : g.edges) {
    const int w1 = h.n++;
    const int w2 = h.n++;
    append_copy(h, dis.h, {{dis.u, u}, {dis.v, w1}});
    append_copy(h, dis.h, {{dis.u, w2}, {dis.v, w1}});
    append_copy(h, dis.h, {{dis.u, v}, {dis.v, w2}});
  }

  // Degree accounting: w1 <= 2*D0, w2 <= D0 + 1, originals keep theirs.
  const auto deg = h.degrees();
  const auto gdeg = dis.h.degrees();
  const int d0 = *std::max_element(gdeg.begin(), gdeg.end());
  const auto orig_deg = g.degrees();
  for (int v = 0; v < g.n; ++v) {
    if (deg[static_cast<std::size_t>(v)] != orig_deg[static_cast<std::size_t>(v)]) {
      throw VerificationFailure("original vertex degree changed under replacement");
    }
  }
  const int stride = 2 + 3 * (dis.h.n - 2);  // fresh vertices per edge
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const int w1 = g.n + stride * static_cast<int>(e);
    const int w2 = w1 + 1;
    if (deg[static_cast<std::size_t>(w1)] > 2 * d0 ||
        deg[static_cast<std::size_t>(w2)] > d0 + 1) {
      throw VerificationFailure("connector vertex degree bound violated");
    }
  }
  return h;
}

PottsIdentityReport verify_potts_identity(const Graph& g, const Gadget& dis,
                                          std::int64_t budget) {
  PottsIdentityReport rep;
  const int q = dis.q;

  // Per-copy pair counts N(i,j) and the composed three-copy table
  // T(a,b) = sum over w1,w2 colours of N(a,w1) N(w2,w1) N(b,w2).
  const auto N = gadget_pair_counts(dis.h, dis.u, dis.v, q, budget);
  std::vector<std::vector<BigInt>> T(
      static_cast<std::size_t>(q), std::vector<BigInt>(static_cast<std::size_t>(q), 0));
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      BigInt acc = 0;
      for (int c1 = 0; c1 < q; ++c1) {
        for (int c2 = 0; c2 < q; ++c2) {
          acc += N[static_cast<std::size_t>(a)][static_cast<std::size_t>(c1)] *
                 N[static_cast<std::size_t>(c2)][static_cast<std::size_t>(c1)] *
                 N[static_cast<std::size_t>(b)][static_cast<std::size_t>(c2)];
        }
      }
      T[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = acc;
    }
  }

  const BigInt c0cubed = dis.C0 * dis.C0 * dis.C0;
  rep.same_count = BigInt(q - 1) * BigInt(q - 2) * c0cubed;
  rep.diff_count = (BigInt(q - 2) * BigInt(q - 2) + BigInt(q - 1)) * c0cubed;
  rep.C = rep.diff_count;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const BigInt& want = (a == b) ? rep.same_count : rep.diff_count;
      if (T[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != want) {
        throw VerificationFailure("composed gadget table has wrong entries");
      }
    }
  }

  const Hypergraph hg = potts_edge_gadget_replace(g, dis);
  const unsigned long m = static_cast<unsigned long>(g.edges.size());

  // lhs: Z_col(H_G), directly if q^n fits the budget, else by contracting
  // the exact T table over assignments of G (the copies only share the
  // pinned vertices, so the product factorizes edge by edge).
  bool direct = true;
  {
    BigInt states = bigint_pow(BigInt(q), static_cast<unsigned long>(hg.n));
    if (states > budget) direct = false;
  }
  if (direct) {
    rep.lhs = count_colourings(hg, q, budget);
  } else {
    BigInt total = 0;
    Colouring sigma(static_cast<std::size_t>(g.n), 0);
    while (true) {
      BigInt prod = 1;
      for (const auto& [u, v] : g.edges) {
        prod *= T[static_cast<std::size_t>(sigma[static_cast<std::size_t>(u)])]
                 [static_cast<std::size_t>(sigma[static_cast<std::size_t>(v)])];
        if (prod == 0) break;
      }
      total += prod;
      int pos = 0;
      while (pos < g.n && ++sigma[static_cast<std::size_t>(pos)] == q) {
        sigma[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == g.n) break;
    }
    rep.lhs = total;
  }
  rep.direct_enumeration = direct;

  // rhs: C^|E| Z_potts(G, B) with B = (D-1)/D, D = q^2 - 3q + 3, compared
  // after clearing the D^|E| denominator.
  const BigInt D = BigInt(q) * q - 3 * q + 3;
  const auto hist = potts_mono_histogram(g, q, budget);
  BigInt z_scaled = 0;  // D^m * Z_potts(G, B)
  for (std::size_t mono = 0; mono < hist.size(); ++mono) {
    z_scaled += hist[mono] * bigint_pow(D - 1, static_cast<unsigned long>(mono)) *
                bigint_pow(D, m - static_cast<unsigned long>(mono));
  }
  rep.rhs = bigint_pow(rep.C, m) * z_scaled;
  rep.holds = (rep.lhs * bigint_pow(D, m) == rep.rhs);
  return rep;
}

Graph parallel_power(const Graph& g, int s) {
  if (s < 1) throw InvalidParams("parallel_power: s must be >= 1");
  Graph out;
  out.n = g.n;
  for (const auto& [u, v] : g.edges) {
    for (int i = 0; i < s; ++i) out.add_edge(u, v);
  }
  return out;
}

void Gadget::save(std::ostream& out) const {
  h.save(out);
  out << u << ' ' << v << ' '
      << (kind == GadgetKind::disequality ? "disequality" : "equality") << ' '
      << C0 << '\n';
}

Gadget Gadget::load(std::istream& in) {
  Gadget g;
  g.h = Hypergraph::load(in);
  std::string kind_s, c0_s;
  if (!(in >> g.u >> g.v >> kind_s >> c0_s)) {
    throw std::runtime_error("gadget trailer: expected \"u v kind C0\"");
  }
  if (kind_s == "disequality") {
    g.kind = GadgetKind::disequality;
  } else if (kind_s == "equality") {
    g.kind = GadgetKind::equality;
  } else {
    throw std::runtime_error("gadget trailer: unknown kind " + kind_s);
  }
  g.C0 = BigInt(c0_s);
  return g;
}

}  // namespace hypercol
