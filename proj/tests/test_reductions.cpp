#include <doctest.h>

#include <sstream>

#include "hypercol/reductions.hpp"
#include "hypercol/spin.hpp"

using namespace hypercol;

TEST_CASE("trimming the Fano plane keeps all seven lines") {
  const Hypergraph fano = Hypergraph::fano_plane();
  const Hypergraph t = trim_to_minimal(fano, 2);
  CHECK(t.edges.size() == 7);
  CHECK(count_colourings(t, 2) == BigInt(0));
  // removing any single line makes it 2-colourable (minimality)
  for (std::size_t skip = 0; skip < t.edges.size(); ++skip) {
    Hypergraph sub;
    sub.n = t.n;
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      if (e != skip) sub.add_edge(t.edges[e]);
    }
    CHECK(count_colourings(sub, 2) > 0);
  }
}

TEST_CASE("trimming drops redundant edges") {
  // Fano plus a junk edge on fresh vertices: junk must be trimmed away
  Hypergraph h = Hypergraph::fano_plane();
  h.n = 10;
  h.add_edge({7, 8, 9});
  const Hypergraph t = trim_to_minimal(h, 2);
  CHECK(t.edges.size() == 7);
}

TEST_CASE("trim rejects colourable input") {
  Hypergraph h;
  h.n = 3;
  h.add_edge({0, 1, 2});
  CHECK_THROWS_AS(trim_to_minimal(h, 2), NotUncolourable);
}

TEST_CASE("disequality gadget from the Fano plane") {
  const Gadget g = build_disequality_gadget(Hypergraph::fano_plane(), 2);
  CHECK(g.q == 2);
  CHECK(g.kind == GadgetKind::disequality);
  CHECK(g.C0 > 0);
  const auto counts = gadget_pair_counts(g.h, g.u, g.v, g.q);
  // property: sigma(u) != sigma(v) in every proper colouring, with uniform
  // count C0 on the offdiagonal
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (a == b) {
        CHECK(counts[a][b] == 0);
      } else {
        CHECK(counts[a][b] == g.C0);
      }
    }
  }
  // u has degree one
  CHECK(g.h.degrees()[g.u] == 1);
}

TEST_CASE("equality gadget chains two disequality gadgets") {
  const Gadget dis = build_disequality_gadget(Hypergraph::fano_plane(), 2);
  const Gadget eq = build_equality_gadget(dis);
  CHECK(eq.kind == GadgetKind::equality);
  CHECK(eq.C0 == dis.C0 * dis.C0);
  const auto counts = gadget_pair_counts(eq.h, eq.u, eq.v, eq.q);
  CHECK(counts[0][0] == eq.C0);
  CHECK(counts[1][1] == eq.C0);
  CHECK(counts[0][1] == 0);
  CHECK(counts[1][0] == 0);
  CHECK(eq.h.degrees()[eq.u] == 1);
  CHECK(eq.h.degrees()[eq.v] == 1);
}

TEST_CASE("gadget save/load round trip") {
  const Gadget g = build_disequality_gadget(Hypergraph::fano_plane(), 2);
  std::stringstream buf;
  g.save(buf);
  Gadget g2 = Gadget::load(buf);
  g2.q = g.q;
  CHECK(g2.u == g.u);
  CHECK(g2.v == g.v);
  CHECK(g2.kind == g.kind);
  CHECK(g2.C0 == g.C0);
  CHECK(g2.h.edges == g.h.edges);
}

TEST_CASE("potts gadget identity on toy graphs") {
  const Gadget dis = build_disequality_gadget(Hypergraph::fano_plane(), 2);
  SUBCASE("single edge") {
    const auto rep = verify_potts_identity(Graph::single_edge(), dis);
    CHECK(rep.holds);
    CHECK(rep.direct_enumeration);
    // C = ((q-2)^2 + (q-1)) C0^3 at q=2: C0^3
    CHECK(rep.C == dis.C0 * dis.C0 * dis.C0);
  }
  SUBCASE("path P3") {
    const auto rep = verify_potts_identity(Graph::path(3), dis);
    CHECK(rep.holds);
  }
  SUBCASE("triangle") {
    const auto rep = verify_potts_identity(Graph::cycle(3), dis);
    CHECK(rep.holds);
  }
}

TEST_CASE("parallel power multiplies every edge") {
  const Graph g = Graph::cycle(3);
  const Graph g3 = parallel_power(g, 3);
  CHECK(g3.n == 3);
  CHECK(g3.edges.size() == 9);
  const auto deg = g3.degrees();
  for (int v = 0; v < 3; ++v) CHECK(deg[v] == 6);
}

TEST_CASE("halving clones vertices and preserves edge count") {
  const Graph g = Graph::complete(4);
  const Hypergraph h = halve(g, 3);
  CHECK(h.n == 12);
  CHECK(h.edges.size() == 6);
  CHECK(h.uniform_arity() == 6);
}
