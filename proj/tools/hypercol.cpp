// hypercol: command-line surface over the core analyses.
//
// Subcommand groups:
//   oracle      count-colourings | partition-zb | potts | verify-halving
//   phase       fixpoints | dominance | stability
//   curves      trace | intersect | landmarks | exterior
//   firstmoment bound | maximize | threshold
//   gadget      trim | disequality | equality | potts-replace | verify
//
// Every command writes its primary record (JSON or CSV) into --out-dir plus
// a run manifest with parameter echo and output digests.  Exit codes:
//   0 ok, 2 invalid input, 3 budget exceeded, 4 numeric non-convergence,
//   5 property-verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hypercol/first_moment.hpp"
#include "hypercol/phi.hpp"
#include "hypercol/reductions.hpp"
#include "hypercol/scalar_systems.hpp"
#include "hypercol/stability.hpp"
#include "hypercol/tree_recursion.hpp"

using json = nlohmann::ordered_json;
using namespace hypercol;

namespace {

constexpr const char* kVersion = "hypercol 0.1.0";

struct GlobalOpts {
  int q = 0;
  int k = 0;
  int d = 0;
  int delta = 0;
  int K = 0;
  unsigned precision_bits = 256;
  std::string tol = "1e-30";
  std::uint64_t seed = 0;
  std::int64_t budget = 100000000;
  std::string out_dir = ".";
  std::string format = "json";
  int threads = 0;
};

std::string real_str(const Real& x, unsigned bits) {
  return x.str(static_cast<unsigned>(bits * 0.3011) + 2);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct RunContext {
  GlobalOpts g;
  std::string command;
  std::vector<std::string> argv;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, std::uint64_t>> outputs;

  void write_file(const std::string& name, const std::string& body) {
    const std::string path = g.out_dir + "/" + name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
    outputs.emplace_back(name, fnv1a(body));
  }

  void finish() {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    json m;
    m["version"] = kVersion;
    m["command"] = command;
    m["argv"] = argv;
    m["params"] = {{"q", g.q},       {"k", g.k},
                   {"d", g.d},       {"K", g.K},
                   {"precision_bits", g.precision_bits},
                   {"tol", g.tol},   {"seed", g.seed},
                   {"budget", g.budget}, {"format", g.format},
                   {"threads", g.threads}};
    m["wall_ms"] = ms;
    json digs = json::array();
    for (const auto& [name, dig] : outputs) {
      std::ostringstream hex;
      hex << std::hex << dig;
      digs.push_back({{"file", name}, {"fnv1a64", hex.str()}});
    }
    m["output_digests"] = digs;
    const std::string path = g.out_dir + "/manifest.json";
    std::ofstream out(path);
    out << m.dump(2) << "\n";
  }
};

ModelParams params_from(const GlobalOpts& g) {
  const int Delta = g.delta > 0 ? g.delta : g.d + 1;
  if (g.q <= 0 || g.k <= 0 || Delta <= 1) {
    throw InvalidParams("need --q, --k and --d/--delta");
  }
  return build_params(g.q, g.k, Delta,
                      PrecisionContext::make(g.precision_bits, g.tol));
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open graph file " + path);
  return Graph::load(in);
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open hypergraph file " + path);
  return Hypergraph::load(in);
}

json fixpoint_json(const FixpointRC& fp, unsigned bits) {
  json j;
  j["qvec"] = {real_str(fp.qvec.q1, bits), real_str(fp.qvec.q2, bits),
               real_str(fp.qvec.q3, bits)};
  json R = json::array(), C = json::array();
  for (const Real& r : fp.R) R.push_back(real_str(r, bits));
  for (const Real& c : fp.C) C.push_back(real_str(c, bits));
  j["R"] = R;
  j["C"] = C;
  j["residual"] = real_str(fp.residual, bits);
  return j;
}

FixpointRC fixpoint_from_json(const json& j, int q) {
  FixpointRC fp;
  fp.qvec = TypeTriple::make(Real(j["qvec"][0].get<std::string>()),
                             Real(j["qvec"][1].get<std::string>()),
                             Real(j["qvec"][2].get<std::string>()), q);
  for (int i = 0; i < 4; ++i) {
    fp.R[i] = Real(j["R"][i].get<std::string>());
    fp.C[i] = Real(j["C"][i].get<std::string>());
  }
  fp.residual = Real(j.value("residual", "0"));
  return fp;
}

// ---------------------------------------------------------------------- oracle

int run_oracle_count(RunContext& rc, const std::string& file) {
  const Hypergraph h = load_hypergraph(file);
  const BigInt n = count_colourings(h, rc.g.q, rc.g.budget);
  json j{{"q", rc.g.q}, {"n_vertices", h.n}, {"n_edges", h.edges.size()},
         {"colourings", n.str()}};
  rc.write_file("count_colourings.json", j.dump(2) + "\n");
  std::cout << n.str() << "\n";
  return 0;
}

// Z_B needs Delta; default it to the graph's regular degree when omitted.
ModelParams params_for(const GlobalOpts& g, const Graph& graph) {
  GlobalOpts adj = g;
  if (adj.d == 0 && adj.delta == 0) {
    const int deg = graph.regular_degree();
    if (deg < 0) throw InvalidParams("graph not regular: pass --d/--delta");
    adj.delta = deg;
  }
  return params_from(adj);
}

int run_oracle_zb(RunContext& rc, const std::string& file) {
  const Graph g = load_graph(file);
  const ModelParams p = params_for(rc.g, g);
  const BigInt z = partition_function_zb_exact(g, p, rc.g.budget);
  json j{{"q", p.q}, {"k", p.k}, {"Delta", p.Delta}, {"Z_B", z.str()}};
  rc.write_file("partition_zb.json", j.dump(2) + "\n");
  std::cout << "Z_B=" << z.str() << "\n";
  return 0;
}

int run_oracle_potts(RunContext& rc, const std::string& file,
                     const std::string& b_scalar) {
  const Graph g = load_graph(file);
  const Real B(b_scalar);
  const Real z = potts_partition(g, rc.g.q, B, rc.g.budget);
  json j{{"q", rc.g.q}, {"B", b_scalar},
         {"Z", real_str(z, rc.g.precision_bits)}};
  rc.write_file("potts.json", j.dump(2) + "\n");
  std::cout << "Z=" << real_str(z, rc.g.precision_bits) << "\n";
  return 0;
}

int run_oracle_halving(RunContext& rc, const std::string& file) {
  const Graph g = load_graph(file);
  const ModelParams p = params_for(rc.g, g);
  const BigInt zb = partition_function_zb_exact(g, p, rc.g.budget);
  const Hypergraph hg = halve(g, p.k);
  const BigInt zc = count_colourings(hg, p.q, rc.g.budget);
  const bool ok = zb == zc;
  json j{{"Z_B", zb.str()}, {"Z_col", zc.str()}, {"equal", ok}};
  rc.write_file("verify_halving.json", j.dump(2) + "\n");
  std::cout << "Z_B=" << zb.str() << " Z_col=" << zc.str()
            << (ok ? " OK" : " MISMATCH") << "\n";
  return ok ? 0 : 5;
}

// ----------------------------------------------------------------------- phase

int run_phase_fixpoints(RunContext& rc, const std::string& family) {
  const ModelParams p = params_from(rc.g);
  const unsigned bits = rc.g.precision_bits;
  json out = json::array();
  const auto emit = [&](const std::string& name, const FixpointRC& fp) {
    json j = fixpoint_json(fp, bits);
    j["family"] = name;
    out.push_back(j);
    std::cout << name << ": residual=" << real_str(fp.residual, 64) << "\n";
  };
  if (family == "all" || family == "half-half") {
    emit("half-half", solve_half_half(p));
  }
  if (family == "all" || family == "q00-sym") {
    const Real x = solve_symmetric_q00(p);
    const TypeTriple qv = TypeTriple::make(Real(p.q), Real(0), Real(0), p.q);
    FixpointRC fp{qv,
                  {x / (x + p.q), Real(1) / (x + p.q), Real(0), Real(0)},
                  {x / (x + p.q), Real(1) / (x + p.q), Real(0), Real(0)},
                  Real(0)};
    fp.residual = fixpoint_residual(fp, p);
    emit("q00-sym", fp);
    std::cout << "  x=" << real_str(x, bits)
              << "  tx+q-1=" << real_str(p.t * x + p.q - 1, 64) << "\n";
  }
  if (family == "all" || family == "q00-asym") {
    const auto [x, y] = solve_asymmetric_q00(p);
    const TypeTriple qv = TypeTriple::make(Real(p.q), Real(0), Real(0), p.q);
    FixpointRC fp{qv,
                  {x / (x + p.q), Real(1) / (x + p.q), Real(0), Real(0)},
                  {y / (y + p.q), Real(1) / (y + p.q), Real(0), Real(0)},
                  Real(0)};
    fp.residual = fixpoint_residual(fp, p);
    emit("q00-asym", fp);
    std::cout << "  x=" << real_str(x, bits) << "  y=" << real_str(y, bits)
              << "\n";
  }
  if (out.empty()) throw InvalidParams("unknown --family " + family);
  rc.write_file("fixpoints.json", out.dump(2) + "\n");
  return 0;
}

int run_phase_dominance(RunContext& rc) {
  const ModelParams p = params_from(rc.g);
  const unsigned bits = rc.g.precision_bits;
  const DominanceReport rep = dominant_search(p);
  json out;
  out["heuristic_regime"] = rep.heuristic_regime;
  out["balanced"] = rep.balanced;
  out["permutation_symmetric"] = rep.permutation_symmetric;
  json cands = json::array();
  for (const Candidate& c : rep.candidates) {
    json j{{"label", c.label},
           {"phi", real_str(c.phi_value, bits)},
           {"verdict", c.verdict},
           {"note", c.note}};
    if (c.fixpoint) j["fixpoint"] = fixpoint_json(*c.fixpoint, bits);
    cands.push_back(j);
  }
  out["candidates"] = cands;
  out["winner"] = rep.candidates[rep.winner].label;
  rc.write_file("dominance.json", out.dump(2) + "\n");
  std::cout << "winner: " << rep.candidates[rep.winner].label
            << "  phi=" << real_str(rep.candidates[rep.winner].phi_value, 64)
            << "  verdict=" << rep.candidates[rep.winner].verdict
            << (rep.balanced ? "  alpha==beta" : "  alpha!=beta") << "\n";
  return 0;
}

int run_phase_stability(RunContext& rc, const std::string& in_file) {
  const ModelParams p = params_from(rc.g);
  const unsigned bits = rc.g.precision_bits;
  std::ifstream in(in_file);
  if (!in) throw InvalidParams("cannot open " + in_file);
  json jin = json::parse(in);
  if (jin.is_array()) jin = jin.at(0);
  const FixpointRC fp = fixpoint_from_json(jin, p.q);
  const StabilityReport rep = classify(fp, p);
  json out;
  json eig = json::array();
  for (const Real& e : rep.eigenvalues) eig.push_back(real_str(e, bits));
  out["eigenvalues"] = eig;
  out["second_largest"] = real_str(rep.second_largest, bits);
  out["threshold"] = real_str(rep.threshold, bits);
  out["verdict"] = to_string(rep.verdict);
  out["closed_form_used"] = rep.closed_form_used;
  out["crosscheck_delta"] = real_str(rep.crosscheck_delta, bits);
  rc.write_file("stability.json", out.dump(2) + "\n");
  std::cout << "verdict=" << to_string(rep.verdict)
            << "  |lambda_2|=" << real_str(rep.second_largest, 64)
            << "  threshold=" << real_str(rep.threshold, 64) << "\n";
  return 0;
}

// ---------------------------------------------------------------------- curves

std::string curve_csv(const ModelParams& p, const CurveTrace& tr,
                      unsigned bits) {
  std::ostringstream csv;
  csv << "which,x,y,f1,f2\n";
  const char* name = tr.which == CurveId::f1 ? "f1" : "f2";
  for (const CurvePoint& pt : tr.points) {
    csv << name << "," << real_str(pt.x, bits) << "," << real_str(pt.y, bits)
        << "," << real_str(eval_f1(pt.x, pt.y, p), 64) << ","
        << real_str(eval_f2(pt.x, pt.y, p), 64) << "\n";
  }
  return csv.str();
}

int run_curves_trace(RunContext& rc, int n_points) {
  const ModelParams p = params_from(rc.g);
  const CurveTrace tr = trace_P1_plus(p, n_points);
  rc.write_file("curve_p1_plus.csv", curve_csv(p, tr, rc.g.precision_bits));
  std::cout << "traced " << tr.points.size() << " points\n";
  return 0;
}

int run_curves_intersect(RunContext& rc) {
  const ModelParams p = params_from(rc.g);
  const unsigned bits = rc.g.precision_bits;
  const IntersectionPoint ip = find_intersection_near_diagonal(p);
  json j{{"x", real_str(ip.x, bits)},       {"y", real_str(ip.y, bits)},
         {"r0", real_str(ip.r0, bits)},     {"c0", real_str(ip.c0, bits)},
         {"f1_residual", real_str(ip.f1_residual, 64)},
         {"f2_residual", real_str(ip.f2_residual, 64)}};
  rc.write_file("intersection.json", j.dump(2) + "\n");
  std::cout << "x=" << real_str(ip.x, bits) << " y=" << real_str(ip.y, bits)
            << " |f1|=" << real_str(abs(ip.f1_residual), 32)
            << " |f2|=" << real_str(abs(ip.f2_residual), 32) << "\n";
  return 0;
}

int run_curves_landmarks(RunContext& rc) {
  const ModelParams p = params_from(rc.g);
  const unsigned bits = rc.g.precision_bits;
  const LandmarkSet lm = compute_landmarks(p);
  json j{{"x_hat", real_str(lm.x_hat, bits)},
         {"x_star", real_str(lm.x_star, bits)},
         {"x_2star", real_str(lm.x_2star, bits)},
         {"x_0", real_str(lm.x_0, bits)},
         {"y_E", real_str(lm.y_E, bits)},
         {"x_E", real_str(lm.x_E, bits)},
         {"u", real_str(lm.u, bits)}};
  rc.write_file("landmarks.json", j.dump(2) + "\n");
  for (auto& [key, val] : j.items()) {
    std::cout << key << "=" << val.get<std::string>() << "\n";
  }
  return 0;
}

int run_curves_exterior(RunContext& rc) {
  const ModelParams p = params_from(rc.g);
  const bool ok = exterior_point_check(p) && sym_bound_check(p);
  json j{{"exterior_ok", ok}};
  rc.write_file("exterior.json", j.dump(2) + "\n");
  std::cout << (ok ? "exterior checks OK" : "exterior checks FAILED") << "\n";
  return ok ? 0 : 5;
}

// ----------------------------------------------------------------- firstmoment

int run_fm_bound(RunContext& rc) {
  const int Delta = rc.g.delta > 0 ? rc.g.delta : rc.g.d + 1;
  const double b = F_upper_bound(rc.g.q, rc.g.K, Delta);
  const double s = F_upper_bound_surrogate(rc.g.q, rc.g.K, Delta);
  json j{{"q", rc.g.q}, {"K", rc.g.K}, {"Delta", Delta},
         {"bound", b},  {"surrogate", s},
         {"uncolourable_regime", is_uncolourable_regime(rc.g.q, rc.g.K, Delta)}};
  rc.write_file("firstmoment_bound.json", j.dump(2) + "\n");
  std::cout << "bound=" << b << " surrogate=" << s << "\n";
  return 0;
}

int run_fm_maximize(RunContext& rc, int grid) {
  const int Delta = rc.g.delta > 0 ? rc.g.delta : rc.g.d + 1;
  const GridMaximum m = maximize_F_grid(rc.g.q, rc.g.K, Delta, grid);
  json j{{"q", rc.g.q},  {"K", rc.g.K}, {"Delta", Delta},
         {"max", m.value}, {"alpha", m.alpha}};
  rc.write_file("firstmoment_max.json", j.dump(2) + "\n");
  std::cout << "max F = " << m.value << "\n";
  return 0;
}

int run_fm_threshold(RunContext& rc) {
  const double thr = threshold_delta(rc.g.q, rc.g.K);
  int Delta = static_cast<int>(std::floor(thr)) + 1;
  while (!is_uncolourable_regime(rc.g.q, rc.g.K, Delta)) ++Delta;
  json j{{"q", rc.g.q}, {"K", rc.g.K}, {"threshold", thr},
         {"min_integer_Delta", Delta},
         {"bound_below", F_upper_bound(rc.g.q, rc.g.K, Delta - 1)},
         {"bound_at", F_upper_bound(rc.g.q, rc.g.K, Delta)}};
  rc.write_file("firstmoment_threshold.json", j.dump(2) + "\n");
  std::cout << "Delta >= " << Delta << "  (threshold " << thr << ")\n";
  std::cout << "bound(" << Delta - 1
            << ")=" << F_upper_bound(rc.g.q, rc.g.K, Delta - 1) << "  bound("
            << Delta << ")=" << F_upper_bound(rc.g.q, rc.g.K, Delta) << "\n";
  return 0;
}

// ---------------------------------------------------------------------- gadget

int run_gadget_trim(RunContext& rc, const std::string& file) {
  const Hypergraph h = load_hypergraph(file);
  const Hypergraph m = trim_to_minimal(h, rc.g.q, rc.g.budget);
  std::ostringstream out;
  m.save(out);
  rc.write_file("trimmed.txt", out.str());
  std::cout << "trimmed to " << m.edges.size() << " edges over " << m.n
            << " vertices\n";
  return 0;
}

int run_gadget_dis(RunContext& rc, const std::string& file) {
  const Hypergraph h = load_hypergraph(file);
  const Gadget g = build_disequality_gadget(h, rc.g.q, rc.g.budget);
  std::ostringstream out;
  g.save(out);
  rc.write_file("disequality_gadget.txt", out.str());
  const auto counts = gadget_pair_counts(g.h, g.u, g.v, g.q, rc.g.budget);
  std::cout << "gadget: " << g.h.n << " vertices, " << g.h.edges.size()
            << " edges, u=" << g.u << " v=" << g.v << " C0=" << g.C0.str()
            << "\n";
  std::cout << "pair counts: same=" << counts[0][0].str()
            << " diff=" << counts[0][1].str() << "\n";
  return 0;
}

int run_gadget_eq(RunContext& rc, const std::string& file) {
  const Hypergraph h = load_hypergraph(file);
  const Gadget dis = build_disequality_gadget(h, rc.g.q, rc.g.budget);
  const Gadget eq = build_equality_gadget(dis, rc.g.budget);
  std::ostringstream out;
  eq.save(out);
  rc.write_file("equality_gadget.txt", out.str());
  std::cout << "equality gadget: " << eq.h.n << " vertices, "
            << eq.h.edges.size() << " edges, C0=" << eq.C0.str() << "\n";
  return 0;
}

int run_gadget_replace(RunContext& rc, const std::string& graph_file,
                       const std::string& gadget_file) {
  const Graph g = load_graph(graph_file);
  std::ifstream in(gadget_file);
  if (!in) throw InvalidParams("cannot open " + gadget_file);
  Gadget dis = Gadget::load(in);
  dis.q = rc.g.q;
  const Hypergraph h = potts_edge_gadget_replace(g, dis);
  std::ostringstream out;
  h.save(out);
  rc.write_file("potts_replaced.txt", out.str());
  std::cout << h.n << " vertices, " << h.edges.size() << " edges\n";
  return 0;
}

int run_gadget_verify(RunContext& rc, const std::string& graph_file,
                      const std::string& gadget_file) {
  const Graph g = load_graph(graph_file);
  std::ifstream in(gadget_file);
  if (!in) throw InvalidParams("cannot open " + gadget_file);
  Gadget dis = Gadget::load(in);
  dis.q = rc.g.q;
  const PottsIdentityReport rep = verify_potts_identity(g, dis, rc.g.budget);
  json j{{"holds", rep.holds},
         {"lhs", rep.lhs.str()},
         {"rhs", rep.rhs.str()},
         {"C", rep.C.str()},
         {"same_count", rep.same_count.str()},
         {"diff_count", rep.diff_count.str()},
         {"direct_enumeration", rep.direct_enumeration}};
  rc.write_file("potts_verify.json", j.dump(2) + "\n");
  std::cout << (rep.holds ? "identity holds" : "identity FAILS")
            << "  C=" << rep.C.str() << "\n";
  return rep.holds ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) +
               " -- colouring / spin-system analysis toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--q", g.q, "number of colours");
  app.add_option("--k", g.k, "halving parameter (edge arity K = 2k)");
  app.add_option("--d", g.d, "branching degree (Delta - 1)");
  app.add_option("--delta", g.delta, "vertex degree Delta");
  app.add_option("--K", g.K, "hyperedge arity for first-moment commands");
  app.add_option("--precision-bits", g.precision_bits, "mantissa bits");
  app.add_option("--tol", g.tol, "absolute tolerance (decimal string)");
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--budget", g.budget, "enumeration budget");
  app.add_option("--out-dir", g.out_dir, "output directory");
  app.add_option("--format", g.format, "csv|json");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");

  std::string file, file2, family = "all", b_scalar = "1";
  int n_points = 200, grid = 24;

  auto* oracle = app.add_subcommand("oracle", "exact enumeration oracles");
  auto* o_count = oracle->add_subcommand("count-colourings");
  o_count->add_option("--hypergraph", file)->required();
  auto* o_zb = oracle->add_subcommand("partition-zb");
  o_zb->add_option("--graph", file)->required();
  auto* o_potts = oracle->add_subcommand("potts");
  o_potts->add_option("--graph", file)->required();
  o_potts->add_option("--B", b_scalar, "edge interaction");
  auto* o_halve = oracle->add_subcommand("verify-halving");
  o_halve->add_option("--graph", file)->required();

  auto* phase = app.add_subcommand("phase", "fixpoints / dominance / stability");
  auto* p_fix = phase->add_subcommand("fixpoints");
  p_fix->add_option("--family", family, "all|half-half|q00-sym|q00-asym");
  auto* p_dom = phase->add_subcommand("dominance");
  auto* p_stab = phase->add_subcommand("stability");
  p_stab->add_option("--in", file)->required();

  auto* curves = app.add_subcommand("curves", "scalar curve systems");
  auto* c_trace = curves->add_subcommand("trace");
  c_trace->add_option("--points", n_points);
  auto* c_int = curves->add_subcommand("intersect");
  auto* c_land = curves->add_subcommand("landmarks");
  auto* c_ext = curves->add_subcommand("exterior");

  auto* fm = app.add_subcommand("firstmoment", "first-moment entropy bounds");
  auto* f_bound = fm->add_subcommand("bound");
  auto* f_max = fm->add_subcommand("maximize");
  f_max->add_option("--grid", grid);
  auto* f_thr = fm->add_subcommand("threshold");

  auto* gadget = app.add_subcommand("gadget", "uncolourable-core gadgets");
  auto* g_trim = gadget->add_subcommand("trim");
  g_trim->add_option("--hypergraph", file)->required();
  auto* g_dis = gadget->add_subcommand("disequality");
  g_dis->add_option("--seed-hypergraph,--in", file)->required();
  auto* g_eq = gadget->add_subcommand("equality");
  g_eq->add_option("--seed-hypergraph,--in", file)->required();
  auto* g_rep = gadget->add_subcommand("potts-replace");
  g_rep->add_option("--graph", file)->required();
  g_rep->add_option("--gadget", file2)->required();
  auto* g_ver = gadget->add_subcommand("verify");
  g_ver->add_option("--graph", file)->required();
  g_ver->add_option("--gadget", file2)->required();

  for (CLI::App* grp : app.get_subcommands(nullptr)) {
    grp->fallthrough(true);
    for (CLI::App* leaf : grp->get_subcommands(nullptr)) leaf->fallthrough(true);
  }

  CLI11_PARSE(app, argc, argv);

  RunContext rc;
  rc.g = g;
  for (int i = 0; i < argc; ++i) rc.argv.emplace_back(argv[i]);

  PrecisionScope scope(g.precision_bits);

  const auto fail_json = [&](const std::string& kind, const std::string& msg,
                             int code) {
    json e{{"error", kind}, {"message", msg}};
    std::cerr << e.dump() << "\n";
    return code;
  };

  try {
    int code = 2;
    if (o_count->parsed()) {
      rc.command = "oracle count-colourings";
      code = run_oracle_count(rc, file);
    } else if (o_zb->parsed()) {
      rc.command = "oracle partition-zb";
      code = run_oracle_zb(rc, file);
    } else if (o_potts->parsed()) {
      rc.command = "oracle potts";
      code = run_oracle_potts(rc, file, b_scalar);
    } else if (o_halve->parsed()) {
      rc.command = "oracle verify-halving";
      code = run_oracle_halving(rc, file);
    } else if (p_fix->parsed()) {
      rc.command = "phase fixpoints";
      code = run_phase_fixpoints(rc, family);
    } else if (p_dom->parsed()) {
      rc.command = "phase dominance";
      code = run_phase_dominance(rc);
    } else if (p_stab->parsed()) {
      rc.command = "phase stability";
      code = run_phase_stability(rc, file);
    } else if (c_trace->parsed()) {
      rc.command = "curves trace";
      code = run_curves_trace(rc, n_points);
    } else if (c_int->parsed()) {
      rc.command = "curves intersect";
      code = run_curves_intersect(rc);
    } else if (c_land->parsed()) {
      rc.command = "curves landmarks";
      code = run_curves_landmarks(rc);
    } else if (c_ext->parsed()) {
      rc.command = "curves exterior";
      code = run_curves_exterior(rc);
    } else if (f_bound->parsed()) {
      rc.command = "firstmoment bound";
      code = run_fm_bound(rc);
    } else if (f_max->parsed()) {
      rc.command = "firstmoment maximize";
      code = run_fm_maximize(rc, grid);
    } else if (f_thr->parsed()) {
      rc.command = "firstmoment threshold";
      code = run_fm_threshold(rc);
    } else if (g_trim->parsed()) {
      rc.command = "gadget trim";
      code = run_gadget_trim(rc, file);
    } else if (g_dis->parsed()) {
      rc.command = "gadget disequality";
      code = run_gadget_dis(rc, file);
    } else if (g_eq->parsed()) {
      rc.command = "gadget equality";
      code = run_gadget_eq(rc, file);
    } else if (g_rep->parsed()) {
      rc.command = "gadget potts-replace";
      code = run_gadget_replace(rc, file, file2);
    } else if (g_ver->parsed()) {
      rc.command = "gadget verify";
      code = run_gadget_verify(rc, file, file2);
    } else {
      return fail_json("invalid_input", "no subcommand given", 2);
    }
    rc.finish();
    return code;
  } catch (const TooLarge& e) {
    return fail_json("budget_exceeded", e.what(), 3);
  } catch (const InvalidParams& e) {
    return fail_json("invalid_input", e.what(), 2);
  } catch (const VerificationFailure& e) {
    return fail_json("verification_failure", e.what(), 5);
  } catch (const NotConverged& e) {
    return fail_json("non_convergence", e.what(), 4);
  } catch (const MaxIters& e) {
    return fail_json("non_convergence", e.what(), 4);
  } catch (const NumericError& e) {
    return fail_json("numeric_error", e.what(), 4);
  } catch (const std::exception& e) {
    return fail_json("invalid_input", e.what(), 2);
  }
}
