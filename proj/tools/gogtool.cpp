// gogtool: command-line front end.  Prints one JSON object per run; exit
// status 0 for any verdict, 2 for malformed input.

#include "gog/gog.hpp"
#include "gog/json_output.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using gog::json::json;

json cmd_check(const gog::GraphOfGroups& g) {
  json vs = json::array(), es = json::array(), tree = json::array();
  for (const auto& v : g.vertices()) vs.push_back(v.name);
  for (const auto& e : g.edges()) es.push_back(e.name);
  for (gog::EdgeId e : gog::spanning_tree(g)) tree.push_back(g.edge(e).name);
  return {{"valid", true}, {"vertices", vs}, {"edges", es}, {"tree", tree}};
}

json cmd_reduce(const gog::GraphOfGroups& g, const std::string& word, const std::string& base) {
  const auto raw = gog::parse_word(g, word);
  const gog::VertexId b = base.empty() ? gog::default_base(g, raw) : g.vertex_id(base);
  const gog::PathWord w = gog::to_path_form(g, raw, b);
  const gog::PathWord r = gog::britton_reduce(g, w);
  return {{"input", word}, {"reduced", gog::format_word(g, r)}, {"trivial", gog::is_trivial(g, w)}};
}

json cmd_balance(const gog::GraphOfGroups& g, const std::string& edge) {
  const gog::RatioGroupoid gr = gog::build_groupoid(g);
  json edges = json::array();
  for (gog::EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!edge.empty() && g.edge(e).name != edge) continue;
    edges.push_back(gog::json::edge_verdict(g, gr, e, gog::edge_balanced(g, gr, e)));
  }
  if (!edge.empty() && edges.empty()) g.edge_id(edge);
  return {{"edges", edges}};
}

json cmd_conjgraph(const gog::GraphOfGroups& g, const std::string& edge, const std::string& emit) {
  const gog::RatioGroupoid gr = gog::build_groupoid(g);
  const auto classes = gog::edge_classes(g, gr);
  const std::size_t c = gog::class_of_edge(classes, g.edge_id(edge));
  const gog::ConjugacyGraph cg = gog::build_conjugacy_graph(g, gr, classes[c]);
  const std::string text = gog::serialize(cg.graph);
  if (!emit.empty()) {
    std::ofstream out(emit);
    if (!out) throw gog::Error(gog::ErrorKind::Syntax, "cannot write '" + emit + "'");
    out << text;
  }
  json members = json::array(), vertices = json::array(), provenance = json::array();
  for (const auto& o : classes[c].members) {
    members.push_back({{"edge", g.edge(o.edge).name}, {"side", o.side == gog::Side::Source ? "source" : "target"}});
  }
  for (gog::VertexId v = 0; v < cg.graph.vertex_count(); ++v) {
    const auto& dv = cg.vertices[v];
    vertices.push_back({{"name", cg.graph.vertex(v).name},
                        {"origin", g.vertex(dv.origin).name},
                        {"root", gog::format_element(g, dv.origin, dv.root)}});
  }
  for (gog::EdgeId e = 0; e < cg.graph.edge_count(); ++e) {
    const auto& de = cg.edges[e];
    const auto& oe = g.edge(de.origin);
    provenance.push_back({{"edge", oe.name},
                          {"from_conj", gog::format_element(g, oe.source, de.from_conj)},
                          {"to_conj", gog::format_element(g, oe.target, de.to_conj)}});
  }
  return {{"class", c},
          {"members", members},
          {"vertices", vertices},
          {"provenance", provenance},
          {"provenance_verified", gog::verify_provenance(g, cg)},
          {"graph", text}};
}

json cmd_witness(const gog::GraphOfGroups& g) {
  const gog::Verdict v = gog::hhg_verdict(g);
  if (v.hhg) return {{"status", "HHG"}, {"witness", nullptr}, {"verified", true}};
  return gog::json::verdict(g, v, true);
}

json cmd_distortion(const gog::GraphOfGroups& g, long depth) {
  const gog::Verdict v = gog::hhg_verdict(g);
  if (v.hhg) return {{"status", "HHG"}, {"witness", nullptr}, {"table", json::array()}, {"verified", true}};
  const auto d = gog::distortion_certificate(g, *v.witness, depth);
  return gog::json::distortion(g, g.edge(v.edge).name, d);
}

int fail(const json& j) {
  std::cout << j.dump() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide hierarchical hyperbolicity of graphs of free and infinite dihedral groups"};
  app.require_subcommand(1);
  std::string file, word, base, edge, emit;
  long depth = 10;

  auto* check = app.add_subcommand("check", "validate a graph file");
  auto* reduce = app.add_subcommand("reduce", "Britton-reduce a word");
  auto* balance = app.add_subcommand("balance", "balance verdict per edge");
  auto* conjgraph = app.add_subcommand("conjgraph", "conjugacy graph of an edge class");
  auto* param = app.add_subcommand("parametrize", "linear parametrizations with conjugacy graphs");
  auto* verdict = app.add_subcommand("verdict", "HHG verdict with certificates or witness");
  auto* witness = app.add_subcommand("witness", "almost Baumslag-Solitar witness");
  auto* distortion = app.add_subcommand("distortion", "distortion table of the witness");
  for (auto* sub : {check, reduce, balance, conjgraph, param, verdict, witness, distortion}) {
    sub->add_option("FILE", file, "graph description")->required();
  }
  reduce->add_option("--word", word, "letters such as \"e.t v.1^2 e.t^-1\"")->required();
  reduce->add_option("--base", base, "base vertex");
  balance->add_option("--edge", edge, "only this edge");
  conjgraph->add_option("--class-of", edge, "edge whose class to build")->required();
  conjgraph->add_option("--emit", emit, "write the conjugacy graph in the input format");
  distortion->add_option("--depth", depth, "largest k")->required()->check(CLI::Range(1L, 10000L));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail({{"error", "UsageError"}, {"message", e.what()}, {"line", 0}, {"column", 0}});
  }

  try {
    const gog::GraphOfGroups g = gog::parse_file(file);
    json out;
    if (*check) out = cmd_check(g);
    if (*reduce) out = cmd_reduce(g, word, base);
    if (*balance) out = cmd_balance(g, edge);
    if (*conjgraph) out = cmd_conjgraph(g, edge, emit);
    if (*param) out = gog::json::verdict(g, gog::hhg_verdict(g), true);
    if (*verdict) out = gog::json::verdict(g, gog::hhg_verdict(g));
    if (*witness) out = cmd_witness(g);
    if (*distortion) out = cmd_distortion(g, depth);
    std::cout << out.dump() << '\n';
    return 0;
  } catch (const gog::Error& e) {
    return fail(gog::json::error(e));
  }
}
