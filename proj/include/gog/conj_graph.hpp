#pragma once

// Equivalence classes of edge images and their conjugacy graphs.

#include "gog/balance.hpp"
#include "gog/model.hpp"
#include "gog/word_engine.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace gog {

struct EdgeClass {
  std::vector<Occurrence> members;  // in occurrence order
  std::vector<EdgeId> edges;
  std::vector<std::pair<Occurrence, Occurrence>> same_edge;
  std::vector<std::pair<Occurrence, Occurrence>> commensurable;
  std::vector<std::size_t> nodes;  // groupoid nodes touched, ascending
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

inline std::vector<EdgeClass> edge_classes(const GraphOfGroups& g, const RatioGroupoid& gr) {
  const std::size_t n = 2 * g.edge_count();
  detail::UnionFind uf(n);
  std::vector<std::pair<Occurrence, Occurrence>> same, comm;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    uf.unite(2 * e, 2 * e + 1);
    same.push_back({{e, Side::Source}, {e, Side::Target}});
  }
  std::vector<std::size_t> first(gr.nodes.size(), npos);
  for (std::size_t o = 0; o < n; ++o) {
    const std::size_t node = gr.occurrence_node[o];
    if (first[node] == npos) {
      first[node] = o;
    } else {
      uf.unite(first[node], o);
      comm.push_back({occurrence_at(first[node]), occurrence_at(o)});
    }
  }
  std::map<std::size_t, std::size_t> class_of_root;
  std::vector<EdgeClass> out;
  for (std::size_t o = 0; o < n; ++o) {
    const std::size_t r = uf.find(o);
    auto [it, fresh] = class_of_root.emplace(r, out.size());
    if (fresh) out.emplace_back();
    EdgeClass& c = out[it->second];
    c.members.push_back(occurrence_at(o));
    if (o % 2 == 0) c.edges.push_back(o / 2);
    c.nodes.push_back(gr.occurrence_node[o]);
  }
  for (EdgeClass& c : out) {
    std::sort(c.nodes.begin(), c.nodes.end());
    c.nodes.erase(std::unique(c.nodes.begin(), c.nodes.end()), c.nodes.end());
  }
  for (const auto& p : same) out[class_of_root[uf.find(occurrence_index(p.first))]].same_edge.push_back(p);
  for (const auto& p : comm) out[class_of_root[uf.find(occurrence_index(p.first))]].commensurable.push_back(p);
  return out;
}

inline std::vector<EdgeClass> edge_classes(const GraphOfGroups& g) { return edge_classes(g, build_groupoid(g)); }

inline std::size_t class_of_edge(const std::vector<EdgeClass>& classes, EdgeId e) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (std::find(classes[i].edges.begin(), classes[i].edges.end(), e) != classes[i].edges.end()) return i;
  }
  throw Error(ErrorKind::UnknownEdge, "edge belongs to no class");
}

struct DerivedVertex {
  VertexId origin = 0;
  Word root;  // canonical root in the origin vertex group
  std::size_t node = 0;
};

// img_from = from_conj root^(exponent) from_conj^-1 in the original graph,
// and likewise for img_to
struct DerivedEdge {
  EdgeId origin = 0;
  Word from_conj;
  Word to_conj;
};

struct ConjugacyGraph {
  GraphOfGroups graph;
  std::vector<DerivedVertex> vertices;  // by derived vertex id
  std::vector<DerivedEdge> edges;       // by derived edge id
};

inline ConjugacyGraph build_conjugacy_graph(const GraphOfGroups& g, const RatioGroupoid& gr, const EdgeClass& c) {
  std::map<VertexId, std::vector<std::size_t>> by_vertex;
  for (std::size_t node : c.nodes) by_vertex[gr.nodes[node].vertex].push_back(node);

  std::set<std::string> used;
  std::map<std::size_t, std::string> name_of;
  for (const auto& [v, nodes] : by_vertex) {
    if (nodes.size() == 1) {
      name_of[nodes[0]] = g.vertex(v).name;
      used.insert(g.vertex(v).name);
    }
  }
  for (const auto& [v, nodes] : by_vertex) {
    if (nodes.size() == 1) continue;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      std::string name = g.vertex(v).name + "_" + std::to_string(k + 1);
      while (used.count(name) || g.find_vertex(name)) name += "_";
      used.insert(name);
      name_of[nodes[k]] = name;
    }
  }

  std::vector<VertexDecl> vdecls;
  for (const auto& [node, name] : name_of) {
    const VertexKind& k = g.kind(gr.nodes[node].vertex);
    vdecls.push_back({name, k.is_free() ? VertexKind::free(1) : VertexKind::dihedral()});
  }
  std::vector<EdgeDecl> edecls;
  for (EdgeId e : c.edges) {
    const Edge& edge = g.edge(e);
    auto image = [&](Side s) {
      const int gen = g.kind(edge.endpoint(s)).is_free() ? 1 : kDihedralR;
      return Word{{gen, g.attachment_root(e, s).exponent}};
    };
    edecls.push_back({edge.name, name_of.at(gr.node_of(e, Side::Source)), name_of.at(gr.node_of(e, Side::Target)),
                      image(Side::Source), image(Side::Target)});
  }

  ConjugacyGraph out;
  out.graph = GraphOfGroups::build(std::move(vdecls), std::move(edecls));
  out.vertices.resize(out.graph.vertex_count());
  for (const auto& [node, name] : name_of) {
    out.vertices[out.graph.vertex_id(name)] = {gr.nodes[node].vertex, gr.nodes[node].root, node};
  }
  out.edges.resize(out.graph.edge_count());
  for (EdgeId e : c.edges) {
    out.edges[out.graph.edge_id(g.edge(e).name)] = {e, g.attachment_root(e, Side::Source).conjugator,
                                                     g.attachment_root(e, Side::Target).conjugator};
  }
  return out;
}

inline ConjugacyGraph build_conjugacy_graph(const GraphOfGroups& g, const EdgeClass& c) {
  return build_conjugacy_graph(g, build_groupoid(g), c);
}

// Every derived attachment, conjugated back by its provenance word, equals
// the original attachment in the original group.
inline bool verify_provenance(const GraphOfGroups& g, const ConjugacyGraph& cg) {
  for (EdgeId d = 0; d < cg.graph.edge_count(); ++d) {
    const Edge& de = cg.graph.edge(d);
    const DerivedEdge& pe = cg.edges[d];
    const Edge& oe = g.edge(pe.origin);
    for (Side s : {Side::Source, Side::Target}) {
      const DerivedVertex& dv = cg.vertices[de.endpoint(s)];
      const VertexId v = oe.endpoint(s);
      if (dv.origin != v) return false;
      const VertexKind& k = g.kind(v);
      const Word& conj = s == Side::Source ? pe.from_conj : pe.to_conj;
      const BigInt p = de.image(s).front().exp;
      const Word claimed = conjugate(k, conj, raise(k, dv.root, p));
      if (!are_equal(g, path_word({v, claimed}), path_word({v, oe.image(s)}))) return false;
    }
  }
  return true;
}

}  // namespace gog
